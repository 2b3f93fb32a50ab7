#include "lamhull/rank_one.hpp"

#include <algorithm>
#include <cmath>

namespace lamhull {

double eta(double lambda, double t) {
  const double den = lambda + t * (1.0 - lambda);
  if (den <= 1e-14) {
    fail(Errc::degenerate_denominator,
         "eta undefined at lambda = " + std::to_string(lambda) +
             ", t = " + std::to_string(t));
  }
  return lambda / den;
}

bool AdmissibleSet::contains(double lambda) const {
  if (std::abs(lambda - 1.0) <= kLambdaPuncture) return false;
  return (lower && lower->contains(lambda)) ||
         (upper && upper->contains(lambda));
}

std::vector<double> AdmissibleSet::grid(int n) const {
  std::vector<double> out;
  if (n < 1) fail(Errc::config_error, "grid size must be at least 1");
  auto emit = [&](const Interval& iv) {
    if (iv.width() <= 0.0) {
      if (std::abs(iv.lo - 1.0) > kLambdaPuncture) out.push_back(iv.lo);
      return;
    }
    const int m = std::max(n, 2);
    for (int i = 0; i < m; ++i) {
      const double lam = iv.lo + (iv.hi - iv.lo) * i / (m - 1);
      if (std::abs(lam - 1.0) > kLambdaPuncture) out.push_back(lam);
    }
  };
  if (lower) emit(*lower);
  if (upper) emit(*upper);
  return out;
}

std::vector<double> AdmissibleSet::endpoints() const {
  std::vector<double> out;
  for (const auto& iv : {lower, upper}) {
    if (!iv) continue;
    out.push_back(iv->lo);
    if (iv->hi != iv->lo) out.push_back(iv->hi);
  }
  std::erase_if(out,
                [](double x) { return std::abs(x - 1.0) <= kLambdaPuncture; });
  return out;
}

AdmissibleSet admissible_set(const Spectrum3& F, const Spectrum3& G) {
  const double f1 = F.m1, f2 = F.m2, f3 = F.m3;
  const double g1 = G.m1, g2 = G.m2, g3 = G.m3;
  const double lo_min = std::max(g1 / f2, g2 / f3);
  const double lo_max = std::min({g1 / f1, g2 / f2, g3 / f3});
  const double hi_min = std::max({g1 / f1, g2 / f2, g3 / f3});
  const double hi_max = std::min(g2 / f1, g3 / f2);
  AdmissibleSet A;
  if (lo_min <= lo_max) A.lower = Interval{lo_min, lo_max};
  if (hi_min <= hi_max) A.upper = Interval{hi_min, hi_max};
  return A;
}

Vec3 normal_square_quotients(const Spectrum3& F, const Spectrum3& G,
                             double lambda) {
  if (!F.distinct) {
    fail(Errc::not_distinct,
         "source spectrum must have three distinct eigenvalues");
  }
  if (lambda <= 1e-14) {
    fail(Errc::degenerate_lambda, "lambda must be positive");
  }
  if (std::abs(lambda - 1.0) <= kLambdaPuncture) {
    fail(Errc::degenerate_lambda, "lambda = 1 is excluded");
  }
  const auto f = F.values();
  const auto g = G.values();
  Vec3 out;
  const double common = lambda * lambda * (1.0 - lambda);
  for (int i = 0; i < 3; ++i) {
    double num = 1.0, den = common;
    for (int j = 0; j < 3; ++j) {
      num *= g[j] - lambda * f[i];
      if (j != i) den *= f[j] - f[i];
    }
    out[i] = num / den;
  }
  return out;
}

Vec3 normal_squares(const Spectrum3& F, const Spectrum3& G, double lambda) {
  Vec3 out = normal_square_quotients(F, G, lambda);
  for (double& q : out) {
    if (q < -1e-10) {
      fail(Errc::not_admissible,
           "squared normal component " + std::to_string(q) +
               " negative at lambda = " + std::to_string(lambda));
    }
    if (q < 0.0) q = 0.0;
  }
  return out;
}

RankOneConnection connect(const Spectrum3& F, const Spectrum3& G,
                          double lambda) {
  const Vec3 n_sq = normal_squares(F, G, lambda);
  const double sum = n_sq[0] + n_sq[1] + n_sq[2];
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(Errc::reconstruction_mismatch,
         "squared normal components sum to " + std::to_string(sum));
  }
  Vec3 n;
  for (int i = 0; i < 3; ++i) n[i] = std::sqrt(n_sq[i]);
  const Spectrum3 rec =
      eigen_spectrum(mix_with_rank_one(lambda, F, n));
  const double dev = std::max({std::abs(rec.m1 - G.m1),
                               std::abs(rec.m2 - G.m2),
                               std::abs(rec.m3 - G.m3)});
  if (dev > 1e-9) {
    fail(Errc::reconstruction_mismatch,
         "reconstructed target deviates by " + std::to_string(dev));
  }
  return {F, G, lambda, n_sq, n};
}

TrajectoryPoint trajectory(const RankOneConnection& conn, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(Errc::invalid_argument,
         "trajectory parameter t = " + std::to_string(t) +
             " outside [0, 1]");
  }
  const double e = eta(conn.lambda, t);
  const Spectrum3 sp =
      eigen_spectrum(mix_with_rank_one(e, conn.F, conn.n));
  return {t, e, sp, invariant_pair(sp)};
}

namespace {

void check_path_lambda(double lambda) {
  if (std::abs(lambda) < 1e-14 || std::abs(lambda - 1.0) < 1e-14) {
    fail(Errc::degenerate_lambda,
         "invariant path undefined at lambda = " + std::to_string(lambda));
  }
}

}  // namespace

InvariantPair invariant_path(double lambda, double t, double xF, double xG,
                             double yF, double yG) {
  check_path_lambda(lambda);
  const double e = eta(lambda, t);
  const double l2 = lambda * lambda;
  const double x = ((xG - l2 * xF) * e - (xG - lambda * xF) * e * e) /
                   (lambda * (1.0 - lambda));
  const double y =
      ((yG - l2 * lambda * yF) * e * e - (yG - l2 * yF) * e * e * e) /
      (l2 * (1.0 - lambda));
  return {x, y};
}

Velocity velocity(double lambda, double t, double xF, double xG, double yF,
                  double yG) {
  check_path_lambda(lambda);
  const double e = eta(lambda, t);
  const double e2 = e * e, e3 = e2 * e, e4 = e3 * e;
  const double l2 = lambda * lambda;
  const double xd = (2.0 * (xG - lambda * xF) * e3 - (xG - l2 * xF) * e2) / l2;
  const double yd =
      (3.0 * (yG - l2 * yF) * e4 - 2.0 * (yG - l2 * lambda * yF) * e3) /
      (l2 * lambda);
  return {xd, yd};
}

double conserved_w(int k, double xi1, double xi2, double xi3) {
  if (k < 1 || k > 3) {
    fail(Errc::invalid_argument, "conserved_w index must be 1, 2 or 3");
  }
  if (std::abs(1.0 - xi1) <= kLambdaPuncture ||
      (k > 1 && std::abs(xi1) <= kLambdaPuncture)) {
    fail(Errc::degenerate_xi1,
         "conserved quantity undefined at xi1 = " + std::to_string(xi1));
  }
  switch (k) {
    case 1: return (xi3 - xi1 * xi2) / (1.0 - xi1);
    case 2: return (xi3 - xi1 * xi1 * xi2) / (xi1 * (1.0 - xi1));
    default:
      return (xi3 - xi1 * xi1 * xi1 * xi2) / (xi1 * xi1 * (1.0 - xi1));
  }
}

}  // namespace lamhull
