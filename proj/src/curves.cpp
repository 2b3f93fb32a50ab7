#include "lamhull/curves.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lamhull {

namespace {

constexpr double kBracketTol = 1e-10;
constexpr double kThird = 1.0 / 3.0;

}  // namespace

BRoots solve_b_roots(const Spectrum3& S) {
  if (!S.distinct) {
    fail(Errc::not_distinct, "base spectrum must have distinct eigenvalues");
  }
  const double s1 = S.m1, s2 = S.m2, s3 = S.m3;
  const double a = 6.0 * s2;
  const double b = s1 * s3 - 3.0 * s2 - 4.0 * s2 * s2;
  const double c = 2.0 * s2 * s2;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) {
    fail(Errc::no_real_roots,
         "negative discriminant " + std::to_string(disc));
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  double u_lo = q / a, u_hi = c / q;
  if (u_lo > u_hi) std::swap(u_lo, u_hi);
  const bool ok = u_lo >= s1 - kBracketTol && u_lo < kThird + kBracketTol &&
                  u_hi > kThird - kBracketTol && u_hi <= s3 + kBracketTol &&
                  u_lo > (2.0 / 3.0) * s2 - kBracketTol;
  if (!ok) {
    fail(Errc::bracket_violation,
         "roots (" + std::to_string(u_lo) + ", " + std::to_string(u_hi) +
             ") escape [s1, 1/3) x (1/3, s3]");
  }
  return {u_lo, u_hi};
}

std::pair<Spectrum3, Spectrum3> uniaxial_points(const Spectrum3& S) {
  const BRoots r = solve_b_roots(S);
  return {make_spectrum(r.u_alpha, r.u_alpha, 1.0 - 2.0 * r.u_alpha),
          make_spectrum(1.0 - 2.0 * r.u_beta, r.u_beta, r.u_beta)};
}

namespace {

// Degenerate-interval and reconstruction validation shared by both branches.
Vec3 validated_normal_sq(const Spectrum3& S, const Spectrum3& U,
                         double factor, bool lower_component,
                         const char* tag) {
  const AdmissibleSet A = admissible_set(S, U);
  const auto& comp = lower_component ? A.lower : A.upper;
  if (!comp || std::abs(comp->lo - factor) > 1e-9 ||
      std::abs(comp->hi - factor) > 1e-9) {
    fail(Errc::optimality_violation,
         std::string(tag) + " interval does not collapse to the factor");
  }
  Vec3 n_sq;
  try {
    n_sq = connect(S, U, factor).n_sq;
  } catch (const Error& e) {
    fail(Errc::optimality_violation,
         std::string(tag) + " reconstruction failed: " + e.what());
  }
  if (std::abs(n_sq[1]) <= 1e-10) n_sq[1] = 0.0;
  return n_sq;
}

}  // namespace

OptimalParams optimal_params(const Spectrum3& S) {
  const BRoots r = solve_b_roots(S);
  const auto [Ua, Ub] = uniaxial_points(S);
  OptimalParams P;
  P.u_alpha = r.u_alpha;
  P.u_beta = r.u_beta;
  P.alpha = r.u_alpha / S.m2;
  P.beta = r.u_beta / S.m2;
  P.U_alpha = Ua;
  P.U_beta = Ub;
  if (!(P.alpha < 1.0 && P.beta > 1.0)) {
    fail(Errc::ordering_violation, "factors must straddle 1");
  }
  P.n_alpha_sq = validated_normal_sq(S, Ua, P.alpha, true, "alpha");
  P.n_beta_sq = validated_normal_sq(S, Ub, P.beta, false, "beta");
  return P;
}

AngleReport check_angle_formulas(const Spectrum3& S) {
  const OptimalParams P = optimal_params(S);
  const double s1 = S.m1, s2 = S.m2, s3 = S.m3;
  auto quotient = [&](double u) {
    return std::pair{s2 * (s1 + s3) + u * (2.0 * s1 * s3 - s1 - s3),
                     (s3 - s1) * (s2 - u)};
  };
  auto theta_of = [&](double u, double cos2phi, double sign) {
    return sign * (u * (s3 - s1) + (u - s2) * cos2phi) /
           (s2 * (1.0 - 3.0 * u));
  };
  AngleReport R;
  const auto [na, da] = quotient(P.u_alpha);
  const auto [nb, db] = quotient(P.u_beta);
  R.quotient_num_alpha = na;
  R.quotient_den_alpha = da;
  R.quotient_num_beta = nb;
  R.quotient_den_beta = db;
  R.quotient_cos2phi_alpha = na / da;
  R.quotient_cos2phi_beta = nb / db;
  R.quotient_alpha_in_range = std::abs(R.quotient_cos2phi_alpha) <= 1.0;
  R.quotient_beta_in_range = std::abs(R.quotient_cos2phi_beta) <= 1.0;
  R.quotient_cos2theta_alpha =
      theta_of(P.u_alpha, R.quotient_cos2phi_alpha, 1.0);
  R.quotient_cos2theta_beta =
      theta_of(P.u_beta, R.quotient_cos2phi_beta, -1.0);
  R.spectral_cos2phi_alpha = 2.0 * P.n_alpha_sq[0] - 1.0;
  R.spectral_cos2phi_beta = 2.0 * P.n_beta_sq[0] - 1.0;
  R.spectral_cos2theta_alpha =
      theta_of(P.u_alpha, R.spectral_cos2phi_alpha, 1.0);
  R.spectral_cos2theta_beta =
      theta_of(P.u_beta, R.spectral_cos2phi_beta, -1.0);
  R.rel_gap_alpha =
      std::abs(R.quotient_cos2phi_alpha - R.spectral_cos2phi_alpha) /
      std::abs(R.spectral_cos2phi_alpha);
  R.rel_gap_beta =
      std::abs(R.quotient_cos2phi_beta - R.spectral_cos2phi_beta) /
      std::abs(R.spectral_cos2phi_beta);
  R.mismatch_alpha = R.rel_gap_alpha > 1e-9;
  R.mismatch_beta = R.rel_gap_beta > 1e-9;
  return R;
}

OptimalCurves::OptimalCurves(const Spectrum3& S)
    : S_(S),
      params_(optimal_params(S)),
      conn_alpha_(connect(S, params_.U_alpha, params_.alpha)),
      conn_beta_(connect(S, params_.U_beta, params_.beta)) {}

double OptimalCurves::e2(Branch b, double t) const {
  if (!(t >= 0.0 && t <= 1.0)) {
    fail(Errc::invalid_argument,
         "curve parameter t = " + std::to_string(t) + " outside [0, 1]");
  }
  return S_.m2 * eta(factor(b), t);
}

double OptimalCurves::t_of_e2(Branch b, double e2v) const {
  const double s2 = S_.m2, uu = u(b), lam = factor(b);
  const double lo = std::min(s2, uu), hi = std::max(s2, uu);
  if (!(e2v >= lo - 1e-12 && e2v <= hi + 1e-12)) {
    fail(Errc::invalid_argument,
         "level " + std::to_string(e2v) + " outside the branch range");
  }
  const double t = lam * (s2 - e2v) / (e2v * (1.0 - lam));
  return std::clamp(t, 0.0, 1.0);
}

InvariantPair OptimalCurves::curve_invariants(Branch b, double e2v) const {
  const double uu = u(b);
  return {(2.0 - 3.0 * uu) / uu * (2.0 * uu - e2v) * e2v,
          (1.0 - 2.0 * uu) / uu * (3.0 * uu - 2.0 * e2v) * e2v * e2v};
}

CurveSample OptimalCurves::point(Branch b, double t) const {
  const double e2v = e2(b, t);
  const TrajectoryPoint tp = trajectory(connection(b), t);
  const InvariantPair closed = curve_invariants(b, e2v);
  const double dev =
      std::max({std::abs(tp.spectrum.m2 - e2v), std::abs(tp.inv.x - closed.x),
                std::abs(tp.inv.y - closed.y)});
  if (dev > 1e-9) {
    fail(Errc::reconstruction_mismatch,
         "closed forms deviate from the eigen route by " +
             std::to_string(dev) + " at t = " + std::to_string(t));
  }
  return {t, e2v, tp.spectrum, closed};
}

double OptimalCurves::slope_at_base(Branch b) const {
  auto slope = [&](double uu) {
    return 3.0 * S_.m2 * (1.0 - 2.0 * uu) / (2.0 - 3.0 * uu);
  };
  const double sa = slope(params_.u_alpha), sb = slope(params_.u_beta);
  if (!(sa > sb)) {
    fail(Errc::ordering_violation, "tangent slopes out of order at the base");
  }
  return b == Branch::alpha ? sa : sb;
}

std::vector<CurveSample> OptimalCurves::sample(Branch b, int n) const {
  if (n < 2) fail(Errc::config_error, "need at least two samples per branch");
  std::vector<CurveSample> out;
  out.reserve(n);
  const double s2 = S_.m2, uu = u(b);
  for (int i = 0; i < n; ++i) {
    double t;
    if (i == 0) {
      t = 0.0;
    } else if (i == n - 1) {
      t = 1.0;
    } else {
      t = t_of_e2(b, s2 + (uu - s2) * i / (n - 1));
    }
    out.push_back(point(b, t));
  }
  return out;
}

double curve_e2(const Spectrum3& S, Branch b, double t) {
  return OptimalCurves(S).e2(b, t);
}

InvariantPair curve_invariants(const Spectrum3& S, Branch b, double e2) {
  return OptimalCurves(S).curve_invariants(b, e2);
}

double slope_at_base(const Spectrum3& S, Branch b) {
  return OptimalCurves(S).slope_at_base(b);
}

}  // namespace lamhull
