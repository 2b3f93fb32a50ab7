#include "lamhull/stability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "lamhull/random.hpp"

namespace lamhull {

namespace {

void check_pq(double p, double q) {
  if (!(p >= 0.0 && p <= q && q <= 1.0) || p == 1.0) {
    fail(Errc::invalid_argument,
         "curve parameters need 0 <= p <= q <= 1 with p != 1");
  }
}

void check_pq_strict(double p, double q) {
  if (!(p >= 0.0 && p < q && q < 1.0)) {
    fail(Errc::invalid_argument,
         "the extremal statement needs 0 <= p < q < 1");
  }
}

}  // namespace

double tau(double lambda, double xF, double xG, double yF, double yG) {
  if (std::abs(lambda) < 1e-14) {
    fail(Errc::degenerate_lambda, "slope undefined at lambda = 0");
  }
  const double den = lambda * (1.0 - lambda * (2.0 - lambda) * (xF / xG));
  if (std::abs(den) <= 1e-14) {
    fail(Errc::degenerate_denominator,
         "slope denominator vanishes at lambda = " + std::to_string(lambda));
  }
  return (1.0 - lambda * lambda * (3.0 - 2.0 * lambda) * (yF / yG)) / den;
}

RatioPair curve_ratios(const OptimalCurves& C, Branch b, double p, double q) {
  check_pq(p, q);
  const double u = C.u(b);
  const double Ep = C.e2(b, p), Eq = C.e2(b, q);
  const double d1 = 2.0 * u - Eq, d2 = 3.0 * u - 2.0 * Eq;
  if (d1 <= 0.0 || d2 <= 0.0) {
    fail(Errc::degenerate_denominator,
         "ratio denominators must stay positive along the branch");
  }
  const double e = Ep / Eq;
  return {e * (2.0 * u - Ep) / d1, e * e * (3.0 * u - 2.0 * Ep) / d2};
}

double h_value(const OptimalCurves& C, Branch b, double lambda, double p,
               double q) {
  check_pq(p, q);
  if (std::abs(lambda) < 1e-14) {
    fail(Errc::degenerate_lambda, "slope undefined at lambda = 0");
  }
  if (p == q) return (1.0 + 2.0 * lambda) / lambda;
  const RatioPair rs = curve_ratios(C, b, p, q);
  const double den = lambda * (1.0 - lambda * (2.0 - lambda) * rs.r);
  if (std::abs(den) <= 1e-14) {
    fail(Errc::degenerate_denominator,
         "slope denominator vanishes at lambda = " + std::to_string(lambda));
  }
  return (1.0 - lambda * lambda * (3.0 - 2.0 * lambda) * rs.s) / den;
}

double lambda_cap(const OptimalCurves& C, Branch b, double p, double q) {
  check_pq(p, q);
  const double cap = C.e2(b, q) / C.e2(b, p);
  const Spectrum3 Mp = C.point(b, p).spectrum;
  const Spectrum3 Mq = C.point(b, q).spectrum;
  const AdmissibleSet A = admissible_set(Mp, Mq);
  const auto& comp = b == Branch::alpha ? A.lower : A.upper;
  const double end = comp ? (b == Branch::alpha ? comp->hi : comp->lo)
                          : std::numeric_limits<double>::quiet_NaN();
  if (!comp || std::abs(end - cap) > 1e-12) {
    fail(Errc::mismatch_with_admissible_set,
         "branch factor " + std::to_string(cap) +
             " is not the admissibility endpoint of the pair");
  }
  return cap;
}

namespace {

// Grid over one interval, endpoints included, unit puncture skipped.
std::vector<double> interval_grid(const Interval& iv, int n) {
  std::vector<double> out;
  if (iv.width() <= 0.0) {
    if (std::abs(iv.lo - 1.0) > kLambdaPuncture) out.push_back(iv.lo);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const double lam = iv.lo + iv.width() * i / (n - 1);
    if (std::abs(lam - 1.0) > kLambdaPuncture) out.push_back(lam);
  }
  return out;
}

double golden_refine(const std::function<double(double)>& f, double a,
                     double b, bool maximize) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
    const bool keep_left = maximize ? f1 > f2 : f1 < f2;
    if (keep_left) {
      b = x2, x2 = x1, f2 = f1;
      x1 = b - phi * (b - a), f1 = f(x1);
    } else {
      a = x1, x1 = x2, f1 = f2;
      x2 = a + phi * (b - a), f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ExtremalReport extremal_check(const OptimalCurves& C, Branch b, double p,
                              double q, int grid) {
  check_pq_strict(p, q);
  if (grid < 8) fail(Errc::config_error, "extremal grid must be >= 8");
  const bool maximize = b == Branch::alpha;
  const double cap = lambda_cap(C, b, p, q);
  const double h_cap = h_value(C, b, cap, p, q);

  const Spectrum3 Mp = C.point(b, p).spectrum;
  const Spectrum3 Mq = C.point(b, q).spectrum;
  const AdmissibleSet A = admissible_set(Mp, Mq);

  double best_h = maximize ? -1e300 : 1e300;
  double best_lam = cap, best_cell = 0.0;
  double cap_cell = 0.0;
  double best_lo = cap, best_hi = cap;
  for (const auto& comp : {A.lower, A.upper}) {
    if (!comp) continue;
    const double cell =
        comp->width() > 0.0 ? comp->width() / (grid - 1) : 0.0;
    if (comp->contains(cap)) cap_cell = cell;
    for (double lam : interval_grid(*comp, grid)) {
      const double h = h_value(C, b, lam, p, q);
      const double excess = maximize ? h - h_cap : h_cap - h;
      if (excess > 1e-10 * std::max(1.0, std::abs(h_cap))) {
        fail(Errc::extremality_violation,
             "slope " + std::to_string(h) + " at lambda = " +
                 std::to_string(lam) + " beats the branch factor value " +
                 std::to_string(h_cap));
      }
      if (maximize ? h > best_h : h < best_h) {
        best_h = h;
        best_lam = lam;
        best_cell = cell;
        best_lo = comp->lo;
        best_hi = comp->hi;
      }
    }
  }
  if (std::abs(best_lam - cap) > cap_cell + 1e-12) {
    fail(Errc::extremality_violation,
         "grid extremum at lambda = " + std::to_string(best_lam) +
             " is more than one cell away from " + std::to_string(cap));
  }

  ExtremalReport rep{b, p, q, cap, h_cap, best_lam, best_h, grid};
  if (best_cell > 0.0) {
    const double lo = std::max(best_lo, best_lam - best_cell);
    const double hi = std::min(best_hi, best_lam + best_cell);
    rep.lambda_star = golden_refine(
        [&](double lam) { return h_value(C, b, lam, p, q); }, lo, hi,
        maximize);
    rep.h_star = h_value(C, b, rep.lambda_star, p, q);
  }
  return rep;
}

namespace {

struct PQParts {
  double Ep, Eq, u, X, P, Q;
  double amp;  // cancellation amplification: sum|terms| / |value|
};

PQParts pq_parts(const OptimalCurves& C, double p, double q, double lambda) {
  check_pq(p, q);
  PQParts o;
  o.Ep = C.e2(Branch::alpha, p);
  o.Eq = C.e2(Branch::alpha, q);
  o.u = C.params().u_alpha;
  o.X = lambda * o.Ep / o.Eq;
  const double X = o.X;
  const double p1 = o.Ep * (3.0 * o.u - 2.0 * o.Eq);
  const double p2 = 3.0 * X * X * o.Ep * (2.0 * o.Ep - 3.0 * o.u);
  const double p3 = 2.0 * X * X * X * o.Eq * (3.0 * o.u - 2.0 * o.Ep);
  const double q1 = o.Ep * (2.0 * o.u - o.Eq);
  const double q2 = -2.0 * X * o.Ep * (2.0 * o.u - o.Ep);
  const double q3 = X * X * o.Eq * (2.0 * o.u - o.Ep);
  o.P = p1 + p2 + p3;
  o.Q = X * (q1 + q2 + q3);
  o.amp = (std::abs(p1) + std::abs(p2) + std::abs(p3)) /
              std::max(1e-300, std::abs(o.P)) +
          (std::abs(q1) + std::abs(q2) + std::abs(q3)) /
              std::max(1e-300, std::abs(q1 + q2 + q3));
  return o;
}

}  // namespace

double factorization_residual(const OptimalCurves& C, double p, double q,
                              double lambda) {
  const PQParts o = pq_parts(C, p, q, lambda);
  const double one_m = 1.0 - o.X;
  const double rhs =
      one_m * one_m * o.Ep * (2.0 * o.Eq + o.X * o.Eq - 3.0 * o.u);
  return std::abs(3.0 * o.Q - o.P - rhs);
}

double h_via_factorization(const OptimalCurves& C, double p, double q,
                           double lambda) {
  const PQParts o = pq_parts(C, p, q, lambda);
  if (std::abs(o.Q) <= 1e-300) {
    fail(Errc::degenerate_denominator, "factorized slope denominator is 0");
  }
  return (o.Ep / o.Eq) * (2.0 * o.u - o.Eq) / (3.0 * o.u - 2.0 * o.Eq) * o.P /
         o.Q;
}

namespace {

// Pairs (p, q) with 0 <= p < q < 1 on an n x n parameter grid.
std::vector<std::pair<double, double>> pq_grid(int n) {
  std::vector<std::pair<double, double>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out.emplace_back(static_cast<double>(i) / n,
                       static_cast<double>(j) / n);
    }
  }
  return out;
}

Witness pq_witness(const char* what, double p, double q, double lambda,
                   double value) {
  return {what, {{"p", p}, {"q", q}, {"lambda", lambda}, {"value", value}}};
}

}  // namespace

std::vector<CheckReport> inequality_suite(const Spectrum3& S, int grid) {
  if (grid < 4) fail(Errc::config_error, "inequality grid must be >= 4");
  const OptimalCurves C(S);
  const double u_a = C.params().u_alpha;
  const int n_pq = std::min(grid, 16);
  const int n_lam = std::min(grid, 32);

  CheckReport denoms{"inequalities.slope_denominators"};
  CheckReport knon{"inequalities.k_nonnegative"};
  CheckReport gap{"inequalities.interval_gap"};
  CheckReport trinomial{"inequalities.trinomial_nonnegative"};
  CheckReport base{"inequalities.base_margin"};

  for (Branch b : {Branch::alpha, Branch::beta}) {
    const double u = C.u(b);
    // Positive slope denominators along the branch and over the pairs.
    for (int j = 0; j <= n_pq; ++j) {
      const double q = static_cast<double>(j) / n_pq;
      const double m = 3.0 * u - 2.0 * C.e2(b, q);
      ++denoms.samples;
      if (!(m > 0.0)) denoms.flag(pq_witness("3u - 2e2(q)", 0.0, q, 0.0, m));
      denoms.residual(std::max(0.0, -m));
    }
    for (const auto& [p, q] : pq_grid(n_pq)) {
      const RatioPair rs = curve_ratios(C, b, p, q);
      const Spectrum3 Mp = C.point(b, p).spectrum;
      const Spectrum3 Mq = C.point(b, q).spectrum;
      const AdmissibleSet A = admissible_set(Mp, Mq);

      // Strictly nonempty branch component for q < 1.
      const auto& comp = b == Branch::alpha ? A.lower : A.upper;
      ++gap.samples;
      if (!comp || !(comp->width() > 0.0)) {
        gap.flag(pq_witness("interval width", p, q, 0.0,
                            comp ? comp->width() : -1.0));
      }

      for (const auto& part : {A.lower, A.upper}) {
        if (!part) continue;
        for (double lam : interval_grid(*part, n_lam)) {
          const double m = 1.0 - lam * (2.0 - lam) * rs.r;
          ++denoms.samples;
          if (!(m > 0.0)) {
            denoms.flag(pq_witness("1 - lam(2-lam)r", p, q, lam, m));
          }
          denoms.residual(std::max(0.0, -m));
          if (b == Branch::alpha) {
            const double tri =
                2.0 * C.e2(b, q) + lam * C.e2(b, p) - 3.0 * u;
            ++trinomial.samples;
            if (tri < -1e-12) {
              trinomial.flag(
                  pq_witness("2e2(q) + lam e2(p) - 3u", p, q, lam, tri));
            }
            trinomial.residual(std::max(0.0, -tri));
          }
        }
      }
    }
  }

  // k(q) = e1(q) + 2 e2(q) - 3u on the alpha branch, zero exactly at q = 1.
  for (int j = 0; j <= 4 * n_pq; ++j) {
    const double q = static_cast<double>(j) / (4 * n_pq);
    const CurveSample cs = C.point(Branch::alpha, q);
    const double k = cs.spectrum.m1 + 2.0 * cs.spectrum.m2 - 3.0 * u_a;
    ++knon.samples;
    if (k < -1e-12) knon.flag(pq_witness("k(q)", 0.0, q, 0.0, k));
    knon.residual(std::max(0.0, -k));
  }

  const double margin = S.m1 + 2.0 * S.m2 - 3.0 * u_a;
  base.samples = 1;
  base.witnesses.push_back({"s1+2s2-3u_alpha", {{"value", margin}}});
  if (margin < 0.0) {
    base.passed = false;
    base.max_residual = -margin;
  }

  return {denoms, knon, gap, trinomial, base};
}

CheckReport tangent_inward_check(const OptimalCurves& C, Branch b, double p,
                                 double q, int grid) {
  check_pq_strict(p, q);
  if (grid < 8) fail(Errc::config_error, "tangent grid must be >= 8");
  const bool maximize = b == Branch::alpha;
  const double cap = lambda_cap(C, b, p, q);
  const double h_cap = h_value(C, b, cap, p, q);
  const Spectrum3 Mp = C.point(b, p).spectrum;
  const Spectrum3 Mq = C.point(b, q).spectrum;
  const AdmissibleSet A = admissible_set(Mp, Mq);

  CheckReport rep{"extremal.tangent_strictness"};
  for (const auto& comp : {A.lower, A.upper}) {
    if (!comp) continue;
    for (double lam : interval_grid(*comp, grid)) {
      const double rel = std::abs(lam - cap) / cap;
      const double h = h_value(C, b, lam, p, q);
      const double excess = maximize ? h - h_cap : h_cap - h;
      ++rep.samples;
      if (rel > 1e-6 ? excess >= 0.0
                     : excess > 1e-12 * std::max(1.0, std::abs(h_cap))) {
        fail(Errc::strictness_violation,
             "slope " + std::to_string(h) + " at lambda = " +
                 std::to_string(lam) + " is not strictly " +
                 (maximize ? "below" : "above") + " the branch value " +
                 std::to_string(h_cap));
      }
    }
  }
  return rep;
}

namespace {

std::vector<Spectrum3> sweep_pool(const Spectrum3& S, const HullPolygon& L,
                                  Rng& rng) {
  std::vector<Spectrum3> pool;
  const OptimalCurves C(S);
  for (Branch b : {Branch::alpha, Branch::beta}) {
    for (const CurveSample& cs : C.sample(b, 17)) {
      pool.push_back(cs.spectrum);
    }
  }
  int attempts = 0;
  while (pool.size() < 96 && attempts < 20000) {
    ++attempts;
    const Spectrum3 sp = random_spectrum(rng, 0.005);
    if (L.classify(sp).membership == Membership::inside) pool.push_back(sp);
  }
  return pool;
}

}  // namespace

StabilityReport stability_sweep(const Spectrum3& S, const HullPolygon& L,
                                const SweepOptions& opt) {
  if (opt.n_pairs < 1 || opt.n_lambda < 2 || opt.n_t < 2) {
    fail(Errc::config_error, "sweep needs n_pairs >= 1 and grids >= 2");
  }
  Rng rng(opt.seed);
  const std::vector<Spectrum3> pool = sweep_pool(S, L, rng);

  StabilityReport rep;
  for (int k = 0; k < opt.n_pairs; ++k) {
    Spectrum3 F = pool[rng.index(static_cast<int>(pool.size()))];
    Spectrum3 G = pool[rng.index(static_cast<int>(pool.size()))];
    if (!F.distinct) std::swap(F, G);
    if (!F.distinct) {
      ++rep.pairs_skipped;  // connecting two uniaxial spectra is out of scope
      continue;
    }
    const AdmissibleSet A = admissible_set(F, G);
    if (A.empty()) {
      ++rep.pairs_skipped;
      continue;
    }
    ++rep.pairs_traced;
    for (double lam : A.grid(opt.n_lambda)) {
      RankOneConnection conn;
      try {
        conn = connect(F, G, lam);
      } catch (const Error& e) {
        if (e.code() == Errc::not_admissible ||
            e.code() == Errc::degenerate_lambda) {
          continue;  // endpoint rounding pushed lam out of the set
        }
        throw;
      }
      for (int j = 0; j < opt.n_t; ++j) {
        const double t = static_cast<double>(j) / (opt.n_t - 1);
        const TrajectoryPoint tp = trajectory(conn, t);
        ++rep.samples;
        rep.max_eigen_excursion =
            std::max({rep.max_eigen_excursion, S.m1 - tp.spectrum.m1,
                      tp.spectrum.m3 - S.m3});
        const Classification cls = L.classify(tp.spectrum);
        if (cls.membership == Membership::outside) {
          ++rep.violation_count;
          rep.max_boundary_excursion =
              std::max(rep.max_boundary_excursion, cls.boundary_distance);
          if (rep.violations.size() < 32) {
            rep.violations.push_back({F.values(), G.values(), lam, t,
                                      tp.spectrum.values(),
                                      cls.boundary_distance});
          }
        }
      }
    }
  }
  rep.passed = rep.violation_count == 0;
  return rep;
}

CheckReport to_check_report(const StabilityReport& rep) {
  CheckReport out{"stability.sweep"};
  out.passed = rep.passed;
  out.samples = rep.samples;
  out.max_residual = rep.max_boundary_excursion;
  for (const SweepViolation& v : rep.violations) {
    if (out.witnesses.size() >= 16) break;
    out.witnesses.push_back({"trajectory point outside",
                             {{"F1", v.F[0]},
                              {"F2", v.F[1]},
                              {"F3", v.F[2]},
                              {"G1", v.G[0]},
                              {"G2", v.G[1]},
                              {"G3", v.G[2]},
                              {"lambda", v.lambda},
                              {"t", v.t},
                              {"distance", v.distance}}});
  }
  return out;
}

namespace {

double rand_lambda_in(const AdmissibleSet& A, Rng& rng) {
  const Interval* comps[2];
  int n = 0;
  if (A.lower) comps[n++] = &*A.lower;
  if (A.upper) comps[n++] = &*A.upper;
  for (int tries = 0; tries < 64; ++tries) {
    const Interval* iv = comps[n == 2 ? rng.index(2) : 0];
    const double lam = rng.uniform(iv->lo, iv->hi);
    if (std::abs(lam - 1.0) > 1e-9) return lam;
  }
  return comps[0]->lo;
}

struct AdmissibleDraw {
  Spectrum3 F, G;
  AdmissibleSet A;
};

AdmissibleDraw draw_admissible_pair(Rng& rng) {
  for (;;) {
    const Spectrum3 F = random_spectrum(rng);
    const Spectrum3 G = random_spectrum(rng);
    const AdmissibleSet A = admissible_set(F, G);
    if (!A.empty()) return {F, G, A};
  }
}

std::vector<CheckReport> suite_rankone(const Spectrum3&,
                                       const SuiteOptions& opt) {
  Rng rng(opt.seed);
  CheckReport signs{"rank_one.normal_sign_split"};
  CheckReport recon{"rank_one.reconstruction"};
  CheckReport path{"rank_one.invariant_path_agreement"};
  CheckReport conserved{"rank_one.conserved_quantities"};
  CheckReport self{"rank_one.self_connection_set"};
  CheckReport vel{"rank_one.velocity_finite_difference"};

  for (int k = 0; k < opt.samples; ++k) {
    const AdmissibleDraw d = draw_admissible_pair(rng);
    const double lam = rand_lambda_in(d.A, rng);

    // Inside the set: clamped squares, unit sum.
    try {
      const Vec3 nsq = normal_squares(d.F, d.G, lam);
      const double sum = nsq[0] + nsq[1] + nsq[2];
      ++signs.samples;
      signs.residual(std::abs(sum - 1.0));
      if (std::abs(sum - 1.0) > 1e-9) {
        signs.flag({"square sum", {{"lambda", lam}, {"sum", sum}}});
      }
    } catch (const Error&) {
      signs.flag({"admissible factor rejected", {{"lambda", lam}}});
    }

    // Outside the set (and away from 0, 1): some quotient is negative.
    double hi = 2.0;
    if (d.A.upper) hi = std::max(hi, 1.5 * d.A.upper->hi);
    for (int tries = 0; tries < 128; ++tries) {
      const double out_lam = rng.uniform(0.02, hi);
      if (d.A.contains(out_lam) || std::abs(out_lam - 1.0) <= 1e-6) continue;
      const Vec3 qs = normal_square_quotients(d.F, d.G, out_lam);
      const double lowest = std::min({qs[0], qs[1], qs[2]});
      ++signs.samples;
      if (lowest >= -1e-9) {
        signs.flag({"no negative quotient outside the set",
                    {{"lambda", out_lam}, {"lowest", lowest}}});
      }
      break;
    }

    // Reconstruction at t = 1.
    const RankOneConnection conn = connect(d.F, d.G, lam);
    const Spectrum3 end = trajectory(conn, 1.0).spectrum;
    const double dev =
        std::max({std::abs(end.m1 - d.G.m1), std::abs(end.m2 - d.G.m2),
                  std::abs(end.m3 - d.G.m3)});
    ++recon.samples;
    recon.residual(dev);
    if (dev > 1e-9) recon.flag({"endpoint spectrum", {{"dev", dev}}});

    // Closed-form invariant path against the eigen route.
    const InvariantPair iF = invariant_pair(d.F), iG = invariant_pair(d.G);
    for (int j = 0; j <= 100; ++j) {
      const double t = j / 100.0;
      const TrajectoryPoint tp = trajectory(conn, t);
      const InvariantPair cf =
          invariant_path(lam, t, iF.x, iG.x, iF.y, iG.y);
      const double r =
          std::max(std::abs(cf.x - tp.inv.x), std::abs(cf.y - tp.inv.y));
      ++path.samples;
      path.residual(r);
      if (r > 1e-9) {
        path.flag({"invariant path", {{"lambda", lam}, {"t", t}, {"dev", r}}});
      }
    }

    // Conserved quantities along the same trajectory.
    double w2_ref = 0.0, w3_ref = 0.0;
    for (int j = 1; j <= 20; ++j) {
      const double t = j / 20.0;
      const double xi1 = eta(lam, t);
      const InvariantPair cf =
          invariant_path(lam, t, iF.x, iG.x, iF.y, iG.y);
      const double w2 = conserved_w(2, xi1, iF.x, cf.x);
      const double w3 = conserved_w(3, xi1, iF.y, cf.y);
      ++conserved.samples;
      if (j == 1) {
        w2_ref = w2;
        w3_ref = w3;
        continue;
      }
      const double r2 = std::abs(w2 - w2_ref) / std::max(1.0, std::abs(w2_ref));
      const double r3 = std::abs(w3 - w3_ref) / std::max(1.0, std::abs(w3_ref));
      conserved.residual(std::max(r2, r3));
      if (r2 > 1e-9 || r3 > 1e-9) {
        conserved.flag(
            {"drift", {{"lambda", lam}, {"t", t}, {"r2", r2}, {"r3", r3}}});
      }
    }

    // Self-connection set in closed form.
    const AdmissibleSet As = admissible_set(d.F, d.F);
    ++self.samples;
    if (!As.lower || !As.upper) {
      self.flag({"self set missing a component", {}});
    } else {
      const double lo = As.lower->lo;
      const double dev_self =
          std::max({std::abs(As.lower->hi - 1.0), std::abs(As.upper->lo - 1.0),
                    std::abs(As.upper->hi - 1.0 / lo)});
      self.residual(dev_self);
      if (dev_self > 1e-12) {
        self.flag({"self set endpoints", {{"dev", dev_self}}});
      }
    }

    // Velocity closed form against central differences.
    for (int j = 1; j < 8; ++j) {
      const double t = j / 8.0;
      const double hstep = 1e-5;
      const Velocity v = velocity(lam, t, iF.x, iG.x, iF.y, iG.y);
      const InvariantPair a =
          invariant_path(lam, t - hstep, iF.x, iG.x, iF.y, iG.y);
      const InvariantPair c =
          invariant_path(lam, t + hstep, iF.x, iG.x, iF.y, iG.y);
      const double rx = std::abs((c.x - a.x) / (2.0 * hstep) - v.x_dot);
      const double ry = std::abs((c.y - a.y) / (2.0 * hstep) - v.y_dot);
      ++vel.samples;
      vel.residual(std::max(rx, ry));
      if (rx > 1e-6 || ry > 1e-6) {
        vel.flag({"velocity", {{"lambda", lam}, {"t", t}, {"dev", rx + ry}}});
      }
    }
  }
  return {signs, recon, path, conserved, self, vel};
}

std::vector<CheckReport> suite_curves(const Spectrum3& S,
                                      const SuiteOptions& opt) {
  Rng rng(opt.seed);
  CheckReport roots{"curves.root_brackets"};
  CheckReport ends{"curves.endpoint_invariants"};
  CheckReport mono{"curves.x_monotonicity"};
  CheckReport sep{"curves.branch_separation"};
  CheckReport ratios{"curves.ratio_identities"};
  CheckReport angles{"curves.angle_formulas"};

  std::vector<Spectrum3> bases{S};
  for (int k = 1; k < std::max(2, opt.samples / 8); ++k) {
    bases.push_back(random_spectrum(rng));
  }

  for (const Spectrum3& base : bases) {
    const double s2 = base.m2;
    BRoots r;
    try {
      r = solve_b_roots(base);
    } catch (const Error& e) {
      roots.flag({std::string("roots: ") + e.what(),
                  {{"s1", base.m1}, {"s2", s2}, {"s3", base.m3}}});
      continue;
    }
    auto b_of = [&](double x) {
      return 6.0 * s2 * x * x +
             x * (base.m1 * base.m3 - 3.0 * s2 - 4.0 * s2 * s2) +
             2.0 * s2 * s2;
    };
    const InvariantPair iS = invariant_pair(base);
    auto b_alt = [&](double x) {  // same quadratic through i2(S)
      return 6.0 * s2 * x * x + x * (iS.x - 4.0 * s2 - 3.0 * s2 * s2) +
             2.0 * s2 * s2;
    };
    for (double u : {r.u_alpha, r.u_beta}) {
      const double res = std::max(std::abs(b_of(u)), std::abs(b_alt(u)));
      ++roots.samples;
      roots.residual(res);
      if (res > 1e-12) roots.flag({"root residual", {{"u", u}, {"res", res}}});
    }

    const OptimalCurves C(base);
    for (Branch b : {Branch::alpha, Branch::beta}) {
      const Spectrum3& U =
          b == Branch::alpha ? C.params().U_alpha : C.params().U_beta;
      const InvariantPair iU = invariant_pair(U);
      const InvariantPair at0 = C.curve_invariants(b, C.e2(b, 0.0));
      const InvariantPair at1 = C.curve_invariants(b, C.e2(b, 1.0));
      const double dev = std::max({std::abs(at0.x - iS.x),
                                   std::abs(at0.y - iS.y),
                                   std::abs(at1.x - iU.x),
                                   std::abs(at1.y - iU.y)});
      ++ends.samples;
      ends.residual(dev);
      if (dev > 1e-10) ends.flag({"endpoint invariants", {{"dev", dev}}});
    }
  }

  // Monotonicity, separation and ratio identities on the config spectrum.
  const OptimalCurves C(S);
  const int N = std::max(64, opt.samples);
  std::array<std::vector<CurveSample>, 2> samp{
      C.sample(Branch::alpha, N), C.sample(Branch::beta, N)};
  for (const auto& sv : samp) {
    for (size_t i = 1; i < sv.size(); ++i) {
      ++mono.samples;
      const double step = sv[i].inv.x - sv[i - 1].inv.x;
      if (step <= -1e-12) {
        mono.flag({"x step", {{"t", sv[i].t}, {"step", step}}});
      }
    }
  }

  // Graphs over x: the alpha branch stays strictly above the beta branch on
  // the shared x-range; levels are recovered exactly from the closed form.
  {
    const double x_lo = invariant_pair(S).x;
    const double x_hi =
        std::min(samp[0].back().inv.x, samp[1].back().inv.x);
    auto y_of_x = [&](Branch b, double x) {
      const double u = C.u(b);
      const double disc = u * u - x * u / (2.0 - 3.0 * u);
      const double root = std::sqrt(std::max(disc, 0.0));
      const double e2 = b == Branch::alpha ? u + root : u - root;
      return C.curve_invariants(b, e2).y;
    };
    for (int i = 1; i <= 256; ++i) {
      const double x = x_lo + (x_hi - x_lo) * i / 256.0;
      const double gap = y_of_x(Branch::alpha, x) - y_of_x(Branch::beta, x);
      ++sep.samples;
      if (!(gap > 0.0)) {
        sep.flag({"branch ordering", {{"x", x}, {"gap", gap}}});
      }
    }
  }

  for (Branch b : {Branch::alpha, Branch::beta}) {
    for (const auto& [p, q] : pq_grid(8)) {
      const RatioPair rs = curve_ratios(C, b, p, q);
      const InvariantPair ip = C.curve_invariants(b, C.e2(b, p));
      const InvariantPair iq = C.curve_invariants(b, C.e2(b, q));
      const double dev = std::max(std::abs(ip.x / iq.x - rs.r),
                                  std::abs(ip.y / iq.y - rs.s));
      ++ratios.samples;
      ratios.residual(dev);
      if (dev > 1e-10) {
        ratios.flag(pq_witness("invariant ratio", p, q, 0.0, dev));
      }
    }
  }

  const AngleReport ar = check_angle_formulas(S);
  angles.samples = 1;
  angles.max_residual = std::max(ar.rel_gap_alpha, ar.rel_gap_beta);
  angles.witnesses.push_back(
      {"closed-form vs spectral normal angles (informational)",
       {{"quotient_cos2phi_alpha", ar.quotient_cos2phi_alpha},
        {"quotient_cos2phi_beta", ar.quotient_cos2phi_beta},
        {"quotient_num_alpha", ar.quotient_num_alpha},
        {"quotient_den_alpha", ar.quotient_den_alpha},
        {"spectral_cos2phi_alpha", ar.spectral_cos2phi_alpha},
        {"spectral_cos2phi_beta", ar.spectral_cos2phi_beta},
        {"quotient_alpha_in_range", ar.quotient_alpha_in_range ? 1.0 : 0.0},
        {"quotient_beta_in_range", ar.quotient_beta_in_range ? 1.0 : 0.0},
        {"mismatch_alpha", ar.mismatch_alpha ? 1.0 : 0.0},
        {"mismatch_beta", ar.mismatch_beta ? 1.0 : 0.0}}});

  return {roots, ends, mono, sep, ratios, angles};
}

std::vector<CheckReport> suite_extremal(const Spectrum3& S,
                                        const SuiteOptions& opt) {
  Rng rng(opt.seed);
  const OptimalCurves C(S);
  CheckReport argmax{"extremal.argmax_location"};
  CheckReport argmin{"extremal.argmin_location"};
  CheckReport agree{"extremal.ratio_form_agreement"};
  CheckReport fact{"extremal.factorization"};
  CheckReport hfact{"extremal.slope_factorization_agreement"};
  CheckReport strict{"extremal.tangent_strictness"};

  for (Branch b : {Branch::alpha, Branch::beta}) {
    CheckReport& loc = b == Branch::alpha ? argmax : argmin;
    for (const auto& [p, q] : pq_grid(8)) {
      try {
        const ExtremalReport er = extremal_check(C, b, p, q, opt.grid);
        ++loc.samples;
        loc.residual(std::abs(er.lambda_star - er.cap));
      } catch (const Error& e) {
        loc.flag(pq_witness(e.what(), p, q, 0.0, 0.0));
      }

      // Slope through invariants vs slope through the ratio pair. Both
      // residuals are normalized by the cancellation amplification of the
      // shared numerator/denominator so the comparison stays meaningful
      // when the slope blows up on near-degenerate spectra.
      const InvariantPair ip = C.curve_invariants(b, C.e2(b, p));
      const InvariantPair iq = C.curve_invariants(b, C.e2(b, q));
      const RatioPair rs = curve_ratios(C, b, p, q);
      const Spectrum3 Mp = C.point(b, p).spectrum;
      const Spectrum3 Mq = C.point(b, q).spectrum;
      const AdmissibleSet A = admissible_set(Mp, Mq);
      for (const auto& comp : {A.lower, A.upper}) {
        if (!comp) continue;
        for (double lam : interval_grid(*comp, 9)) {
          const double t1 = tau(lam, ip.x, iq.x, ip.y, iq.y);
          const double t2 = h_value(C, b, lam, p, q);
          const double sN = lam * lam * (3.0 - 2.0 * lam) * rs.s;
          const double sD = lam * (2.0 - lam) * rs.r;
          const double amp =
              (1.0 + std::abs(sN)) / std::max(1e-300, std::abs(1.0 - sN)) +
              (1.0 + std::abs(sD)) / std::max(1e-300, std::abs(1.0 - sD));
          const double scale = std::max({1.0, std::abs(t1), std::abs(t2)});
          ++agree.samples;
          agree.residual(std::abs(t1 - t2) / (scale * amp));
          if (std::abs(t1 - t2) > 1e-13 * scale * amp) {
            agree.flag(pq_witness("slope forms", p, q, lam,
                                  std::abs(t1 - t2)));
          }
          if (b == Branch::alpha) {
            const double t3 = h_via_factorization(C, p, q, lam);
            const double pq_amp = pq_parts(C, p, q, lam).amp;
            const double fscale = std::max({1.0, std::abs(t2), std::abs(t3)});
            ++hfact.samples;
            hfact.residual(std::abs(t3 - t2) / (fscale * (amp + pq_amp)));
            if (std::abs(t3 - t2) > 1e-13 * fscale * (amp + pq_amp)) {
              hfact.flag(pq_witness("factorized slope", p, q, lam,
                                    std::abs(t3 - t2)));
            }
          }
        }
      }
    }
  }

  // Factorization residual on random admissible draws.
  for (int k = 0; k < opt.samples; ++k) {
    double p = rng.uniform(0.0, 0.999);
    double q = rng.uniform(0.0, 0.999);
    if (p > q) std::swap(p, q);
    if (q - p < 1e-3) continue;
    const Spectrum3 Mp = C.point(Branch::alpha, p).spectrum;
    const Spectrum3 Mq = C.point(Branch::alpha, q).spectrum;
    const AdmissibleSet A = admissible_set(Mp, Mq);
    if (A.empty()) continue;
    const double lam = rand_lambda_in(A, rng);
    const double res = factorization_residual(C, p, q, lam);
    ++fact.samples;
    fact.residual(res);
    if (res > 1e-9) {
      fact.flag(pq_witness("factorization residual", p, q, lam, res));
    }
  }

  for (const auto& [p, q] :
       std::vector<std::pair<double, double>>{{0.0, 0.9}, {0.1, 0.9},
                                              {0.25, 0.5}, {0.5, 0.75}}) {
    for (Branch b : {Branch::alpha, Branch::beta}) {
      try {
        const CheckReport one = tangent_inward_check(C, b, p, q, opt.grid);
        strict.samples += one.samples;
      } catch (const Error& e) {
        strict.flag(pq_witness(e.what(), p, q, 0.0, 0.0));
      }
    }
  }

  return {argmax, argmin, agree, fact, hfact, strict};
}

std::vector<CheckReport> suite_stability(const Spectrum3& S,
                                         const SuiteOptions& opt) {
  const HullPolygon L =
      build_gamma(S, opt.hull_resolution, opt.boundary_tol);
  const StabilityReport rep = stability_sweep(S, L, opt.sweep);
  CheckReport bounds{"stability.eigen_bounds"};
  bounds.samples = rep.samples;
  bounds.max_residual = rep.max_eigen_excursion;
  if (rep.max_eigen_excursion > 1e-9) {
    bounds.flag({"eigenvalues escape the base range",
                 {{"excursion", rep.max_eigen_excursion}}});
  }
  return {to_check_report(rep), bounds};
}

}  // namespace

std::vector<CheckReport> run_suite(const std::string& name,
                                   const Spectrum3& S,
                                   const SuiteOptions& opt) {
  if (name == "rankone") return suite_rankone(S, opt);
  if (name == "curves") return suite_curves(S, opt);
  if (name == "inequalities") return inequality_suite(S, opt.grid);
  if (name == "extremal") return suite_extremal(S, opt);
  if (name == "stability") return suite_stability(S, opt);
  if (name == "all") {
    std::vector<CheckReport> out;
    for (const char* part :
         {"rankone", "curves", "inequalities", "extremal", "stability"}) {
      auto piece = run_suite(part, S, opt);
      out.insert(out.end(), piece.begin(), piece.end());
    }
    return out;
  }
  fail(Errc::config_error, "unknown suite '" + name + "'");
}

}  // namespace lamhull
