// Acceptance gate: nine criteria, one line each, nonzero exit on failure.
// Tolerances are pinned next to each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "lamhull/curves.hpp"
#include "lamhull/hull.hpp"
#include "lamhull/random.hpp"
#include "lamhull/rank_one.hpp"
#include "lamhull/spectra.hpp"
#include "lamhull/stability.hpp"
#include "oracle.hpp"

using namespace lamhull;

namespace {

Spectrum3 base_spectrum() {
  return make_spectrum(oracle::kS1, oracle::kS2, oracle::kS3);
}

struct Outcome {
  bool pass = true;
  double worst = 0.0;
  std::string note;

  void absorb(double dev, double tol) {
    worst = std::max(worst, dev);
    if (!(dev <= tol)) pass = false;
  }
};

// 1. Frozen golden constants at S = (0.2, 0.3, 0.5), 1e-6 absolute.
Outcome criterion_golden() {
  constexpr double kTol = 1e-6;
  Outcome o;
  const Spectrum3 S = base_spectrum();
  const OptimalParams p = optimal_params(S);
  const auto check = [&](double got, double want) {
    o.absorb(std::abs(got - want), kTol);
  };
  check(p.u_alpha, oracle::kUAlpha);
  check(p.u_beta, oracle::kUBeta);
  check(p.alpha, oracle::kAlpha);
  check(p.beta, oracle::kBeta);
  check(p.n_alpha_sq[0], oracle::kNAlphaSq[0]);
  check(p.n_alpha_sq[1], 0.0);
  check(p.n_alpha_sq[2], oracle::kNAlphaSq[2]);
  check(p.n_beta_sq[0], oracle::kNBetaSq[0]);
  check(p.n_beta_sq[1], 0.0);
  check(p.n_beta_sq[2], oracle::kNBetaSq[2]);
  const InvariantPair is = invariant_pair(S);
  check(is.x, oracle::kXS);
  check(is.y, oracle::kYS);
  const InvariantPair ia = invariant_pair(p.U_alpha);
  check(ia.x, oracle::kI2UAlpha);
  check(ia.y, oracle::kI3UAlpha);
  const OptimalCurves c(S);
  check(c.slope_at_base(Branch::alpha), oracle::kSlopeAlpha);
  check(c.slope_at_base(Branch::beta), oracle::kSlopeBeta);
  o.note = "16 constants, tol 1e-6 abs";
  return o;
}

// 2. Root brackets, degenerate intervals and spectral reconstruction over
//    10^3 random spectra. Brackets exact, intervals 1e-10, recon 1e-9.
Outcome criterion_brackets() {
  Outcome o;
  Rng rng(101);
  for (int k = 0; k < 1000; ++k) {
    const Spectrum3 S = random_spectrum(rng);
    const OptimalParams p = optimal_params(S);
    if (!(S.m1 <= p.u_alpha && p.u_alpha < 1.0 / 3.0 &&
          1.0 / 3.0 < p.u_beta && p.u_beta <= S.m3)) {
      o.pass = false;
      o.note = "bracket violation";
      return o;
    }
    const AdmissibleSet aa = admissible_set(S, p.U_alpha);
    const AdmissibleSet ab = admissible_set(S, p.U_beta);
    if (!aa.lower || !ab.upper) {
      o.pass = false;
      o.note = "missing degenerate component";
      return o;
    }
    o.absorb(aa.lower->width(), 1e-10);
    o.absorb(std::abs(aa.lower->lo - p.alpha), 1e-10);
    o.absorb(ab.upper->width(), 1e-10);
    o.absorb(std::abs(ab.upper->lo - p.beta), 1e-10);

    // connect() validates the reconstruction internally at 1e-9; recompute
    // the endpoint deviation explicitly so the criterion owns the number.
    const RankOneConnection ca = connect(S, p.U_alpha, p.alpha);
    const Spectrum3 ea = trajectory(ca, 1.0).spectrum;
    o.absorb(std::abs(ea.m1 - p.U_alpha.m1), 1e-9);
    o.absorb(std::abs(ea.m2 - p.U_alpha.m2), 1e-9);
    o.absorb(std::abs(ea.m3 - p.U_alpha.m3), 1e-9);
    const RankOneConnection cb = connect(S, p.U_beta, p.beta);
    const Spectrum3 eb = trajectory(cb, 1.0).spectrum;
    o.absorb(std::abs(eb.m1 - p.U_beta.m1), 1e-9);
    o.absorb(std::abs(eb.m3 - p.U_beta.m3), 1e-9);
  }
  o.note = "1000 spectra; intervals 1e-10, recon 1e-9";
  return o;
}

// 3. Closed forms against the eigen route on 101-point grids (1e-9) and
//    the path velocity against central differences (1e-6 at step 1e-5).
Outcome criterion_closed_forms() {
  Outcome o;
  Rng rng(103);
  int pairs = 0;
  while (pairs < 100) {
    const Spectrum3 F = random_spectrum(rng);
    const Spectrum3 G = random_spectrum(rng);
    const AdmissibleSet A = admissible_set(F, G);
    if (A.empty()) continue;
    const Interval iv = A.lower ? *A.lower : *A.upper;
    double lam = 0.5 * (iv.lo + iv.hi);
    if (std::abs(lam - 1.0) <= 1e-9) lam = iv.lo;
    if (std::abs(lam - 1.0) <= 1e-9) continue;
    ++pairs;
    const RankOneConnection conn = connect(F, G, lam);
    const InvariantPair fi = invariant_pair(F), gi = invariant_pair(G);
    for (int j = 0; j <= 100; ++j) {
      const double t = j / 100.0;
      const TrajectoryPoint tp = trajectory(conn, t);
      const InvariantPair cf = invariant_path(lam, t, fi.x, gi.x, fi.y, gi.y);
      o.absorb(std::abs(cf.x - tp.inv.x), 1e-9);
      o.absorb(std::abs(cf.y - tp.inv.y), 1e-9);
    }
    for (int j = 1; j < 8; ++j) {
      const double t = j / 8.0;
      const Velocity v = velocity(lam, t, fi.x, gi.x, fi.y, gi.y);
      const double h = 1e-5;
      const InvariantPair a =
          invariant_path(lam, t - h, fi.x, gi.x, fi.y, gi.y);
      const InvariantPair b =
          invariant_path(lam, t + h, fi.x, gi.x, fi.y, gi.y);
      if (std::abs((b.x - a.x) / (2 * h) - v.x_dot) > 1e-6 ||
          std::abs((b.y - a.y) / (2 * h) - v.y_dot) > 1e-6) {
        o.pass = false;
      }
    }
  }
  // Branch closed forms against endpoint invariants on 101-point grids.
  Rng rng2(104);
  for (int k = 0; k < 50; ++k) {
    const Spectrum3 S = random_spectrum(rng2);
    const OptimalCurves c(S);
    for (Branch b : {Branch::alpha, Branch::beta}) {
      for (int j = 0; j <= 100; ++j) {
        const CurveSample cs = c.point(b, j / 100.0);  // throws above 1e-9
        const InvariantPair ci = c.curve_invariants(b, cs.e2);
        o.absorb(std::abs(ci.x - cs.inv.x), 1e-9);
        o.absorb(std::abs(ci.y - cs.inv.y), 1e-9);
      }
      const Spectrum3& end =
          b == Branch::alpha ? c.params().U_alpha : c.params().U_beta;
      const InvariantPair ie = invariant_pair(end);
      const InvariantPair ce = c.curve_invariants(b, c.u(b));
      o.absorb(std::abs(ie.x - ce.x), 1e-9);
      o.absorb(std::abs(ie.y - ce.y), 1e-9);
    }
  }
  o.note = "paths 1e-9, velocity 1e-6 (fd step 1e-5)";
  return o;
}

// 4. Conserved quantities along 10^2 random admissible trajectories,
//    1e-9 relative.
Outcome criterion_conserved() {
  Outcome o;
  Rng rng(107);
  int done = 0;
  while (done < 100) {
    const Spectrum3 F = random_spectrum(rng);
    const Spectrum3 G = random_spectrum(rng);
    const AdmissibleSet A = admissible_set(F, G);
    if (A.empty()) continue;
    const Interval iv = A.upper ? *A.upper : *A.lower;
    // w divides by 1 - xi1 ~ t (1 - lambda), so factors within 1e-3 of the
    // puncture amplify rounding past what doubles can certify at 1e-9;
    // those trajectories barely leave F. Keep a measurable factor.
    double lam = 0.0;
    for (double cand : {0.75 * iv.lo + 0.25 * iv.hi,
                        0.25 * iv.lo + 0.75 * iv.hi, iv.lo, iv.hi}) {
      if (std::abs(cand - 1.0) > 1e-3) {
        lam = cand;
        break;
      }
    }
    if (lam == 0.0) continue;
    ++done;
    const InvariantPair fi = invariant_pair(F), gi = invariant_pair(G);
    double w2_0 = 0.0, w3_0 = 0.0;
    for (int j = 1; j <= 50; ++j) {
      const double t = j / 50.0;
      const double xi1 = eta(lam, t);
      const InvariantPair cf = invariant_path(lam, t, fi.x, gi.x, fi.y, gi.y);
      const double w2 = conserved_w(2, xi1, fi.x, cf.x);
      const double w3 = conserved_w(3, xi1, fi.y, cf.y);
      if (j == 1) {
        w2_0 = w2;
        w3_0 = w3;
        continue;
      }
      o.absorb(std::abs(w2 - w2_0) / std::max(std::abs(w2_0), 1e-12), 1e-9);
      o.absorb(std::abs(w3 - w3_0) / std::max(std::abs(w3_0), 1e-12), 1e-9);
    }
  }
  o.note = "100 trajectories, w2/w3 drift 1e-9 rel, |lambda-1| > 1e-3";
  return o;
}

// 5. Slope extremality on the 32x32 (p,q)-grid against a 10^4 lambda grid
//    plus the factorization residual on 10^3 random draws (1e-9 scaled).
Outcome criterion_extremal() {
  Outcome o;
  const OptimalCurves c(base_spectrum());
  int checked = 0;
  for (int i = 0; i < 32; ++i) {
    for (int j = i + 1; j < 32; ++j) {
      const double p = i / 32.0, q = j / 32.0;
      for (Branch b : {Branch::alpha, Branch::beta}) {
        try {
          extremal_check(c, b, p, q, 10000);  // throws beyond one cell
          ++checked;
        } catch (const std::exception&) {
          o.pass = false;
          o.note = std::string("extremal failure at p=") + std::to_string(p) +
                   " q=" + std::to_string(q) + " " + branch_name(b);
          return o;
        }
      }
    }
  }
  Rng rng(109);
  for (int k = 0; k < 1000; ++k) {
    const double p = rng.uniform(0.0, 0.9);
    const double q = rng.uniform(p + 0.02, 1.0);
    const double cap = lambda_cap(c, Branch::alpha, p, q);
    const double lam = rng.uniform(0.1, cap);
    const double scale =
        std::max(1.0, std::abs(h_value(c, Branch::alpha, lam, p, q)));
    o.absorb(factorization_residual(c, p, q, lam) / scale, 1e-9);
  }
  o.note = std::to_string(checked) +
           " grid pairs at 10^4 lambdas; residual 1e-9 scaled";
  return o;
}

// 6. Inequality suite with zero violations over 10^3 random spectra.
Outcome criterion_inequalities() {
  Outcome o;
  Rng rng(113);
  long long checks = 0;
  for (int k = 0; k < 1000; ++k) {
    const Spectrum3 S = k == 0 ? base_spectrum() : random_spectrum(rng);
    const auto reports = inequality_suite(S, k == 0 ? 64 : 12);
    for (const auto& r : reports) {
      checks += r.samples;
      if (!r.passed) {
        o.pass = false;
        o.note = "violated " + r.check;
        return o;
      }
    }
  }
  o.note = std::to_string(checks) + " grid checks, zero violations";
  return o;
}

// 7. Stability sweep, seed 0, n_pairs 1000, lambda 32, t 64, on the base
//    spectrum and ten random spectra; zero violations at 1e-7; under 60 s.
Outcome criterion_sweep() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  SweepOptions opt;
  opt.n_pairs = 1000;
  opt.n_lambda = 32;
  opt.n_t = 64;
  opt.seed = 0;
  Rng rng(127);
  long long total = 0;
  for (int k = 0; k <= 10; ++k) {
    const Spectrum3 S = k == 0 ? base_spectrum() : random_spectrum(rng);
    const HullPolygon L = build_gamma(S, 256, 1e-7);
    const StabilityReport rep = stability_sweep(S, L, opt);
    total += rep.samples;
    o.absorb(static_cast<double>(rep.violation_count), 0.0);
    if (!rep.passed) {
      o.pass = false;
      o.note = "violations on spectrum " + std::to_string(k);
      return o;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (secs >= 60.0) o.pass = false;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%lld trajectory points, 11 spectra, %.1f s (< 60 s)", total,
                secs);
  o.note = buf;
  return o;
}

// 8. Hull geometry: closed, simple, orbit-symmetric within 1e-9; passes
//    through the permutation and uniaxial orbits; canonical probes.
Outcome criterion_hull() {
  Outcome o;
  const Spectrum3 S = base_spectrum();
  const HullPolygon H = build_gamma(S, 64, 1e-7);
  const auto& verts = H.vertices();
  const size_t n = verts.size();
  if (n != 12 * 64 - 12) {
    o.pass = false;
    o.note = "unexpected vertex count";
    return o;
  }

  // Closed chain: every edge short, no gap at the wrap.
  double max_edge = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const auto& a = verts[i].p;
    const auto& b = verts[(i + 1) % n].p;
    max_edge = std::max(max_edge, std::hypot(b.u - a.u, b.v - a.v));
  }
  if (max_edge > 0.05) {
    o.pass = false;
    o.note = "gap in the boundary chain";
    return o;
  }

  // Simple: no crossing among non-adjacent edges.
  auto orient = [](const PlanePoint2& p, const PlanePoint2& q,
                   const PlanePoint2& r) {
    return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
  };
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      const auto &a = verts[i].p, &b = verts[(i + 1) % n].p;
      const auto &c = verts[j].p, &d = verts[(j + 1) % n].p;
      if (orient(a, b, c) * orient(a, b, d) < 0 &&
          orient(c, d, a) * orient(c, d, b) < 0) {
        o.pass = false;
        o.note = "self-intersection";
        return o;
      }
    }
  }

  // Full orbit symmetry: permuting a vertex's eigenvalue triple lands on
  // the polygon again (1e-9).
  const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                          {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (size_t i = 0; i < n; i += 3) {
    const Vec3 m = verts[i].m;
    for (const auto& pm : perm) {
      const PlanePoint2 img = embed_plane(m[pm[0]], m[pm[1]], m[pm[2]]);
      double best = 1e300;
      for (const auto& w : verts) {
        best = std::min(best, std::hypot(w.p.u - img.u, w.p.v - img.v));
      }
      o.absorb(best, 1e-9);
    }
    if (!o.pass) {
      o.note = "orbit symmetry broken";
      return o;
    }
  }

  // The six permutations of S and the uniaxial orbits lie on Gamma.
  const OptimalParams P = optimal_params(S);
  const double anchors[4][3] = {
      {S.m1, S.m2, S.m3},
      {P.U_alpha.m1, P.U_alpha.m2, P.U_alpha.m3},
      {P.U_beta.m1, P.U_beta.m2, P.U_beta.m3},
      {S.m3, S.m1, S.m2}};
  for (const auto& an : anchors) {
    for (const auto& pm : perm) {
      const PlanePoint2 img = embed_plane(an[pm[0]], an[pm[1]], an[pm[2]]);
      double best = 1e300;
      for (const auto& w : verts) {
        best = std::min(best, std::hypot(w.p.u - img.u, w.p.v - img.v));
      }
      o.absorb(best, 1e-9);
    }
  }
  if (!o.pass) {
    o.note = "orbit anchor off the polygon";
    return o;
  }

  // Canonical membership probes.
  const bool probes =
      H.classify(make_spectrum(1.0 / 3, 1.0 / 3, 1.0 / 3)).membership ==
          Membership::inside &&
      H.classify(make_spectrum(oracle::kCAlpha[0], oracle::kCAlpha[1],
                               oracle::kCAlpha[2]))
              .membership == Membership::outside &&
      H.classify(make_spectrum(oracle::kCBeta[0], oracle::kCBeta[1],
                               oracle::kCBeta[2]))
              .membership == Membership::outside;
  if (!probes) {
    o.pass = false;
    o.note = "membership probe failed";
    return o;
  }
  o.note = "closed, simple, orbit-symmetric at 1e-9; probes correct";
  return o;
}

// 9. Angle diagnostic: report the literal quotient against the derived
//    cosine. Informational; passes when the report is produced and the
//    documented discrepancy is present.
Outcome criterion_angles() {
  Outcome o;
  const AngleReport r = check_angle_formulas(base_spectrum());
  o.absorb(std::abs(r.quotient_cos2phi_alpha - oracle::kLitRatioAlpha), 1e-9);
  o.absorb(std::abs(r.spectral_cos2phi_alpha - oracle::kDerivedCos2PhiAlpha),
           1e-9);
  if (!r.mismatch_alpha || !r.mismatch_beta || r.quotient_alpha_in_range) {
    o.pass = false;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "literal quotient %.4f vs derived %.4f (report only)",
                r.quotient_cos2phi_alpha, r.spectral_cos2phi_alpha);
  o.note = buf;
  return o;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Outcome (*fn)();
  };
  const Entry entries[] = {
      {"golden constants at the base spectrum", criterion_golden},
      {"root brackets, degenerate intervals, reconstruction",
       criterion_brackets},
      {"closed forms against the eigen route", criterion_closed_forms},
      {"conserved quantities along trajectories", criterion_conserved},
      {"slope extremality and factorization residual", criterion_extremal},
      {"inequality suite on random spectra", criterion_inequalities},
      {"lamination stability sweep", criterion_sweep},
      {"boundary polygon geometry", criterion_hull},
      {"angle formula diagnostic", criterion_angles},
  };
  int failures = 0;
  for (size_t i = 0; i < sizeof entries / sizeof entries[0]; ++i) {
    Outcome o;
    try {
      o = entries[i].fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %zu: %s (%s; worst %.3g)\n",
                o.pass ? "PASS" : "FAIL", i + 1, entries[i].label,
                o.note.c_str(), o.worst);
    std::fflush(stdout);
  }
  if (failures == 0) {
    std::printf("acceptance: all 9 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
