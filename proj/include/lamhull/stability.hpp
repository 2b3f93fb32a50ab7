// Slope analysis along the optimal branches and the lamination-stability
// sweep. For a pair of branch points M(p), M(q) the normalized tangent
// slope of the trajectory at its start depends on the factor lambda; the
// claim certified here is that over the whole admissible set the slope is
// extremized exactly at the factor lambda_cap(p, q) whose trajectory stays
// on the branch (a maximum on the alpha branch, a minimum on the beta
// branch). The sweep then drives arbitrary in-region pairs and checks that
// every sampled trajectory point stays in the region.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lamhull/curves.hpp"
#include "lamhull/hull.hpp"
#include "lamhull/report.hpp"

namespace lamhull {

// Normalized invariant-space slope of the trajectory at t = 0:
//   tau = [1 - lambda^2 (3-2 lambda) yF/yG] / [lambda (1 - lambda (2-lambda) xF/xG)].
// Equals (y_dot/x_dot)(0) * xG/yG whenever x_dot(0) != 0.
double tau(double lambda, double xF, double xG, double yF, double yG);

struct RatioPair {
  double r, s;  // x(p)/x(q) and y(p)/y(q) in closed form
};

// r(p,q) = (e2(p)/e2(q)) (2u - e2(p))/(2u - e2(q));
// s(p,q) = (e2(p)/e2(q))^2 (3u - 2e2(p))/(3u - 2e2(q)).
RatioPair curve_ratios(const OptimalCurves& C, Branch b, double p, double q);

// tau expressed through the ratio pair of the branch points; agrees with
// tau on the same data within 1e-10 relative. The p = q case reduces to the exact
// closed form (1 + 2 lambda)/lambda.
double h_value(const OptimalCurves& C, Branch b, double lambda, double p,
               double q);

// The branch-preserving factor e2(q)/e2(p) of the pair: the upper endpoint
// of the lower admissibility component (alpha branch) resp. the lower
// endpoint of the upper component (beta branch); cross-checked against
// admissible_set within 1e-12.
double lambda_cap(const OptimalCurves& C, Branch b, double p, double q);

struct ExtremalReport {
  Branch branch;
  double p, q;
  double cap, h_cap;            // lambda_cap and the slope there
  double lambda_star, h_star;   // refined grid extremum
  int grid;
};

// Grid search over every admissibility component plus golden-section
// refinement; asserts the extremum sits at lambda_cap within one grid cell
// and that no grid slope beats h_cap beyond 1e-10 (scaled by |h_cap|). Requires 0 <= p < q < 1
// (at p = q the slope is monotone in lambda and the claim is vacuous).
ExtremalReport extremal_check(const OptimalCurves& C, Branch b, double p,
                              double q, int grid);

// Residual of the cubic factorization behind the alpha-branch maximality:
// with X = lambda e2(p)/e2(q),
//   P(X) = Ep(3u - 2Eq) + 3X^2 Ep(2Ep - 3u) + 2X^3 Eq(3u - 2Ep),
//   Q(X) = X [Ep(2u - Eq) - 2X Ep(2u - Ep) + X^2 Eq(2u - Ep)],
//   3Q(X) - P(X) = (1-X)^2 Ep (2Eq + X Eq - 3u).
// Returns |3Q - P - (1-X)^2 Ep (2Eq + X Eq - 3u)|.
double factorization_residual(const OptimalCurves& C, double p, double q,
                              double lambda);

// The slope expressed through P/Q; equals h_value within 1e-10 relative:
//   h = (Ep/Eq) ((2u - Eq)/(3u - 2Eq)) P(X)/Q(X).
double h_via_factorization(const OptimalCurves& C, double p, double q,
                           double lambda);

// Sign conditions the slope analysis rests on, over (p, q, lambda) grids
// on both branches: positive slope denominators, k(q) = e1(q) + 2 e2(q)
// - 3 u_alpha >= 0, strictly nonempty admissibility interior for q < 1,
// 2 e2(q) + lambda e2(p) - 3 u_alpha >= 0, and s1 + 2 s2 - 3 u_alpha >= 0.
std::vector<CheckReport> inequality_suite(const Spectrum3& S, int grid);

// Strictness of the extremum away from lambda_cap: on interior grid points
// the alpha slope stays strictly below h_cap (resp. strictly above on the
// beta branch). Requires 0 <= p < q < 1. Fails with StrictnessViolation.
CheckReport tangent_inward_check(const OptimalCurves& C, Branch b, double p,
                                 double q, int grid);

struct SweepOptions {
  int n_pairs = 1000;
  int n_lambda = 32;  // per admissibility component
  int n_t = 64;
  std::uint64_t seed = 0;
};

struct SweepViolation {
  Vec3 F, G;
  double lambda, t;
  Vec3 spectrum;
  double distance;
};

struct StabilityReport {
  long long samples = 0;         // trajectory points classified
  long long pairs_traced = 0;    // pairs with nonempty admissible set
  long long pairs_skipped = 0;   // empty set or doubly repeated spectra
  double max_boundary_excursion = 0.0;  // plane distance of worst Outside
  double max_eigen_excursion = 0.0;     // worst escape from [s1, s3]
  std::vector<SweepViolation> violations;  // capped at 32, all counted
  long long violation_count = 0;
  bool passed = true;
};

// Deterministic lamination-stability sweep: pairs drawn from boundary
// samples of both branches and random interior spectra; every admissible
// factor grid point spawns a trajectory whose points are classified
// against L. A violation is any Outside classification.
StabilityReport stability_sweep(const Spectrum3& S, const HullPolygon& L,
                                const SweepOptions& opt);

CheckReport to_check_report(const StabilityReport& rep);

struct SuiteOptions {
  int grid = 64;       // lambda grid density
  int samples = 200;   // random draws per randomized check
  std::uint64_t seed = 0;
  int hull_resolution = 256;
  double boundary_tol = kDefaultBoundaryTol;
  SweepOptions sweep{200, 16, 32, 0};
};

// Named verification suites: "rankone", "curves", "inequalities",
// "extremal", "stability", or "all".
std::vector<CheckReport> run_suite(const std::string& name,
                                   const Spectrum3& S,
                                   const SuiteOptions& opt);

}  // namespace lamhull
