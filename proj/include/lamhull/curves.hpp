// Optimal lamination branches through a base spectrum.
//
// For a base spectrum S = (s1, s2, s3) the two extremal mixing levels
// u_alpha < 1/3 < u_beta are the roots of the quadratic
//
//   b(x) = 6 s2 x^2 + (s1 s3 - 3 s2 - 4 s2^2) x + 2 s2^2,
//
// and they define the uniaxial endpoint spectra
// U_alpha = (u_a, u_a, 1 - 2 u_a) and U_beta = (1 - 2 u_b, u_b, u_b).
// Each branch is the one-parameter family of spectra reached by laminating
// S with its endpoint at the branch-specific factor; the middle eigenvalue
// decays as e2(t) = s2 * eta(lambda, t) and the elementary invariants
// (i2, i3) follow closed forms in e2 alone.

#pragma once

#include <utility>
#include <vector>

#include "lamhull/rank_one.hpp"
#include "lamhull/spectra.hpp"

namespace lamhull {

enum class Branch { alpha, beta };

inline const char* branch_name(Branch b) {
  return b == Branch::alpha ? "alpha" : "beta";
}

struct BRoots {
  double u_alpha;  // smallest root, in [s1, 1/3)
  double u_beta;   // largest root, in (1/3, s3]
};

// Roots of b(x) for the given base spectrum. Fails with NoRealRoots when the
// discriminant is negative and BracketViolation when a root leaves its
// bracket (neither occurs for valid spectra; the checks guard regressions).
BRoots solve_b_roots(const Spectrum3& S);

// The repeated-eigenvalue endpoint spectra (u, u, 1-2u) and (1-2u, u, u).
std::pair<Spectrum3, Spectrum3> uniaxial_points(const Spectrum3& S);

struct OptimalParams {
  double u_alpha, u_beta;
  double alpha, beta;       // lamination factors u_alpha / s2, u_beta / s2
  Spectrum3 U_alpha, U_beta;
  Vec3 n_alpha_sq, n_beta_sq;  // lamination normals at the factors
};

OptimalParams optimal_params(const Spectrum3& S);

// Diagnostic comparison of two routes to the normal angles. The quotient
// route evaluates the closed-form rational expressions
//   cos(2 phi) = [s2(s1+s3) + u(2 s1 s3 - s1 - s3)] / [(s3-s1)(s2-u)],
//   cos(2 theta) = +-[u(s3-s1) + (u-s2) cos(2 phi)] / [s2(1-3u)]
// literally; the spectral route reads cos(2 phi) = 2 n1^2 - 1 off the
// optimal normal (which is validated by reconstruction). The two routes
// disagree; on the alpha branch the quotient is not even a valid cosine
// for typical spectra. Report only, never an assertion.
struct AngleReport {
  double quotient_num_alpha, quotient_den_alpha;
  double quotient_num_beta, quotient_den_beta;
  double quotient_cos2phi_alpha, quotient_cos2phi_beta;
  bool quotient_alpha_in_range, quotient_beta_in_range;  // within [-1, 1]
  double quotient_cos2theta_alpha, quotient_cos2theta_beta;
  double spectral_cos2phi_alpha, spectral_cos2phi_beta;
  double spectral_cos2theta_alpha, spectral_cos2theta_beta;
  double rel_gap_alpha, rel_gap_beta;  // |quotient - spectral| / |spectral|
  bool mismatch_alpha, mismatch_beta;
};

AngleReport check_angle_formulas(const Spectrum3& S);

struct CurveSample {
  double t;
  double e2;
  Spectrum3 spectrum;
  InvariantPair inv;
};

// One branch of the optimal curve with its endpoint data precomputed.
class OptimalCurves {
 public:
  explicit OptimalCurves(const Spectrum3& S);

  const Spectrum3& base() const { return S_; }
  const OptimalParams& params() const { return params_; }
  const RankOneConnection& connection(Branch b) const {
    return b == Branch::alpha ? conn_alpha_ : conn_beta_;
  }

  double u(Branch b) const {
    return b == Branch::alpha ? params_.u_alpha : params_.u_beta;
  }
  double factor(Branch b) const {
    return b == Branch::alpha ? params_.alpha : params_.beta;
  }

  // Middle eigenvalue along the branch, e2(t) = s2 * eta(factor, t).
  double e2(Branch b, double t) const;
  // Inverse of e2 on [u, s2]: the t at which the branch reaches that level.
  double t_of_e2(Branch b, double e2) const;

  // Closed-form invariants at mixing level e2:
  //   x = ((2 - 3u)/u) (2u - e2) e2,  y = ((1 - 2u)/u) (3u - 2e2) e2^2.
  InvariantPair curve_invariants(Branch b, double e2) const;

  // Sample at parameter t; the spectrum is recovered by eigendecomposition
  // of the mixed matrix and cross-checked against the closed forms.
  CurveSample point(Branch b, double t) const;

  // d y / d x of the branch at the base spectrum.
  double slope_at_base(Branch b) const;

  // n >= 2 samples from the base (t = 0) to the uniaxial endpoint (t = 1),
  // uniform in e2; n = 2 gives exactly the two endpoints.
  std::vector<CurveSample> sample(Branch b, int n) const;

 private:
  Spectrum3 S_;
  OptimalParams params_;
  RankOneConnection conn_alpha_, conn_beta_;
};

// Convenience wrappers over a throwaway OptimalCurves.
double curve_e2(const Spectrum3& S, Branch b, double t);
InvariantPair curve_invariants(const Spectrum3& S, Branch b, double e2);
double slope_at_base(const Spectrum3& S, Branch b);

}  // namespace lamhull
