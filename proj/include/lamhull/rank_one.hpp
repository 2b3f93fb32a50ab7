#pragma once

#include <optional>
#include <vector>

#include "lamhull/spectra.hpp"

// Rank-one connections between unit-trace spectra F, G: factors lambda and
// unit normals n with  R^t diag(G) R = lambda diag(F) + (1 - lambda) n (x) n
// for some rotation R, plus the induced lamination trajectories and their
// invariant-space closed forms.

namespace lamhull {

// Width of the open puncture carved out of the admissible set around
// lambda = 1 (the factor 1 never yields a connection between distinct F, G).
inline constexpr double kLambdaPuncture = 1e-12;

using Vec3 = std::array<double, 3>;

// eta(lambda, t) = lambda / (lambda + t (1 - lambda)); the volume-fraction
// path from 1 (t = 0) down/up to lambda (t = 1).
double eta(double lambda, double t);

struct Interval {
  double lo, hi;  // closed, lo <= hi (possibly equal)
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

// Union of up to two closed intervals minus the unit puncture. The lower
// interval always satisfies hi <= 1, the upper lo >= 1.
struct AdmissibleSet {
  std::optional<Interval> lower;  // candidate factors <= 1
  std::optional<Interval> upper;  // candidate factors >= 1

  bool empty() const { return !lower && !upper; }
  bool contains(double lambda) const;
  // Up to n points per nonempty component, endpoints included, values inside
  // the unit puncture skipped. Degenerate components contribute one point.
  std::vector<double> grid(int n) const;
  std::vector<double> endpoints() const;
};

// Closed-form candidate intervals from the ordered eigenvalue ratios; the
// set of factors lambda admitting a rank-one connection from F to G.
AdmissibleSet admissible_set(const Spectrum3& F, const Spectrum3& G);

// The three squared-normal quotients as functions of lambda, unclamped.
// For lambda in the admissible set all three are nonnegative (up to
// rounding at interval endpoints); outside it at least one is negative.
// Requires F distinct.
Vec3 normal_square_quotients(const Spectrum3& F, const Spectrum3& G,
                             double lambda);

// The quotients with the [-1e-10, 0) rounding band clamped to zero.
// Fails with NotAdmissible when a component is negative beyond the band.
Vec3 normal_squares(const Spectrum3& F, const Spectrum3& G, double lambda);

struct RankOneConnection {
  Spectrum3 F, G;
  double lambda;
  Vec3 n_sq;  // clamped squares, sum 1 within 1e-12
  Vec3 n;     // componentwise nonnegative representative
};

// Validates admissibility of lambda and the spectral reconstruction
// eigen_spectrum(lambda diag(F) + (1 - lambda) n (x) n) == G within 1e-9.
RankOneConnection connect(const Spectrum3& F, const Spectrum3& G,
                          double lambda);

struct TrajectoryPoint {
  double t, eta;
  Spectrum3 spectrum;
  InvariantPair inv;
};

// Point of the lamination segment at parameter t in [0, 1]; t = 0 gives F,
// t = 1 gives G.
TrajectoryPoint trajectory(const RankOneConnection& conn, double t);

// Closed-form (i2, i3) path of the trajectory, no eigendecomposition.
InvariantPair invariant_path(double lambda, double t, double xF, double xG,
                             double yF, double yG);

struct Velocity {
  double x_dot, y_dot;
};
// d/dt of invariant_path at (lambda, t).
Velocity velocity(double lambda, double t, double xF, double xG, double yF,
                  double yG);

// The three rational first integrals w_k(xi1, xi2, xi3); k in {1, 2, 3}.
// Along a trajectory, w_k(eta(lambda,t), x_F, x(t)) is independent of t.
double conserved_w(int k, double xi1, double xi2, double xi3);

}  // namespace lamhull
