#pragma once

#include <array>

#include "lamhull/error.hpp"

// Spectra of unit-trace positive symmetric 3x3 matrices and the fixed
// isometric embedding of the unit-trace plane used everywhere else.
//
// Conventions:
//   - a Spectrum3 is always sorted ascending and renormalized to exact unit
//     trace on construction;
//   - the plane coordinates are u = (m1 - m2)/sqrt(2),
//     v = (m1 + m2 - 2 m3)/sqrt(6), an isometry of {m1 + m2 + m3 = 1} that
//     sends the reflection across {m1 = m2} to u -> -u.

namespace lamhull {

inline constexpr double kTraceTol = 1e-9;
// Two eigenvalues count as distinct when their gap exceeds this fraction of
// the largest eigenvalue.
inline constexpr double kDistinctRelGap = 1e-9;

struct Spectrum3 {
  double m1, m2, m3;  // ascending
  bool distinct;      // all pairwise gaps above the relative threshold

  double operator[](int i) const { return i == 0 ? m1 : (i == 1 ? m2 : m3); }
  std::array<double, 3> values() const { return {m1, m2, m3}; }
};

// Sorts, validates positivity and unit trace (within kTraceTol), and
// renormalizes so the components sum to 1 exactly.
Spectrum3 make_spectrum(double v1, double v2, double v3);

struct Invariants3 {
  double i1, i2, i3;  // elementary symmetric functions
};
Invariants3 invariants(const Spectrum3& sp);

// (i2, i3) pair; i1 is identically 1 on the unit-trace plane.
struct InvariantPair {
  double x, y;
};
InvariantPair invariant_pair(const Spectrum3& sp);

// Symmetric 3x3 matrix, upper triangle storage.
struct SymMat3 {
  double a11, a22, a33, a12, a13, a23;

  static SymMat3 diagonal(const Spectrum3& sp) {
    return {sp.m1, sp.m2, sp.m3, 0.0, 0.0, 0.0};
  }
  double trace() const { return a11 + a22 + a33; }
};

// eta * diag(F) + (1 - eta) * n (x) n for a unit vector n.
SymMat3 mix_with_rank_one(double eta, const Spectrum3& F,
                          const std::array<double, 3>& n);

// Sorted eigenvalues of a unit-trace symmetric matrix with positive
// spectrum, computed by cyclic Jacobi sweeps. Backward stable, so the
// absolute error stays near machine epsilon even when eigenvalues
// coincide (the closed-form Cardano route drifts to ~1e-9 there, which
// the reconstruction checks cannot afford).
Spectrum3 eigen_spectrum(const SymMat3& M);

struct PlanePoint2 {
  double u, v;
};

PlanePoint2 embed_plane(double m1, double m2, double m3);
PlanePoint2 embed_plane(const Spectrum3& sp);
// Inverse on the unit-trace plane.
std::array<double, 3> unembed_plane(const PlanePoint2& p);

}  // namespace lamhull
