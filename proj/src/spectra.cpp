#include "lamhull/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lamhull {

const char* errc_name(Errc c) noexcept {
  switch (c) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::non_positive: return "NonPositive";
    case Errc::trace_mismatch: return "TraceMismatch";
    case Errc::not_positive_definite: return "NotPositive";
    case Errc::not_distinct: return "NotDistinct";
    case Errc::degenerate_denominator: return "DegenerateDenominator";
    case Errc::degenerate_lambda: return "DegenerateLambda";
    case Errc::degenerate_xi1: return "DegenerateXi1";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::empty_admissible_set: return "EmptyAdmissibleSet";
    case Errc::reconstruction_mismatch: return "ReconstructionMismatch";
    case Errc::no_real_roots: return "NoRealRoots";
    case Errc::bracket_violation: return "BracketViolation";
    case Errc::optimality_violation: return "OptimalityViolation";
    case Errc::ordering_violation: return "OrderingViolation";
    case Errc::stitch_failure: return "StitchFailure";
    case Errc::mismatch_with_admissible_set: return "MismatchWithAdmissibleSet";
    case Errc::extremality_violation: return "ExtremalityViolation";
    case Errc::strictness_violation: return "StrictnessViolation";
    case Errc::unsupported: return "Unsupported";
    case Errc::io_error: return "IoError";
    case Errc::config_error: return "ConfigError";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

Spectrum3 make_spectrum(double v1, double v2, double v3) {
  const double v[3] = {v1, v2, v3};
  for (int i = 0; i < 3; ++i) {
    if (!(v[i] > 0.0)) {
      fail(Errc::non_positive, "spectrum component " + std::to_string(i + 1) +
                                   " = " + std::to_string(v[i]) +
                                   " must be positive");
    }
  }
  const double sum = v1 + v2 + v3;
  if (std::abs(sum - 1.0) > kTraceTol) {
    fail(Errc::trace_mismatch,
         "components sum to " + std::to_string(sum) + ", expected 1");
  }
  double m[3] = {v1 / sum, v2 / sum, v3 / sum};
  std::sort(m, m + 3);
  const double gap_tol = kDistinctRelGap * m[2];
  const bool distinct = (m[1] - m[0]) > gap_tol && (m[2] - m[1]) > gap_tol;
  return {m[0], m[1], m[2], distinct};
}

Invariants3 invariants(const Spectrum3& sp) {
  return {sp.m1 + sp.m2 + sp.m3,
          sp.m1 * sp.m2 + sp.m2 * sp.m3 + sp.m3 * sp.m1,
          sp.m1 * sp.m2 * sp.m3};
}

InvariantPair invariant_pair(const Spectrum3& sp) {
  const Invariants3 iv = invariants(sp);
  return {iv.i2, iv.i3};
}

SymMat3 mix_with_rank_one(double eta, const Spectrum3& F,
                          const std::array<double, 3>& n) {
  const double c = 1.0 - eta;
  return {eta * F.m1 + c * n[0] * n[0],
          eta * F.m2 + c * n[1] * n[1],
          eta * F.m3 + c * n[2] * n[2],
          c * n[0] * n[1],
          c * n[0] * n[2],
          c * n[1] * n[2]};
}

Spectrum3 eigen_spectrum(const SymMat3& M) {
  const double tr = M.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    fail(Errc::trace_mismatch,
         "matrix trace " + std::to_string(tr) + ", expected 1");
  }
  // Cyclic Jacobi sweeps. The closed-form (Cardano) route loses ~1e-9 of
  // absolute accuracy when two eigenvalues coincide, which is exactly the
  // uniaxial-target case the reconstruction checks exercise; Jacobi keeps
  // the error at the backward-stable level for any clustering.
  double d[3] = {M.a11, M.a22, M.a33};
  double o[3] = {M.a23, M.a13, M.a12};  // o[k] pairs the axes other than k
  for (int sweep = 0; sweep < 24; ++sweep) {
    const double off2 = o[0] * o[0] + o[1] * o[1] + o[2] * o[2];
    if (off2 < 1e-62) break;
    for (int k = 0; k < 3; ++k) {
      const int p = (k + 1) % 3, q = (k + 2) % 3;
      if (o[k] == 0.0) continue;
      const double theta = (d[q] - d[p]) / (2.0 * o[k]);
      const double t =
          std::copysign(1.0, theta) /
          (std::abs(theta) + std::sqrt(theta * theta + 1.0));
      const double c = 1.0 / std::sqrt(t * t + 1.0);
      const double s = t * c;
      d[p] -= t * o[k];
      d[q] += t * o[k];
      o[k] = 0.0;
      // o[q] holds the (k, p) entry and o[p] the (k, q) entry.
      const double op = o[p], oq = o[q];
      o[q] = c * oq - s * op;
      o[p] = s * oq + c * op;
    }
  }
  double e[3] = {d[0], d[1], d[2]};
  std::sort(e, e + 3);
  if (!(e[0] > 0.0)) {
    fail(Errc::not_positive_definite,
         "smallest eigenvalue " + std::to_string(e[0]) + " is not positive");
  }
  return make_spectrum(e[0], e[1], e[2]);
}

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
const double kInvSqrt6 = 1.0 / std::sqrt(6.0);
}  // namespace

PlanePoint2 embed_plane(double m1, double m2, double m3) {
  return {(m1 - m2) * kInvSqrt2, (m1 + m2 - 2.0 * m3) * kInvSqrt6};
}

PlanePoint2 embed_plane(const Spectrum3& sp) {
  return embed_plane(sp.m1, sp.m2, sp.m3);
}

std::array<double, 3> unembed_plane(const PlanePoint2& p) {
  const double third = 1.0 / 3.0;
  const double a = p.u * kInvSqrt2;  // (m1 - m2)/2
  const double b = p.v * kInvSqrt6;  // (m1 + m2 - 2 m3)/6
  // with m1 + m2 + m3 = 1: m3 = 1/3 - 2b, m1,2 = 1/3 + b +- a
  return {third + a + b, third - a + b, third - 2.0 * b};
}

}  // namespace lamhull
