// Reference values and independent mini-oracles for the tests.
//
// The golden constants were computed once with 40-digit arbitrary-precision
// arithmetic from the defining equations (quadratic for the branch roots,
// product formulas for the normal squares, elementary symmetric functions
// for the invariants) and frozen here at 17 significant digits. Tests
// compare against these, never against values produced by the code under
// test.

#pragma once

#include <array>
#include <cmath>
#include <vector>

namespace oracle {

// Base spectrum S = (0.2, 0.3, 0.5).
inline constexpr double kS1 = 0.2, kS2 = 0.3, kS3 = 0.5;

// Roots of 6 s2 x^2 + (s1 s3 - 3 s2 - 4 s2^2) x + 2 s2^2.
inline constexpr double kUAlpha = 0.26035817374633309;
inline constexpr double kUBeta = 0.38408627069811135;

// Branch factors u / s2.
inline constexpr double kAlpha = 0.86786057915444363;
inline constexpr double kBeta = 1.2802875689937045;

// Uniaxial endpoints.
inline constexpr std::array<double, 3> kUAlphaSpec = {
    0.26035817374633309, 0.26035817374633309, 0.47928365250733382};
inline constexpr std::array<double, 3> kUBetaSpec = {
    0.23182745860377729, 0.38408627069811135, 0.38408627069811135};

// Normal squares of the two optimal connections.
inline constexpr std::array<double, 3> kNAlphaSq = {
    0.77118429085533479, 0.0, 0.22881570914466521};
inline constexpr std::array<double, 3> kNBetaSq = {
    0.028815709144665205, 0.0, 0.97118429085533479};

// Invariants.
inline constexpr double kXS = 0.31, kYS = 0.03;
inline constexpr double kI2UAlpha = 0.31735721158308887;
inline constexpr double kI3UAlpha = 0.032488903143159174;
inline constexpr double kI2UBeta = 0.32560575137987409;
inline constexpr double kI3UBeta = 0.034199711397307219;

// Invariant-plane slopes 3 s2 (1-2u)/(2-3u) at the base point.
inline constexpr double kSlopeAlpha = 0.35388159060803247;
inline constexpr double kSlopeBeta = 0.24611840939196753;

// Normalized slope at lambda = alpha on the S -> U_alpha pair: 3 s2/u_alpha.
inline constexpr double kTauOpt = 3.4567764362830022;

// eta(alpha, 1/2) and the alpha-branch level e2 there.
inline constexpr double kEtaAlphaHalf = 0.92925627195078223;
inline constexpr double kE2AlphaHalf = 0.27877688158523467;

// Conserved quantities along the optimal trajectories.
inline constexpr double kW2AlphaPath = 0.73135528725660044;
inline constexpr double kW3AlphaPath = 0.12940658617698013;
inline constexpr double kW2BetaPath = 0.50864471274339956;
inline constexpr double kW3BetaPath = 0.062593413823019868;

// Angle diagnostics: the printed quotient (literal reading) against the
// value derived from the normal squares.
inline constexpr double kLitNumAlpha = 0.079820913126833455;
inline constexpr double kLitDenAlpha = 0.011892547876100073;
inline constexpr double kLitRatioAlpha = 6.7118429085533479;
inline constexpr double kLitRatioBeta = -0.71184290855334795;
inline constexpr double kDerivedCos2PhiAlpha = 0.54236858171066959;
inline constexpr double kDerivedCos2PhiBeta = -0.94236858171066959;
inline constexpr double kDerivedCos2ThetaAlpha = 0.8618910167155588;
// The beta-branch theta expression carries a leading minus.
inline constexpr double kDerivedCos2ThetaBeta = 0.78781694264148473;

// s1 + 2 s2 - 3 u_alpha.
inline constexpr double kBaseMargin = 0.018925478761000731;

// Plane embedding of S.
inline constexpr double kEmbedSU = -0.070710678118654752;
inline constexpr double kEmbedSV = -0.20412414523193151;

// Self-connection normal squares at lambda = 2/3 for (S, S).
inline constexpr std::array<double, 3> kNsqSelfTwoThirds = {11.0 / 12.0, 0.0,
                                                            1.0 / 12.0};

// The beta interval of the pair (S, U_alpha) collapses to u_alpha / s1.
inline constexpr double kBetaDegenerateSUa = 1.3017908687316655;

// Outside checkpoints of Figure 1.
inline constexpr std::array<double, 3> kCAlpha = {0.25, 0.25, 0.5};
inline constexpr std::array<double, 3> kCBeta = {0.2, 0.4, 0.4};

// Long-double quadratic solver, an independent route to the branch roots.
inline std::array<long double, 2> quad_roots(long double a, long double b,
                                             long double c) {
  const long double disc = b * b - 4.0L * a * c;
  const long double root = std::sqrt(disc);
  const long double q = -0.5L * (b + std::copysign(root, b));
  long double r1 = q / a, r2 = c / q;
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

// Ray-casting membership oracle, deliberately different from the library's
// classifier. Points on the boundary are undefined; callers keep clear.
inline bool ray_cast_inside(const std::vector<std::array<double, 2>>& poly,
                            double x, double y) {
  bool in = false;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = poly[i][0], yi = poly[i][1];
    const double xj = poly[j][0], yj = poly[j][1];
    if ((yi > y) != (yj > y) &&
        x < (xj - xi) * (y - yi) / (yj - yi) + xi) {
      in = !in;
    }
  }
  return in;
}

// Brute-force distance to a closed polygon.
inline double polygon_distance(const std::vector<std::array<double, 2>>& poly,
                               double x, double y) {
  double best = 1e300;
  const size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const double ax = poly[j][0], ay = poly[j][1];
    const double bx = poly[i][0], by = poly[i][1];
    const double dx = bx - ax, dy = by - ay;
    const double len2 = dx * dx + dy * dy;
    double s = len2 > 0.0 ? ((x - ax) * dx + (y - ay) * dy) / len2 : 0.0;
    s = std::min(1.0, std::max(0.0, s));
    const double px = ax + s * dx - x, py = ay + s * dy - y;
    best = std::min(best, std::sqrt(px * px + py * py));
  }
  return best;
}

}  // namespace oracle
