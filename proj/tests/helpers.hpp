#pragma once

#include <array>
#include <optional>
#include <utility>

#include "lamhull/error.hpp"

namespace testutil {

template <class F>
std::optional<lamhull::Errc> thrown_code(F&& f) {
  try {
    std::forward<F>(f)();
  } catch (const lamhull::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

using Mat3 = std::array<std::array<double, 3>, 3>;

inline Mat3 mat_mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

// Rotation from three angles, enough to cover SO(3) for test purposes.
inline Mat3 rotation(double a, double b, double c) {
  using std::cos, std::sin;
  const Mat3 rz{{{cos(a), -sin(a), 0}, {sin(a), cos(a), 0}, {0, 0, 1}}};
  const Mat3 ry{{{cos(b), 0, sin(b)}, {0, 1, 0}, {-sin(b), 0, cos(b)}}};
  const Mat3 rx{{{1, 0, 0}, {0, cos(c), -sin(c)}, {0, sin(c), cos(c)}}};
  return mat_mul(rz, mat_mul(ry, rx));
}

// R diag(d) R^t.
inline Mat3 conjugate_diag(const Mat3& r, const std::array<double, 3>& d) {
  Mat3 rd{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) rd[i][j] = r[i][j] * d[j];
  }
  Mat3 rt{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) rt[i][j] = r[j][i];
  }
  return mat_mul(rd, rt);
}

}  // namespace testutil
