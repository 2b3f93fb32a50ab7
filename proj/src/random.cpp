#include "lamhull/random.hpp"

#include <algorithm>

namespace lamhull {

Spectrum3 random_spectrum(Rng& rng, double min_gap) {
  for (;;) {
    // Two sorted cuts of [0, 1] give a uniform point of the simplex.
    double a = rng.uniform(), b = rng.uniform();
    if (a > b) std::swap(a, b);
    const double v1 = a, v2 = b - a, v3 = 1.0 - b;
    const double lo = std::min({v1, v2, v3});
    const double mid = v1 + v2 + v3 - lo - std::max({v1, v2, v3});
    const double hi = std::max({v1, v2, v3});
    if (lo < 0.02) continue;
    if (mid - lo < min_gap || hi - mid < min_gap) continue;
    return make_spectrum(v1, v2, v3);
  }
}

}  // namespace lamhull
