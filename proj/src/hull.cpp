#include "lamhull/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

namespace lamhull {

namespace {

constexpr double kStitchTol = 1e-8;
constexpr double kDedupTol = 1e-10;
constexpr double kSymmetryTol = 1e-9;
constexpr double kHexSlack = 1e-12;
const double kHalfSqrt3 = 0.5 * std::numbers::sqrt3;

struct PlaneMap {
  // Row-major 2x2 matrix and the matching index permutation of the triple.
  double a, b, c, d;
  std::array<int, 3> perm;

  HullVertex apply(const HullVertex& v) const {
    return {{a * v.p.u + b * v.p.v, c * v.p.u + d * v.p.v},
            {v.m[perm[0]], v.m[perm[1]], v.m[perm[2]]}};
  }
};

// Reflection across the image of {m1 = m2}: u flips.
const PlaneMap kReflect12{-1.0, 0.0, 0.0, 1.0, {1, 0, 2}};
// Reflection across the image of {m2 = m3}.
const PlaneMap kReflect23{0.5, kHalfSqrt3, kHalfSqrt3, -0.5, {0, 2, 1}};
// Rotation by 2pi/3, matching the cyclic shift (m1,m2,m3) -> (m3,m1,m2).
const PlaneMap kRotate{-0.5, -kHalfSqrt3, kHalfSqrt3, -0.5, {2, 0, 1}};

using Arc = std::vector<HullVertex>;

Arc map_arc(const PlaneMap& T, const Arc& arc) {
  Arc out;
  out.reserve(arc.size());
  for (const auto& v : arc) out.push_back(T.apply(v));
  return out;
}

Arc reversed(Arc arc) {
  std::reverse(arc.begin(), arc.end());
  return arc;
}

double dist(const PlanePoint2& a, const PlanePoint2& b) {
  return std::hypot(a.u - b.u, a.v - b.v);
}

Arc embed_samples(const std::vector<CurveSample>& samples) {
  Arc out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    out.push_back({embed_plane(s.spectrum), s.spectrum.values()});
  }
  return out;
}

// Chains the arcs end-to-start into one closed vertex loop, dropping the
// duplicated joint vertices.
std::vector<HullVertex> stitch(std::vector<Arc> arcs) {
  std::vector<HullVertex> chain = std::move(arcs.front());
  std::vector<bool> used(arcs.size(), false);
  used[0] = true;
  for (size_t step = 1; step < arcs.size(); ++step) {
    const PlanePoint2 tail = chain.back().p;
    size_t best = arcs.size();
    bool flip = false;
    double best_gap = kStitchTol;
    for (size_t i = 1; i < arcs.size(); ++i) {
      if (used[i]) continue;
      const double g0 = dist(arcs[i].front().p, tail);
      const double g1 = dist(arcs[i].back().p, tail);
      if (g0 <= best_gap) best = i, flip = false, best_gap = g0;
      if (g1 < best_gap) best = i, flip = true, best_gap = g1;
    }
    if (best == arcs.size()) {
      fail(Errc::stitch_failure,
           "no arc continues the chain at step " + std::to_string(step));
    }
    used[best] = true;
    Arc next = flip ? reversed(std::move(arcs[best])) : std::move(arcs[best]);
    size_t skip = 0;
    while (skip < next.size() &&
           dist(next[skip].p, chain.back().p) <= kDedupTol) {
      ++skip;
    }
    if (skip == 0) {
      fail(Errc::stitch_failure, "joint vertices fail to coincide");
    }
    chain.insert(chain.end(), next.begin() + skip, next.end());
  }
  if (dist(chain.front().p, chain.back().p) > kStitchTol) {
    fail(Errc::stitch_failure, "chain does not close");
  }
  while (chain.size() > 1 &&
         dist(chain.front().p, chain.back().p) <= kDedupTol) {
    chain.pop_back();
  }
  return chain;
}

double signed_area(const std::vector<HullVertex>& v) {
  double twice = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i].p;
    const auto& b = v[(i + 1) % v.size()].p;
    twice += a.u * b.v - b.u * a.v;
  }
  return 0.5 * twice;
}

double cross(const PlanePoint2& a, const PlanePoint2& b) {
  return a.u * b.v - a.v * b.u;
}

double point_segment_distance(const PlanePoint2& p, const PlanePoint2& a,
                              const PlanePoint2& b) {
  const double du = b.u - a.u, dv = b.v - a.v;
  const double len2 = du * du + dv * dv;
  double s = 0.0;
  if (len2 > 0.0) {
    s = std::clamp(((p.u - a.u) * du + (p.v - a.v) * dv) / len2, 0.0, 1.0);
  }
  return std::hypot(p.u - (a.u + s * du), p.v - (a.v + s * dv));
}

// Bucketed all-pairs proper-intersection test between non-adjacent edges.
void validate_simple(const std::vector<HullVertex>& v) {
  const size_t n = v.size();
  double max_len = 0.0, min_u = 1e300, max_u = -1e300, min_v = 1e300;
  for (size_t i = 0; i < n; ++i) {
    max_len = std::max(max_len, dist(v[i].p, v[(i + 1) % n].p));
    min_u = std::min(min_u, v[i].p.u);
    max_u = std::max(max_u, v[i].p.u);
    min_v = std::min(min_v, v[i].p.v);
  }
  const double cell = std::max(2.0 * max_len, 1e-12);
  auto key = [&](double x, double y) {
    const long long cx = static_cast<long long>(std::floor((x - min_u) / cell));
    const long long cy = static_cast<long long>(std::floor((y - min_v) / cell));
    return cx * 1000003LL + cy;
  };
  std::unordered_map<long long, std::vector<size_t>> buckets;
  for (size_t i = 0; i < n; ++i) {
    const auto& a = v[i].p;
    const auto& b = v[(i + 1) % n].p;
    const long long ka = key(a.u, a.v), kb = key(b.u, b.v);
    buckets[ka].push_back(i);
    if (kb != ka) buckets[kb].push_back(i);
  }
  auto proper_cross = [&](size_t i, size_t j) {
    const PlanePoint2 a = v[i].p, b = v[(i + 1) % n].p;
    const PlanePoint2 c = v[j].p, d = v[(j + 1) % n].p;
    auto orient = [](const PlanePoint2& p, const PlanePoint2& q,
                     const PlanePoint2& r) {
      return (q.u - p.u) * (r.v - p.v) - (q.v - p.v) * (r.u - p.u);
    };
    const double o1 = orient(a, b, c), o2 = orient(a, b, d);
    const double o3 = orient(c, d, a), o4 = orient(c, d, b);
    return o1 * o2 < 0.0 && o3 * o4 < 0.0;
  };
  // Neighboring cells can still hold a crossing pair, so each edge is also
  // tested against the 8 surrounding buckets of both its endpoints.
  for (size_t i = 0; i < n; ++i) {
    for (const PlanePoint2& e : {v[i].p, v[(i + 1) % n].p}) {
      for (int dx = -1; dx <= 1; ++dx) {
        for (int dy = -1; dy <= 1; ++dy) {
          const auto it =
              buckets.find(key(e.u + dx * cell, e.v + dy * cell));
          if (it == buckets.end()) continue;
          for (size_t j : it->second) {
            if (j <= i) continue;
            const size_t gap = std::min(j - i, n - (j - i));
            if (gap <= 1) continue;
            if (proper_cross(i, j)) {
              fail(Errc::stitch_failure,
                   "edges " + std::to_string(i) + " and " +
                       std::to_string(j) + " cross");
            }
          }
        }
      }
    }
  }
}

}  // namespace

int HullPolygon::segment_floor(double angle) const {
  const double two_pi = 2.0 * std::numbers::pi;
  double a = angle0_ + std::fmod(angle - angle0_, two_pi);
  if (a < angle0_) a += two_pi;
  const auto it = std::upper_bound(angle_.begin(), angle_.end(), a);
  const int idx = static_cast<int>(it - angle_.begin()) - 1;
  return std::clamp(idx, 0, static_cast<int>(verts_.size()) - 1);
}

double HullPolygon::window_distance(const PlanePoint2& p, int center) const {
  const int n = static_cast<int>(verts_.size());
  double best = 1e300;
  for (int k = center - 8; k <= center + 8; ++k) {
    const int i = ((k % n) + n) % n;
    best = std::min(best, point_segment_distance(p, verts_[i].p,
                                                 verts_[(i + 1) % n].p));
  }
  return best;
}

Classification HullPolygon::classify_point(const PlanePoint2& p) const {
  const int n = static_cast<int>(verts_.size());
  if (star_) {
    const double r = std::hypot(p.u, p.v);
    if (r < 1e-15) {
      return {Membership::inside, window_distance(p, segment_floor(0.0))};
    }
    const int k = segment_floor(std::atan2(p.v, p.u));
    const double d = window_distance(p, k);
    if (d <= boundary_tol_) return {Membership::boundary, d};
    // Star-shaped about the origin: compare |p| against the boundary radius
    // along the same ray.
    const PlanePoint2 a = verts_[k].p, b = verts_[(k + 1) % n].p;
    const double ca = cross(a, p), cb = cross(b, p);
    double s = 0.5;
    if (ca != cb) s = std::clamp(ca / (ca - cb), 0.0, 1.0);
    const double rc = ((1.0 - s) * a.u + s * b.u) * (p.u / r) +
                      ((1.0 - s) * a.v + s * b.v) * (p.v / r);
    return {r <= rc ? Membership::inside : Membership::outside, d};
  }
  double best = 1e300;
  int winding = 0;
  for (int i = 0; i < n; ++i) {
    const PlanePoint2 a = verts_[i].p, b = verts_[(i + 1) % n].p;
    best = std::min(best, point_segment_distance(p, a, b));
    if (a.v <= p.v) {
      if (b.v > p.v &&
          (b.u - a.u) * (p.v - a.v) - (p.u - a.u) * (b.v - a.v) > 0.0) {
        ++winding;
      }
    } else if (b.v <= p.v &&
               (b.u - a.u) * (p.v - a.v) - (p.u - a.u) * (b.v - a.v) < 0.0) {
      --winding;
    }
  }
  if (best <= boundary_tol_) return {Membership::boundary, best};
  return {winding != 0 ? Membership::inside : Membership::outside, best};
}

Classification HullPolygon::classify(const Spectrum3& sp) const {
  return classify_point(embed_plane(sp));
}

HullPolygon build_gamma(const Spectrum3& S, int samples_per_branch,
                        double boundary_tol) {
  if (samples_per_branch < 16) {
    fail(Errc::config_error, "need at least 16 samples per branch");
  }
  if (!(boundary_tol > 0.0)) {
    fail(Errc::config_error, "boundary tolerance must be positive");
  }
  const OptimalCurves C(S);
  const Arc arc_a = embed_samples(C.sample(Branch::alpha, samples_per_branch));
  const Arc arc_b = embed_samples(C.sample(Branch::beta, samples_per_branch));

  // Lobe = branch arc continued through its uniaxial endpoint by the
  // reflection that fixes that endpoint.
  Arc lobe_a = arc_a;
  {
    Arc back = reversed(map_arc(kReflect12, arc_a));
    lobe_a.insert(lobe_a.end(), back.begin() + 1, back.end());
  }
  Arc lobe_b = arc_b;
  {
    Arc back = reversed(map_arc(kReflect23, arc_b));
    lobe_b.insert(lobe_b.end(), back.begin() + 1, back.end());
  }

  std::vector<Arc> arcs{lobe_a, lobe_b};
  arcs.push_back(map_arc(kRotate, lobe_a));
  arcs.push_back(map_arc(kRotate, lobe_b));
  arcs.push_back(map_arc(kRotate, arcs[2]));
  arcs.push_back(map_arc(kRotate, arcs[3]));

  HullPolygon P;
  P.verts_ = stitch(std::move(arcs));
  P.resolution_ = samples_per_branch;
  P.boundary_tol_ = boundary_tol;
  if (signed_area(P.verts_) < 0.0) {
    std::reverse(P.verts_.begin(), P.verts_.end());
  }

  const size_t expect = 12 * static_cast<size_t>(samples_per_branch) - 12;
  if (P.verts_.size() != expect) {
    fail(Errc::stitch_failure,
         "stitched " + std::to_string(P.verts_.size()) + " vertices, expected " +
             std::to_string(expect));
  }

  // Angular index; the polygon is star-shaped about the isotropic image
  // (the origin) for every spectrum we have met, but membership falls back
  // to a full winding scan when the angles fail to be cyclically monotone.
  const size_t n = P.verts_.size();
  size_t start = 0;
  {
    std::vector<double> raw(n);
    for (size_t i = 0; i < n; ++i) {
      raw[i] = std::atan2(P.verts_[i].p.v, P.verts_[i].p.u);
    }
    for (size_t i = 1; i < n; ++i) {
      if (raw[i] < raw[start]) start = i;
    }
    std::rotate(P.verts_.begin(), P.verts_.begin() + start, P.verts_.end());
    std::rotate(raw.begin(), raw.begin() + start, raw.end());
    P.star_ = true;
    P.angle_.resize(n);
    P.angle_[0] = raw[0];
    for (size_t i = 1; i < n && P.star_; ++i) {
      P.angle_[i] = raw[i];
      if (!(P.angle_[i] > P.angle_[i - 1])) P.star_ = false;
    }
    P.angle0_ = P.angle_.front();
    if (!P.star_) P.angle_.clear();
  }

  // Validations: S-permutation incidence, symmetry, hexagon containment,
  // simplicity.
  auto nearest_vertex = [&](const PlanePoint2& q) {
    double best = 1e300;
    if (P.star_) {
      const int k = P.segment_floor(std::atan2(q.v, q.u));
      const int m = static_cast<int>(n);
      for (int j = k - 8; j <= k + 9; ++j) {
        best = std::min(best, dist(q, P.verts_[((j % m) + m) % m].p));
      }
    } else {
      for (const auto& w : P.verts_) best = std::min(best, dist(q, w.p));
    }
    return best;
  };

  std::array<double, 3> perm = S.values();
  std::sort(perm.begin(), perm.end());
  int hits = 0;
  do {
    if (nearest_vertex(embed_plane(perm[0], perm[1], perm[2])) <= kSymmetryTol)
      ++hits;
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (hits != 6) {
    fail(Errc::stitch_failure,
         "polygon misses " + std::to_string(6 - hits) +
             " base-spectrum permutations");
  }

  for (const PlaneMap* T : {&kRotate, &kReflect23}) {
    for (const auto& w : P.verts_) {
      if (nearest_vertex(T->apply(w).p) > kSymmetryTol) {
        fail(Errc::stitch_failure, "vertex set is not symmetric");
      }
    }
  }

  const Hexagon H = hexagon(S);
  for (const auto& w : P.verts_) {
    if (H.inset(w.p) < -kHexSlack) {
      fail(Errc::stitch_failure, "vertex escapes the permutation hexagon");
    }
  }

  validate_simple(P.verts_);
  return P;
}

double Hexagon::inset(const PlanePoint2& p) const {
  double worst = 1e300;
  for (size_t i = 0; i < verts.size(); ++i) {
    const PlanePoint2 a = verts[i].p, b = verts[(i + 1) % verts.size()].p;
    const double len = dist(a, b);
    const double c =
        ((b.u - a.u) * (p.v - a.v) - (b.v - a.v) * (p.u - a.u)) / len;
    worst = std::min(worst, c);
  }
  return worst;
}

Hexagon hexagon(const Spectrum3& S) {
  if (!S.distinct) {
    fail(Errc::not_distinct, "hexagon needs three distinct eigenvalues");
  }
  std::array<double, 3> m = S.values();
  std::sort(m.begin(), m.end());
  std::vector<HullVertex> pts;
  do {
    pts.push_back({embed_plane(m[0], m[1], m[2]), {m[0], m[1], m[2]}});
  } while (std::next_permutation(m.begin(), m.end()));
  std::sort(pts.begin(), pts.end(), [](const HullVertex& a,
                                       const HullVertex& b) {
    return std::atan2(a.p.v, a.p.u) < std::atan2(b.p.v, b.p.u);
  });
  Hexagon H;
  std::copy(pts.begin(), pts.end(), H.verts.begin());
  for (size_t i = 0; i < 6; ++i) {
    const PlanePoint2 a = H.verts[i].p, b = H.verts[(i + 1) % 6].p;
    const PlanePoint2 c = H.verts[(i + 2) % 6].p;
    const double turn =
        (b.u - a.u) * (c.v - b.v) - (b.v - a.v) * (c.u - b.u);
    if (turn < -1e-15) {
      fail(Errc::ordering_violation, "hexagon vertices are not convex");
    }
  }
  return H;
}

}  // namespace lamhull
