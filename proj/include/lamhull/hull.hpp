// The closed boundary curve Gamma in the unit-trace plane and membership
// queries for the region it encloses.
//
// Gamma is assembled from the two optimal branches through the base
// spectrum S: the alpha arc is reflected across the image of {m1 = m2},
// the beta arc across the image of {m2 = m3}, and the four arcs are
// unioned with their two 2pi/3 rotations, giving twelve arcs that chain
// into one closed curve through the six permutations of S and the six
// orbit points of the uniaxial endpoints. All plane isometries are exact
// 2x2 maps in the fixed (u, v) basis.

#pragma once

#include <vector>

#include "lamhull/curves.hpp"
#include "lamhull/spectra.hpp"

namespace lamhull {

inline constexpr double kDefaultBoundaryTol = 1e-7;

enum class Membership { inside, boundary, outside };

inline const char* membership_name(Membership m) {
  switch (m) {
    case Membership::inside: return "Inside";
    case Membership::boundary: return "Boundary";
    case Membership::outside: return "Outside";
  }
  return "?";
}

struct HullVertex {
  PlanePoint2 p;
  Vec3 m;  // the matching eigenvalue triple, in orbit (unsorted) order
};

struct Classification {
  Membership membership;
  // Distance from the query to the polygon boundary; exact near the
  // boundary, a same-angle upper bound far from it.
  double boundary_distance;
};

// Closed simple polygon approximating Gamma, counterclockwise, without a
// repeated closing vertex. Immutable after construction; queries are
// thread-safe.
class HullPolygon {
 public:
  const std::vector<HullVertex>& vertices() const { return verts_; }
  int resolution() const { return resolution_; }
  double boundary_tol() const { return boundary_tol_; }

  // Membership of the (canonically sorted) spectrum's plane image.
  // Boundary when the distance to the polyline is <= boundary_tol.
  Classification classify(const Spectrum3& sp) const;
  Classification classify_point(const PlanePoint2& p) const;

 private:
  friend HullPolygon build_gamma(const Spectrum3&, int, double);
  HullPolygon() = default;

  int segment_floor(double angle) const;
  double window_distance(const PlanePoint2& p, int center) const;

  std::vector<HullVertex> verts_;
  std::vector<double> angle_;  // vertex angles, unwrapped to be increasing
  int resolution_ = 0;
  double boundary_tol_ = kDefaultBoundaryTol;
  double angle0_ = 0.0;
  bool star_ = false;  // vertex angles strictly increase around the origin
};

// Builds Gamma from n >= 16 samples per branch arc. Fails with
// StitchFailure when consecutive arcs do not meet within 1e-8 or when a
// symmetry/containment validation fails.
HullPolygon build_gamma(const Spectrum3& S, int samples_per_branch,
                        double boundary_tol = kDefaultBoundaryTol);

// Convex hexagon through the six permutations of S, counterclockwise.
struct Hexagon {
  std::array<HullVertex, 6> verts;
  // Signed inset of p: >= 0 inside, < 0 outside, in plane units.
  double inset(const PlanePoint2& p) const;
};

Hexagon hexagon(const Spectrum3& S);

}  // namespace lamhull
