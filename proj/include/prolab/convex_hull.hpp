#pragma once

#include <array>
#include <span>
#include <vector>

#include "prolab/geometry.hpp"

namespace prolab {

/// Inside iff normal·x + offset >= 0; normal has unit length.
struct HalfSpace {
  Vec3d normal;
  double offset;

  double signed_distance(const Vec3d& x) const { return normal.dot(x) + offset; }
};

struct Polyhedron {
  std::vector<Vec3d> vertices;
  /// Outward-oriented (counter-clockwise seen from outside) vertex triples.
  std::vector<std::array<int, 3>> triangles;
  /// One inward half-space per triangle.
  std::vector<HalfSpace> faces;
};

/// 3D quickhull. Inputs are snapped to a dyadic grid of 2^-36 times their
/// largest magnitude and all orientation tests are exact on that grid, so the
/// result is convex and contains every snapped input. Coplanar points are not
/// emitted as vertices. Throws InvalidArgument when the points are coplanar.
Polyhedron convex_hull(std::span<const Vec3d> points);

/// Volume enclosed by a closed, outward-oriented triangle mesh.
double mesh_volume(const Polyhedron& p);
/// Centroid of the solid enclosed by the mesh.
Vec3d mesh_centroid(const Polyhedron& p);

}  // namespace prolab
