#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "prolab/convex_hull.hpp"
#include "prolab/data.hpp"
#include "prolab/difference.hpp"
#include "prolab/spaces.hpp"

namespace prolab {

struct BoundingBox {
  Vec3d lo;
  Vec3d hi;

  double volume() const { return (hi - lo).prod(); }
};

/// Convex polyhedron in CIELAB with inward half-space faces.
class GamutHull {
 public:
  static constexpr double kContainsTolerance = 1e-9;

  explicit GamutHull(Polyhedron poly);

  const std::vector<Vec3d>& vertices() const { return poly_.vertices; }
  const std::vector<HalfSpace>& faces() const { return poly_.faces; }
  const std::vector<std::array<int, 3>>& triangles() const { return poly_.triangles; }
  const BoundingBox& bbox() const { return bbox_; }

  bool contains(const Vec3d& c) const;
  double volume() const { return volume_; }
  Vec3d centroid() const { return centroid_; }
  /// FNV-1a over vertex coordinates and triangle indices.
  std::uint64_t checksum() const { return checksum_; }

 private:
  Polyhedron poly_;
  BoundingBox bbox_;
  double volume_;
  Vec3d centroid_;
  std::uint64_t checksum_;
};

inline bool contains(const GamutHull& hull, const Vec3d& c) { return hull.contains(c); }

/// XYZ of band-pass and band-stop (circular band) reflectances: starts on a
/// grid of `resolution` positions and widths on `resolution + 1`, both
/// continuous in wavelength. Normalised so the perfect reflector equals
/// `white` exactly.
std::vector<Vec3d> optimal_colors_xyz(const SpectralTables& tables, int resolution,
                                      const WhitePoint& white);

/// Object-colour solid of the illuminant in `tables`, hulled in CIELAB.
/// Throws InvalidArgument when resolution < 8.
GamutHull build_gamut(const SpectralTables& tables, int resolution,
                      const WhitePoint& white = WhitePoint::d65());
GamutHull build_d65_gamut(int resolution);

using ColorPredicate = std::function<bool(const Vec3d&)>;

struct ColorSample {
  std::uint64_t seed;
  std::vector<Vec3d> colors;
};

struct PairSample {
  std::uint64_t seed;
  std::vector<LabPair> pairs;
};

/// n points uniform in the hull (optionally restricted by `accept`), by
/// rejection from the bounding box. Chunk k of kChunkSize points is drawn
/// from Rng::split(seed, k), so results do not depend on the thread count.
/// Throws InvalidArgument for n == 0 and RejectionStall when acceptance
/// drops below 1e-4.
ColorSample sample_colors(const GamutHull& hull, std::size_t n, std::uint64_t seed,
                          const ColorPredicate& accept = {});

/// 2n colours paired consecutively.
PairSample sample_pairs(const GamutHull& hull, std::size_t n, std::uint64_t seed,
                        const ColorPredicate& accept = {});

/// Inside the hull and with non-negative deviceRGB response.
ColorPredicate reproducible_subgamut_filter(const GamutHull& hull,
                                            const DeviceCalibration& cal,
                                            const ColorSpaces& spaces = ColorSpaces::standard());

void write_off(std::ostream& out, const GamutHull& hull);
void write_sample_csv(std::ostream& out, const ColorSample& sample, const GamutHull& hull);
void write_sample_csv(std::ostream& out, const PairSample& sample, const GamutHull& hull);

}  // namespace prolab
