#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prolab/gamut.hpp"
#include "prolab/noise.hpp"

namespace prolab {

/// Numeric table written as CSV with full precision.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write(std::ostream& out) const;
};

/// sRGB cube boundary in the target space. Columns: element (0 = edge,
/// 1 = face), index, u, v, c0, c1, c2. Edges carry `steps + 1` samples and
/// faces a (steps + 1)² grid.
CsvTable srgb_cube(ColorSpaceId target, int steps = 16,
                   const ColorSpaces& spaces = ColorSpaces::standard());

/// The 8 sRGB cube corners, ordered by bits (r = bit 0, g = bit 1, b = bit 2).
std::vector<Vec3d> srgb_cube_corners(ColorSpaceId target,
                                     const ColorSpaces& spaces = ColorSpaces::standard());

/// Hull vertices converted to the target. Columns: vertex, c0, c1, c2.
CsvTable gamut_vertices(const GamutHull& hull, ColorSpaceId target,
                        const ColorSpaces& spaces = ColorSpaces::standard());
/// Hull triangles. Columns: face, v0, v1, v2.
CsvTable gamut_triangles(const GamutHull& hull);

/// MacAdam ellipses at L* = 50, scaled by `scale`, pushed through the
/// target's linearisation at each centre. Columns: ellipse, point, c0, c1,
/// c2; point 0 is the centre, 1..points the contour.
CsvTable macadam_ellipses(ColorSpaceId target, double scale = 10.0, int points = 64,
                          const ColorSpaces& spaces = ColorSpaces::standard());

/// (Euclidean difference in target, CIEDE2000) per pair. Columns: de_space, de00.
CsvTable difference_scatter_table(ColorSpaceId target, const PairCache& cache,
                                  const ColorSpaces& spaces = ColorSpaces::standard());

/// Noise ellipsoid frames for CIELAB colours. Columns: c0, c1, c2, s0, s1,
/// s2, then axis k's components as e<k>0, e<k>1, e<k>2.
CsvTable noise_frames(ColorSpaceId target, const std::vector<Vec3d>& lab, const NoiseModel& nm,
                      const ColorSpaces& spaces = ColorSpaces::standard());

}  // namespace prolab
