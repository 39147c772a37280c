#include "prolab/plotdata.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "prolab/data.hpp"

namespace prolab {

void CsvTable::write(std::ostream& out) const {
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  const auto old = out.precision(17);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  out.precision(old);
}

namespace {

Vec3d from_srgb(ColorSpaceId target, const Vec3d& rgb, const ColorSpaces& spaces) {
  return spaces.from_xyz(target, spaces.to_xyz(ColorSpaceId::sRGB, rgb));
}

Vec3d corner(int bits) { return Vec3d(bits & 1, (bits >> 1) & 1, (bits >> 2) & 1); }

}  // namespace

std::vector<Vec3d> srgb_cube_corners(ColorSpaceId target, const ColorSpaces& spaces) {
  std::vector<Vec3d> out;
  for (int i = 0; i < 8; ++i) out.push_back(from_srgb(target, corner(i), spaces));
  return out;
}

CsvTable srgb_cube(ColorSpaceId target, int steps, const ColorSpaces& spaces) {
  CsvTable t{{"element", "index", "u", "v", "c0", "c1", "c2"}, {}};
  int edge = 0;
  for (int a = 0; a < 8; ++a) {
    for (int axis = 0; axis < 3; ++axis) {
      if (a & (1 << axis)) continue;
      const Vec3d p0 = corner(a), p1 = corner(a | (1 << axis));
      for (int s = 0; s <= steps; ++s) {
        const double u = static_cast<double>(s) / steps;
        const Vec3d c = from_srgb(target, p0 + u * (p1 - p0), spaces);
        t.rows.push_back({0.0, double(edge), u, 0.0, c(0), c(1), c(2)});
      }
      ++edge;
    }
  }
  int face = 0;
  for (int axis = 0; axis < 3; ++axis) {
    for (int side = 0; side < 2; ++side, ++face) {
      const int i = (axis + 1) % 3, j = (axis + 2) % 3;
      for (int s = 0; s <= steps; ++s) {
        for (int r = 0; r <= steps; ++r) {
          Vec3d rgb;
          rgb(axis) = side;
          rgb(i) = static_cast<double>(s) / steps;
          rgb(j) = static_cast<double>(r) / steps;
          const Vec3d c = from_srgb(target, rgb, spaces);
          t.rows.push_back({1.0, double(face), rgb(i), rgb(j), c(0), c(1), c(2)});
        }
      }
    }
  }
  return t;
}

CsvTable gamut_vertices(const GamutHull& hull, ColorSpaceId target, const ColorSpaces& spaces) {
  CsvTable t{{"vertex", "c0", "c1", "c2"}, {}};
  const auto& v = hull.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec3d c = spaces.from_xyz(target, spaces.to_xyz(ColorSpaceId::CIELAB, v[i]));
    t.rows.push_back({double(i), c(0), c(1), c(2)});
  }
  return t;
}

CsvTable gamut_triangles(const GamutHull& hull) {
  CsvTable t{{"face", "v0", "v1", "v2"}, {}};
  const auto& tri = hull.triangles();
  for (std::size_t i = 0; i < tri.size(); ++i) {
    t.rows.push_back({double(i), double(tri[i][0]), double(tri[i][1]), double(tri[i][2])});
  }
  return t;
}

CsvTable macadam_ellipses(ColorSpaceId target, double scale, int points,
                          const ColorSpaces& spaces) {
  CsvTable t{{"ellipse", "point", "c0", "c1", "c2"}, {}};
  const Vec3d white = spaces.white().xyz();
  // Luminance of L* = 50 relative to the white.
  const double y = cielab_to_xyz(Vec3d(50.0, 0.0, 0.0), white)(1);
  const SpaceMap map = spaces.forward_map(target);
  const auto ellipses = load_macadam_ellipses();
  for (std::size_t e = 0; e < ellipses.size(); ++e) {
    const auto& el = ellipses[e];
    const Vec3d centre_xyz = xyy_to_xyz(Vec3d(el.x, el.y, y));
    const Vec3d centre = map(centre_xyz);
    // d(target)/d(x, y) at fixed Y, via the chain rule through XYZ.
    const SpaceMap from_xy = [&](const Vec3d& xyy) { return map(xyy_to_xyz(xyy)); };
    const Mat3d j = jacobian(from_xy, Vec3d(el.x, el.y, y));
    t.rows.push_back({double(e), 0.0, centre(0), centre(1), centre(2)});
    const double theta = el.theta_deg * std::numbers::pi / 180.0;
    for (int k = 0; k < points; ++k) {
      const double s = 2.0 * std::numbers::pi * k / points;
      const double u = scale * el.a * std::cos(s), v = scale * el.b * std::sin(s);
      const Vec3d d(u * std::cos(theta) - v * std::sin(theta),
                    u * std::sin(theta) + v * std::cos(theta), 0.0);
      const Vec3d c = centre + j * d;
      t.rows.push_back({double(e), double(k + 1), c(0), c(1), c(2)});
    }
  }
  return t;
}

CsvTable difference_scatter_table(ColorSpaceId target, const PairCache& cache,
                                  const ColorSpaces& spaces) {
  const DifferenceScatter s = difference_scatter(spaces.forward_map(target), cache);
  CsvTable t{{"de_space", "de00"}, {}};
  for (std::size_t i = 0; i < s.de00.size(); ++i) t.rows.push_back({s.de_space[i], s.de00[i]});
  return t;
}

CsvTable noise_frames(ColorSpaceId target, const std::vector<Vec3d>& lab, const NoiseModel& nm,
                      const ColorSpaces& spaces) {
  CsvTable t{{"c0", "c1", "c2", "s0", "s1", "s2", "e00", "e01", "e02", "e10", "e11", "e12", "e20",
              "e21", "e22"},
             {}};
  for (const auto& c : lab) {
    const NoiseEllipsoid n =
        noise_ellipsoid(target, spaces.to_xyz(ColorSpaceId::CIELAB, c), nm, spaces);
    std::vector<double> row{n.center(0), n.center(1), n.center(2),
                            n.semi_axes(0), n.semi_axes(1), n.semi_axes(2)};
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) row.push_back(n.axes(i, k));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace prolab
