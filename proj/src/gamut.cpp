#include "prolab/gamut.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "prolab/error.hpp"
#include "prolab/parallel.hpp"
#include "prolab/rng.hpp"

namespace prolab {

GamutHull::GamutHull(Polyhedron poly) : poly_(std::move(poly)) {
  if (poly_.vertices.empty()) throw Error(ErrorCode::InvalidArgument, "empty hull");
  bbox_.lo = bbox_.hi = poly_.vertices.front();
  for (const auto& v : poly_.vertices) {
    bbox_.lo = bbox_.lo.cwiseMin(v);
    bbox_.hi = bbox_.hi.cwiseMax(v);
  }
  volume_ = mesh_volume(poly_);
  centroid_ = mesh_centroid(poly_);
  std::uint64_t h = kFnvOffset;
  for (const auto& v : poly_.vertices) h = fnv1a(v.data(), 3 * sizeof(double), h);
  for (const auto& t : poly_.triangles) h = fnv1a(t.data(), 3 * sizeof(int), h);
  checksum_ = h;
}

bool GamutHull::contains(const Vec3d& c) const {
  for (const auto& f : poly_.faces) {
    if (f.signed_distance(c) < -kContainsTolerance) return false;
  }
  return true;
}

std::vector<Vec3d> optimal_colors_xyz(const SpectralTables& tables, int resolution,
                                      const WhitePoint& white) {
  const std::size_t nb = tables.cmf.size();
  if (nb == 0 || tables.illuminant.size() != nb) {
    throw Error(ErrorCode::InvalidArgument, "spectral tables are empty or misaligned");
  }
  // Each sample is a bin of constant weight; cum(t) integrates bins [0, t).
  std::vector<Vec3d> w(nb);
  std::vector<Vec3d> cum(nb + 1, Vec3d::Zero());
  for (std::size_t i = 0; i < nb; ++i) {
    w[i] = tables.cmf[i] * tables.illuminant[i];
    cum[i + 1] = cum[i] + w[i];
  }
  const Vec3d total = cum[nb];
  const Vec3d scale = white.xyz().cwiseQuotient(total);
  const double len = static_cast<double>(nb);
  auto integral = [&](double t) -> Vec3d {
    if (t >= len) return total;
    const auto i = static_cast<std::size_t>(std::floor(t));
    return cum[i] + (t - static_cast<double>(i)) * w[i];
  };

  std::vector<Vec3d> out;
  out.reserve(static_cast<std::size_t>(resolution) * (resolution + 1));
  for (int wi = 0; wi <= resolution; ++wi) {
    const double width = len * wi / resolution;
    for (int si = 0; si < resolution; ++si) {
      const double start = len * si / resolution;
      const double end = start + width;
      Vec3d xyz;
      if (wi == resolution) {
        xyz = total;
      } else if (end <= len) {
        xyz = integral(end) - integral(start);
      } else {
        xyz = total - integral(start) + integral(end - len);
      }
      out.push_back(xyz.cwiseProduct(scale));
    }
  }
  // Exact endpoints: the perfect absorber and reflector.
  for (std::size_t i = 0; i < static_cast<std::size_t>(resolution); ++i) {
    out[i] = Vec3d::Zero();
    out[out.size() - 1 - i] = white.xyz();
  }
  return out;
}

GamutHull build_gamut(const SpectralTables& tables, int resolution, const WhitePoint& white) {
  if (resolution < 8) throw Error(ErrorCode::InvalidArgument, "gamut resolution must be >= 8");
  const auto xyz = optimal_colors_xyz(tables, resolution, white);
  std::vector<Vec3d> lab;
  lab.reserve(xyz.size());
  for (const auto& c : xyz) lab.push_back(xyz_to_cielab(c, white.xyz()));
  return GamutHull(convex_hull(lab));
}

GamutHull build_d65_gamut(int resolution) {
  return build_gamut(load_d65_observer(), resolution, WhitePoint::d65());
}

namespace {

constexpr double kMinAcceptance = 1e-4;
constexpr std::size_t kStallCheckAttempts = 1u << 20;

}  // namespace

ColorSample sample_colors(const GamutHull& hull, std::size_t n, std::uint64_t seed,
                          const ColorPredicate& accept) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
  ColorSample out{seed, std::vector<Vec3d>(n)};
  const BoundingBox box = hull.bbox();
  parallel_chunks(chunk_count(n), [&](std::size_t chunk) {
    Rng rng = Rng::split(seed, chunk);
    const std::size_t begin = chunk * kChunkSize;
    const std::size_t end = std::min(n, begin + kChunkSize);
    std::size_t attempts = 0, accepted = 0;
    for (std::size_t i = begin; i < end;) {
      Vec3d p;
      for (int k = 0; k < 3; ++k) p(k) = rng.uniform(box.lo(k), box.hi(k));
      ++attempts;
      if (hull.contains(p) && (!accept || accept(p))) {
        out.colors[i++] = p;
        ++accepted;
      } else if (attempts >= kStallCheckAttempts &&
                 static_cast<double>(accepted) < kMinAcceptance * static_cast<double>(attempts)) {
        throw Error(ErrorCode::RejectionStall, "rejection sampling acceptance below 1e-4");
      }
    }
  });
  return out;
}

PairSample sample_pairs(const GamutHull& hull, std::size_t n, std::uint64_t seed,
                        const ColorPredicate& accept) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
  const ColorSample colors = sample_colors(hull, 2 * n, seed, accept);
  PairSample out{seed, {}};
  out.pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.pairs.push_back({colors.colors[2 * i], colors.colors[2 * i + 1]});
  }
  return out;
}

ColorPredicate reproducible_subgamut_filter(const GamutHull& hull, const DeviceCalibration& cal,
                                            const ColorSpaces& spaces) {
  const Vec3d white = spaces.white().xyz();
  return [&hull, cal, white](const Vec3d& lab) {
    if (!hull.contains(lab)) return false;
    const Vec3d rgb = xyz_to_devicergb(cielab_to_xyz(lab, white), cal);
    return (rgb.array() >= 0.0).all();
  };
}

void write_off(std::ostream& out, const GamutHull& hull) {
  out << "OFF\n" << hull.vertices().size() << ' ' << hull.triangles().size() << " 0\n";
  out << std::setprecision(17);
  for (const auto& v : hull.vertices()) out << v(0) << ' ' << v(1) << ' ' << v(2) << '\n';
  for (const auto& t : hull.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

namespace {

void write_header(std::ostream& out, std::uint64_t seed, std::size_t n, const GamutHull& hull) {
  out << "# rng=" << Rng::kAlgorithm << " seed=" << seed << " n=" << n << " hull_checksum=0x"
      << std::hex << std::setw(16) << std::setfill('0') << hull.checksum() << std::dec
      << std::setfill(' ') << '\n';
}

}  // namespace

void write_sample_csv(std::ostream& out, const ColorSample& sample, const GamutHull& hull) {
  write_header(out, sample.seed, sample.colors.size(), hull);
  out << "L,a,b\n" << std::setprecision(17);
  for (const auto& c : sample.colors) out << c(0) << ',' << c(1) << ',' << c(2) << '\n';
}

void write_sample_csv(std::ostream& out, const PairSample& sample, const GamutHull& hull) {
  write_header(out, sample.seed, sample.pairs.size(), hull);
  out << "L1,a1,b1,L2,a2,b2\n" << std::setprecision(17);
  for (const auto& p : sample.pairs) {
    out << p.a(0) << ',' << p.a(1) << ',' << p.a(2) << ',' << p.b(0) << ',' << p.b(1) << ','
        << p.b(2) << '\n';
  }
}

}  // namespace prolab
