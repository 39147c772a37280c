#include "prolab/table1.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "prolab/difference.hpp"
#include "prolab/error.hpp"
#include "prolab/gamut.hpp"
#include "prolab/rng.hpp"

namespace prolab {

const char* name(Collineation c) {
  switch (c) {
    case Collineation::Yes: return "Yes";
    case Collineation::CentralPencil: return "Central pencil";
    case Collineation::No: return "No";
  }
  return "?";
}

const char* tool_version() { return "0.1.0"; }

CollineationReport classify_collineation(const SpaceMap& map, int n_triples, std::uint64_t seed) {
  if (n_triples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one triple");
  const Mat3d to_xyz = linrgb_to_xyz_matrix();
  CollineationReport r{Collineation::No, 0.0, 0.0};
  Rng line_rng = Rng::split(seed, 0);
  for (int i = 0; i < n_triples; ++i) {
    Vec3d a, b;
    for (int k = 0; k < 3; ++k) {
      a(k) = line_rng.uniform(0.02, 1.0);
      b(k) = line_rng.uniform(0.02, 1.0);
    }
    const double t = line_rng.uniform(0.1, 0.9);
    const Vec3d c = a + t * (b - a);
    r.line_deviation = std::max(
        r.line_deviation, collinearity_deviation(map(to_xyz * a), map(to_xyz * c), map(to_xyz * b)));
  }
  Rng ray_rng = Rng::split(seed, 1);
  for (int i = 0; i < n_triples; ++i) {
    Vec3d d;
    for (int k = 0; k < 3; ++k) d(k) = ray_rng.uniform(0.02, 1.0);
    // Decades apart by at least 0.1 so rounding cannot dominate the angle.
    std::array<double, 3> e{};
    for (auto& v : e) v = ray_rng.uniform(-4.0, 0.0);
    std::sort(e.begin(), e.end());
    if (e[1] - e[0] < 0.1 || e[2] - e[1] < 0.1) {
      --i;
      continue;
    }
    const std::array<double, 3> s{std::pow(10.0, e[0]), std::pow(10.0, e[1]), std::pow(10.0, e[2])};
    r.pencil_deviation = std::max(
        r.pencil_deviation, collinearity_deviation(map(to_xyz * (s[0] * d)), map(to_xyz * (s[1] * d)),
                                                   map(to_xyz * (s[2] * d))));
  }
  if (r.line_deviation < kCollinearTolerance) {
    r.kind = Collineation::Yes;
  } else if (r.pencil_deviation < kCollinearTolerance) {
    r.kind = Collineation::CentralPencil;
  }
  return r;
}

CollineationReport classify_collineation(ColorSpaceId space, int n_triples, std::uint64_t seed,
                                         const ColorSpaces& spaces) {
  return classify_collineation(spaces.forward_map(space), n_triples, seed);
}

Table1 compute_table1(const Table1Config& cfg, const NoiseModel& nm, const ColorSpaces& spaces) {
  if (cfg.n < 1000) throw Error(ErrorCode::InvalidArgument, "table1 needs n >= 1000");
  const GamutHull hull = build_gamut(load_d65_observer(), cfg.hull_resolution, spaces.white());
  const PairSample pairs = sample_pairs(hull, cfg.n, cfg.seed);
  const PairCache cache = make_pair_cache(pairs.pairs, spaces);
  const std::uint64_t h_seed = h_sample_seed(cfg.seed);
  const ColorSample colors =
      sample_colors(hull, cfg.n, h_seed, reproducible_subgamut_filter(hull, nm.cal, spaces));

  Table1 out;
  for (ColorSpaceId s : kAllSpaces) {
    Table1Row row;
    row.space = s;
    row.collineation = classify_collineation(s, cfg.collinear_triples, cfg.seed, spaces).kind;
    row.u = uniformity(s, cache, spaces);
    row.h = heteroscedasticity(s, colors.colors, nm, spaces);
    out.rows.push_back(row);
  }
  out.manifest = {cfg.seed,        h_seed,         cfg.n,          cfg.hull_resolution,
                  hull.checksum(), Rng::kAlgorithm, tool_version(), data_manifest()};
  return out;
}

}  // namespace prolab
