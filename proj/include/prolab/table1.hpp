#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prolab/data.hpp"
#include "prolab/noise.hpp"
#include "prolab/spaces.hpp"

namespace prolab {

enum class Collineation { Yes, CentralPencil, No };

const char* name(Collineation c);

struct CollineationReport {
  Collineation kind;
  /// Largest normalised deviation over general collinear triples.
  double line_deviation;
  /// Largest deviation over triples on rays from black.
  double pencil_deviation;
};

/// Collinearity deviation threshold below which a triple counts as straight.
inline constexpr double kCollinearTolerance = 1e-9;

/// Maps random collinear XYZ triples (general lines, then rays from black)
/// into the target space and measures how straight they stay. Triples are
/// drawn inside the linear-sRGB cube; ray scales are log-uniform in
/// [1e-4, 1] so that dark branches of the transfer curves are exercised.
CollineationReport classify_collineation(const SpaceMap& map, int n_triples, std::uint64_t seed);
CollineationReport classify_collineation(ColorSpaceId space, int n_triples, std::uint64_t seed,
                                         const ColorSpaces& spaces = ColorSpaces::standard());

struct Table1Row {
  ColorSpaceId space;
  Collineation collineation;
  double u;
  double h;
};

struct Table1Config {
  std::size_t n = 100000;
  std::uint64_t seed = 1;
  int hull_resolution = 128;
  int collinear_triples = 2000;
};

struct RunManifest {
  std::uint64_t seed;
  std::uint64_t h_seed;
  std::size_t n_test;
  int hull_resolution;
  std::uint64_t hull_checksum;
  std::string rng;
  std::string version;
  std::vector<DataFileRecord> data_files;
};

struct Table1 {
  std::vector<Table1Row> rows;
  RunManifest manifest;
};

/// Seed of the H colour sample derived from the run seed.
inline std::uint64_t h_sample_seed(std::uint64_t seed) { return seed ^ 0x4845544552ULL; }

/// Throws InvalidArgument for n < 1000.
Table1 compute_table1(const Table1Config& cfg, const NoiseModel& nm = {},
                      const ColorSpaces& spaces = ColorSpaces::standard());

/// Version string recorded in manifests.
const char* tool_version();

}  // namespace prolab
