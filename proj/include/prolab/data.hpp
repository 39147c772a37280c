#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "prolab/geometry.hpp"

namespace prolab {

/// Directory holding the bundled data files; PROLAB_DATA_DIR overrides it.
std::filesystem::path data_dir();

inline constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;

/// FNV-1a 64-bit hash, continuing from `hash`.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t hash = kFnvOffset);

/// FNV-1a 64-bit hash of the file's bytes.
std::uint64_t file_checksum(const std::filesystem::path& path);

struct DataFileRecord {
  std::string name;
  std::uint64_t checksum;
};

/// Every bundled data file with the checksum it is expected to carry.
const std::vector<DataFileRecord>& data_manifest();

/// Resolves `name` inside data_dir() and verifies its checksum.
/// Throws DataFile on a missing file or checksum mismatch.
std::filesystem::path verified_data_file(const std::string& name);

/// Colour-matching functions and illuminant on a common wavelength grid.
struct SpectralTables {
  std::vector<double> wavelength;
  std::vector<Vec3d> cmf;
  std::vector<double> illuminant;
};

/// CIE 1931 2° observer and D65, 380-780 nm at 5 nm.
SpectralTables load_d65_observer();

struct MacAdamEllipse {
  double x;
  double y;
  /// Semi-axes in xy units.
  double a;
  double b;
  double theta_deg;
};

std::vector<MacAdamEllipse> load_macadam_ellipses();

/// Parses a CSV file of numeric rows, skipping blank lines, '#' comments and
/// a non-numeric header line.
std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path);

}  // namespace prolab
