#include "prolab/data.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "prolab/error.hpp"

#ifndef PROLAB_DEFAULT_DATA_DIR
#define PROLAB_DEFAULT_DATA_DIR "data"
#endif

namespace prolab {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("PROLAB_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return PROLAB_DEFAULT_DATA_DIR;
}

std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t hash) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t file_checksum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::DataFile, "cannot open " + path.string());
  std::uint64_t hash = kFnvOffset;
  char buffer[4096];
  while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
    hash = fnv1a(buffer, static_cast<std::size_t>(in.gcount()), hash);
  }
  return hash;
}

const std::vector<DataFileRecord>& data_manifest() {
  static const std::vector<DataFileRecord> manifest = {
      {"cie1931_2deg_5nm.csv", 0x25b50592c0d65af1ULL},
      {"d65_5nm.csv", 0x51ef377b4aab765fULL},
      {"macadam1942.csv", 0x1a0656fd756cf434ULL},
  };
  return manifest;
}

std::filesystem::path verified_data_file(const std::string& name) {
  const std::filesystem::path path = data_dir() / name;
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::DataFile, "missing data file " + path.string());
  }
  for (const auto& record : data_manifest()) {
    if (record.name == name && file_checksum(path) != record.checksum) {
      throw Error(ErrorCode::DataFile, "checksum mismatch for " + path.string());
    }
  }
  return path;
}

std::vector<std::vector<double>> read_numeric_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DataFile, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw Error(ErrorCode::DataFile, "non-numeric row in " + path.string() + ": " + line);
    }
    first = false;
    rows.push_back(std::move(row));
  }
  return rows;
}

SpectralTables load_d65_observer() {
  const auto cmf = read_numeric_csv(verified_data_file("cie1931_2deg_5nm.csv"));
  const auto ill = read_numeric_csv(verified_data_file("d65_5nm.csv"));
  if (cmf.size() != ill.size() || cmf.empty()) {
    throw Error(ErrorCode::DataFile, "observer and illuminant tables differ in length");
  }
  SpectralTables t;
  for (std::size_t i = 0; i < cmf.size(); ++i) {
    if (cmf[i].size() != 4 || ill[i].size() != 2 || cmf[i][0] != ill[i][0]) {
      throw Error(ErrorCode::DataFile, "malformed spectral table row");
    }
    t.wavelength.push_back(cmf[i][0]);
    t.cmf.emplace_back(cmf[i][1], cmf[i][2], cmf[i][3]);
    t.illuminant.push_back(ill[i][1]);
  }
  return t;
}

std::vector<MacAdamEllipse> load_macadam_ellipses() {
  std::vector<MacAdamEllipse> out;
  for (const auto& row : read_numeric_csv(verified_data_file("macadam1942.csv"))) {
    if (row.size() != 5) throw Error(ErrorCode::DataFile, "malformed MacAdam row");
    out.push_back({row[0], row[1], row[2] * 1e-3, row[3] * 1e-3, row[4]});
  }
  return out;
}

}  // namespace prolab
