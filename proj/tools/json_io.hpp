#pragma once

#include <json.hpp>

#include "prolab/error.hpp"
#include "prolab/model.hpp"
#include "prolab/optimizer.hpp"
#include "prolab/table1.hpp"

namespace prolab::io {

using nlohmann::json;

template <typename Derived>
json matrix_to_json(const Eigen::MatrixBase<Derived>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json homography_to_json(const Homographyd& h) { return matrix_to_json(h.matrix()); }

/// 4 rows of 4 numbers, row-major.
inline Homographyd homography_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::InvalidArgument, "homography must be a 4x4 nested array");
  }
  Mat4d m;
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_array() || j[i].size() != 4) {
      throw Error(ErrorCode::InvalidArgument, "homography must be a 4x4 nested array");
    }
    for (int k = 0; k < 4; ++k) m(i, k) = j[i][k].get<double>();
  }
  return Homographyd(m);
}

struct ModelConfig {
  WhitePoint white = WhitePoint::d65();
  MetricParams mu = MetricParams::published();
  bool has_mu = false;
};

/// {"white": [X, Y, Z], "mu": [8 numbers]}; both keys optional.
inline ModelConfig config_from_json(const json& j) {
  ModelConfig c;
  try {
    if (j.contains("white")) {
      const auto w = j.at("white").get<std::vector<double>>();
      if (w.size() != 3) throw Error(ErrorCode::InvalidArgument, "white needs 3 components");
      c.white = WhitePoint(Vec3d(w[0], w[1], w[2]));
    }
    if (j.contains("mu")) {
      const auto mu = j.at("mu").get<std::vector<double>>();
      if (mu.size() != 8) throw Error(ErrorCode::InvalidArgument, "mu needs 8 components");
      for (int i = 0; i < 8; ++i) c.mu.mu(i) = mu[static_cast<std::size_t>(i)];
      c.has_mu = true;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed config: ") + e.what());
  }
  return c;
}

inline json config_to_json(const ModelConfig& c) {
  return {{"white", vector_to_json(c.white.xyz())}, {"mu", vector_to_json(c.mu.mu)}};
}

inline json fit_result_to_json(const FitResult& r, const FitConfig& cfg) {
  return {{"mu", vector_to_json(r.mu.mu)},
          {"objective", r.objective},
          {"U_train", r.u_train},
          {"constraint_min", r.constraint_min},
          {"constraints", vector_to_json(constraint_values(r.mu))},
          {"start_index", r.start_index},
          {"evaluations", r.evaluations},
          {"P", homography_to_json(build_p(r.mu, WhitePoint::d65()))},
          {"config",
           {{"n_pairs", cfg.n_pairs},
            {"seed", cfg.seed},
            {"penalty_weight", cfg.penalty_weight},
            {"n_starts", cfg.n_starts},
            {"max_iters", cfg.max_iters},
            {"tolerance", cfg.tolerance},
            {"hull_resolution", cfg.hull_resolution}}}};
}

inline json manifest_to_json(const RunManifest& m) {
  json files = json::array();
  char hex[19];
  for (const auto& f : m.data_files) {
    std::snprintf(hex, sizeof hex, "0x%016llx", static_cast<unsigned long long>(f.checksum));
    files.push_back({{"name", f.name}, {"fnv1a64", hex}});
  }
  std::snprintf(hex, sizeof hex, "0x%016llx", static_cast<unsigned long long>(m.hull_checksum));
  return {{"seed", m.seed},
          {"h_seed", m.h_seed},
          {"n_test", m.n_test},
          {"hull_resolution", m.hull_resolution},
          {"hull_checksum", hex},
          {"rng", m.rng},
          {"version", m.version},
          {"data_files", files}};
}

}  // namespace prolab::io
