#include "prolab/noise.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "prolab/difference.hpp"
#include "prolab/error.hpp"
#include "prolab/parallel.hpp"

namespace prolab {

namespace {
constexpr double kNegativeTolerance = 1e-9;
}

void NoiseModel::validate() const {
  if (!(g > 0.0) || !(var_eps >= 0.0) || !std::isfinite(g) || !std::isfinite(var_eps)) {
    throw Error(ErrorCode::InvalidArgument, "noise model needs g > 0 and var_eps >= 0");
  }
}

const char* name(BayerChannel c) {
  switch (c) {
    case BayerChannel::R: return "R";
    case BayerChannel::G1: return "G1";
    case BayerChannel::G2: return "G2";
    case BayerChannel::B: return "B";
  }
  return "?";
}

BayerChannel parse_channel(const std::string& s) {
  if (s == "R") return BayerChannel::R;
  if (s == "G1") return BayerChannel::G1;
  if (s == "G2") return BayerChannel::G2;
  if (s == "B") return BayerChannel::B;
  throw Error(ErrorCode::InvalidArgument, "unknown Bayer channel '" + s + "'");
}

PatchStats read_patch_stats(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::DataFile, "cannot open " + path.string());
  PatchStats out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::stringstream ss(line);
    std::string channel, mean, variance;
    std::getline(ss, channel, ',');
    std::getline(ss, mean, ',');
    std::getline(ss, variance, ',');
    if (first && channel == "channel") {
      first = false;
      continue;
    }
    first = false;
    PatchRecord r{};
    try {
      r.channel = parse_channel(channel);
      r.mean = std::stod(mean);
      r.variance = std::stod(variance);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::DataFile, "malformed patch record: " + line);
    }
    if (r.mean < 0.0 || r.variance < 0.0) {
      throw Error(ErrorCode::DataFile, "negative mean or variance: " + line);
    }
    out.push_back(r);
  }
  return out;
}

JahneFit fit_jahne(std::span<const PatchRecord> stats) {
  if (stats.size() < 3) throw Error(ErrorCode::DegenerateFit, "need at least 3 patch records");
  double me = 0.0, mv = 0.0;
  for (const auto& r : stats) {
    me += r.mean;
    mv += r.variance;
  }
  me /= static_cast<double>(stats.size());
  mv /= static_cast<double>(stats.size());
  double see = 0.0, svv = 0.0, sev = 0.0;
  for (const auto& r : stats) {
    const double de = r.mean - me, dv = r.variance - mv;
    see += de * de;
    svv += dv * dv;
    sev += de * dv;
  }
  if (see <= 0.0) throw Error(ErrorCode::DegenerateFit, "all patch means are equal");
  // Major axis of [[see, sev], [sev, svv]].
  const double lambda = 0.5 * (see + svv) + std::hypot(0.5 * (see - svv), sev);
  Eigen::Vector2d dir;
  if (std::abs(sev) > 0.0) {
    dir = {sev, lambda - see};
  } else {
    dir = see >= svv ? Eigen::Vector2d(1.0, 0.0) : Eigen::Vector2d(0.0, 1.0);
  }
  if (std::abs(dir(0)) <= 1e-300) throw Error(ErrorCode::DegenerateFit, "vertical fit direction");
  const double g = dir(1) / dir(0);
  return {g, mv - g * me};
}

Mat3d device_covariance(const Vec3d& c_d, const NoiseModel& nm) {
  if ((c_d.array() < -kNegativeTolerance).any()) {
    throw Error(ErrorCode::NegativeResponse, "negative device response");
  }
  const Vec3d weight(1.0, 0.5, 1.0);
  Vec3d diag = nm.g * c_d.cwiseMax(0.0) + Vec3d::Constant(nm.var_eps);
  return weight.cwiseProduct(diag).asDiagonal();
}

Mat3d xyz_covariance(const Vec3d& c_x, const NoiseModel& nm) {
  const Vec3d c_d = nm.cal.d * c_x;
  if ((c_d.array() < -kNegativeTolerance).any()) {
    throw Error(ErrorCode::NotReproducible, "colour is not reproducible by the sensor");
  }
  const Mat3d s = nm.cal.d_inv * device_covariance(c_d, nm) * nm.cal.d_inv.transpose();
  return 0.5 * (s + s.transpose());
}

Mat3d jacobian(const SpaceMap& map, const Vec3d& c) {
  Mat3d j;
  for (int k = 0; k < 3; ++k) {
    const double h = jacobian_step(c(k));
    Vec3d lo = c, hi = c;
    lo(k) -= h;
    hi(k) += h;
    Vec3d f_lo, f_hi;
    try {
      f_lo = map(lo);
      f_hi = map(hi);
    } catch (const Error& e) {
      throw Error(ErrorCode::DomainEdge, std::string("Jacobian probe left the domain: ") + e.what());
    }
    if (!f_lo.allFinite() || !f_hi.allFinite()) {
      throw Error(ErrorCode::DomainEdge, "Jacobian probe produced a non-finite value");
    }
    j.col(k) = (f_hi - f_lo) / (2.0 * h);
  }
  return j;
}

Mat3d jacobian(ColorSpaceId target, const Vec3d& c_x, const ColorSpaces& spaces) {
  return jacobian(spaces.forward_map(target), c_x);
}

Mat3d propagate(const SpaceMap& map, const Vec3d& c_x, const NoiseModel& nm) {
  const Mat3d j = jacobian(map, c_x);
  const Mat3d s = j * xyz_covariance(c_x, nm) * j.transpose();
  return 0.5 * (s + s.transpose());
}

Mat3d propagate(ColorSpaceId target, const Vec3d& c_x, const NoiseModel& nm,
                const ColorSpaces& spaces) {
  return propagate(spaces.forward_map(target), c_x, nm);
}

Vec3d symmetric_eigenvalues(const Mat3d& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  Vec3d ev;
  if (p1 == 0.0) {
    ev = a.diagonal();
  } else {
    const double q = a.trace() / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q) +
                      (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);
    const Mat3d b = (a - q * Mat3d::Identity()) / p;
    const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    ev = {e1, 3.0 * q - e1 - e3, e3};
  }
  std::sort(ev.data(), ev.data() + 3);
  for (int k = 0; k < 3; ++k) {
    if (ev(k) < 0.0 && ev(k) >= -kNegativeTolerance) ev(k) = 0.0;
  }
  return ev;
}

double heteroscedasticity(const SpaceMap& target, std::span<const Vec3d> lab,
                          const NoiseModel& nm, const ColorSpaces& spaces) {
  nm.validate();
  if (lab.empty()) throw Error(ErrorCode::InvalidArgument, "empty colour sample");
  const Vec3d white = spaces.white().xyz();
  std::vector<double> roots(3 * lab.size());
  parallel_chunks(chunk_count(lab.size()), [&](std::size_t chunk) {
    const std::size_t end = std::min(lab.size(), (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      const Vec3d xyz = cielab_to_xyz(lab[i], white);
      const Vec3d ev = symmetric_eigenvalues(propagate(target, xyz, nm));
      if (ev(0) < 0.0) {
        throw Error(ErrorCode::EvaluationError, "propagated covariance is not PSD");
      }
      for (int k = 0; k < 3; ++k) roots[3 * i + k] = std::sqrt(ev(k));
    }
  });
  const std::vector<double> ones(roots.size(), 1.0);
  return stress(roots, ones);
}

double heteroscedasticity(ColorSpaceId target, std::span<const Vec3d> lab, const NoiseModel& nm,
                          const ColorSpaces& spaces) {
  return heteroscedasticity(spaces.forward_map(target), lab, nm, spaces);
}

NoiseEllipsoid noise_ellipsoid(ColorSpaceId target, const Vec3d& c_x, const NoiseModel& nm,
                               const ColorSpaces& spaces) {
  const Mat3d s = propagate(target, c_x, nm, spaces);
  Eigen::SelfAdjointEigenSolver<Mat3d> solver(s);
  NoiseEllipsoid out;
  out.center = spaces.from_xyz(target, c_x);
  out.semi_axes = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  out.axes = solver.eigenvectors();
  return out;
}

}  // namespace prolab
