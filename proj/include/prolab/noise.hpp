#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "prolab/spaces.hpp"

namespace prolab {

/// Jähne sensor model: var(s) = g·E(s) + var_eps per raw channel.
struct NoiseModel {
  double g = 3.38;
  double var_eps = 744.0;
  DeviceCalibration cal = DeviceCalibration::standard();

  /// Throws InvalidArgument unless g > 0 and var_eps >= 0.
  void validate() const;
};

enum class BayerChannel { R, G1, G2, B };

const char* name(BayerChannel c);
BayerChannel parse_channel(const std::string& s);

struct PatchRecord {
  double mean;
  double variance;
  BayerChannel channel;
};

using PatchStats = std::vector<PatchRecord>;

/// CSV with columns channel, mean, variance (header optional).
PatchStats read_patch_stats(const std::filesystem::path& path);

struct JahneFit {
  double g;
  double var_eps;
};

/// Total-least-squares line through the (mean, variance) scatter.
/// Throws DegenerateFit for fewer than 3 records, equal means or a
/// vertical principal direction.
JahneFit fit_jahne(std::span<const PatchRecord> stats);

/// diag(1, 1/2, 1)·(g·diag(c_d) + var_eps·I). Throws NegativeResponse for
/// components below -1e-9.
Mat3d device_covariance(const Vec3d& c_d, const NoiseModel& nm);

/// D⁻¹·Σ_d(D·c_x)·D⁻ᵀ. Throws NotReproducible when D·c_x has a component
/// below -1e-9.
Mat3d xyz_covariance(const Vec3d& c_x, const NoiseModel& nm);

/// Per-coordinate central-difference step.
inline double jacobian_step(double c) { return std::max(1e-6, 1e-6 * std::abs(c)); }

/// Central-difference Jacobian of `map` at c. A probe that throws or returns
/// a non-finite value raises DomainEdge.
Mat3d jacobian(const SpaceMap& map, const Vec3d& c);
/// Jacobian of XYZ -> target at c_x.
Mat3d jacobian(ColorSpaceId target, const Vec3d& c_x,
               const ColorSpaces& spaces = ColorSpaces::standard());

/// J·Σ_x·Jᵀ.
Mat3d propagate(const SpaceMap& map, const Vec3d& c_x, const NoiseModel& nm);
Mat3d propagate(ColorSpaceId target, const Vec3d& c_x, const NoiseModel& nm,
                const ColorSpaces& spaces = ColorSpaces::standard());

/// Ascending eigenvalues of a symmetric 3×3 matrix (trigonometric closed
/// form). Values in [-1e-9, 0) are clamped to 0; lower ones are kept.
Vec3d symmetric_eigenvalues(const Mat3d& a);

/// STRESS between the square-rooted eigenvalues of every propagated
/// covariance and the constant 1. `lab` holds CIELAB colours relative to the
/// context's white.
double heteroscedasticity(const SpaceMap& target, std::span<const Vec3d> lab,
                          const NoiseModel& nm,
                          const ColorSpaces& spaces = ColorSpaces::standard());
double heteroscedasticity(ColorSpaceId target, std::span<const Vec3d> lab,
                          const NoiseModel& nm,
                          const ColorSpaces& spaces = ColorSpaces::standard());

/// Noise ellipsoid of a colour in the target space: semi-axes are the
/// square-rooted eigenvalues, columns of `axes` the unit directions.
struct NoiseEllipsoid {
  Vec3d center;
  Vec3d semi_axes;
  Mat3d axes;
};

NoiseEllipsoid noise_ellipsoid(ColorSpaceId target, const Vec3d& c_x, const NoiseModel& nm,
                               const ColorSpaces& spaces = ColorSpaces::standard());

}  // namespace prolab
