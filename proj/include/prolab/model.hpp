#pragma once

#include <array>

#include "prolab/geometry.hpp"

namespace prolab {

using Vector8d = Eigen::Matrix<double, 8, 1>;
using ConstraintVector = Eigen::Matrix<double, 14, 1>;

/// The eight metric parameters of proLab's M matrix.
struct MetricParams {
  Vector8d mu = identity().mu;

  /// mu for which M is the identity.
  static MetricParams identity();
  /// The optimised parameters as published with proLab.
  static MetricParams published();

  double operator[](int i) const { return mu(i); }
};

/// Illuminant tristimulus values (XYZ, Y normalised near one).
class WhitePoint {
 public:
  /// Throws InvalidWhitePoint unless every component lies in (0, 10).
  explicit WhitePoint(const Vec3d& xyz);

  static WhitePoint d65() { return WhitePoint(Vec3d(0.9505, 1.0, 1.0888)); }

  const Vec3d& xyz() const { return xyz_; }

 private:
  Vec3d xyz_;
};

struct SimilarityParams {
  /// Rotation angles about the lightness axis, second and third axis (radians).
  Vec3d phi = Vec3d::Zero();
  double rho = 1.0;
};

/// Metric matrix
///   [mu1 mu2 mu3 0]
///   [ 0  mu4 mu5 0]
///   [ 0   0   1  0]
///   [mu6 mu7 mu8 1].
/// Throws InfeasibleParams if mu1*mu4 <= 0.
Homographyd metric_matrix(const MetricParams& mu);

/// von Kries adaptation diag(1/X_w, 1/Y_w, 1/Z_w, 1).
Homographyd adaptation_matrix(const WhitePoint& w);

/// f1 = |M|; f2..f8 horizon constraints over the nonzero vertices of the unit
/// box (b = bits of k for k = 1..7, b1 = least significant); f9..f14 the
/// lightness-monotonicity constraints, row-major over the 2x3 product.
ConstraintVector constraint_values(const MetricParams& mu);

inline bool is_feasible(const ConstraintVector& f, double tolerance = 0.0) {
  return f.minCoeff() >= -tolerance;
}

/// Four equally saturated CIELAB points at half lightness.
std::array<Vec3d, 4> default_key_points();

/// Right-handed rotation about coordinate axis `axis` (0, 1 or 2) embedded in 4x4.
Mat4d rotation_matrix(int axis, double angle);
Mat4d scaling_matrix(double rho);

/// Solves the rotation angles and scale so that the white point maps onto
/// [100, 0, 0] and the key points land as close as possible to their CIELAB
/// positions. Only |M| > 0 and a finite white image are required; full
/// constraint feasibility is a separate query.
SimilarityParams solve_similarity(const MetricParams& mu, const WhitePoint& w,
                                  const std::array<Vec3d, 4>& key_points = default_key_points());

/// Q = R1 R2 R3 Z M, normalised to q44 = 1.
Homographyd assemble_q(const MetricParams& mu, const SimilarityParams& s);

/// Illuminant-independent kernel Q for the given metric parameters.
Homographyd build_q(const MetricParams& mu, const WhitePoint& w);

/// Full proLab transform P = Q N with p44 = 1.
Homographyd build_p(const MetricParams& mu, const WhitePoint& w);

/// Sum of squared distances between key points and their images under p.
double key_point_objective(const Homographyd& p, const WhitePoint& w,
                           const std::array<Vec3d, 4>& key_points = default_key_points());

struct ReferenceMatrices {
  Homographyd m;
  Homographyd q;
  Homographyd p;
  WhitePoint white;
};

/// The published M, Q and P exactly as printed (four decimals) with the D65 white.
ReferenceMatrices reference_matrices();

/// proLab for an arbitrary illuminant: the published kernel Q with a new N.
Homographyd prolab_for_white(const WhitePoint& w);

}  // namespace prolab
