#include "prolab/model.hpp"

#include <cmath>

#include "prolab/colorspaces.hpp"

namespace prolab {

MetricParams MetricParams::identity() {
  MetricParams p{Vector8d::Zero()};
  p.mu(0) = 1.0;
  p.mu(3) = 1.0;
  return p;
}

MetricParams MetricParams::published() {
  MetricParams p{Vector8d::Zero()};
  p.mu << 2.1591, -1.7823, -0.0713, 2.0866, 0.2103, 0.7554, 3.8666, 1.6739;
  return p;
}

WhitePoint::WhitePoint(const Vec3d& xyz) : xyz_(xyz) {
  for (int i = 0; i < 3; ++i) {
    if (!(xyz(i) > 0.0 && xyz(i) < 10.0)) {
      throw Error(ErrorCode::InvalidWhitePoint, "white point components must lie in (0, 10)");
    }
  }
}

Homographyd metric_matrix(const MetricParams& p) {
  const Vector8d& mu = p.mu;
  if (!(mu(0) * mu(3) > 0.0)) {
    throw Error(ErrorCode::InfeasibleParams, "mu1 * mu4 must be positive");
  }
  Mat4d m;
  m << mu(0), mu(1), mu(2), 0.0,
       0.0,   mu(3), mu(4), 0.0,
       0.0,   0.0,   1.0,   0.0,
       mu(5), mu(6), mu(7), 1.0;
  return Homographyd(m);
}

Homographyd adaptation_matrix(const WhitePoint& w) {
  Mat4d n = Mat4d::Identity();
  for (int i = 0; i < 3; ++i) n(i, i) = 1.0 / w.xyz()(i);
  return Homographyd(n);
}

ConstraintVector constraint_values(const MetricParams& p) {
  const Vector8d& mu = p.mu;
  ConstraintVector f;
  f(0) = mu(0) * mu(3);

  const Vec3d horizon(mu(5), mu(6), mu(7));
  for (int k = 1; k <= 7; ++k) {
    const Vec3d b((k >> 0) & 1, (k >> 1) & 1, (k >> 2) & 1);
    f(k) = horizon.dot(b) + 1.0;
  }

  const Vec3d m_vec(mu(0) + mu(1) + mu(2), mu(3) + mu(4), 1.0);
  const double m = mu(5) + mu(6) + mu(7) + 1.0;
  Eigen::Matrix<double, 2, 4> lhs;
  lhs.block<1, 3>(0, 0) = m * m_vec.transpose();
  lhs(0, 3) = 0.0;
  lhs.block<1, 3>(1, 0) = m * m_vec.transpose();
  lhs(1, 3) = -m_vec.squaredNorm();
  Eigen::Matrix<double, 4, 3> rhs;
  rhs << mu(0), mu(1), mu(2),
         0.0,   mu(3), mu(4),
         0.0,   0.0,   1.0,
         mu(5), mu(6), mu(7);
  const Eigen::Matrix<double, 2, 3> cubic = lhs * rhs;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 3; ++c) f(8 + 3 * r + c) = cubic(r, c);
  return f;
}

std::array<Vec3d, 4> default_key_points() {
  return {Vec3d(50, -80, 0), Vec3d(50, 80, 0), Vec3d(50, 0, -80), Vec3d(50, 0, 80)};
}

Mat4d rotation_matrix(int axis, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat4d r = Mat4d::Identity();
  const int i = (axis + 1) % 3, j = (axis + 2) % 3;
  r(i, i) = c;
  r(i, j) = -s;
  r(j, i) = s;
  r(j, j) = c;
  return r;
}

Mat4d scaling_matrix(double rho) {
  Mat4d z = Mat4d::Identity();
  z.topLeftCorner<3, 3>() *= rho;
  return z;
}

SimilarityParams solve_similarity(const MetricParams& mu, const WhitePoint& w,
                                  const std::array<Vec3d, 4>& key_points) {
  const Homographyd b = metric_matrix(mu) * adaptation_matrix(w);
  const Vec3d white_image = b.apply(w.xyz());
  const double norm = white_image.norm();
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    throw Error(ErrorCode::DegeneratePoint, "white point image is degenerate");
  }

  SimilarityParams s;
  s.rho = 100.0 / norm;
  // R3 (about the third axis) zeroes the second component, then R2 (about
  // the second axis) zeroes the third.
  s.phi(2) = std::atan2(-white_image(1), white_image(0));
  s.phi(1) = std::atan2(white_image(2), std::hypot(white_image(0), white_image(1)));

  const Mat4d partial = rotation_matrix(1, s.phi(1)) * rotation_matrix(2, s.phi(2)) *
                        scaling_matrix(s.rho) * b.matrix();
  const Homographyd partial_h(partial);

  // Planar Procrustes about the lightness axis.
  double dot = 0.0, cross = 0.0;
  for (const Vec3d& target : key_points) {
    const Vec3d image = partial_h.apply(cielab_to_xyz(target, w.xyz()));
    dot += image(1) * target(1) + image(2) * target(2);
    cross += image(1) * target(2) - image(2) * target(1);
  }
  if (!(std::hypot(dot, cross) > 1e-12)) {
    throw Error(ErrorCode::DegenerateKeyPoints, "key point images collapse onto the lightness axis");
  }
  s.phi(0) = std::atan2(cross, dot);
  return s;
}

Homographyd assemble_q(const MetricParams& mu, const SimilarityParams& s) {
  const Mat4d q = rotation_matrix(0, s.phi(0)) * rotation_matrix(1, s.phi(1)) *
                  rotation_matrix(2, s.phi(2)) * scaling_matrix(s.rho) * metric_matrix(mu).matrix();
  return Homographyd(q).canonical();
}

Homographyd build_q(const MetricParams& mu, const WhitePoint& w) {
  return assemble_q(mu, solve_similarity(mu, w));
}

Homographyd build_p(const MetricParams& mu, const WhitePoint& w) {
  return (build_q(mu, w) * adaptation_matrix(w)).canonical();
}

double key_point_objective(const Homographyd& p, const WhitePoint& w,
                           const std::array<Vec3d, 4>& key_points) {
  double sum = 0.0;
  for (const Vec3d& target : key_points) {
    sum += (target - p.apply(cielab_to_xyz(target, w.xyz()))).squaredNorm();
  }
  return sum;
}

ReferenceMatrices reference_matrices() {
  Mat4d m, q, p;
  m << 2.1591, -1.7823, -0.0713, 0,
       0,       2.0866,  0.2103, 0,
       0,       0,       1,      0,
       0.7554,  3.8666,  1.6739, 1;
  q << 75.5362,  486.661,   167.387,  0,
       617.7141, -595.4477, -22.2664, 0,
       48.3433,  194.9377,  -243.281, 0,
       0.7554,   3.8666,    1.6739,   1;
  p << 79.4725,  486.6610,  153.7311,  0,
       649.9038, -595.4477, -20.4498,  0,
       50.8625,  194.9377,  -223.4334, 0,
       0.7947,   3.8666,    1.5373,    1;
  return {Homographyd(m), Homographyd(q), Homographyd(p), WhitePoint::d65()};
}

Homographyd prolab_for_white(const WhitePoint& w) {
  static const Homographyd kernel = build_q(MetricParams::published(), WhitePoint::d65());
  return (kernel * adaptation_matrix(w)).canonical();
}

}  // namespace prolab
