#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "prolab/error.hpp"

namespace prolab {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vec4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Scalar, 4, 4>;

using Vec3d = Vec3<double>;
using Vec4d = Vec4<double>;
using Mat3d = Mat3<double>;
using Mat4d = Mat4<double>;

/// Below this |h4| a homogeneous point is treated as lying on the horizon.
inline constexpr double kHorizonTolerance = 1e-300;
/// Between kHorizonTolerance and this value a point is finite but ill-conditioned.
inline constexpr double kIllConditionedDenominator = 1e-12;

template <typename Derived>
Vec4<typename Derived::Scalar> to_homogeneous(const Eigen::MatrixBase<Derived>& c) {
  using Scalar = typename Derived::Scalar;
  return Vec4<Scalar>(c(0), c(1), c(2), Scalar(1));
}

template <typename Derived>
Vec3<typename Derived::Scalar> to_cartesian(const Eigen::MatrixBase<Derived>& h) {
  using std::abs;
  if (!(abs(h(3)) > kHorizonTolerance)) {
    throw Error(ErrorCode::DegeneratePoint, "homogeneous point lies on the horizon");
  }
  return h.template head<3>() / h(3);
}

/// 3D projective transform acting on Cartesian colour coordinates.
///
/// The matrix is applied to column vectors: apply(c) = T_c(m * T_h(c)).
/// Any nonzero multiple of the matrix describes the same transform.
template <typename Scalar>
class Homography {
 public:
  using Matrix = Mat4<Scalar>;
  using Vector = Vec3<Scalar>;

  Homography() : m_(Matrix::Identity()) {}

  explicit Homography(const Matrix& m) : m_(m) {
    using std::abs;
    const Scalar scale = m.cwiseAbs().maxCoeff();
    if (!(scale > Scalar(0)) || !(abs((m / scale).determinant()) > Scalar(1e-12))) {
      throw Error(ErrorCode::SingularMatrix, "homography matrix is not invertible");
    }
  }

  static Homography identity() { return Homography(); }

  const Matrix& matrix() const { return m_; }
  Scalar operator()(Eigen::Index row, Eigen::Index col) const { return m_(row, col); }

  /// Same transform scaled so that the bottom-right entry equals one.
  Homography canonical() const {
    using std::abs;
    if (!(abs(m_(3, 3)) > Scalar(0))) {
      throw Error(ErrorCode::SingularMatrix, "p44 is zero; no canonical form");
    }
    return Homography(m_ / m_(3, 3), Unchecked{});
  }

  /// Same transform scaled so that the largest-magnitude entry is one.
  Homography normalized() const { return Homography(m_ / m_.cwiseAbs().maxCoeff(), Unchecked{}); }

  /// Homogeneous denominator h4 of the image of c.
  template <typename Derived>
  Scalar denominator(const Eigen::MatrixBase<Derived>& c) const {
    return m_.row(3).template head<3>().dot(c) + m_(3, 3);
  }

  template <typename Derived>
  bool ill_conditioned(const Eigen::MatrixBase<Derived>& c) const {
    using std::abs;
    return abs(denominator(c) / m_.cwiseAbs().maxCoeff()) < Scalar(kIllConditionedDenominator);
  }

  template <typename Derived>
  Vector apply(const Eigen::MatrixBase<Derived>& c) const {
    return to_cartesian(m_ * to_homogeneous(c));
  }

  template <typename Derived>
  Vector operator()(const Eigen::MatrixBase<Derived>& c) const {
    return apply(c);
  }

  /// Analytic Jacobian of apply() at c.
  template <typename Derived>
  Mat3<Scalar> jacobian(const Eigen::MatrixBase<Derived>& c) const {
    const Vec4<Scalar> h = m_ * to_homogeneous(c);
    if (!(std::abs(h(3)) > kHorizonTolerance)) {
      throw Error(ErrorCode::DegeneratePoint, "jacobian evaluated on the horizon");
    }
    const Mat3<Scalar> a = m_.template topLeftCorner<3, 3>();
    const Vec3<Scalar> d = m_.row(3).template head<3>().transpose();
    return (a - h.template head<3>() * d.transpose() / h(3)) / h(3);
  }

  Homography inverse() const { return Homography(m_.inverse(), Unchecked{}); }

  /// this ∘ other: other is applied first.
  Homography operator*(const Homography& other) const { return Homography(m_ * other.m_); }

  template <typename Other>
  Homography<Other> cast() const {
    return Homography<Other>(m_.template cast<Other>());
  }

 private:
  struct Unchecked {};
  Homography(const Matrix& m, Unchecked) : m_(m) {}

  Matrix m_;
};

using Homographyd = Homography<double>;

template <typename Scalar, typename Derived>
Vec3<Scalar> apply(const Homography<Scalar>& h, const Eigen::MatrixBase<Derived>& c) {
  return h.apply(c);
}

/// Matrix product a·b; b is applied first.
template <typename Scalar>
Homography<Scalar> compose(const Homography<Scalar>& a, const Homography<Scalar>& b) {
  return a * b;
}

template <typename Scalar>
Homography<Scalar> invert(const Homography<Scalar>& a) {
  return a.inverse();
}

/// sin of the angle at a between (b - a) and (c - a); zero iff the points are collinear.
template <typename Scalar>
Scalar collinearity_deviation(const Vec3<Scalar>& a, const Vec3<Scalar>& b, const Vec3<Scalar>& c) {
  const Vec3<Scalar> u = b - a;
  const Vec3<Scalar> v = c - a;
  const Scalar denom = u.norm() * v.norm();
  if (!(denom > Scalar(0))) return Scalar(0);
  return u.cross(v).norm() / denom;
}

/// Cross ratio (AC·BD)/(BC·AD) of four collinear points, using signed
/// positions along the line through a and d.
template <typename Scalar>
Scalar cross_ratio(const Vec3<Scalar>& a, const Vec3<Scalar>& b, const Vec3<Scalar>& c,
                   const Vec3<Scalar>& d) {
  const Vec3<Scalar> dir = (d - a).normalized();
  const Scalar ta = 0, tb = (b - a).dot(dir), tc = (c - a).dot(dir), td = (d - a).dot(dir);
  return ((tc - ta) * (td - tb)) / ((tc - tb) * (td - ta));
}

}  // namespace prolab
