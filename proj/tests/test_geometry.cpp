#include <gtest/gtest.h>

#include "prolab/error.hpp"
#include "prolab/geometry.hpp"
#include "prolab/model.hpp"
#include "prolab/rng.hpp"

using namespace prolab;

namespace {

// Gauss-Jordan inverse in long double, independent of Eigen.
Mat4d inverse_ld(const Mat4d& m) {
  long double a[4][8];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 8; ++j) a[i][j] = j < 4 ? m(i, j) : (j - 4 == i ? 1.0L : 0.0L);
  for (int c = 0; c < 4; ++c) {
    int p = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    for (int j = 0; j < 8; ++j) std::swap(a[c][j], a[p][j]);
    const long double d = a[c][c];
    for (int j = 0; j < 8; ++j) a[c][j] /= d;
    for (int r = 0; r < 4; ++r) {
      if (r == c) continue;
      const long double f = a[r][c];
      for (int j = 0; j < 8; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Mat4d out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out(i, j) = static_cast<double>(a[i][j + 4]);
  return out;
}

}  // namespace

TEST(Homogeneous, RoundTrip) {
  EXPECT_EQ(to_homogeneous(Vec3d(0, 0, 0)), Vec4d(0, 0, 0, 1));
  EXPECT_EQ(to_homogeneous(Vec3d(0.9505, 1, 1.0888)), Vec4d(0.9505, 1, 1.0888, 1));
  EXPECT_EQ(to_homogeneous(Vec3d(1, 2, 3)), Vec4d(1, 2, 3, 1));
  EXPECT_EQ(to_cartesian(Vec4d(2, 4, 6, 2)), Vec3d(1, 2, 3));
  EXPECT_EQ(to_cartesian(Vec4d(1, 2, 3, 1)), Vec3d(1, 2, 3));
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vec3d c(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5));
    EXPECT_EQ(to_cartesian(to_homogeneous(c)), c);
  }
}

TEST(Homogeneous, HorizonPointThrows) {
  try {
    to_cartesian(Vec4d(1, 0, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePoint);
  }
}

TEST(Homography, IdentityAndComposition) {
  const Homographyd id = Homographyd::identity();
  EXPECT_EQ(apply(id, Vec3d(5, 6, 7)), Vec3d(5, 6, 7));
  EXPECT_TRUE(compose(id, id).matrix().isIdentity());
  EXPECT_TRUE(invert(id).matrix().isIdentity());
}

TEST(Homography, ComposeAppliesRightFactorFirst) {
  Mat4d a = Mat4d::Identity();
  a(0, 3) = 1.0;  // translate x
  Mat4d b = Mat4d::Identity();
  b(0, 0) = 2.0;  // scale x
  const Vec3d c(1, 0, 0);
  EXPECT_NEAR(apply(compose(Homographyd(a), Homographyd(b)), c)(0), 3.0, 1e-15);
  EXPECT_NEAR(apply(compose(Homographyd(b), Homographyd(a)), c)(0), 4.0, 1e-15);
}

TEST(Homography, SingularMatrixRejected) {
  Mat4d m = Mat4d::Identity();
  m(2, 2) = 0.0;
  try {
    Homographyd h(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Homography, BuiltPMapsWhiteAndBlack) {
  const WhitePoint d65 = WhitePoint::d65();
  const Homographyd p = build_p(MetricParams::published(), d65);
  const Vec3d w = apply(p, d65.xyz());
  EXPECT_NEAR(w(0), 100.0, 1e-6);
  EXPECT_NEAR(w(1), 0.0, 1e-6);
  EXPECT_NEAR(w(2), 0.0, 1e-6);
  EXPECT_EQ(apply(p, Vec3d::Zero()), Vec3d::Zero());
}

TEST(Homography, PrintedPMapsWhiteToRoundingAccuracy) {
  // The printed matrix carries four decimals; its white image is off by ~3e-3.
  const auto ref = reference_matrices();
  const Vec3d w = apply(ref.p, ref.white.xyz());
  EXPECT_NEAR(w(0), 100.0, 3e-3);
  EXPECT_NEAR(w(1), 0.0, 3e-3);
  EXPECT_NEAR(w(2), 0.0, 3e-3);
  EXPECT_EQ(apply(ref.p, Vec3d::Zero()), Vec3d::Zero());
}

TEST(Homography, InverseOfPrintedPAgreesWithLongDoubleOracle) {
  const auto ref = reference_matrices();
  const Mat4d inv = inverse_ld(ref.p.matrix());
  const Vec4d h = inv * Vec4d(100, 0, 0, 1);
  const Vec3d expected = h.head<3>() / h(3);
  const Vec3d got = apply(invert(ref.p), Vec3d(100, 0, 0));
  EXPECT_LT((got - expected).norm(), 1e-9);
  // and back to the D65 white up to the printed precision of P
  EXPECT_LT((got - ref.white.xyz()).norm(), 1e-4);
  // with the constructed P the white is recovered to 1e-6
  const Homographyd p = build_p(MetricParams::published(), ref.white);
  EXPECT_LT((apply(invert(p), Vec3d(100, 0, 0)) - ref.white.xyz()).norm(), 1e-6);
}

TEST(Homography, AnalyticJacobianMatchesFiniteDifferences) {
  const Homographyd p = build_p(MetricParams::published(), WhitePoint::d65());
  const Vec3d c(0.3, 0.4, 0.2);
  const Mat3d j = p.jacobian(c);
  for (int k = 0; k < 3; ++k) {
    Vec3d lo = c, hi = c;
    lo(k) -= 1e-6;
    hi(k) += 1e-6;
    const Vec3d d = (p(hi) - p(lo)) / 2e-6;
    EXPECT_LT((j.col(k) - d).norm(), 1e-4 * j.norm());
  }
}

TEST(Homography, IllConditionedFlag) {
  Mat4d m = Mat4d::Identity();
  m(3, 0) = -1.0;  // denominator 1 - x
  const Homographyd h(m);
  EXPECT_FALSE(h.ill_conditioned(Vec3d(0.5, 0, 0)));
  EXPECT_TRUE(h.ill_conditioned(Vec3d(1.0 - 1e-13, 0, 0)));
  EXPECT_NO_THROW(h(Vec3d(1.0 - 1e-13, 0, 0)));
  EXPECT_THROW(h(Vec3d(1.0, 0, 0)), Error);
}

TEST(Homography, CanonicalFormHasUnitCorner) {
  Mat4d m = 3.0 * Mat4d::Identity();
  m(0, 1) = 0.5;
  const Homographyd h(m);
  EXPECT_DOUBLE_EQ(h.canonical().matrix()(3, 3), 1.0);
  const Vec3d c(0.2, 0.7, -0.1);
  EXPECT_LT((h(c) - h.canonical()(c)).norm(), 1e-15);
}

TEST(CrossRatio, SimpleLine) {
  // Points at 0, 1, 2, 3 on a line: (AC·BD)/(BC·AD) = (2·2)/(1·3).
  const Vec3d d(1, 2, 2);
  EXPECT_NEAR(cross_ratio(Vec3d(0 * d), Vec3d(1 * d), Vec3d(2 * d), Vec3d(3 * d)), 4.0 / 3.0,
              1e-12);
}
