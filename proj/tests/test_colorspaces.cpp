#include <gtest/gtest.h>

#include <cmath>

#include "prolab/colorspaces.hpp"
#include "prolab/error.hpp"
#include "prolab/rng.hpp"
#include "prolab/spaces.hpp"

using namespace prolab;

namespace {

const Vec3d kD65(0.9505, 1.0, 1.0888);

Vec3d random_srgb_xyz(Rng& rng) {
  const Vec3d rgb(rng.uniform(0.02, 1), rng.uniform(0.02, 1), rng.uniform(0.02, 1));
  return linrgb_to_xyz_matrix() * rgb;
}

// CIELAB in the kappa/epsilon form, long double.
Vec3d lab_oracle(const Vec3d& c, const Vec3d& w) {
  const long double eps = 216.0L / 24389.0L, kappa = 24389.0L / 27.0L;
  auto f = [&](long double t) {
    return t > eps ? std::cbrt(t) : (kappa * t + 16.0L) / 116.0L;
  };
  const long double fx = f(c(0) / static_cast<long double>(w(0)));
  const long double fy = f(c(1) / static_cast<long double>(w(1)));
  const long double fz = f(c(2) / static_cast<long double>(w(2)));
  return Vec3d(static_cast<double>(116 * fy - 16), static_cast<double>(500 * (fx - fy)),
               static_cast<double>(200 * (fy - fz)));
}

template <typename Fn>
ErrorCode error_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Xyy, Examples) {
  const Vec3d e = xyz_to_xyy(Vec3d(1, 1, 1));
  EXPECT_DOUBLE_EQ(e(0), 1.0 / 3);
  EXPECT_DOUBLE_EQ(e(1), 1.0 / 3);
  EXPECT_DOUBLE_EQ(e(2), 1.0);
  const Vec3d w = xyz_to_xyy(kD65);
  EXPECT_NEAR(w(0), 0.3127, 5e-4);
  EXPECT_NEAR(w(1), 0.3290, 5e-4);
  EXPECT_EQ(error_code([] { xyz_to_xyy(Vec3d(0, 0, 0)); }), ErrorCode::DegenerateChromaticity);
  EXPECT_EQ(error_code([] { xyy_to_xyz(Vec3d(0.3, 0, 1)); }), ErrorCode::DegenerateChromaticity);
}

TEST(Lms, LinearAndPositiveWhite) {
  EXPECT_EQ(xyz_to_lms(Vec3d::Zero()), Vec3d::Zero());
  EXPECT_GT(xyz_to_lms(kD65).minCoeff(), 0.0);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Vec3d c(rng.uniform(-1, 2), rng.uniform(-1, 2), rng.uniform(-1, 2));
    EXPECT_LT((lms_to_xyz(xyz_to_lms(c)) - c).norm(), 1e-9);
  }
}

TEST(LinRgb, RowSumsAreWhite) {
  EXPECT_LT((linrgb_to_xyz(Vec3d(1, 1, 1)) - kD65).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Srgb, TransferFunction) {
  EXPECT_EQ(srgb_encode(0.0), 0.0);
  EXPECT_NEAR(srgb_encode(1.0), 1.0, 1e-9);
  EXPECT_NEAR(srgb_encode(0.0031308), 0.04045, 1e-6);
  // Upper branch evaluated at the knee agrees with the lower one.
  EXPECT_NEAR(1.055 * std::pow(0.0031308, 1 / 2.4) - 0.055, 0.04045, 1e-6);
  EXPECT_DOUBLE_EQ(srgb_encode(-0.5), -srgb_encode(0.5));
  for (double s = -1.0; s <= 1.0; s += 0.01) EXPECT_NEAR(srgb_encode(srgb_decode(s)), s, 1e-12);
}

TEST(Cielab, WhiteBlackAndOracle) {
  EXPECT_LT((xyz_to_cielab(kD65, kD65) - Vec3d(100, 0, 0)).norm(), 1e-12);
  EXPECT_LT(xyz_to_cielab(Vec3d(0, 0, 0), kD65).norm(), 1e-12);
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const Vec3d c = random_srgb_xyz(rng) * rng.uniform(0.001, 1.0);
    const Vec3d lab = xyz_to_cielab(c, kD65);
    EXPECT_LT((lab - lab_oracle(c, kD65)).norm(), 1e-9);
    EXPECT_LT((cielab_to_xyz(lab, kD65) - c).norm(), 1e-9);
  }
  EXPECT_EQ(error_code([] { xyz_to_cielab(Vec3d(1, 1, 1), Vec3d(0, 1, 1)); }),
            ErrorCode::InvalidWhitePoint);
}

TEST(Cam16, FrozenReferenceValues) {
  // Reference values from an independent CAM16-UCS implementation under the
  // same viewing conditions (L_A = 64/pi * 0.2, Y_b = 20, average surround, D = 1).
  struct Case {
    Vec3d xyz, jab;
  };
  const Case cases[] = {
      {{0.2, 0.3, 0.25}, {63.014680975814, -22.253086084007, 5.593997494407}},
      {{0.05, 0.04, 0.1}, {26.271876764645, 9.558949448136, -13.639914222272}},
      {{0.6, 0.4, 0.1}, {74.670948872528, 30.547320051859, 20.246296645795}},
      {{0.1, 0.3, 0.6}, {60.543537356218, -38.985724796928, -13.564468515902}},
  };
  for (const auto& c : cases) {
    EXPECT_LT((xyz_to_cam16ucs(c.xyz) - c.jab).norm(), 1e-6) << c.xyz.transpose();
  }
}

TEST(Cam16, AchromaticAxisAndMonotoneLightness) {
  const Vec3d w = xyz_to_cam16ucs(kD65);
  EXPECT_NEAR(w(0), 100.0, 1e-6);
  EXPECT_LT(std::hypot(w(1), w(2)), 1e-6);
  double previous = -1.0;
  for (int k = 1; k <= 100; ++k) {
    const Vec3d g = xyz_to_cam16ucs(kD65 * (k / 100.0));
    EXPECT_GT(g(0), previous);
    EXPECT_LT(std::hypot(g(1), g(2)), 1e-6);
    previous = g(0);
  }
}

TEST(Cam16, RoundTrip) {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Vec3d c = random_srgb_xyz(rng);
    EXPECT_LT((cam16ucs_to_xyz(xyz_to_cam16ucs(c)) - c).norm(), 1e-6);
  }
}

TEST(DeviceRgb, Calibration) {
  const DeviceCalibration cal = DeviceCalibration::standard();
  EXPECT_DOUBLE_EQ(cal.d_inv(0, 0), 5.5711e-6);
  EXPECT_LT((cal.d_inv * cal.d - Mat3d::Identity()).norm(), 1e-9);
  EXPECT_GT(xyz_to_devicergb(kD65, cal).minCoeff(), 0.0);
  EXPECT_EQ(error_code([] { DeviceCalibration::from_device_to_xyz(Mat3d::Zero()); }),
            ErrorCode::SingularCalibration);
  // The deviceRGB -> linRGB leg composed with D2 matches the printed product.
  const Mat3d product = linrgb_to_xyz_matrix() * devicergb_to_linrgb_matrix();
  EXPECT_LT(((product - cal.d_inv).array().abs() / cal.d_inv.cwiseAbs().maxCoeff()).maxCoeff(),
            2e-3);
}

TEST(Prolab, WhiteBlackCollinear) {
  EXPECT_LT((xyz_to_prolab(kD65) - Vec3d(100, 0, 0)).norm(), 1e-6);
  EXPECT_LT(xyz_to_prolab(Vec3d::Zero()).norm(), 1e-12);
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Vec3d a = random_srgb_xyz(rng), b = random_srgb_xyz(rng);
    const double t = rng.uniform(0.1, 0.9);
    const Vec3d pa = xyz_to_prolab(a), pb = xyz_to_prolab(b);
    const Vec3d pm = xyz_to_prolab(Vec3d(a + t * (b - a)));
    EXPECT_LT(collinearity_deviation(pa, pm, pb), 1e-9);
  }
}

TEST(Spaces, Names) {
  for (ColorSpaceId id : kAllSpaces) {
    ASSERT_TRUE(parse_space(name(id)).has_value());
    EXPECT_EQ(*parse_space(name(id)), id);
  }
  EXPECT_FALSE(parse_space("HSV").has_value());
}

TEST(Convert, IdentityAndPairwiseRoundTrips) {
  Rng rng(8);
  const TaggedColor c{ColorSpaceId::sRGB, Vec3d(0.3, 0.6, 0.2)};
  const TaggedColor same = convert(c, ColorSpaceId::sRGB);
  EXPECT_EQ(same.v, c.v);
  for (int i = 0; i < 100; ++i) {
    const Vec3d xyz = random_srgb_xyz(rng);
    for (ColorSpaceId a : kAllSpaces) {
      const TaggedColor ca{a, ColorSpaces::standard().from_xyz(a, xyz)};
      for (ColorSpaceId b : kAllSpaces) {
        const TaggedColor back = convert(convert(ca, b), a);
        EXPECT_LT((back.v - ca.v).norm(), 1e-6 * std::max(1.0, ca.v.norm()))
            << name(a) << " via " << name(b);
      }
    }
  }
}

TEST(Convert, RoundTripThroughEachSpace) {
  Rng rng(12);
  const ColorSpaces& s = ColorSpaces::standard();
  for (int i = 0; i < 1000; ++i) {
    const Vec3d xyz = random_srgb_xyz(rng);
    for (ColorSpaceId id : kAllSpaces) {
      const double tol = is_linear(id) ? 1e-9 : 1e-6;
      EXPECT_LT((s.to_xyz(id, s.from_xyz(id, xyz)) - xyz).norm(), tol) << name(id);
    }
  }
}

TEST(Convert, SrgbWhiteToProlab) {
  // Oracle: P applied to the row sums of D2 by hand.
  const Mat4d p = build_p(MetricParams::published(), WhitePoint::d65()).matrix();
  const Vec3d x = linrgb_to_xyz_matrix().rowwise().sum();
  const Vec4d h = p * Vec4d(x(0), x(1), x(2), 1.0);
  const Vec3d expected = h.head<3>() / h(3);
  const TaggedColor out = convert({ColorSpaceId::sRGB, Vec3d(1, 1, 1)}, ColorSpaceId::proLab);
  EXPECT_LT((out.v - expected).norm(), 1e-9);
  // The Y row of D2 sums to 1.0001, so the result sits 1.4e-3 above 100.
  EXPECT_NEAR(out.v(0), 100.0, 2e-3);
  EXPECT_LT(std::hypot(out.v(1), out.v(2)), 1e-2);
}

TEST(Convert, AchromaticAxisPerceptualSpaces) {
  const ColorSpaces& s = ColorSpaces::standard();
  for (ColorSpaceId id : {ColorSpaceId::CIELAB, ColorSpaceId::CAM16UCS, ColorSpaceId::proLab}) {
    for (double t : {0.01, 0.1, 0.5, 0.9, 1.0}) {
      const Vec3d g = s.from_xyz(id, Vec3d(kD65 * t));
      EXPECT_LT(std::hypot(g(1), g(2)), 1e-6) << name(id) << " t=" << t;
    }
  }
}

TEST(Convert, OtherWhiteProlab) {
  ColorSpaces::Options o;
  o.white = WhitePoint(Vec3d(0.9642, 1.0, 0.8251));
  const ColorSpaces d50(o);
  EXPECT_LT((d50.from_xyz(ColorSpaceId::proLab, o.white.xyz()) - Vec3d(100, 0, 0)).norm(), 1e-9);
  EXPECT_LT((d50.from_xyz(ColorSpaceId::CIELAB, o.white.xyz()) - Vec3d(100, 0, 0)).norm(), 1e-9);
}
