#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "prolab/geometry.hpp"

namespace prolab {

enum class ColorSpaceId { XYZ, xyY, LMS, linRGB, sRGB, CIELAB, CAM16UCS, deviceRGB, proLab };

inline constexpr std::array<ColorSpaceId, 9> kAllSpaces = {
    ColorSpaceId::XYZ,    ColorSpaceId::xyY,      ColorSpaceId::LMS,
    ColorSpaceId::linRGB, ColorSpaceId::sRGB,     ColorSpaceId::CIELAB,
    ColorSpaceId::CAM16UCS, ColorSpaceId::deviceRGB, ColorSpaceId::proLab};

std::string_view name(ColorSpaceId id);
/// Accepts the canonical names plus a few spellings ("CIELAB", "lab", "cam16-ucs", ...).
std::optional<ColorSpaceId> parse_space(std::string_view text);
/// Spaces whose map from XYZ is linear.
bool is_linear(ColorSpaceId id);

struct TaggedColor {
  ColorSpaceId space;
  Vec3d v;
};

// ---------------------------------------------------------------------------
// Published and standard constants.

/// linRGB -> XYZ.
inline Mat3d linrgb_to_xyz_matrix() {
  Mat3d m;
  m << 0.4125, 0.3576, 0.1804,
       0.2127, 0.7152, 0.0722,
       0.0193, 0.1192, 0.9503;
  return m;
}

/// Camera deviceRGB -> linRGB.
inline Mat3d devicergb_to_linrgb_matrix() {
  Mat3d m;
  m << 41.93, -2.08, -37.24,
      -14.32, 39.13, 10.79,
      -0.02, -35.39, 185.52;
  return m * (0.03 / 65536.0);
}

/// Camera deviceRGB -> XYZ as printed (the product of the two matrices above, rounded).
inline Mat3d devicergb_to_xyz_matrix() {
  Mat3d m;
  m << 5.5711, 3.0892, 10.0585,
      -0.6066, 11.4383, 6.0363,
      -0.4189, -13.2786, 80.9631;
  return m * 1e-6;
}

/// Hunt–Pointer–Estévez cone matrix normalised to D65 (XYZ -> LMS).
inline Mat3d hpe_lms_matrix() {
  Mat3d m;
  m << 0.4002, 0.7076, -0.0808,
      -0.2263, 1.1653, 0.0457,
       0.0, 0.0, 0.9182;
  return m;
}

// ---------------------------------------------------------------------------
// Primitive conversions. All of them are pure and never clamp.

template <typename Scalar>
Vec3<Scalar> xyz_to_xyy(const Vec3<Scalar>& c) {
  const Scalar sum = c.sum();
  if (!(sum > Scalar(1e-12))) {
    throw Error(ErrorCode::DegenerateChromaticity, "X+Y+Z must be positive");
  }
  return Vec3<Scalar>(c(0) / sum, c(1) / sum, c(1));
}

template <typename Scalar>
Vec3<Scalar> xyy_to_xyz(const Vec3<Scalar>& c) {
  if (!(c(1) > Scalar(0))) {
    throw Error(ErrorCode::DegenerateChromaticity, "chromaticity y must be positive");
  }
  const Scalar scale = c(2) / c(1);
  return Vec3<Scalar>(c(0) * scale, c(2), (Scalar(1) - c(0) - c(1)) * scale);
}

/// sRGB transfer for one component, odd-extended to negative values.
template <typename Scalar>
Scalar srgb_encode(Scalar l) {
  using std::abs;
  using std::pow;
  const Scalar a = abs(l);
  const Scalar s = a <= Scalar(0.0031308) ? Scalar(12.92) * a
                                          : Scalar(1.055) * pow(a, Scalar(1) / Scalar(2.4)) - Scalar(0.055);
  return l < Scalar(0) ? -s : s;
}

template <typename Scalar>
Scalar srgb_decode(Scalar s) {
  using std::abs;
  using std::pow;
  const Scalar a = abs(s);
  const Scalar l = a <= Scalar(0.04045) ? a / Scalar(12.92)
                                        : pow((a + Scalar(0.055)) / Scalar(1.055), Scalar(2.4));
  return s < Scalar(0) ? -l : l;
}

template <typename Scalar>
Vec3<Scalar> linrgb_to_srgb(const Vec3<Scalar>& c) {
  return c.unaryExpr([](Scalar v) { return srgb_encode(v); });
}

template <typename Scalar>
Vec3<Scalar> srgb_to_linrgb(const Vec3<Scalar>& c) {
  return c.unaryExpr([](Scalar v) { return srgb_decode(v); });
}

namespace detail {

inline constexpr double kLabDelta = 6.0 / 29.0;

template <typename Scalar>
Scalar lab_f(Scalar t) {
  using std::cbrt;
  constexpr double d = kLabDelta;
  if (t > Scalar(d * d * d)) return cbrt(t);
  return t / Scalar(3 * d * d) + Scalar(4.0 / 29.0);
}

template <typename Scalar>
Scalar lab_f_inv(Scalar t) {
  constexpr double d = kLabDelta;
  if (t > Scalar(d)) return t * t * t;
  return Scalar(3 * d * d) * (t - Scalar(4.0 / 29.0));
}

template <typename Scalar>
void check_white(const Vec3<Scalar>& white) {
  if (!(white.minCoeff() > Scalar(0))) {
    throw Error(ErrorCode::InvalidWhitePoint, "white point components must be positive");
  }
}

}  // namespace detail

template <typename Scalar>
Vec3<Scalar> xyz_to_cielab(const Vec3<Scalar>& c, const Vec3<Scalar>& white) {
  detail::check_white(white);
  const Scalar fx = detail::lab_f(c(0) / white(0));
  const Scalar fy = detail::lab_f(c(1) / white(1));
  const Scalar fz = detail::lab_f(c(2) / white(2));
  return Vec3<Scalar>(Scalar(116) * fy - Scalar(16), Scalar(500) * (fx - fy), Scalar(200) * (fy - fz));
}

template <typename Scalar>
Vec3<Scalar> cielab_to_xyz(const Vec3<Scalar>& lab, const Vec3<Scalar>& white) {
  detail::check_white(white);
  const Scalar fy = (lab(0) + Scalar(16)) / Scalar(116);
  const Scalar fx = fy + lab(1) / Scalar(500);
  const Scalar fz = fy - lab(2) / Scalar(200);
  return Vec3<Scalar>(detail::lab_f_inv(fx) * white(0), detail::lab_f_inv(fy) * white(1),
                      detail::lab_f_inv(fz) * white(2));
}

// ---------------------------------------------------------------------------
// CAM16 / CAM16-UCS.

struct Cam16ViewingConditions {
  /// Adopted white, scaled so that Y_w = 100.
  Vec3d white{95.05, 100.0, 108.88};
  /// Adapting luminance in cd/m^2.
  double adapting_luminance = 64.0 / 3.14159265358979323846 * 0.2;
  double background_luminance = 20.0;
  // "Average" surround.
  double f = 1.0;
  double c = 0.69;
  double nc = 1.0;
  /// Degree of adaptation; 1 = full (von Kries) adaptation.
  double degree_of_adaptation = 1.0;
};

/// CAM16 forward/inverse model with viewing-condition constants precomputed.
/// Inputs are XYZ on the same scale as the configured white (Y_w = 100).
class Cam16Ucs {
 public:
  explicit Cam16Ucs(const Cam16ViewingConditions& vc = {});

  /// XYZ -> (J', a', b').
  Vec3d forward(const Vec3d& xyz) const;
  /// (J', a', b') -> XYZ.
  Vec3d inverse(const Vec3d& jab) const;

  const Cam16ViewingConditions& conditions() const { return vc_; }

 private:
  Cam16ViewingConditions vc_;
  Mat3d m16_;
  Mat3d m16_inv_;
  Vec3d d_rgb_;
  double fl_ = 0, n_ = 0, z_ = 0, nbb_ = 0, ncb_ = 0, aw_ = 0;
};

// ---------------------------------------------------------------------------
// deviceRGB calibration.

struct DeviceCalibration {
  /// deviceRGB -> XYZ.
  Mat3d d_inv;
  /// XYZ -> deviceRGB.
  Mat3d d;

  /// Throws SingularCalibration when d_inv is not invertible.
  static DeviceCalibration from_device_to_xyz(const Mat3d& d_inv);
  /// The printed Canon 5D Mark III calibration.
  static DeviceCalibration standard();
};

template <typename Scalar>
Vec3<Scalar> xyz_to_devicergb(const Vec3<Scalar>& c, const DeviceCalibration& cal) {
  return cal.d.cast<Scalar>() * c;
}

template <typename Scalar>
Vec3<Scalar> devicergb_to_xyz(const Vec3<Scalar>& c, const DeviceCalibration& cal) {
  return cal.d_inv.cast<Scalar>() * c;
}

}  // namespace prolab
