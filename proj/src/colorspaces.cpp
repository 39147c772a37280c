#include "prolab/colorspaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace prolab {

std::string_view name(ColorSpaceId id) {
  switch (id) {
    case ColorSpaceId::XYZ: return "XYZ";
    case ColorSpaceId::xyY: return "xyY";
    case ColorSpaceId::LMS: return "LMS";
    case ColorSpaceId::linRGB: return "linRGB";
    case ColorSpaceId::sRGB: return "sRGB";
    case ColorSpaceId::CIELAB: return "CIELAB";
    case ColorSpaceId::CAM16UCS: return "CAM16-UCS";
    case ColorSpaceId::deviceRGB: return "deviceRGB";
    case ColorSpaceId::proLab: return "proLab";
  }
  return "?";
}

std::optional<ColorSpaceId> parse_space(std::string_view text) {
  std::string key;
  for (char ch : text) {
    if (ch == '-' || ch == '_' || ch == ' ') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (key == "xyz" || key == "ciexyz") return ColorSpaceId::XYZ;
  if (key == "xyy" || key == "ciexyy") return ColorSpaceId::xyY;
  if (key == "lms") return ColorSpaceId::LMS;
  if (key == "linrgb") return ColorSpaceId::linRGB;
  if (key == "srgb") return ColorSpaceId::sRGB;
  if (key == "cielab" || key == "lab") return ColorSpaceId::CIELAB;
  if (key == "cam16ucs" || key == "cam16") return ColorSpaceId::CAM16UCS;
  if (key == "devicergb" || key == "device") return ColorSpaceId::deviceRGB;
  if (key == "prolab") return ColorSpaceId::proLab;
  return std::nullopt;
}

bool is_linear(ColorSpaceId id) {
  switch (id) {
    case ColorSpaceId::XYZ:
    case ColorSpaceId::LMS:
    case ColorSpaceId::linRGB:
    case ColorSpaceId::deviceRGB:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kPi = 3.14159265358979323846;
// Tolerance below zero accepted for the achromatic response before the
// model is declared out of domain.
constexpr double kAchromaticTolerance = 1e-9;

double adapt(double component, double fl) {
  const double x = std::pow(fl * std::abs(component) / 100.0, 0.42);
  const double v = 400.0 * x / (x + 27.13);
  return (component < 0 ? -v : v) + 0.1;
}

double unadapt(double adapted, double fl) {
  const double a = adapted - 0.1;
  const double mag = std::abs(a);
  if (!(mag < 400.0)) {
    throw Error(ErrorCode::ModelDomainError, "adapted cone response outside the model range");
  }
  const double v = 100.0 / fl * std::pow(27.13 * mag / (400.0 - mag), 1.0 / 0.42);
  return a < 0 ? -v : v;
}

}  // namespace

Cam16Ucs::Cam16Ucs(const Cam16ViewingConditions& vc) : vc_(vc) {
  m16_ << 0.401288, 0.650173, -0.051461,
         -0.250268, 1.204414, 0.045854,
         -0.002079, 0.048952, 0.953127;
  m16_inv_ = m16_.inverse();

  const double la = vc.adapting_luminance;
  const double k = 1.0 / (5.0 * la + 1.0);
  const double k4 = k * k * k * k;
  fl_ = 0.2 * k4 * (5.0 * la) + 0.1 * (1.0 - k4) * (1.0 - k4) * std::cbrt(5.0 * la);
  n_ = vc.background_luminance / vc.white(1);
  z_ = 1.48 + std::sqrt(n_);
  nbb_ = 0.725 * std::pow(n_, -0.2);
  ncb_ = nbb_;

  const double d = vc.degree_of_adaptation;
  const Vec3d rgb_w = m16_ * vc.white;
  d_rgb_ = (d * vc.white(1) / rgb_w.array() + 1.0 - d).matrix();
  const Vec3d rgb_wc = d_rgb_.cwiseProduct(rgb_w);
  Vec3d rgb_aw;
  for (int i = 0; i < 3; ++i) rgb_aw(i) = adapt(rgb_wc(i), fl_);
  aw_ = (2.0 * rgb_aw(0) + rgb_aw(1) + rgb_aw(2) / 20.0 - 0.305) * nbb_;
}

Vec3d Cam16Ucs::forward(const Vec3d& xyz) const {
  const Vec3d rgb_c = d_rgb_.cwiseProduct(m16_ * xyz);
  Vec3d ra;
  for (int i = 0; i < 3; ++i) ra(i) = adapt(rgb_c(i), fl_);

  const double a = ra(0) - 12.0 * ra(1) / 11.0 + ra(2) / 11.0;
  const double b = (ra(0) + ra(1) - 2.0 * ra(2)) / 9.0;
  double achromatic = (2.0 * ra(0) + ra(1) + ra(2) / 20.0 - 0.305) * nbb_;
  if (achromatic < -kAchromaticTolerance) {
    throw Error(ErrorCode::ModelDomainError, "negative achromatic response");
  }
  achromatic = std::max(achromatic, 0.0);

  const double h = std::atan2(b, a);
  const double et = 0.25 * (std::cos(h + 2.0) + 3.8);
  const double j = 100.0 * std::pow(achromatic / aw_, vc_.c * z_);
  const double denom = ra(0) + ra(1) + 21.0 * ra(2) / 20.0;
  const double t = (50000.0 / 13.0 * vc_.nc * ncb_ * et * std::hypot(a, b)) / denom;
  const double chroma =
      std::pow(t, 0.9) * std::sqrt(j / 100.0) * std::pow(1.64 - std::pow(0.29, n_), 0.73);
  const double colourfulness = chroma * std::pow(fl_, 0.25);

  const double j_ucs = 1.7 * j / (1.0 + 0.007 * j);
  const double m_ucs = std::log1p(0.0228 * colourfulness) / 0.0228;
  return Vec3d(j_ucs, m_ucs * std::cos(h), m_ucs * std::sin(h));
}

Vec3d Cam16Ucs::inverse(const Vec3d& jab) const {
  const double j_ucs = jab(0);
  const double j = j_ucs / (1.7 - 0.007 * j_ucs);
  if (!(j >= 0.0)) {
    throw Error(ErrorCode::ModelDomainError, "negative lightness J");
  }
  const double m_ucs = std::hypot(jab(1), jab(2));
  const double h = std::atan2(jab(2), jab(1));
  const double colourfulness = std::expm1(0.0228 * m_ucs) / 0.0228;
  const double chroma = colourfulness / std::pow(fl_, 0.25);

  const double alpha_den = std::sqrt(j / 100.0) * std::pow(1.64 - std::pow(0.29, n_), 0.73);
  const double t = (j > 0.0) ? std::pow(chroma / alpha_den, 1.0 / 0.9) : 0.0;
  const double et = 0.25 * (std::cos(h + 2.0) + 3.8);
  const double achromatic = aw_ * std::pow(j / 100.0, 1.0 / (vc_.c * z_));

  const double p2 = achromatic / nbb_ + 0.305;
  const double p3 = 21.0 / 20.0;
  double a = 0.0, b = 0.0;
  if (t > 0.0) {
    const double p1 = 50000.0 / 13.0 * vc_.nc * ncb_ * et / t;
    const double sh = std::sin(h), ch = std::cos(h);
    if (std::abs(sh) >= std::abs(ch)) {
      const double p4 = p1 / sh;
      b = p2 * (2.0 + p3) * (460.0 / 1403.0) /
          (p4 + (2.0 + p3) * (220.0 / 1403.0) * (ch / sh) - 27.0 / 1403.0 + p3 * (6300.0 / 1403.0));
      a = b * ch / sh;
    } else {
      const double p5 = p1 / ch;
      a = p2 * (2.0 + p3) * (460.0 / 1403.0) /
          (p5 + (2.0 + p3) * (220.0 / 1403.0) - (27.0 / 1403.0 - p3 * (6300.0 / 1403.0)) * (sh / ch));
      b = a * sh / ch;
    }
  }
  const Vec3d ra((460.0 * p2 + 451.0 * a + 288.0 * b) / 1403.0,
                 (460.0 * p2 - 891.0 * a - 261.0 * b) / 1403.0,
                 (460.0 * p2 - 220.0 * a - 6300.0 * b) / 1403.0);
  Vec3d rgb_c;
  for (int i = 0; i < 3; ++i) rgb_c(i) = unadapt(ra(i), fl_);
  return m16_inv_ * rgb_c.cwiseQuotient(d_rgb_);
}

// ---------------------------------------------------------------------------

DeviceCalibration DeviceCalibration::from_device_to_xyz(const Mat3d& d_inv) {
  const double scale = d_inv.cwiseAbs().maxCoeff();
  if (!(scale > 0.0) || !(std::abs((d_inv / scale).determinant()) > 1e-12)) {
    throw Error(ErrorCode::SingularCalibration, "deviceRGB calibration matrix is singular");
  }
  return {d_inv, d_inv.inverse()};
}

DeviceCalibration DeviceCalibration::standard() {
  return from_device_to_xyz(devicergb_to_xyz_matrix());
}

}  // namespace prolab
