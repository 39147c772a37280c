#include "prolab/spaces.hpp"

namespace prolab {

ColorSpaces::ColorSpaces(Options options)
    : white_(options.white),
      prolab_(options.prolab ? *options.prolab : prolab_for_white(options.white)),
      prolab_inv_(prolab_.inverse()),
      lms_(options.lms),
      lms_inv_(options.lms.inverse()),
      xyz_to_linrgb_(linrgb_to_xyz_matrix().inverse()),
      linrgb_to_xyz_(linrgb_to_xyz_matrix()),
      device_(options.device) {
  Cam16ViewingConditions vc;
  if (options.cam16) {
    vc = *options.cam16;
  } else {
    vc.white = 100.0 * white_.xyz() / white_.xyz()(1);
  }
  cam16_ = std::make_shared<const Cam16Ucs>(vc);
}

const ColorSpaces& ColorSpaces::standard() {
  static const ColorSpaces instance;
  return instance;
}

Vec3d ColorSpaces::from_xyz(ColorSpaceId target, const Vec3d& xyz) const {
  switch (target) {
    case ColorSpaceId::XYZ: return xyz;
    case ColorSpaceId::xyY: return xyz_to_xyy(xyz);
    case ColorSpaceId::LMS: return lms_ * xyz;
    case ColorSpaceId::linRGB: return xyz_to_linrgb_ * xyz;
    case ColorSpaceId::sRGB: return linrgb_to_srgb(Vec3d(xyz_to_linrgb_ * xyz));
    case ColorSpaceId::CIELAB: return xyz_to_cielab(xyz, white_.xyz());
    case ColorSpaceId::CAM16UCS: return cam16_->forward(100.0 / white_.xyz()(1) * xyz);
    case ColorSpaceId::deviceRGB: return xyz_to_devicergb(xyz, device_);
    case ColorSpaceId::proLab: return prolab_.apply(xyz);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown colour space");
}

Vec3d ColorSpaces::to_xyz(ColorSpaceId source, const Vec3d& c) const {
  switch (source) {
    case ColorSpaceId::XYZ: return c;
    case ColorSpaceId::xyY: return xyy_to_xyz(c);
    case ColorSpaceId::LMS: return lms_inv_ * c;
    case ColorSpaceId::linRGB: return linrgb_to_xyz_ * c;
    case ColorSpaceId::sRGB: return linrgb_to_xyz_ * srgb_to_linrgb(c);
    case ColorSpaceId::CIELAB: return cielab_to_xyz(c, white_.xyz());
    case ColorSpaceId::CAM16UCS: return white_.xyz()(1) / 100.0 * cam16_->inverse(c);
    case ColorSpaceId::deviceRGB: return devicergb_to_xyz(c, device_);
    case ColorSpaceId::proLab: return prolab_inv_.apply(c);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown colour space");
}

TaggedColor ColorSpaces::convert(const TaggedColor& c, ColorSpaceId target) const {
  if (c.space == target) return c;
  return {target, from_xyz(target, to_xyz(c.space, c.v))};
}

SpaceMap ColorSpaces::forward_map(ColorSpaceId target) const {
  return [this, target](const Vec3d& xyz) { return from_xyz(target, xyz); };
}

Vec3d xyz_to_lms(const Vec3d& c) { return ColorSpaces::standard().from_xyz(ColorSpaceId::LMS, c); }
Vec3d lms_to_xyz(const Vec3d& c) { return ColorSpaces::standard().to_xyz(ColorSpaceId::LMS, c); }
Vec3d xyz_to_linrgb(const Vec3d& c) { return ColorSpaces::standard().from_xyz(ColorSpaceId::linRGB, c); }
Vec3d linrgb_to_xyz(const Vec3d& c) { return ColorSpaces::standard().to_xyz(ColorSpaceId::linRGB, c); }
Vec3d xyz_to_prolab(const Vec3d& c) { return ColorSpaces::standard().from_xyz(ColorSpaceId::proLab, c); }
Vec3d prolab_to_xyz(const Vec3d& c) { return ColorSpaces::standard().to_xyz(ColorSpaceId::proLab, c); }
Vec3d xyz_to_cam16ucs(const Vec3d& c) { return ColorSpaces::standard().from_xyz(ColorSpaceId::CAM16UCS, c); }
Vec3d cam16ucs_to_xyz(const Vec3d& c) { return ColorSpaces::standard().to_xyz(ColorSpaceId::CAM16UCS, c); }

TaggedColor convert(const TaggedColor& c, ColorSpaceId target) {
  return ColorSpaces::standard().convert(c, target);
}

}  // namespace prolab
