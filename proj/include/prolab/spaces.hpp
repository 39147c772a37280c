#pragma once

#include <functional>
#include <memory>

#include "prolab/colorspaces.hpp"
#include "prolab/model.hpp"

namespace prolab {

/// A map from XYZ into some coordinate space.
using SpaceMap = std::function<Vec3d(const Vec3d&)>;

/// Conversion context: every space in ColorSpaceId routed through XYZ.
///
/// Immutable once built; share freely between threads.
class ColorSpaces {
 public:
  struct Options {
    WhitePoint white = WhitePoint::d65();
    /// proLab transform. Defaults to the published kernel adapted to `white`.
    std::optional<Homographyd> prolab;
    Mat3d lms = hpe_lms_matrix();
    DeviceCalibration device = DeviceCalibration::standard();
    std::optional<Cam16ViewingConditions> cam16;
  };

  ColorSpaces() : ColorSpaces(Options{}) {}
  explicit ColorSpaces(Options options);

  /// Shared default instance (D65, published proLab).
  static const ColorSpaces& standard();

  Vec3d from_xyz(ColorSpaceId target, const Vec3d& xyz) const;
  Vec3d to_xyz(ColorSpaceId source, const Vec3d& c) const;

  /// Routes through XYZ; identity when the spaces agree.
  TaggedColor convert(const TaggedColor& c, ColorSpaceId target) const;

  SpaceMap forward_map(ColorSpaceId target) const;

  const WhitePoint& white() const { return white_; }
  const Homographyd& prolab() const { return prolab_; }
  const Homographyd& prolab_inverse() const { return prolab_inv_; }
  const Mat3d& lms() const { return lms_; }
  const DeviceCalibration& device() const { return device_; }
  const Cam16Ucs& cam16() const { return *cam16_; }

 private:
  WhitePoint white_;
  Homographyd prolab_;
  Homographyd prolab_inv_;
  Mat3d lms_;
  Mat3d lms_inv_;
  Mat3d xyz_to_linrgb_;
  Mat3d linrgb_to_xyz_;
  DeviceCalibration device_;
  std::shared_ptr<const Cam16Ucs> cam16_;
};

/// Free-function conversions over the standard context.
Vec3d xyz_to_lms(const Vec3d& c);
Vec3d lms_to_xyz(const Vec3d& c);
Vec3d xyz_to_linrgb(const Vec3d& c);
Vec3d linrgb_to_xyz(const Vec3d& c);
Vec3d xyz_to_prolab(const Vec3d& c);
Vec3d prolab_to_xyz(const Vec3d& c);
Vec3d xyz_to_cam16ucs(const Vec3d& c);
Vec3d cam16ucs_to_xyz(const Vec3d& c);
TaggedColor convert(const TaggedColor& c, ColorSpaceId target);

}  // namespace prolab
