#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "prolab/spaces.hpp"

namespace prolab {

template <typename Scalar>
Scalar euclidean_de(const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
  return (a - b).norm();
}

/// CIEDE2000 colour difference with k_L = k_C = k_H = 1.
///
/// Follows Sharma, Wu & Dalal's implementation notes: hue angles in
/// degrees in [0, 360), h' = 0 for neutral colours, and the hue terms are
/// dropped when either chroma is zero.
template <typename Scalar>
Scalar ciede2000(const Vec3<Scalar>& lab1, const Vec3<Scalar>& lab2) {
  using std::abs;
  using std::atan2;
  using std::cos;
  using std::exp;
  using std::pow;
  using std::sin;
  using std::sqrt;
  const Scalar pi = Scalar(3.14159265358979323846);
  const Scalar deg = Scalar(180) / pi;
  const Scalar rad = pi / Scalar(180);
  const Scalar p25_7 = Scalar(6103515625.0);  // 25^7

  const Scalar c1 = sqrt(lab1(1) * lab1(1) + lab1(2) * lab1(2));
  const Scalar c2 = sqrt(lab2(1) * lab2(1) + lab2(2) * lab2(2));
  const Scalar c_bar = (c1 + c2) / Scalar(2);
  const Scalar c_bar7 = pow(c_bar, 7);
  const Scalar g = Scalar(0.5) * (Scalar(1) - sqrt(c_bar7 / (c_bar7 + p25_7)));

  const Scalar a1p = (Scalar(1) + g) * lab1(1);
  const Scalar a2p = (Scalar(1) + g) * lab2(1);
  const Scalar c1p = sqrt(a1p * a1p + lab1(2) * lab1(2));
  const Scalar c2p = sqrt(a2p * a2p + lab2(2) * lab2(2));

  auto hue = [&](Scalar b, Scalar ap) {
    if (b == Scalar(0) && ap == Scalar(0)) return Scalar(0);
    Scalar h = atan2(b, ap) * deg;
    if (h < Scalar(0)) h += Scalar(360);
    return h;
  };
  const Scalar h1p = hue(lab1(2), a1p);
  const Scalar h2p = hue(lab2(2), a2p);

  const Scalar dlp = lab2(0) - lab1(0);
  const Scalar dcp = c2p - c1p;
  const Scalar cprod = c1p * c2p;
  Scalar dhp = Scalar(0);
  if (cprod != Scalar(0)) {
    dhp = h2p - h1p;
    if (dhp > Scalar(180)) dhp -= Scalar(360);
    else if (dhp < Scalar(-180)) dhp += Scalar(360);
  }
  const Scalar dHp = Scalar(2) * sqrt(cprod) * sin(dhp * rad / Scalar(2));

  const Scalar lbarp = (lab1(0) + lab2(0)) / Scalar(2);
  const Scalar cbarp = (c1p + c2p) / Scalar(2);
  Scalar hbarp = h1p + h2p;
  if (cprod != Scalar(0)) {
    if (abs(h1p - h2p) <= Scalar(180)) {
      hbarp /= Scalar(2);
    } else if (hbarp < Scalar(360)) {
      hbarp = (hbarp + Scalar(360)) / Scalar(2);
    } else {
      hbarp = (hbarp - Scalar(360)) / Scalar(2);
    }
  }

  const Scalar t = Scalar(1) - Scalar(0.17) * cos((hbarp - Scalar(30)) * rad) +
                   Scalar(0.24) * cos(Scalar(2) * hbarp * rad) +
                   Scalar(0.32) * cos((Scalar(3) * hbarp + Scalar(6)) * rad) -
                   Scalar(0.20) * cos((Scalar(4) * hbarp - Scalar(63)) * rad);
  const Scalar dtheta = Scalar(30) * exp(-pow((hbarp - Scalar(275)) / Scalar(25), 2));
  const Scalar cbarp7 = pow(cbarp, 7);
  const Scalar rc = Scalar(2) * sqrt(cbarp7 / (cbarp7 + p25_7));
  const Scalar l50 = (lbarp - Scalar(50)) * (lbarp - Scalar(50));
  const Scalar sl = Scalar(1) + Scalar(0.015) * l50 / sqrt(Scalar(20) + l50);
  const Scalar sc = Scalar(1) + Scalar(0.045) * cbarp;
  const Scalar sh = Scalar(1) + Scalar(0.015) * cbarp * t;
  const Scalar rt = -sin(Scalar(2) * dtheta * rad) * rc;

  const Scalar tl = dlp / sl, tc = dcp / sc, th = dHp / sh;
  return sqrt(tl * tl + tc * tc + th * th + rt * tc * th);
}

/// STRESS between two difference estimates: |sin| of the angle between a and b.
/// Throws ZeroVector when either vector has zero norm; lengths must agree.
double stress(std::span<const double> a, std::span<const double> b);

struct LabPair {
  Vec3d a;
  Vec3d b;
};

/// CIELAB pairs pre-converted to XYZ together with their CIEDE2000 reference
/// differences, so that many spaces can be scored against one sample.
struct PairCache {
  std::vector<Vec3d> xyz_a;
  std::vector<Vec3d> xyz_b;
  std::vector<double> de00;

  std::size_t size() const { return de00.size(); }
};

PairCache make_pair_cache(std::span<const LabPair> pairs,
                          const ColorSpaces& spaces = ColorSpaces::standard());

struct DifferenceScatter {
  /// Euclidean distance in the target space.
  std::vector<double> de_space;
  /// CIEDE2000 reference.
  std::vector<double> de00;
};

DifferenceScatter difference_scatter(const SpaceMap& target, const PairCache& cache);

/// Non-uniformity criterion: STRESS between Euclidean distances in the target
/// space and CIEDE2000 over the pair sample.
double uniformity(const SpaceMap& target, const PairCache& cache);
double uniformity(ColorSpaceId target, const PairCache& cache,
                  const ColorSpaces& spaces = ColorSpaces::standard());
double uniformity(ColorSpaceId target, std::span<const LabPair> pairs,
                  const ColorSpaces& spaces = ColorSpaces::standard());

}  // namespace prolab
