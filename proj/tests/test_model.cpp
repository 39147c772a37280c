#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "prolab/colorspaces.hpp"
#include "prolab/error.hpp"
#include "prolab/model.hpp"
#include "prolab/rng.hpp"

using namespace prolab;

namespace {

const Vector8d kPublishedMu =
    (Vector8d() << 2.1591, -1.7823, -0.0713, 2.0866, 0.2103, 0.7554, 3.8666, 1.6739).finished();

// Constraint polynomials written out term by term, independent of the library.
std::array<double, 14> constraints_oracle(const Vector8d& u) {
  std::array<double, 14> f{};
  f[0] = u(0) * u(3);
  for (int k = 1; k <= 7; ++k) {
    const double b1 = k & 1, b2 = (k >> 1) & 1, b3 = (k >> 2) & 1;
    f[k] = u(5) * b1 + u(6) * b2 + u(7) * b3 + 1.0;
  }
  const double m1 = u(0) + u(1) + u(2), m2 = u(3) + u(4), m3 = 1.0;
  const double m = u(5) + u(6) + u(7) + 1.0;
  const double mm = m1 * m1 + m2 * m2 + m3 * m3;
  // Columns of the 4x3 mu-matrix: rows (u1 u2 u3), (0 u4 u5), (0 0 1), (u6 u7 u8).
  const double col[3][4] = {{u(0), 0, 0, u(5)}, {u(1), u(3), 0, u(6)}, {u(2), u(4), 1, u(7)}};
  const double r1[4] = {m * m1, m * m2, m * m3, 0.0};
  const double r2[4] = {m * m1, m * m2, m * m3, -mm};
  for (int j = 0; j < 3; ++j) {
    double s1 = 0, s2 = 0;
    for (int i = 0; i < 4; ++i) {
      s1 += r1[i] * col[j][i];
      s2 += r2[i] * col[j][i];
    }
    f[8 + j] = s1;
    f[11 + j] = s2;
  }
  return f;
}

double hue_angle(const Vec3d& c) { return std::atan2(c(2), c(1)); }

}  // namespace

TEST(MetricMatrix, Layout) {
  EXPECT_TRUE(metric_matrix(MetricParams::identity()).matrix().isIdentity());
  const Mat4d m = metric_matrix(MetricParams::published()).matrix();
  Mat4d expected;
  expected << 2.1591, -1.7823, -0.0713, 0, 0, 2.0866, 0.2103, 0, 0, 0, 1, 0, 0.7554, 3.8666,
      1.6739, 1;
  EXPECT_EQ(m, expected);
  EXPECT_EQ(reference_matrices().m.matrix(), expected);
}

TEST(MetricMatrix, ZeroDeterminantRejected) {
  MetricParams mu = MetricParams::identity();
  mu.mu(0) = 0.0;
  try {
    metric_matrix(mu);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleParams);
  }
}

TEST(Adaptation, DiagonalAndWhiteToOnes) {
  EXPECT_TRUE(adaptation_matrix(WhitePoint(Vec3d(1, 1, 1))).matrix().isIdentity());
  const WhitePoint d65 = WhitePoint::d65();
  const Mat4d n = adaptation_matrix(d65).matrix();
  EXPECT_DOUBLE_EQ(n(0, 0), 1 / 0.9505);
  EXPECT_DOUBLE_EQ(n(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(n(2, 2), 1 / 1.0888);
  EXPECT_DOUBLE_EQ(n(3, 3), 1.0);
  EXPECT_LT((apply(adaptation_matrix(d65), d65.xyz()) - Vec3d(1, 1, 1)).norm(), 1e-15);
}

TEST(WhitePointTest, Validation) {
  for (const Vec3d& bad : {Vec3d(0, 1, 1), Vec3d(-1, 1, 1), Vec3d(1, 10, 1)}) {
    try {
      WhitePoint w(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidWhitePoint);
    }
  }
}

TEST(Constraints, IdentityFeasible) {
  const ConstraintVector f = constraint_values(MetricParams::identity());
  EXPECT_GE(f.minCoeff(), 0.0);
  for (int i = 1; i <= 7; ++i) EXPECT_DOUBLE_EQ(f(i), 1.0);
}

TEST(Constraints, LinearViolation) {
  MetricParams mu = MetricParams::identity();
  mu.mu(5) = -2.0;
  EXPECT_DOUBLE_EQ(constraint_values(mu)(1), -1.0);
}

TEST(Constraints, MatchOracleOnRandomParams) {
  Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    MetricParams mu;
    for (int i = 0; i < 8; ++i) mu.mu(i) = rng.uniform(-3, 3);
    const auto expected = constraints_oracle(mu.mu);
    const ConstraintVector f = constraint_values(mu);
    for (int i = 0; i < 14; ++i) EXPECT_NEAR(f(i), expected[i], 1e-9 * (1 + std::abs(expected[i])));
  }
}

TEST(Constraints, PublishedValuesAgreeWithOracle) {
  // The closed-form evaluation of the published mu: 13 entries are positive,
  // the last lightness entry is -2.57e-5 because mu is printed to 4 decimals.
  const auto expected = constraints_oracle(kPublishedMu);
  const ConstraintVector f = constraint_values(MetricParams::published());
  for (int i = 0; i < 14; ++i) EXPECT_NEAR(f(i), expected[i], 1e-9);
  for (int i = 0; i < 13; ++i) EXPECT_GT(f(i), 0.0) << "f" << i + 1;
  EXPECT_NEAR(f(13), -2.57e-5, 1e-7);
}

TEST(Similarity, PublishedQWithinPrintTolerance) {
  const auto ref = reference_matrices();
  const Mat4d q = build_q(MetricParams::published(), ref.white).matrix();
  const double err = (q - ref.q.matrix()).cwiseAbs().maxCoeff();
  // Entries reach 650; four printed decimals of mu propagate to ~3e-2.
  EXPECT_LT(err, 5e-2);
  EXPECT_LT(err / ref.q.matrix().cwiseAbs().maxCoeff(), 1e-4);
}

TEST(Similarity, WhiteMapsExactly) {
  const WhitePoint d65 = WhitePoint::d65();
  const Vec3d w = apply(build_p(MetricParams::published(), d65), d65.xyz());
  EXPECT_LT((w - Vec3d(100, 0, 0)).norm(), 1e-9);
}

TEST(Similarity, Phi1IsStationaryMinimum) {
  const WhitePoint d65 = WhitePoint::d65();
  const MetricParams mu = MetricParams::published();
  const SimilarityParams s = solve_similarity(mu, d65);
  const double base =
      key_point_objective(assemble_q(mu, s) * adaptation_matrix(d65), d65);
  for (double d : {-1e-3, 1e-3}) {
    SimilarityParams t = s;
    t.phi(0) += d;
    EXPECT_GT(key_point_objective(assemble_q(mu, t) * adaptation_matrix(d65), d65), base);
  }
}

TEST(BuildP, IdentityCaseIsSimilarity) {
  const WhitePoint w(Vec3d(1, 1, 1));
  const Homographyd p = build_p(MetricParams::identity(), w);
  const Mat3d a = p.canonical().matrix().topLeftCorner<3, 3>();
  EXPECT_TRUE(p.canonical().matrix().row(3).head<3>().isZero());
  // A scaled rotation: AᵀA = s²I.
  const Mat3d ata = a.transpose() * a;
  EXPECT_LT((ata - ata(0, 0) * Mat3d::Identity()).norm(), 1e-9 * ata(0, 0));
  EXPECT_GT(a.determinant(), 0.0);
  EXPECT_LT((apply(p, w.xyz()) - Vec3d(100, 0, 0)).norm(), 1e-9);
}

TEST(BuildP, HalfWhiteLightnessInRange) {
  const WhitePoint d65 = WhitePoint::d65();
  // Oracle: Q·N applied by hand with long double arithmetic.
  const Mat4d p = build_p(MetricParams::published(), d65).matrix();
  long double h[4] = {0, 0, 0, 0};
  const Vec3d c = d65.xyz() / 2;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 3; ++j) h[i] += static_cast<long double>(p(i, j)) * c(j);
    h[i] += p(i, 3);
  }
  const double l = static_cast<double>(h[0] / h[3]);
  EXPECT_GT(l, 0.0);
  EXPECT_LT(l, 100.0);
  EXPECT_NEAR(apply(build_p(MetricParams::published(), d65), c)(0), l, 1e-9);
}

TEST(BuildP, QTimesNAgainstPrintedP) {
  // The printed Q and P are consistent with the white (0.95047, 1, 1.08883),
  // not with the four-decimal D65 used everywhere else.
  const auto ref = reference_matrices();
  const Mat4d qn = (ref.q * adaptation_matrix(WhitePoint(Vec3d(0.95047, 1.0, 1.08883))))
                       .canonical()
                       .matrix();
  EXPECT_LT((qn - ref.p.matrix()).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(BuildP, PrintedRowsVerbatim) {
  const auto ref = reference_matrices();
  EXPECT_EQ(ref.p.matrix().row(3), Eigen::RowVector4d(0.7947, 3.8666, 1.5373, 1));
  EXPECT_EQ(ref.q.matrix().row(3), Eigen::RowVector4d(0.7554, 3.8666, 1.6739, 1));
  EXPECT_DOUBLE_EQ(ref.white.xyz()(0), 0.9505);
}

TEST(BuildP, WhiteAndBlackForRandomFeasibleParams) {
  Rng rng(21);
  int tested = 0;
  while (tested < 100) {
    MetricParams mu = MetricParams::identity();
    for (int i = 0; i < 8; ++i) mu.mu(i) += rng.uniform(-0.5, 0.5);
    if (constraint_values(mu).minCoeff() < 0) continue;
    const WhitePoint w(Vec3d(rng.uniform(0.8, 1.2), 1.0, rng.uniform(0.6, 1.4)));
    const Homographyd p = build_p(mu, w);
    EXPECT_LT((apply(p, w.xyz()) - Vec3d(100, 0, 0)).norm(), 1e-9);
    EXPECT_EQ(apply(p, Vec3d::Zero()), Vec3d::Zero());
    // Hue order of the key points is preserved (no mirroring).
    const auto keys = default_key_points();
    // Visit the key points in increasing CIELAB hue.
    const int order[4] = {1, 3, 0, 2};
    std::array<double, 4> in{}, out{};
    for (int k = 0; k < 4; ++k) {
      in[k] = hue_angle(keys[order[k]]);
      out[k] = hue_angle(apply(p, cielab_to_xyz(keys[order[k]], w.xyz())));
    }
    auto turn = [](double a, double b) {
      double d = b - a;
      while (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
      while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
      return d;
    };
    double winding = 0;
    for (int k = 0; k < 4; ++k) {
      const int n = (k + 1) % 4;
      EXPECT_GT(turn(in[k], in[n]) * turn(out[k], out[n]), 0.0);
      winding += turn(out[k], out[n]);
    }
    EXPECT_NEAR(std::abs(winding), 2 * std::numbers::pi, 1e-9);
    ++tested;
  }
}

TEST(BuildP, BoxVerticesFiniteForFeasibleParams) {
  // Denominators at the unit-box vertices in adapted coordinates are
  // mu_6..8 · b + 1 >= 1 for published mu (all >= 0 for any feasible mu).
  const Homographyd m = metric_matrix(MetricParams::published());
  for (int k = 0; k < 8; ++k) {
    const Vec3d b(k & 1, (k >> 1) & 1, (k >> 2) & 1);
    EXPECT_GE(m.denominator(b), 1.0 - 1e-12);
  }
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    MetricParams mu = MetricParams::identity();
    for (int i = 0; i < 8; ++i) mu.mu(i) += rng.uniform(-1, 1);
    if (constraint_values(mu).minCoeff() < 0) continue;
    for (int k = 0; k < 8; ++k) {
      const Vec3d b(k & 1, (k >> 1) & 1, (k >> 2) & 1);
      EXPECT_GE(metric_matrix(mu).denominator(b), -1e-12);
    }
  }
}

TEST(BuildP, ProlabForOtherWhiteKeepsKernel) {
  const WhitePoint d50(Vec3d(0.9642, 1.0, 0.8251));
  const Homographyd p = prolab_for_white(d50);
  EXPECT_LT((apply(p, d50.xyz()) - Vec3d(100, 0, 0)).norm(), 1e-9);
  const Mat4d q = build_q(MetricParams::published(), WhitePoint::d65()).matrix();
  EXPECT_LT(((p * invert(adaptation_matrix(d50))).canonical().matrix() - q).norm(), 1e-9);
}
