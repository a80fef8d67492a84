#include "framespec/kinematics.hpp"
#include "framespec/planar.hpp"
#include "framespec/reference_frames.hpp"
#include "framespec/secular.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace framespec;

namespace {

const Basis kGlobal{Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};

FieldPoint point(double dv, double dw, double eta) {
  FieldPoint fp;
  fp.trace[1] = dv;
  fp.trace[5] = dw;
  fp.trace[10] = eta;
  return fp;
}

std::vector<PlanarEndTrace> ends_at(const ModeShape& m, const Frame& f, int vertex) {
  std::vector<PlanarEndTrace> out;
  for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
    const Edge& ed = f.edges[e];
    if (ed.origin != vertex && ed.terminus != vertex) continue;
    const double x = ed.origin == vertex ? 0.0 : ed.length;
    FieldPoint fp = evaluate_mode(m, e, x);
    out.push_back({Basis{ed.i, ed.j, ed.k}, fp.v(), fp.dv(), fp.eta()});
  }
  return out;
}

}  // namespace

TEST(Kinematics, RotationVectorOfPureTwistIsTheAxis) {
  EXPECT_LT((rotation_vector(point(0, 0, 1), kGlobal) - Vec3::UnitX()).norm(), 1e-15);
}

TEST(Kinematics, RotationVectorOfBending) {
  const double p = 0.3, q = -1.7;
  EXPECT_LT((rotation_vector(point(p, q, 0), kGlobal) - Vec3(0, -p, q)).norm(), 1e-15);
}

TEST(Kinematics, RotationVectorInvariantUnderFlip) {
  std::mt19937 rng(5);
  std::normal_distribution<double> N;
  for (int k = 0; k < 50; ++k) {
    Basis b = auto_basis(Vec3::Zero(), Vec3(N(rng), N(rng), N(rng)));
    Basis f{-b.i, -b.j, b.k};
    const double dv = N(rng), dw = N(rng), eta = N(rng);
    const Vec3 a = rotation_vector(point(dv, dw, eta), b);
    const Vec3 c = rotation_vector(point(-dv, dw, -eta), f);
    EXPECT_LT((a - c).norm(), 1e-14);
  }
}

TEST(Kinematics, DisplacementVector) {
  FieldPoint fp;
  fp.trace[0] = 1;
  fp.trace[4] = 2;
  fp.trace[8] = 3;
  EXPECT_LT((displacement_vector(fp, kGlobal) - Vec3(3, 2, 1)).norm(), 1e-15);
}

TEST(Kinematics, RodriguesThirdTurnAboutVertical) {
  const double t = 2 * std::numbers::pi / 3;
  Mat3 R;
  R << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  EXPECT_LT((rodrigues(Vec3::UnitZ(), t) - R).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((rodrigues(Vec3(1, 2, 3).normalized(), 0.0) - Mat3::Identity()).norm(), 1e-15);
}

TEST(Kinematics, RodriguesMatchesExponentialSeries) {
  std::mt19937 rng(7);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> A(-2 * std::numbers::pi, 2 * std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    Vec3 axis = Vec3(N(rng), N(rng), N(rng)).normalized();
    const double t = A(rng);
    EXPECT_LT((rodrigues(axis, t) - oracle::rotation_series(axis, t)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Kinematics, RodriguesIsARotation) {
  std::mt19937 rng(9);
  std::normal_distribution<double> N;
  for (int k = 0; k < 1000; ++k) {
    Vec3 axis = Vec3(N(rng), N(rng), N(rng)).normalized();
    const Mat3 R = rodrigues(axis, 3 * N(rng));
    EXPECT_LT((R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(R.determinant(), 1.0, 1e-12);
  }
}

TEST(Kinematics, RodriguesComposesAlongOneAxis) {
  std::mt19937 rng(13);
  std::normal_distribution<double> N;
  for (int k = 0; k < 200; ++k) {
    Vec3 axis = Vec3(N(rng), N(rng), N(rng)).normalized();
    const double a = N(rng), b = N(rng);
    EXPECT_LT((rodrigues(axis, a) * rodrigues(axis, b) - rodrigues(axis, a + b)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Kinematics, RodriguesNormalizesAxis) {
  EXPECT_LT((rodrigues(Vec3(0, 0, 2), 0.4) - rodrigues(Vec3::UnitZ(), 0.4)).norm(), 1e-15);
}

TEST(Kinematics, SkewIsCrossProduct) {
  const Vec3 a(1, -2, 0.5), b(0.3, 4, -1);
  EXPECT_LT((skew(a) * b - a.cross(b)).norm(), 1e-15);
}

TEST(Kinematics, ZeroTracesGiveZeroResiduals) {
  std::vector<PlanarEndTrace> ends(3);
  for (int s = 0; s < 3; ++s) {
    const double th = 2 * std::numbers::pi * s / 3;
    ends[s].basis = Basis{Vec3(std::cos(th), std::sin(th), 0), Vec3(-std::sin(th), std::cos(th), 0), Vec3::UnitZ()};
  }
  auto r = tangent_plane_residuals(ends);
  EXPECT_FALSE(r.vacuous);
  EXPECT_EQ(r.max_abs(), 0.0);
}

TEST(Kinematics, DegreeTwoIsVacuous) {
  std::vector<PlanarEndTrace> ends(2);
  ends[0].basis = kGlobal;
  ends[1].basis = Basis{Vec3::UnitY(), -Vec3::UnitX(), Vec3::UnitZ()};
  EXPECT_TRUE(tangent_plane_residuals(ends).vacuous);
}

TEST(Kinematics, StarModesSatisfyTangentPlaneConditions) {
  Frame f = planar_star();
  auto a = assemble(f);
  const int c = f.vertex_index("c");
  for (const auto& ev : solve(a, ScanOptions{.lmin = 1.0, .lmax = 25.0})) {
    for (const auto& m : mode_shapes(a, ev.lambda)) {
      auto ends = ends_at(m, f, c);
      ASSERT_EQ(ends.size(), 3u);
      EXPECT_LT(tangent_plane_residuals(ends).max_abs(), 1e-9) << ev.lambda;
    }
  }
}

TEST(Kinematics, PerturbedSlopeBreaksTangentPlaneConditions) {
  Frame f = planar_star();
  auto [h1, h2] = reduced_assemblies(f, *detect_planar(f));
  auto ev = solve(h1, ScanOptions{.lmin = 1.0, .lmax = 6.0});
  ASSERT_FALSE(ev.empty());
  ModeShape m = mode_shape(h1, ev.front().lambda);
  auto ends = ends_at(m, f, f.vertex_index("c"));
  double scale = 0;
  for (const auto& e : ends) scale = std::max({scale, std::abs(e.dv), std::abs(e.eta)});
  for (auto& e : ends) {
    e.dv /= scale;
    e.eta /= scale;
  }
  ASSERT_LT(tangent_plane_residuals(ends).max_abs(), 1e-9);
  ends[0].dv += 1e-3;
  EXPECT_GE(tangent_plane_residuals(ends).max_abs(), 1e-4);
}

TEST(Kinematics, TangentPlaneEquivalence) {
  std::mt19937 rng(17);
  std::normal_distribution<double> N;
  std::uniform_real_distribution<double> A(-std::numbers::pi, std::numbers::pi);
  int converse = 0;
  for (int k = 0; k < 100; ++k) {
    std::vector<PlanarEndTrace> ends(3 + k % 3);
    for (auto& e : ends) {
      const double th = A(rng);
      e.basis = Basis{Vec3(std::cos(th), std::sin(th), 0), Vec3(-std::sin(th), std::cos(th), 0), Vec3::UnitZ()};
    }
    const Vec3 om(N(rng), N(rng), 0);
    for (auto& e : ends) {
      e.eta = om.dot(e.basis.i);
      e.dv = -om.dot(e.basis.j);
    }
    EXPECT_LT(tangent_plane_residuals(ends).max_abs(), 1e-10);

    const auto &b1 = ends[0].basis, &b2 = ends[1].basis;
    const double c12 = b1.j.dot(b2.i);
    if (std::abs(c12) <= 1e-8) continue;
    const double v1 = N(rng), v2 = N(rng);
    for (auto& e : ends) {
      e.dv = -(b2.j.dot(e.basis.i) * v1 + e.basis.j.dot(b1.i) * v2) / c12;
      e.eta = -(b2.j.dot(e.basis.j) * v1 - e.basis.j.dot(b1.j) * v2) / c12;
    }
    ASSERT_LT(tangent_plane_residuals(ends).max_abs(), 1e-10 * (1 + std::abs(1 / c12)));
    for (double r : rotation_continuity_residuals(ends)) EXPECT_LT(r, 1e-10 * (1 + std::abs(1 / c12)));
    ++converse;
  }
  EXPECT_GT(converse, 50);
}
