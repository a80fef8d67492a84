#include "framespec/errors.hpp"
#include "framespec/geometry.hpp"
#include "framespec/reference_frames.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace framespec;

namespace {

void expect_orthonormal(const Edge& e) {
  EXPECT_LT(std::abs(e.i.dot(e.j)), 1e-12);
  EXPECT_LT(std::abs(e.i.dot(e.k)), 1e-12);
  EXPECT_LT(std::abs(e.j.dot(e.k)), 1e-12);
  EXPECT_NEAR(e.i.dot(e.j.cross(e.k)), 1.0, 1e-12);
}

}  // namespace

TEST(Geometry, PlanarStarIsValidWithCentralDegreeThree) {
  Frame f = planar_star();
  auto rep = validate_frame(f);
  EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
  EXPECT_TRUE(rep.connected());
  EXPECT_EQ(rep.degree[f.vertex_index("c")], 3);
  for (const auto& e : f.edges) {
    EXPECT_LT((e.k - Vec3::UnitZ()).norm(), 1e-12);
    expect_orthonormal(e);
  }
}

TEST(Geometry, AntennaTowerLegsAreRotatedCopies) {
  Frame f = antenna_tower();
  EXPECT_TRUE(validate_frame(f).ok());
  const double t = 2 * std::numbers::pi / 3;
  Mat3 R;
  R << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  for (int s = 1; s < 3; ++s) {
    const Edge& a = f.edges[s];
    const Edge& b = f.edges[s + 1];
    EXPECT_LT((R * a.i - b.i).norm(), 1e-12);
    EXPECT_LT((R * a.j - b.j).norm(), 1e-12);
    EXPECT_LT((R * a.k - b.k).norm(), 1e-12);
  }
}

TEST(Geometry, AntennaLegBasisFromHint) {
  Frame f = antenna_tower();
  const Edge& e = f.edges[1];
  const double a = std::numbers::pi / 6;
  EXPECT_LT((e.i - Vec3(std::cos(a), 0, std::sin(a))).norm(), 1e-12);
  EXPECT_LT((e.j - Vec3(0, 1, 0)).norm(), 1e-12);
  EXPECT_LT((e.k - Vec3(-std::sin(a), 0, std::cos(a))).norm(), 1e-12);
}

TEST(Geometry, DegenerateBasisIsReported) {
  Frame f = planar_star();
  f.edges[0].j = f.edges[0].i;
  auto rep = validate_frame(f);
  ASSERT_FALSE(rep.ok());
  bool named = false;
  for (const auto& v : rep.violations) named = named || v.find("basis not orthonormal") != std::string::npos;
  EXPECT_TRUE(named);
}

TEST(Geometry, NonPositiveMaterialIsReported) {
  Material m;
  m.c = -1.0;
  Frame f = planar_star(std::numbers::pi, std::numbers::pi / 2, m);
  EXPECT_FALSE(validate_frame(f).ok());
}

TEST(Geometry, SpringAngleOutsideRangeIsReported) {
  Frame f = planar_star();
  f.vertices[0].joint = JointKind::spring(2.0, 0.0);
  EXPECT_FALSE(validate_frame(f).ok());
  f.vertices[0].joint = JointKind::spring(-0.3, 0.2);
  auto rep = validate_frame(f);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(rep.warnings.empty());
}

TEST(Geometry, DisconnectedFrameIsReported) {
  std::vector<Vertex> vs{{"a", Vec3::Zero(), {}}, {"b", Vec3::UnitX(), {}}, {"c", Vec3(5, 0, 0), {}},
                         {"d", Vec3(6, 0, 0), {}}};
  Frame f = make_frame(vs, {{"e1", "a", "b", std::nullopt, {}}, {"e2", "c", "d", std::nullopt, {}}});
  auto rep = validate_frame(f);
  EXPECT_EQ(rep.components, 2);
  EXPECT_FALSE(rep.connected());
  EXPECT_FALSE(rep.warnings.empty());
}

TEST(Geometry, SignedIncidence) {
  Frame f = planar_star();
  const int c = f.vertex_index("c"), v1 = f.vertex_index("v1");
  EXPECT_EQ(signed_incidence(f, c, 0), -1);
  EXPECT_EQ(signed_incidence(f, v1, 0), +1);
  EXPECT_EQ(signed_incidence(f, v1, 1), 0);
}

TEST(Geometry, FlipNegatesIncidenceAndIsAnInvolution) {
  Frame f = antenna_tower();
  Frame g = flip_edge(f, "e2");
  const int e = f.edge_index("e2");
  for (int v = 0; v < static_cast<int>(f.vertices.size()); ++v)
    EXPECT_EQ(signed_incidence(g, v, e), -signed_incidence(f, v, e));
  EXPECT_LT((g.edges[e].i + f.edges[e].i).norm(), 1e-15);
  EXPECT_LT((g.edges[e].j + f.edges[e].j).norm(), 1e-15);
  EXPECT_LT((g.edges[e].k - f.edges[e].k).norm(), 1e-15);
  EXPECT_TRUE(validate_frame(g).ok());
  Frame h = flip_edge(g, "e2");
  EXPECT_EQ(h.edges[e].origin, f.edges[e].origin);
  EXPECT_EQ(h.edges[e].terminus, f.edges[e].terminus);
  EXPECT_EQ(h.edges[e].i, f.edges[e].i);
  EXPECT_EQ(h.edges[e].j, f.edges[e].j);
  EXPECT_EQ(h.edges[e].k, f.edges[e].k);
  EXPECT_THROW(flip_edge(f, "nope"), DomainError);
}

TEST(Geometry, AutoBasisRule) {
  // vertical edge without hint
  Basis b = auto_basis(Vec3::Zero(), Vec3(0, 0, 2));
  EXPECT_LT((b.j - Vec3::UnitY()).norm(), 1e-15);
  EXPECT_LT((b.k - b.i.cross(b.j)).norm(), 1e-15);
  // horizontal edge: j = E3 x i
  b = auto_basis(Vec3::Zero(), Vec3(1, 1, 0));
  EXPECT_LT((b.j - Vec3(-1, 1, 0).normalized()).norm(), 1e-15);
  EXPECT_NEAR(b.i.dot(b.j.cross(b.k)), 1.0, 1e-12);
  // hint is orthogonalised
  b = auto_basis(Vec3::Zero(), Vec3(1, 0, 0), Vec3(1, 1, 0));
  EXPECT_LT((b.j - Vec3::UnitY()).norm(), 1e-15);
  EXPECT_THROW(auto_basis(Vec3::Zero(), Vec3::Zero()), DomainError);
  EXPECT_THROW(auto_basis(Vec3::Zero(), Vec3::UnitX(), Vec3(2, 0, 0)), DomainError);
}

TEST(Geometry, RandomBasesAreOrthonormal) {
  std::mt19937 rng(3);
  std::normal_distribution<double> N;
  for (int k = 0; k < 1000; ++k) {
    Vec3 a(N(rng), N(rng), N(rng)), c(N(rng), N(rng), N(rng));
    Basis b = auto_basis(a, c);
    Edge e;
    e.i = b.i;
    e.j = b.j;
    e.k = b.k;
    expect_orthonormal(e);
  }
}

TEST(Geometry, ZeroLengthEdgeIsRejected) {
  std::vector<Vertex> vs{{"a", Vec3::Zero(), {}}, {"b", Vec3::Zero(), {}}};
  EXPECT_THROW(make_frame(vs, {{"e", "a", "b", std::nullopt, {}}}), DomainError);
  EXPECT_THROW(make_frame(vs, {{"e", "a", "zz", std::nullopt, {}}}), DomainError);
}

TEST(Geometry, SplitEdgeInsertsFreeMidpoint) {
  Frame f = planar_star();
  Frame g = split_edge(f, 0, 0.25);
  EXPECT_EQ(g.vertices.size(), f.vertices.size() + 1);
  EXPECT_EQ(g.edges.size(), f.edges.size() + 1);
  EXPECT_TRUE(validate_frame(g).ok());
  const int m = g.vertex_index("e1_mid");
  EXPECT_EQ(g.degree(m), 2);
  EXPECT_EQ(g.vertices[m].joint.type, JointType::FreeRigid);
  EXPECT_NEAR(g.edges[0].length + g.edges.back().length, f.edges[0].length, 1e-15);
}

TEST(Geometry, JointAngles) {
  EXPECT_TRUE(JointKind::clamped().displacement_fixed());
  EXPECT_TRUE(JointKind::clamped().rotation_fixed());
  EXPECT_TRUE(JointKind::pinned().displacement_fixed());
  EXPECT_FALSE(JointKind::pinned().rotation_fixed());
  EXPECT_FALSE(JointKind::guided().displacement_fixed());
  EXPECT_TRUE(JointKind::guided().rotation_fixed());
  EXPECT_NEAR(JointKind::spring(0.3, 0.4).tan_alpha(), std::tan(0.3), 1e-15);
  EXPECT_NEAR(JointKind::spring(0.3, 0.4).tan_beta(), std::tan(0.4), 1e-15);
}
