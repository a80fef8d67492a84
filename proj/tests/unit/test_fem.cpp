#include "framespec/errors.hpp"
#include "framespec/fem.hpp"
#include "framespec/planar.hpp"
#include "framespec/reference_frames.hpp"
#include "framespec/secular.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace framespec;

namespace {

Frame cantilever(Material m) { return single_beam(JointKind::clamped(), JointKind::free_rigid(), 1.0, m); }

// fitted order of the error sequence for halving h
double fitted_order(const std::vector<double>& err) {
  const int n = static_cast<int>(err.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < n; ++k) {
    const double x = -k * std::log(2.0), y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST(Fem, MatricesAreSymmetricAndDefinite) {
  for (const Frame& f : {planar_star(), antenna_tower()}) {
    auto sys = assemble_fem(f, FemOptions{.elements = 5});
    EXPECT_EQ((sys.K - sys.K.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ((sys.G - sys.G.transpose()).cwiseAbs().maxCoeff(), 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> g(sys.G, Eigen::EigenvaluesOnly);
    EXPECT_GT(g.eigenvalues().minCoeff(), 0.0);
    std::mt19937 rng(3);
    std::normal_distribution<double> N;
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd x(sys.size()), y(sys.size());
      for (int k = 0; k < sys.size(); ++k) {
        x[k] = N(rng);
        y[k] = N(rng);
      }
      EXPECT_GE(x.dot(sys.K * x), 0.0);
      EXPECT_NEAR(x.dot(sys.K * y), y.dot(sys.K * x), 1e-12 * std::abs(x.dot(sys.K * y)) + 1e-12);
    }
  }
}

TEST(Fem, FreeBeamHasSixRigidModes) {
  Frame f = single_beam(JointKind::free_rigid(), JointKind::free_rigid());
  auto sys = assemble_fem(f, FemOptions{.elements = 8});
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> k(sys.K, Eigen::EigenvaluesOnly);
  const double top = k.eigenvalues().maxCoeff();
  int kernel = 0;
  for (double e : k.eigenvalues()) kernel += std::abs(e) < 1e-10 * top;
  EXPECT_EQ(kernel, 6);
  auto ev = solve_fem(sys, 7);
  for (int i = 0; i < 6; ++i) EXPECT_LT(std::abs(ev.values[i]), 1e-8);
  EXPECT_GT(ev.values[6], 1.0);
}

TEST(Fem, SpringAddsTangentsToJointDiagonal) {
  Frame a = planar_star(), b = planar_star();
  const int c = a.vertex_index("c");
  const double al = 0.3, be = 0.5;
  b.vertices[c].joint = JointKind::spring(al, be);
  auto sa = assemble_fem(a, FemOptions{.elements = 4}), sb = assemble_fem(b, FemOptions{.elements = 4});
  ASSERT_EQ(sa.size(), sb.size());
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(sa.size(), sa.size());
  for (int comp = 0; comp < 3; ++comp) {
    const int d = sa.full_to_kept[sa.find(DofKind::JointDisp, c, comp)];
    const int r = sa.full_to_kept[sa.find(DofKind::JointRot, c, comp)];
    expect(d, d) = std::tan(al);
    expect(r, r) = std::tan(be);
  }
  EXPECT_LT((sb.K - sa.K - expect).cwiseAbs().maxCoeff(), 1e-14 * sa.K.cwiseAbs().maxCoeff());
  EXPECT_EQ((sb.G - sa.G).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Fem, ClampedJointsRemoveDofs) {
  Frame f = planar_star();
  auto sys = assemble_fem(f, FemOptions{.elements = 3});
  for (const char* v : {"v1", "v2", "v3"})
    for (int comp = 0; comp < 3; ++comp) {
      EXPECT_EQ(sys.full_to_kept[sys.find(DofKind::JointDisp, f.vertex_index(v), comp)], -1);
      EXPECT_EQ(sys.full_to_kept[sys.find(DofKind::JointRot, f.vertex_index(v), comp)], -1);
    }
  EXPECT_EQ(sys.size(), sys.n_full - 18);
}

TEST(Fem, EigenpairResiduals) {
  auto sys = assemble_fem(antenna_tower(), FemOptions{.elements = 10});
  auto ev = solve_fem(sys, 10, true);
  ASSERT_EQ(ev.values.size(), 10);
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd x = ev.vectors.col(k);
    const Eigen::VectorXd kx = sys.K * x;
    EXPECT_LE((kx - ev.values[k] * sys.G * x).norm(), 1e-8 * kx.norm());
    EXPECT_NEAR(x.dot(sys.G * x), 1.0, 1e-10);
    if (k > 0) EXPECT_LE(ev.values[k - 1], ev.values[k]);
  }
}

TEST(Fem, CantileverBending) {
  auto ev = solve_fem(assemble_fem(cantilever(Material{1.0, 50.0, 50.0, 50.0}), FemOptions{.elements = 64}), 1);
  const double exact = std::pow(oracle::cantilever_root(1), 4);
  EXPECT_NEAR(ev.values[0], exact, 1e-6 * exact);
}

TEST(Fem, HermiteBendingConvergesAtFourthOrder) {
  // third bending mode keeps the error above rounding at n = 64
  const double exact = std::pow(oracle::cantilever_root(3), 4);
  std::vector<double> err;
  for (int n : {8, 16, 32, 64}) {
    auto ev = solve_fem(assemble_fem(cantilever(Material{1.0, 1e6, 1e6, 1e6}), FemOptions{.elements = n}), 3);
    err.push_back(std::abs(ev.values[2] - exact) / exact);
  }
  EXPECT_NEAR(fitted_order(err), 4.0, 0.5) << err[0] << " " << err[3];
}

TEST(Fem, LinearRodConvergesAtSecondOrder) {
  const double exact = std::numbers::pi * std::numbers::pi / 4;
  for (Material m : {Material{1e6, 1e6, 1e6, 1.0}, Material{1e6, 1e6, 1.0, 1e6}}) {
    std::vector<double> err;
    for (int n : {8, 16, 32, 64}) {
      auto ev = solve_fem(assemble_fem(cantilever(m), FemOptions{.elements = n, .rod_order = 1}), 1);
      err.push_back(std::abs(ev.values[0] - exact) / exact);
    }
    EXPECT_NEAR(fitted_order(err), 2.0, 0.5);
  }
}

TEST(Fem, HigherRodOrderConvergesFaster) {
  const double exact = std::numbers::pi * std::numbers::pi / 4;
  auto e1 = solve_fem(assemble_fem(cantilever(Material{1e6, 1e6, 1e6, 1.0}), FemOptions{.elements = 8, .rod_order = 1}), 1);
  auto e2 = solve_fem(assemble_fem(cantilever(Material{1e6, 1e6, 1e6, 1.0}), FemOptions{.elements = 8, .rod_order = 2}), 1);
  EXPECT_LT(std::abs(e2.values[0] - exact), 1e-2 * std::abs(e1.values[0] - exact));
}

TEST(Fem, PlanarSplitIsBlockDiagonal) {
  Frame f = planar_star();
  auto split = detect_planar(f);
  ASSERT_TRUE(split);
  Mat3 J;
  J << split->e1, split->e2, split->normal;
  auto sys = assemble_fem(f, FemOptions{.elements = 6, .joint_frame = J});
  auto [h1, h2] = planar_dof_split(sys);
  EXPECT_EQ(static_cast<int>(h1.size() + h2.size()), sys.size());
  double off = 0;
  for (int i : h1)
    for (int j : h2) off = std::max({off, std::abs(sys.K(i, j)), std::abs(sys.G(i, j))});
  EXPECT_LT(off, 1e-12);
}

TEST(Fem, IntervalCountMatchesSecular) {
  Frame f = planar_star();
  auto sys = assemble_fem(f, FemOptions{.elements = 20});
  auto sec = expand_multiplicity(solve(assemble(f), ScanOptions{.lmin = 1e-4, .lmax = 30.0}));
  EXPECT_EQ(count_in_interval(sys, 1e-4, 30.0), static_cast<int>(sec.size()));
  auto iv = solve_fem_interval(sys, 1e-4, 30.0);
  EXPECT_EQ(iv.values.size(), static_cast<Eigen::Index>(sec.size()));
  for (std::size_t k = 0; k < sec.size(); ++k) EXPECT_NEAR(iv.values[k], sec[k], 1e-4 * sec[k]);
}

TEST(Fem, SamplesVanishAtClampedEnds) {
  Frame f = planar_star();
  auto sys = assemble_fem(f, FemOptions{.elements = 8});
  auto ev = solve_fem(sys, 2, true);
  for (int e = 0; e < 3; ++e) {
    auto s = fem_samples(sys, ev.vectors.col(0), e);
    ASSERT_EQ(s.size(), 9u);
    EXPECT_EQ(s.front().x, 0.0);
    EXPECT_NEAR(s.back().x, f.edges[e].length, 1e-15);
    EXPECT_EQ(s.front().f.norm(), 0.0);
    EXPECT_GT(s.back().f.norm(), 0.0);
  }
}

TEST(Fem, InvalidOptions) {
  Frame f = planar_star();
  EXPECT_THROW(assemble_fem(f, FemOptions{.elements = 0}), DomainError);
  EXPECT_THROW(assemble_fem(f, FemOptions{.rod_order = 4}), DomainError);
  EXPECT_THROW(assemble_fem(f, FemOptions{.shift = 0.0}), DomainError);
  EXPECT_THROW(assemble_fem(f, FemOptions{.joint_frame = 2 * Mat3::Identity()}), DomainError);
}
