#include "framespec/conditions.hpp"
#include "framespec/edge_solutions.hpp"
#include "framespec/errors.hpp"
#include "framespec/reference_frames.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace framespec;

namespace {

Edge unit_edge(double length = 1.0, Material m = {}) {
  Frame f = single_beam(JointKind::clamped(), JointKind::free_rigid(), length, m);
  return f.edges[0];
}

// 5-point central difference
template <class F>
double diff(F f, double x, double h) {
  return (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
}

}  // namespace

TEST(EdgeSolutions, BendingBasisAtOrigin) {
  BendingEval b = bending_basis(2.0, 2.0, 0.0);
  EXPECT_LT((b.d.row(0) - Eigen::RowVector4d(1, 0, 1, 0)).norm(), 1e-15);
  EXPECT_LT((b.d.row(1) - Eigen::RowVector4d(0, 1, 0, 1)).norm(), 1e-15);
}

TEST(EdgeSolutions, BendingBasisSolvesItsEquation) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> U(0.1, 2.0);
  for (int k = 0; k < 50; ++k) {
    const double lam = 10 * U(rng), a = U(rng), x = U(rng);
    BendingEval b = bending_basis(lam, a, x);
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(a * b.d(4, c), lam * b.d(0, c), 1e-10 * std::max(1.0, std::abs(lam * b.d(0, c))));
      // derivative columns agree with finite differences
      for (int r = 0; r < 4; ++r) {
        auto f = [&](double y) { return bending_basis(lam, a, y).d(r, c); };
        const double fd = diff(f, x, 1e-3);
        EXPECT_NEAR(fd, b.d(r + 1, c), 1e-8 * std::max(1.0, std::abs(b.d(r + 1, c))));
      }
    }
  }
}

TEST(EdgeSolutions, ClampedCombinationVanishesAtOrigin) {
  BendingEval b = bending_basis(3.0, 1.0, 0.0);
  const Eigen::Vector4d sm(0, 1, 0, -1), cm(1, 0, -1, 0);
  for (int r = 0; r < 2; ++r) {
    EXPECT_EQ(b.d.row(r).dot(sm), 0.0);
    EXPECT_EQ(b.d.row(r).dot(cm), 0.0);
  }
}

TEST(EdgeSolutions, WronskianIsConstant) {
  const double lam = 7.0, a = 1.3;
  auto wronskian = [&](double x) { return bending_basis(lam, a, x).d.topRows<4>().determinant(); };
  const double w0 = wronskian(0.0);
  for (double x = 0.0; x <= 1.0; x += 0.05) EXPECT_NEAR(wronskian(x), w0, 1e-9 * std::abs(w0));
}

TEST(EdgeSolutions, ScaledBasisMatchesUnscaled) {
  BendingEval u = bending_basis(20.0, 1.0, 1.5), s = bending_basis(20.0, 1.0, 1.5, true);
  const double f = std::exp(s.log_scale);
  for (int r = 0; r < 5; ++r) {
    EXPECT_NEAR(s.d(r, 0) * f, u.d(r, 0), 1e-12 * std::abs(u.d(r, 0)));
    EXPECT_NEAR(s.d(r, 1) * f, u.d(r, 1), 1e-12 * std::abs(u.d(r, 1)));
    EXPECT_EQ(s.d(r, 2), u.d(r, 2));
  }
}

TEST(EdgeSolutions, RodBasis) {
  const double lam = 4.0, c = 1.0, beta = 2.0;
  RodEval r = rod_basis(lam, c, 0.0);
  EXPECT_LT((r.d.row(0) - Eigen::RowVector2d(1, 0)).norm(), 1e-15);
  EXPECT_LT((r.d.row(1) - Eigen::RowVector2d(0, beta)).norm(), 1e-15);
  const double x = 0.7;
  r = rod_basis(lam, c, x);
  for (int k = 0; k < 2; ++k) EXPECT_NEAR(-c * r.d(2, k), lam * r.d(0, k), 1e-12);
  EXPECT_NEAR(r.d(0, 1), std::sin(beta * x), 1e-15);
  EXPECT_NEAR(r.d(0, 0), std::cos(beta * x), 1e-15);
}

TEST(EdgeSolutions, NonPositiveLambdaIsRejected) {
  EXPECT_THROW(bending_basis(0.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(rod_basis(-1.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(bending_basis(1.0, 0.0, 0.5), DomainError);
}

TEST(EdgeSolutions, TraceOfCoshColumnAtOrigin) {
  const Edge e = unit_edge();
  const double lam = 5.0, mu = std::pow(lam, 0.25);
  Mat12 t = trace_of_basis(e, lam, 0);
  Eigen::Matrix<double, 12, 1> expect = Eigen::Matrix<double, 12, 1>::Zero();
  expect[0] = 1;
  expect[2] = mu * mu;
  EXPECT_LT((t.col(0) - expect).norm(), 1e-14);
}

TEST(EdgeSolutions, TraceAtTerminusUsesCombinedHyperbolics) {
  const Edge e = unit_edge();
  Mat12 t = trace_of_basis(e, 1.0, 1);
  // v = A(sinh - sin) + B(cosh - cos) at x = 1, mu = 1
  Eigen::Matrix<double, 12, 1> sm = Eigen::Matrix<double, 12, 1>::Zero(), cm = sm;
  sm[1] = 1;
  sm[3] = -1;
  cm[0] = 1;
  cm[2] = -1;
  EXPECT_NEAR((t * sm)[0], oracle::Sm(1.0), 1e-14);
  EXPECT_NEAR((t * cm)[0], oracle::Cm(1.0), 1e-14);
  EXPECT_NEAR((t * sm)[1], oracle::Cm(1.0), 1e-14);
  EXPECT_NEAR((t * cm)[1], oracle::Sp(1.0), 1e-14);
}

TEST(EdgeSolutions, OverflowBudget) {
  const Edge e = unit_edge(400.0);
  EXPECT_THROW(trace_of_basis(e, 1.0, 1), NumericalError);
  EXPECT_NO_THROW(trace_of_basis(unit_edge(299.0), 1.0, 1));
  EXPECT_THROW(trace_of_basis(unit_edge(), 1.0, 2), DomainError);
}

TEST(EdgeSolutions, JetMatchesTraceMap) {
  const Edge e = unit_edge(1.3, Material{0.5, 2.0, 1.5, 0.8});
  const double lam = 9.0, x = 0.4;
  JetMap j = jet_map(e, lam, x);
  Mat12 t = trace_map(e, lam, x);
  const int rows[12] = {0, 1, 2, 3, 5, 6, 7, 8, 10, 11, 13, 14};
  for (int r = 0; r < 12; ++r) EXPECT_LT((j.row(rows[r]) - t.row(r)).norm(), 1e-13);
}

TEST(EdgeSolutions, ReducedBasisSatisfiesEndConditions) {
  const double lam = 6.5;
  const std::vector<JointKind> kinds{JointKind::clamped(), JointKind::pinned(), JointKind::guided(),
                                     JointKind::free_rigid(), JointKind::spring(0.4, -0.2),
                                     JointKind::spring(0.0, 0.7)};
  for (const auto& kind : kinds) {
    for (int end = 0; end < 2; ++end) {
      Frame f = end == 0 ? single_beam(kind, JointKind::clamped(), 1.2, Material{0.7, 1.4, 2.0, 0.6})
                         : single_beam(JointKind::clamped(), kind, 1.2, Material{0.7, 1.4, 2.0, 0.6});
      const Edge& e = f.edges[0];
      EdgeBasis b = reduced_basis(f, 0, end);
      Eigen::MatrixXd Q = b.matrix(e, lam);
      ASSERT_EQ(Q.cols(), 6);
      const int vertex = end == 0 ? e.origin : e.terminus;
      const double x = end == 0 ? 0.0 : e.length;
      for (int c = 0; c < 6; ++c) {
        Trace tr = trace_map(e, lam, x, b.anchor) * Q.col(c);
        Eigen::VectorXd res = vertex_residual(f, vertex, [&](int, int) { return tr; });
        EXPECT_LT(res.cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, tr.cwiseAbs().maxCoeff()))
            << "joint " << static_cast<int>(kind.type) << " end " << end << " col " << c;
      }
      // full column rank
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q);
      EXPECT_GT(svd.singularValues().minCoeff(), 1e-3);
    }
  }
}
