#include "framespec/edge_solutions.hpp"

#include "framespec/errors.hpp"

#include <cmath>
#include <sstream>

namespace framespec {

namespace {

void check_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw DomainError("lambda must be positive and finite (got " + std::to_string(lambda) + ")");
}

void check_overflow(const Edge& e, double lambda) {
  Wavenumbers k = Wavenumbers::of(e.mat, lambda);
  double ml = k.max_mu() * e.length;
  if (ml > kMaxMuL) {
    std::ostringstream os;
    os << "edge " << e.id << ": mu*l = " << ml << " exceeds the scaling budget " << kMaxMuL;
    throw NumericalError(os.str());
  }
}

Eigen::Vector2d unit2(double a, double b) {
  Eigen::Vector2d v(a, b);
  double n = v.norm();
  return n > 0 ? Eigen::Vector2d(v / n) : Eigen::Vector2d(0.0, 1.0);
}

}  // namespace

Wavenumbers Wavenumbers::of(const Material& m, double lambda) {
  check_lambda(lambda);
  return {std::pow(lambda / m.a, 0.25), std::pow(lambda / m.b, 0.25),
          std::sqrt(lambda / m.c), std::sqrt(lambda / m.d)};
}

BendingEval bending_basis(double lambda, double stiffness, double x, bool scaled) {
  check_lambda(lambda);
  if (!(stiffness > 0)) throw DomainError("stiffness must be positive");
  const double mu = std::pow(lambda / stiffness, 0.25);
  const double t = mu * x;
  BendingEval out;
  double ch = std::cosh(t), sh = std::sinh(t);
  if (scaled) {
    // cosh(t) e^{-|t|}, sinh(t) e^{-|t|} without forming cosh(t)
    out.log_scale = std::abs(t);
    const double q = std::exp(-2.0 * std::abs(t));
    ch = 0.5 * (1.0 + q);
    sh = std::copysign(0.5 * (1.0 - q), t);
  }
  const double c = std::cos(t), s = std::sin(t);
  double p = 1.0;
  for (int r = 0; r <= 4; ++r) {
    // derivatives cycle: cosh->sinh, cos->-sin->-cos->sin
    const bool even = (r % 2 == 0);
    out.d(r, 0) = p * (even ? ch : sh);
    out.d(r, 1) = p * (even ? sh : ch);
    switch (r % 4) {
      case 0: out.d(r, 2) = p * c; out.d(r, 3) = p * s; break;
      case 1: out.d(r, 2) = -p * s; out.d(r, 3) = p * c; break;
      case 2: out.d(r, 2) = -p * c; out.d(r, 3) = -p * s; break;
      case 3: out.d(r, 2) = p * s; out.d(r, 3) = -p * c; break;
    }
    p *= mu;
  }
  return out;
}

RodEval rod_basis(double lambda, double stiffness, double x) {
  check_lambda(lambda);
  if (!(stiffness > 0)) throw DomainError("stiffness must be positive");
  const double b = std::sqrt(lambda / stiffness);
  const double c = std::cos(b * x), s = std::sin(b * x);
  RodEval out;
  out.d << c, s,
           -b * s, b * c,
           -b * b * c, -b * b * s;
  return out;
}

JetMap jet_map(const Edge& e, double lambda, double x, double anchor) {
  check_overflow(e, lambda);
  const double y = x - anchor;
  JetMap m = JetMap::Zero();
  m.block<5, 4>(0, 0) = bending_basis(lambda, e.mat.a, y).d;
  m.block<5, 4>(5, 4) = bending_basis(lambda, e.mat.b, y).d;
  m.block<3, 2>(10, 8) = rod_basis(lambda, e.mat.c, y).d;
  m.block<3, 2>(13, 10) = rod_basis(lambda, e.mat.d, y).d;
  return m;
}

Mat12 trace_map(const Edge& e, double lambda, double x, double anchor) {
  check_overflow(e, lambda);
  const double y = x - anchor;
  Mat12 m = Mat12::Zero();
  m.block<4, 4>(0, 0) = bending_basis(lambda, e.mat.a, y).d.topRows<4>();
  m.block<4, 4>(4, 4) = bending_basis(lambda, e.mat.b, y).d.topRows<4>();
  m.block<2, 2>(8, 8) = rod_basis(lambda, e.mat.c, y).d.topRows<2>();
  m.block<2, 2>(10, 10) = rod_basis(lambda, e.mat.d, y).d.topRows<2>();
  return m;
}

Mat12 trace_of_basis(const Edge& e, double lambda, int endpoint) {
  if (endpoint != 0 && endpoint != 1) throw DomainError("endpoint must be 0 or 1");
  return trace_map(e, lambda, endpoint == 0 ? 0.0 : e.length, 0.0);
}

const char* field_name(Field f) {
  switch (f) {
    case Field::V: return "v";
    case Field::W: return "w";
    case Field::U: return "u";
    case Field::Eta: return "eta";
  }
  return "?";
}

std::vector<Field> EdgeBasis::fields() const {
  if (reduced) return {Field::V, Field::V, Field::W, Field::W, Field::U, Field::Eta};
  return {Field::V, Field::V, Field::V, Field::V, Field::W, Field::W, Field::W, Field::W,
          Field::U, Field::U, Field::Eta, Field::Eta};
}

EdgeBasis full_basis(int edge) {
  EdgeBasis b;
  b.edge = edge;
  return b;
}

EdgeBasis reduced_basis(const Frame& frame, int edge, int end) {
  const Edge& e = frame.edges.at(edge);
  EdgeBasis b;
  b.edge = edge;
  b.reduced = true;
  b.anchor = end == 0 ? 0.0 : e.length;
  b.end_sign = end == 0 ? +1 : -1;
  b.end_joint = frame.vertices[end == 0 ? e.origin : e.terminus].joint;
  return b;
}

Eigen::MatrixXd EdgeBasis::matrix(const Edge& e, double lambda) const {
  if (!reduced) return Eigen::MatrixXd::Identity(12, 12);
  const Wavenumbers k = Wavenumbers::of(e.mat, lambda);
  const double s = end_sign;
  const bool gfix = end_joint.displacement_fixed();
  const bool rfix = end_joint.rotation_fixed();
  const double ta = end_joint.tan_alpha();
  const double tb = end_joint.tan_beta();

  // (cosh, sinh, cos, sin) coefficients of the building blocks
  const Eigen::Vector4d cplus(1, 0, 1, 0), sminus(0, 1, 0, -1);
  const Eigen::Vector4d splus(0, 1, 0, 1), cminus(1, 0, -1, 0);

  auto bending = [&](double kappa, double mu) {
    Eigen::Vector2d xy = gfix ? Eigen::Vector2d(0, 1) : unit2(kappa * mu * mu * mu, -s * ta);
    Eigen::Vector2d pq = rfix ? Eigen::Vector2d(0, 1) : unit2(kappa * mu, s * tb);
    Eigen::Vector4d c1 = xy[0] * cplus + xy[1] * sminus;
    Eigen::Vector4d c2 = pq[0] * splus + pq[1] * cminus;
    Eigen::Matrix<double, 4, 2> out;
    if (rfix) out << c1, c2;
    else out << c2, c1;
    return out;
  };
  auto rod = [&](double kappa, double beta, bool fixed, double t) {
    Eigen::Vector2d ab = fixed ? Eigen::Vector2d(0, 1) : unit2(kappa * beta, s * t);
    return ab;
  };

  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(12, 6);
  m.block<4, 2>(0, 0) = bending(e.mat.a, k.mu_a);
  m.block<4, 2>(4, 2) = bending(e.mat.b, k.mu_b);
  m.block<2, 1>(8, 4) = rod(e.mat.c, k.beta_c, gfix, ta);
  m.block<2, 1>(10, 5) = rod(e.mat.d, k.beta_d, rfix, tb);
  return m;
}

}  // namespace framespec
