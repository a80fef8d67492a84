#pragma once

#include "framespec/geometry.hpp"
#include "framespec/kinematics.hpp"

#include <vector>

namespace framespec {

inline constexpr double kMaxMuL = 300.0;

using Mat12 = Eigen::Matrix<double, 12, 12>;
// v..v'''', w..w'''', u..u'', eta..eta''
using Jet = Eigen::Matrix<double, 16, 1>;
using JetMap = Eigen::Matrix<double, 16, 12>;

struct Wavenumbers {
  double mu_a = 0, mu_b = 0, beta_c = 0, beta_d = 0;
  static Wavenumbers of(const Material& m, double lambda);
  double max_mu() const { return std::max(mu_a, mu_b); }
};

// Row r holds the r-th derivative of cosh, sinh, cos, sin (mu x), r = 0..4.
// With scaled=true the hyperbolic columns are multiplied by exp(-log_scale).
struct BendingEval {
  Eigen::Matrix<double, 5, 4> d;
  double log_scale = 0.0;
};

// Row r holds the r-th derivative of cos, sin (beta x), r = 0..2.
struct RodEval {
  Eigen::Matrix<double, 3, 2> d;
};

BendingEval bending_basis(double lambda, double stiffness, double x, bool scaled = false);
RodEval rod_basis(double lambda, double stiffness, double x);

// Coefficients (C^v_1..4, C^w_1..4, C^u_1..2, C^eta_1..2) to the 12-entry trace at x.
// Basis functions are taken in (x - anchor).
Mat12 trace_map(const Edge& e, double lambda, double x, double anchor = 0.0);
Mat12 trace_of_basis(const Edge& e, double lambda, int endpoint /*0 origin, 1 terminus*/);
JetMap jet_map(const Edge& e, double lambda, double x, double anchor = 0.0);

enum class Field { V = 0, W = 1, U = 2, Eta = 3 };
const char* field_name(Field f);

// Per-edge solution space used by an assembly: either the full 12 columns or
// the 6 columns that already satisfy the conditions of a degree-1 end.
struct EdgeBasis {
  int edge = -1;
  double anchor = 0.0;  // 0 or the edge length
  bool reduced = false;
  int end_sign = +1;     // incidence sign of the reduced end
  JointKind end_joint;   // joint of the reduced end

  int cols() const { return reduced ? 6 : 12; }
  std::vector<Field> fields() const;
  // 12 x cols() map from reduced coefficients to full anchored coefficients.
  Eigen::MatrixXd matrix(const Edge& e, double lambda) const;
};

EdgeBasis full_basis(int edge);
EdgeBasis reduced_basis(const Frame& frame, int edge, int end /*0 origin, 1 terminus*/);

}  // namespace framespec
