#pragma once

#include "framespec/conditions.hpp"
#include "framespec/edge_solutions.hpp"
#include "framespec/geometry.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace framespec {

using cd = std::complex<double>;

// One scalar row: a linear functional on the end traces of several edges.
struct RowFunctional {
  struct Term {
    int edge;
    int end;
    Eigen::Matrix<double, 1, 12> coef;
  };
  std::vector<Term> terms;
  ConditionKind kind = ConditionKind::ForceBalance;
  int vertex = -1;
  std::string label;
};

// Scalar rows of a list of vector conditions. Continuity rows are projected on
// the compared edge's (i, j, k) when local_continuity is set, on E1..E3 otherwise.
std::vector<RowFunctional> scalar_rows(const Frame& frame, const std::vector<VectorCondition>& conds,
                                       bool local_continuity = false);
RowFunctional project_row(const Frame& frame, const VectorCondition& c, const Vec3& dir,
                          const std::string& axis);

// lambda -> M(lambda) = rows(lambda) * Q, optional row phases, rows scaled to
// unit max-norm. Q maps the assembly's unknowns to the stacked edge-basis
// coefficients (identity when absent).
struct SecularAssembly {
  std::shared_ptr<const Frame> frame;
  std::vector<EdgeBasis> bases;
  std::vector<int> offsets;
  int nbase = 0;
  std::vector<RowFunctional> rows;
  std::optional<Eigen::MatrixXcd> Q;
  Eigen::VectorXcd row_phase;  // empty means all ones
  bool real = true;
  bool scale_rows = true;
  std::vector<RowFunctional> check_rows;  // full candidate set, spurious-root guard
  std::string label = "full";

  int n_rows() const { return static_cast<int>(rows.size()); }
  int n_cols() const { return Q ? static_cast<int>(Q->cols()) : nbase; }

  // rows x nbase before Q, unscaled
  Eigen::MatrixXd base_matrix(double lambda, const std::vector<RowFunctional>& rs) const;
  // natural magnitude of each row: max |coef| times wavenumber^order
  Eigen::VectorXd row_scales(double lambda) const;
  Eigen::VectorXd row_scales(double lambda, const std::vector<RowFunctional>& rs) const;
  Eigen::MatrixXd evaluate(double lambda) const;
  Eigen::MatrixXcd evaluate_complex(double lambda) const;
  // Per-edge 12 anchored coefficients for an unknown vector z.
  std::vector<Eigen::Matrix<cd, 12, 1>> lift(double lambda, const Eigen::VectorXcd& z) const;
};

// Full-frame assembly with degree-1 end reduction; square for all joint kinds.
SecularAssembly assemble(const Frame& frame);
SecularAssembly assemble(std::shared_ptr<const Frame> frame);
Eigen::MatrixXd assemble(const Frame& frame, double lambda);

// Degree-1 ends that are solved analytically: per edge -1 (none), 0 or 1.
std::vector<int> reduced_ends(const Frame& frame);
// Edge bases with the reductions above, plus the conditions of all vertices
// not absorbed by a reduced end (vertex order, continuity then balance).
std::vector<EdgeBasis> assembly_bases(const Frame& frame);
std::vector<VectorCondition> active_conditions(const Frame& frame);

struct Probe {
  double lambda = 0;
  double det_scaled = 0;  // NaN for complex assemblies
  double sigma_min = 0;
  double sigma_max = 0;
  double ratio() const { return sigma_max > 0 ? sigma_min / sigma_max : 0.0; }
};

Probe probe(const SecularAssembly& a, double lambda);
Eigen::VectorXd singular_values(const SecularAssembly& a, double lambda);

// Try to make rows(lambda) Q real by diagonal row/column phases; checked at
// the probe values. Returns true and updates the assembly on success.
bool realify(SecularAssembly& a, const std::vector<double>& probes, double tol = 1e-10);

enum class Detector { Det, SigmaMin, Both };
const char* detector_name(Detector d);

struct ScanOptions {
  double lmin = 1e-4;
  double lmax = 30.0;
  int steps = 0;              // 0: 2000 per decade
  int threads = 0;            // 0: hardware concurrency
  double dip_threshold = 0.05;  // sigma_min / sigma_max at a grid minimum
  double accept_tol = 1e-8;     // sigma ratio accepting a dip
  double nullity_tol = 1e-8;    // relative to sigma_max
  double merge_tol = 1e-8;      // relative
  double det_accept_tol = 1e-6;
};

int default_steps(double lmin, double lmax);
std::vector<double> scan_grid(const ScanOptions& opt);

struct ScanHit {
  double lo = 0, hi = 0, seed = 0;
  Detector detector = Detector::Det;
};

struct ScanResult {
  std::vector<Probe> samples;
  std::vector<ScanHit> hits;
};

ScanResult scan(const SecularAssembly& a, const ScanOptions& opt = {});

struct Eigenvalue {
  double lambda = 0;
  int nullity = 0;
  Detector detector = Detector::Det;
  double sigma_ratio = 0;
  std::string label;  // irrep or block label
};

// Refine one hit; empty when the candidate is rejected.
std::optional<Eigenvalue> refine(const SecularAssembly& a, const ScanHit& hit,
                                 const ScanOptions& opt = {});
std::vector<Eigenvalue> solve(const SecularAssembly& a, const ScanOptions& opt = {});
// Eigenvalues repeated by nullity, ascending.
std::vector<double> expand_multiplicity(const std::vector<Eigenvalue>& ev);

struct EdgeCoefficients {
  double anchor = 0.0;
  Eigen::Matrix<double, 12, 1> c = Eigen::Matrix<double, 12, 1>::Zero();
};

struct ModeShape {
  double lambda = 0;
  int nullity = 0;
  std::shared_ptr<const Frame> frame;
  std::vector<EdgeCoefficients> edges;
};

// Orthonormal (L2) basis of the kernel at lambda, lifted to real frame fields.
std::vector<ModeShape> mode_shapes(const SecularAssembly& a, double lambda, double nullity_tol = 1e-8);
ModeShape mode_shape(const SecularAssembly& a, double lambda, double nullity_tol = 1e-8);
// Complex kernel vectors lifted without taking real parts.
std::vector<std::vector<Eigen::Matrix<cd, 12, 1>>> complex_kernel(const SecularAssembly& a, double lambda,
                                                                double nullity_tol = 1e-8);

FieldPoint evaluate_mode(const ModeShape& m, int edge, double x);
Jet evaluate_jet(const ModeShape& m, int edge, double x);
FrameField mode_field(const ModeShape& m);
double mode_norm(const ModeShape& m, int panels = 16);
// max |row residual| over all vertex conditions of the frame, relative to the trace scale
double mode_condition_residual(const ModeShape& m);

}  // namespace framespec
