#pragma once

#include "framespec/secular.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace framespec {

struct GroupElement {
  Mat3 T = Mat3::Identity();
  std::vector<int> edge_perm;    // edge e -> edge_perm[e]
  std::vector<int> vertex_perm;  // derived from positions
  std::string name;
  double det() const { return T.determinant(); }
};

struct SymmetryOptions {
  double tol = 1e-10;
  Vec3 center = Vec3::Zero();
  int max_order = 1000;
};

class FrameSymmetry {
 public:
  // Closes the generators into a group and checks that every element maps the
  // frame onto itself (positions, joints, lengths, materials, edge axes).
  static FrameSymmetry generate(const Frame& frame, const std::vector<GroupElement>& generators,
                                const SymmetryOptions& opt = {});

  const std::vector<GroupElement>& elements() const { return elements_; }
  const std::vector<int>& generator_indices() const { return generators_; }
  int order() const { return static_cast<int>(elements_.size()); }
  int product(int a, int b) const { return table_[a][b]; }  // a after b
  int identity() const { return 0; }
  int inverse(int a) const;
  bool has_reflections() const;
  // Elements with det +1.
  std::vector<int> rotation_subgroup() const;
  // Generator of the rotation subgroup (first det +1 generator), or -1.
  int rotation_generator() const;
  // Smallest k >= 1 with g^k = id.
  int element_order(int g) const;
  const Frame& frame() const { return frame_; }
  // Orbits of edges under the group: decreasing size, then lowest id.
  std::vector<std::vector<int>> edge_orbits() const;

 private:
  Frame frame_;
  std::vector<GroupElement> elements_;
  std::vector<int> generators_;
  std::vector<std::vector<int>> table_;
};

// A 1-D character on a subset of the group (the support), e.g. a subgroup.
struct IrrepSpec {
  std::string label;
  std::vector<int> support;             // element indices the projector sums over
  std::vector<std::complex<double>> chi;  // character per support entry

  static IrrepSpec trivial(const FrameSymmetry& s);
  static IrrepSpec alternating(const FrameSymmetry& s);
  // chi(R^k) = exp(2 pi i j k / n) on the cyclic rotation subgroup <R>.
  static IrrepSpec cyclic(const FrameSymmetry& s, int j);
  static IrrepSpec omega(const FrameSymmetry& s) { return cyclic(s, 1); }
  static IrrepSpec omega_bar(const FrameSymmetry& s);
  // Character values on the group generators, extended multiplicatively.
  static IrrepSpec from_generators(const FrameSymmetry& s, const std::vector<std::complex<double>>& values,
                                   const std::string& label = "user");
  static IrrepSpec by_name(const FrameSymmetry& s, const std::string& name);

  std::complex<double> value(int element) const;
  // |chi| = 1 and chi(ab) = chi(a) chi(b) on the support.
  bool is_homomorphism(const FrameSymmetry& s, double tol = 1e-10) const;
};

// trivial + alternating + rotation-subgroup characters j = 1..n-1 when the
// group contains reflections; otherwise all characters j = 0..n-1.
std::vector<IrrepSpec> full_decomposition(const FrameSymmetry& s);

// Action on the coefficient space of an assembly's edge bases (nbase x nbase).
Eigen::MatrixXd action_matrix(const FrameSymmetry& s, const SecularAssembly& a, int element);

// Action on sampled fields: per edge a list of (v, w, u, eta) samples at the
// same abscissae. Returns the transformed samples.
using EdgeSamples = std::vector<Eigen::Vector4d>;
std::vector<EdgeSamples> action_on_fields(const FrameSymmetry& s, int element,
                                          const std::vector<EdgeSamples>& fields);
// Action on per-edge 12-coefficient vectors (all edges with the same anchors).
std::vector<Eigen::Matrix<double, 12, 1>> action_on_coefficients(
    const FrameSymmetry& s, int element, const std::vector<Eigen::Matrix<double, 12, 1>>& coeffs);

Eigen::MatrixXcd isotypic_projector(const FrameSymmetry& s, const SecularAssembly& a, const IrrepSpec& irrep);

struct QuotientOptions {
  std::vector<double> probes{3.7, 11.3};
  bool realify = true;
};

SecularAssembly quotient_assembly(const FrameSymmetry& s, const IrrepSpec& irrep,
                                  const QuotientOptions& opt = {});

struct UnionCheckEntry {
  double lambda = 0;
  int multiplicity = 0;
  std::vector<std::string> labels;
  bool matched = false;
};

struct UnionCheckReport {
  std::vector<Eigenvalue> full;                 // full-frame eigenvalues
  std::vector<Eigenvalue> blocks;               // all quotient eigenvalues, labelled
  std::vector<double> full_list, union_list;    // expanded by multiplicity
  std::vector<UnionCheckEntry> entries;
  double max_rel_error = 0;
  bool ok = false;
};

UnionCheckReport spectrum_union_check(const FrameSymmetry& s, const ScanOptions& opt, double tol = 1e-6);
UnionCheckReport spectrum_union_check(const Frame& frame, const FrameSymmetry& s, const ScanOptions& opt,
                                      double tol = 1e-6);

// Action on FEM degrees of freedom (before Dirichlet removal is irrelevant:
// the map is returned on the kept DOFs of the given system).
struct FemSystem;
Eigen::MatrixXd fem_action_matrix(const FrameSymmetry& s, const FemSystem& sys, int element);

}  // namespace framespec
