#pragma once

#include "framespec/geometry.hpp"

#include <memory>
#include <string>
#include <vector>

namespace framespec {

struct FemOptions {
  int elements = 20;   // per edge
  int rod_order = 2;   // Lagrange order for u and eta, 1..3
  Mat3 joint_frame = Mat3::Identity();  // columns: basis of the joint DOFs
  double shift = 1.0;  // spectral shift for the inverted pencil, > 0
};

enum class DofKind { JointDisp, JointRot, V, DV, W, DW, U, Eta };

struct DofInfo {
  DofKind kind;
  int owner;      // vertex for joint DOFs, edge otherwise
  int component;  // 0..2 for joint DOFs, node index along the edge otherwise
};

struct FemSystem {
  std::shared_ptr<const Frame> frame;
  FemOptions opt;
  Eigen::MatrixXd K;  // stiffness (energy form)
  Eigen::MatrixXd G;  // L2 Gram matrix
  int n_full = 0;
  std::vector<int> kept;        // kept index -> full index
  std::vector<int> full_to_kept;  // -1 for removed
  std::vector<DofInfo> full_dofs;
  int size() const { return static_cast<int>(kept.size()); }
  // full index of a DOF, -1 if absent
  int find(DofKind kind, int owner, int component) const;
};

FemSystem assemble_fem(const Frame& frame, const FemOptions& opt = {});
FemSystem assemble_fem(std::shared_ptr<const Frame> frame, const FemOptions& opt = {});

struct FemEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // columns on kept DOFs, G-orthonormal
};

FemEigen solve_fem(const FemSystem& sys, int count, bool vectors = false);
// Number of eigenvalues in (lo, hi].
int count_in_interval(const FemSystem& sys, double lo, double hi);
FemEigen solve_fem_interval(const FemSystem& sys, double lo, double hi, bool vectors = false);

// (v, w, u, eta) at the element boundary nodes x_p = p l / n of an edge.
struct FemSample {
  double x;
  Eigen::Vector4d f;
};
std::vector<FemSample> fem_samples(const FemSystem& sys, const Eigen::VectorXd& x, int edge);

// Permutation-free split of kept DOFs into the out-of-plane (v, eta) and
// in-plane (w, u) groups, assuming joint_frame = (e1, e2, normal).
std::pair<std::vector<int>, std::vector<int>> planar_dof_split(const FemSystem& sys);

}  // namespace framespec
