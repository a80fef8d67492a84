#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace framespec {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kHalfPi = 1.57079632679489661923;

enum class JointType { FreeRigid, Clamped, Pinned, Guided, Spring };

// Joint at a vertex. alpha weighs displacement, beta weighs rotation;
// an angle of pi/2 means the corresponding quantity is fixed to zero.
struct JointKind {
  JointType type = JointType::FreeRigid;
  double alpha = 0.0;
  double beta = 0.0;

  static JointKind free_rigid() { return {}; }
  static JointKind clamped() { return {JointType::Clamped, kHalfPi, kHalfPi}; }
  static JointKind pinned() { return {JointType::Pinned, kHalfPi, 0.0}; }
  static JointKind guided() { return {JointType::Guided, 0.0, kHalfPi}; }
  static JointKind spring(double alpha, double beta) {
    return {JointType::Spring, alpha, beta};
  }

  double displacement_angle() const;
  double rotation_angle() const;
  bool displacement_fixed() const;
  bool rotation_fixed() const;
  // Only meaningful when the quantity is not fixed.
  double tan_alpha() const;
  double tan_beta() const;

  std::string name() const;
  bool operator==(const JointKind&) const = default;
};

struct Material {
  double a = 1.0;  // bending about j (drives v)
  double b = 1.0;  // bending about k (drives w)
  double c = 1.0;  // axial (drives u)
  double d = 1.0;  // torsion (drives eta)
  bool operator==(const Material&) const = default;
};

struct Vertex {
  std::string id;
  Vec3 pos = Vec3::Zero();
  JointKind joint;
};

struct Basis {
  Vec3 i, j, k;
};

struct Edge {
  std::string id;
  int origin = -1;
  int terminus = -1;
  double length = 0.0;
  Vec3 i = Vec3::UnitX();
  Vec3 j = Vec3::UnitY();
  Vec3 k = Vec3::UnitZ();
  Material mat;
  std::optional<Vec3> j_hint;

  Basis basis() const { return {i, j, k}; }
  Mat3 basis_matrix() const;  // columns i, j, k
};

// Edge input before bases and lengths are derived from vertex positions.
struct EdgeSpec {
  std::string id;
  std::string from;
  std::string to;
  std::optional<Vec3> j_hint;
  Material mat;
};

// Treated as immutable once built; share as const.
struct Frame {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  int vertex_index(const std::string& id) const;
  int edge_index(const std::string& id) const;
  int degree(int v) const;
  double diameter() const;
};

Frame make_frame(std::vector<Vertex> vertices, const std::vector<EdgeSpec>& edges);

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;
  std::vector<int> degree;
  int components = 0;
  bool connected() const { return components == 1; }
  bool ok() const { return violations.empty(); }
};

struct ValidationOptions {
  double tol = 1e-12;
};

ValidationReport validate_frame(const Frame& frame, const ValidationOptions& opt = {});

// +1 if v is the origin of e, -1 if the terminus, 0 otherwise.
int signed_incidence(const Frame& frame, int vertex, int edge);

Frame flip_edge(const Frame& frame, int edge);
Frame flip_edge(const Frame& frame, const std::string& edge_id);

Basis auto_basis(const Vec3& origin, const Vec3& terminus,
                 const std::optional<Vec3>& j_hint = std::nullopt);

// Insert a free degree-2 vertex at parameter t along edge e.
Frame split_edge(const Frame& frame, int edge, double t = 0.5);

}  // namespace framespec
