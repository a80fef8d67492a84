#pragma once

#include "framespec/geometry.hpp"

#include <array>
#include <string>
#include <vector>

namespace framespec {

// Field values at one point of one edge. Trace order:
// v, v', v'', v''', w, w', w'', w''', u, u', eta, eta'.
using Trace = Eigen::Matrix<double, 12, 1>;

struct FieldPoint {
  Trace trace = Trace::Zero();
  double v() const { return trace[0]; }
  double dv() const { return trace[1]; }
  double w() const { return trace[4]; }
  double dw() const { return trace[5]; }
  double u() const { return trace[8]; }
  double du() const { return trace[9]; }
  double eta() const { return trace[10]; }
  double deta() const { return trace[11]; }
};

// Linearized rotation eta i - v' j + w' k, global coordinates.
Vec3 rotation_vector(const FieldPoint& fp, const Basis& b);
// Displacement u i + w j + v k, global coordinates.
Vec3 displacement_vector(const FieldPoint& fp, const Basis& b);

Mat3 skew(const Vec3& axis);
Mat3 rodrigues(const Vec3& axis, double angle);

// One incident end of a planar vertex: the edge's basis and its trace there.
struct PlanarEndTrace {
  Basis basis;
  double v = 0, dv = 0, eta = 0;
};

struct TangentPlaneResiduals {
  bool vacuous = false;  // degree 2
  std::vector<double> first;   // one per incident end
  std::vector<double> second;  // one per incident end
  double max_abs() const;
};

// Residuals of the rotation-continuity equivalents at a planar vertex.
// Ends 1 and 2 (the first two entries) serve as the reference pair.
TangentPlaneResiduals tangent_plane_residuals(const std::vector<PlanarEndTrace>& ends);

// |(eta_e i_e - v'_e j_e) - (eta_1 i_1 - v'_1 j_1)| per end; the rotation
// continuity that the tangent-plane residuals encode.
std::vector<double> rotation_continuity_residuals(const std::vector<PlanarEndTrace>& ends);

}  // namespace framespec
