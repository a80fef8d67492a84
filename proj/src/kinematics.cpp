#include "framespec/kinematics.hpp"

#include "framespec/errors.hpp"
#include "framespec/log.hpp"

#include <algorithm>
#include <cmath>

namespace framespec {

Vec3 rotation_vector(const FieldPoint& fp, const Basis& b) {
  return fp.eta() * b.i - fp.dv() * b.j + fp.dw() * b.k;
}

Vec3 displacement_vector(const FieldPoint& fp, const Basis& b) {
  return fp.u() * b.i + fp.w() * b.j + fp.v() * b.k;
}

Mat3 skew(const Vec3& a) {
  Mat3 k;
  k << 0, -a.z(), a.y(),
       a.z(), 0, -a.x(),
       -a.y(), a.x(), 0;
  return k;
}

Mat3 rodrigues(const Vec3& axis, double angle) {
  double n = axis.norm();
  if (!(n > 0.0)) throw DomainError("rodrigues: zero axis");
  Vec3 a = axis;
  if (std::abs(n - 1.0) > 1e-8) {
    log::warn("rodrigues: axis not unit (norm " + std::to_string(n) + "), normalizing");
  }
  a /= n;
  Mat3 k = skew(a);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

double TangentPlaneResiduals::max_abs() const {
  double m = 0.0;
  for (double r : first) m = std::max(m, std::abs(r));
  for (double r : second) m = std::max(m, std::abs(r));
  return m;
}

TangentPlaneResiduals tangent_plane_residuals(const std::vector<PlanarEndTrace>& ends) {
  TangentPlaneResiduals out;
  if (ends.size() <= 2) {
    out.vacuous = true;
    return out;
  }
  const auto& e1 = ends[0];
  const auto& e2 = ends[1];
  const double c12 = e1.basis.j.dot(e2.basis.i);
  for (const auto& e : ends) {
    out.first.push_back(e2.basis.j.dot(e.basis.i) * e1.dv + e.basis.j.dot(e1.basis.i) * e2.dv +
                        c12 * e.dv);
    out.second.push_back(e2.basis.j.dot(e.basis.j) * e1.dv - e.basis.j.dot(e1.basis.j) * e2.dv +
                         c12 * e.eta);
  }
  return out;
}

std::vector<double> rotation_continuity_residuals(const std::vector<PlanarEndTrace>& ends) {
  std::vector<double> out;
  if (ends.empty()) return out;
  auto rot = [](const PlanarEndTrace& e) { return Vec3(e.eta * e.basis.i - e.dv * e.basis.j); };
  const Vec3 ref = rot(ends[0]);
  for (const auto& e : ends) out.push_back((rot(e) - ref).norm());
  return out;
}

}  // namespace framespec
