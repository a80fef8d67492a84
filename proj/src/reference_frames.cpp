#include "framespec/reference_frames.hpp"

#include <cmath>

namespace framespec {

namespace {

Mat3 rot_z(double t) {
  Mat3 r;
  r << std::cos(t), -std::sin(t), 0, std::sin(t), std::cos(t), 0, 0, 0, 1;
  return r;
}

}  // namespace

Frame planar_star(double theta1, double theta2, const Material& mat) {
  const Vec3 dirs[3] = {Vec3::UnitX(), Vec3(std::cos(theta1), -std::sin(theta1), 0),
                        Vec3(std::cos(theta2), std::sin(theta2), 0)};
  std::vector<Vertex> vs{{"c", Vec3::Zero(), JointKind::free_rigid()}};
  std::vector<EdgeSpec> es;
  for (int s = 0; s < 3; ++s) {
    const std::string leaf = "v" + std::to_string(s + 1);
    vs.push_back({leaf, -dirs[s], JointKind::clamped()});
    es.push_back({"e" + std::to_string(s + 1), leaf, "c", Vec3::UnitZ().cross(dirs[s]), mat});
  }
  return make_frame(std::move(vs), es);
}

Frame antenna_tower(double alpha, double leg, double mast, const Material& mat) {
  const Mat3 R = rot_z(2 * std::numbers::pi / 3);
  const Vec3 i1(std::cos(alpha), 0, std::sin(alpha));
  std::vector<Vertex> vs{{"c", Vec3::Zero(), JointKind::free_rigid()},
                         {"top", mast * Vec3::UnitZ(), JointKind::free_rigid()}};
  std::vector<EdgeSpec> es{{"e0", "top", "c", Vec3::UnitY(), mat}};
  Mat3 Rs = Mat3::Identity();
  for (int s = 0; s < 3; ++s) {
    const std::string foot = "g" + std::to_string(s + 1);
    vs.push_back({foot, -leg * (Rs * i1), JointKind::clamped()});
    es.push_back({"e" + std::to_string(s + 1), foot, "c", Vec3(Rs * Vec3::UnitY()), mat});
    Rs = R * Rs;
  }
  return make_frame(std::move(vs), es);
}

std::vector<GroupElement> antenna_generators() {
  GroupElement r;
  r.T = rot_z(2 * std::numbers::pi / 3);
  r.edge_perm = {0, 2, 3, 1};
  r.name = "R";
  GroupElement f;
  f.T = Vec3(1, -1, 1).asDiagonal();
  f.edge_perm = {0, 1, 3, 2};
  f.name = "F";
  return {r, f};
}

Frame single_beam(const JointKind& origin, const JointKind& terminus, double length, const Material& mat) {
  std::vector<Vertex> vs{{"a", Vec3::Zero(), origin}, {"b", length * Vec3::UnitX(), terminus}};
  return make_frame(std::move(vs), {{"e", "a", "b", Vec3::UnitY(), mat}});
}

}  // namespace framespec
