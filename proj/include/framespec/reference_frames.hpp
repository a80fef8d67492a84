#pragma once

#include "framespec/geometry.hpp"
#include "framespec/symmetry.hpp"

#include <numbers>
#include <vector>

namespace framespec {

// Three beams meeting at a free joint at the origin, clamped at the far ends.
// Edge s has axis (cos t_s, sin t_s, 0) with t = (0, -theta1, theta2) and
// runs from the clamped end to the centre. All k axes equal E3.
Frame planar_star(double theta1 = std::numbers::pi, double theta2 = std::numbers::pi / 2,
                  const Material& mat = {});

// Mast from a free top vertex down to a free hub, plus three legs clamped at
// the ground, rotated by 2 pi / 3 about E3. Leg axis of the first leg is
// (cos alpha, 0, sin alpha).
Frame antenna_tower(double alpha = std::numbers::pi / 6, double leg = 1.0, double mast = 1.0,
                    const Material& mat = {});

// Rotation by 2 pi / 3 about E3 and the mirror y -> -y.
std::vector<GroupElement> antenna_generators();

// A single straight beam along E1 with the given end joints.
Frame single_beam(const JointKind& origin, const JointKind& terminus, double length = 1.0,
                  const Material& mat = {});

}  // namespace framespec
