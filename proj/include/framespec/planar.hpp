#pragma once

#include "framespec/secular.hpp"

#include <optional>
#include <utility>

namespace framespec {

// Out-of-plane block H1 carries (v, eta); in-plane block H2 carries (w, u).
struct PlanarSplit {
  Vec3 normal = Vec3::UnitZ();
  Vec3 e1 = Vec3::UnitX();
  Vec3 e2 = Vec3::UnitY();
};

std::optional<PlanarSplit> detect_planar(const Frame& frame, double tol = 1e-10);

std::pair<SecularAssembly, SecularAssembly> reduced_assemblies(const Frame& frame, const PlanarSplit& split);
std::pair<SecularAssembly, SecularAssembly> reduced_assemblies(std::shared_ptr<const Frame> frame,
                                                               const PlanarSplit& split);

}  // namespace framespec
