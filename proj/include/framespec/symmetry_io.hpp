#pragma once

#include "framespec/symmetry.hpp"

#include <string>

namespace framespec {

struct SymmetryDescription {
  std::vector<GroupElement> generators;
  SymmetryOptions options;
};

// {"generators":[{"name":"R","matrix":[[..],[..],[..]],"edge_perm":{"e1":"e2",...}}],
//  "center":[x,y,z], "tol":1e-10}; edges missing from edge_perm map to themselves.
SymmetryDescription symmetry_from_json(const Frame& frame, const std::string& text);
std::string symmetry_to_json(const Frame& frame, const SymmetryDescription& d, int indent = 2);
SymmetryDescription load_symmetry(const Frame& frame, const std::string& path);

}  // namespace framespec
