#pragma once

#include "framespec/geometry.hpp"

#include <string>

namespace framespec {

inline constexpr int kSchemaVersion = 1;

// Parse a frame description. Malformed JSON and schema problems (unknown or
// missing keys, wrong types) raise ParseError with line/column; geometric
// problems such as unknown vertex ids raise DomainError.
Frame frame_from_json(const std::string& text);
std::string frame_to_json(const Frame& frame, int indent = 2);
Frame load_frame(const std::string& path);
void save_frame(const Frame& frame, const std::string& path);

JointKind joint_from_name(const std::string& kind, double alpha = 0.0, double beta = 0.0);

}  // namespace framespec
