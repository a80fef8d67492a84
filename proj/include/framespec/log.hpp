#pragma once

#include <string>

namespace framespec::log {

// Verbosity comes from FRAMESPEC_LOG (trace, debug, info, warn, error, off).
void init_from_env();
void set_level(const std::string& level);

void debug(const std::string& msg);
void info(const std::string& msg);
void warn(const std::string& msg);

}  // namespace framespec::log
