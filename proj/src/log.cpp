#include "framespec/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <mutex>

namespace framespec::log {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> lg;
  std::call_once(once, [] {
    lg = spdlog::stderr_color_mt("framespec");
    lg->set_pattern("[%l] %v");
    lg->set_level(spdlog::level::warn);
    if (const char* env = std::getenv("FRAMESPEC_LOG")) {
      lg->set_level(spdlog::level::from_str(env));
    }
  });
  return lg;
}

}  // namespace

void init_from_env() { logger(); }

void set_level(const std::string& level) {
  logger()->set_level(spdlog::level::from_str(level));
}

void debug(const std::string& msg) { logger()->debug(msg); }
void info(const std::string& msg) { logger()->info(msg); }
void warn(const std::string& msg) { logger()->warn(msg); }

}  // namespace framespec::log
