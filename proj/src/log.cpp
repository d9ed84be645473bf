#include "log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace ptwell::detail {

LogLevel log_threshold() {
  static const LogLevel threshold = [] {
    const char* env = std::getenv("PTWELL_LOG");
    const std::string_view value = env ? env : "error";
    if (value == "debug") {
      return LogLevel::debug;
    }
    if (value == "info") {
      return LogLevel::info;
    }
    return LogLevel::error;
  }();
  return threshold;
}

void log(LogLevel level, const std::string& message) {
  if (static_cast<int>(level) > static_cast<int>(log_threshold())) {
    return;
  }
  static std::mutex mutex;
  static constexpr const char* names[] = {"error", "info", "debug"};
  const std::lock_guard lock(mutex);
  std::cerr << "[ptwell " << names[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace ptwell::detail
