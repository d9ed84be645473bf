#pragma once

// Minimal stderr logger; verbosity comes from PTWELL_LOG = error | info | debug.

#include <string>

namespace ptwell::detail {

enum class LogLevel { error = 0, info = 1, debug = 2 };

LogLevel log_threshold();
void log(LogLevel level, const std::string& message);

}  // namespace ptwell::detail
