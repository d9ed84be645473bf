#pragma once

// Serializes an ordered_json tree with the library's fixed number format.

#include <string>

#include <json.hpp>

namespace ptwell::detail {

std::string dump_json(const nlohmann::ordered_json& value);

}  // namespace ptwell::detail
