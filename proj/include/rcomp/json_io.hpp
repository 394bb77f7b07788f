#pragma once

#include <json.hpp>

#include <string>

namespace rcomp {

/// Canonical text for reports: keys sorted (nlohmann::json uses std::map),
/// two-space indent, numbers as %.17g, non-finite numbers as null.
std::string dump_json(const nlohmann::json& value);

}  // namespace rcomp
