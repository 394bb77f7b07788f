#pragma once

#include <string>

namespace rcomp {

/// Writes `content` to `path` through a temporary file and rename, creating
/// parent directories as needed.
void write_file_atomic(const std::string& path, const std::string& content);

/// "%.17g": round-trips every double.
std::string format_double(double x);

}  // namespace rcomp
