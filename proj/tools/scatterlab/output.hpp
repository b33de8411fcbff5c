#pragma once

#include <filesystem>
#include <string>

namespace scatterlab {

std::string sha256_hex(const std::string& data);

// Write to a sibling temporary file, then rename over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace scatterlab
