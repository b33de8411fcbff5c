#pragma once

#include <string>
#include <vector>

#include "scatterlab/config.hpp"

namespace scatterlab {

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  std::vector<OutputFile> files;
  json summary = json::object();  // recorded in the manifest
  std::vector<std::string> warnings;
};

// 10 significant digits in scientific notation; empty for NaN.
std::string format_real(double value);

CommandResult run_command(const RunConfig& config);

}  // namespace scatterlab
