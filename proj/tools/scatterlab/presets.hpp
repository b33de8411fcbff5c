#pragma once

#include <string_view>
#include <vector>

#include "scatterlab/config.hpp"

namespace scatterlab {

struct Preset {
  std::string_view name;
  Command command;
  std::string_view summary;
  json patch;  // merged over the default document
};

const std::vector<Preset>& presets();
// Throws ConfigError for unknown names.
const Preset& find_preset(std::string_view name);

}  // namespace scatterlab
