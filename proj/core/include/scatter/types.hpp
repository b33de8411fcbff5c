#pragma once

#include <cstdint>
#include <string_view>

namespace scatter {

enum class Architecture : std::uint8_t { monostatic, multistatic };

constexpr std::string_view to_string(Architecture a) {
  return a == Architecture::monostatic ? "monostatic" : "multistatic";
}

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

}  // namespace scatter
