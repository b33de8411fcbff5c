#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace scatterlab {

using nlohmann::json;

// Invalid configuration; `where` is a JSON pointer or "<file>:<line>".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Unit-suffixed quantities such as "28 dBm" or "868 MHz". Each parser
// returns the value in the unit named by the function.
double parse_db(const json& value, const std::string& path);
double parse_dbm(const json& value, const std::string& path);
double parse_watts_per_hz(const json& value, const std::string& path);
double parse_hz(const json& value, const std::string& path);
double parse_seconds(const json& value, const std::string& path);
double parse_meters(const json& value, const std::string& path);

// Plain JSON numbers.
double parse_number(const json& value, const std::string& path);
std::uint64_t parse_count(const json& value, const std::string& path);

}  // namespace scatterlab
