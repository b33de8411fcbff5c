#include "scatterlab/quantity.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

#include "scatter/units.hpp"

namespace scatterlab {

namespace {

struct Quantity {
  double number;
  std::string unit;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Quantity split(const json& value, const std::string& path, std::string_view expected) {
  if (!value.is_string()) {
    throw ConfigError(path, "expected a string with a unit, e.g. \"" + std::string(expected) + "\"");
  }
  const std::string text = value.get<std::string>();
  std::string_view s = trim(text);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double number = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), number);
  if (ec != std::errc() || !std::isfinite(number)) {
    throw ConfigError(path, "cannot read a number from \"" + text + "\"");
  }
  const std::string_view unit = trim(std::string_view(end, static_cast<std::size_t>(s.data() + s.size() - end)));
  if (unit.empty()) throw ConfigError(path, "missing unit in \"" + text + "\", e.g. \"" + std::string(expected) + "\"");
  return {number, std::string(unit)};
}

[[noreturn]] void bad_unit(const std::string& path, const Quantity& q, std::string_view allowed) {
  throw ConfigError(path, "unit \"" + q.unit + "\" not accepted here; use one of " + std::string(allowed));
}

double positive(double v, const std::string& path) {
  if (!(v > 0.0)) throw ConfigError(path, "must be > 0");
  return v;
}

}  // namespace

double parse_db(const json& value, const std::string& path) {
  const Quantity q = split(value, path, "10 dB");
  if (q.unit == "dB") return q.number;
  bad_unit(path, q, "dB");
}

double parse_dbm(const json& value, const std::string& path) {
  const Quantity q = split(value, path, "28 dBm");
  if (q.unit == "dBm") return q.number;
  if (q.unit == "dBW") return q.number + 30.0;
  if (q.unit == "W") return scatter::units::watts_to_dbm(positive(q.number, path));
  if (q.unit == "mW") return scatter::units::watts_to_dbm(positive(q.number, path) * 1e-3);
  if (q.unit == "uW") return scatter::units::watts_to_dbm(positive(q.number, path) * 1e-6);
  bad_unit(path, q, "dBm, dBW, W, mW, uW");
}

double parse_watts_per_hz(const json& value, const std::string& path) {
  const Quantity q = split(value, path, "-169 dBm/Hz");
  if (q.unit == "dBm/Hz") return scatter::units::dbm_to_watts(q.number);
  if (q.unit == "dBW/Hz") return scatter::units::dbm_to_watts(q.number + 30.0);
  if (q.unit == "W/Hz") return positive(q.number, path);
  bad_unit(path, q, "dBm/Hz, dBW/Hz, W/Hz");
}

double parse_hz(const json& value, const std::string& path) {
  const Quantity q = split(value, path, "868 MHz");
  if (q.unit == "Hz") return q.number;
  if (q.unit == "kHz") return q.number * 1e3;
  if (q.unit == "MHz") return q.number * 1e6;
  if (q.unit == "GHz") return q.number * 1e9;
  bad_unit(path, q, "Hz, kHz, MHz, GHz");
}

double parse_seconds(const json& value, const std::string& path) {
  const Quantity q = split(value, path, "1 ms");
  if (q.unit == "s") return q.number;
  if (q.unit == "ms") return q.number * 1e-3;
  if (q.unit == "us") return q.number * 1e-6;
  bad_unit(path, q, "s, ms, us");
}

double parse_meters(const json& value, const std::string& path) {
  const Quantity q = split(value, path, "40 m");
  if (q.unit == "m") return q.number;
  if (q.unit == "cm") return q.number * 1e-2;
  if (q.unit == "km") return q.number * 1e3;
  bad_unit(path, q, "m, cm, km");
}

double parse_number(const json& value, const std::string& path) {
  if (!value.is_number()) throw ConfigError(path, "expected a number");
  return value.get<double>();
}

std::uint64_t parse_count(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    throw ConfigError(path, "expected a non-negative integer");
  }
  return value.get<std::uint64_t>();
}

}  // namespace scatterlab
