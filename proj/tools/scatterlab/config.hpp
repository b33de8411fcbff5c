#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scatter/simkernel.hpp"
#include "scatterlab/quantity.hpp"

namespace scatterlab {

enum class Command { ber, outage, energy, diversity, place };

std::string_view to_string(Command c);
std::optional<Command> command_from_string(std::string_view name);

struct FadingCase {
  std::string name;
  scatter::sim::FadingLaw ce_tag;
  scatter::sim::FadingLaw tag_reader;
};

struct DiversityOptions {
  double lo_db = 50.0;
  double hi_db = 70.0;
  int points = 21;
};

// Typed view of a resolved configuration document.
struct RunConfig {
  Command command = Command::ber;
  json document;  // the merged document this view was read from
  scatter::sim::ScenarioSpec spec;  // fading laws are taken from each case
  std::vector<FadingCase> fading;
  bool analytic_only = false;
  scatter::sim::BerOptions ber;
  scatter::sim::InfoOutageOptions outage;
  scatter::sim::EnergyOutageOptions energy;
  DiversityOptions diversity;
  scatter::sim::PlacementOptions place;

  scatter::sim::ScenarioSpec spec_for(const FadingCase& c) const;
};

// Every accepted key with its default value.
json default_document();

// Parse JSON text; syntax errors carry "<source>:<line>:<column>".
json parse_document(const std::string& text, const std::string& source);

// Rejects keys that the default document does not define.
void check_keys(const json& doc, const std::string& source);

// defaults <- preset <- user document (JSON merge patch at each step).
json merge(const json& base, const json& patch);

RunConfig resolve(Command command, const json& document);

}  // namespace scatterlab
