#include "scatterlab/config.hpp"

#include <algorithm>
#include <cmath>

#include "scatter/error.hpp"
#include "scatter/units.hpp"

namespace scatterlab {

namespace sim = scatter::sim;
namespace topo = scatter::topology;

namespace {

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json& member(const json& obj, std::string_view key, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(child(path, key), "missing");
  return *it;
}

// Merge patches delete keys set to null, so nullable keys may be absent.
const json& nullable(const json& obj, std::string_view key) {
  static const json null_value;
  const auto it = obj.find(key);
  return it == obj.end() ? null_value : *it;
}

void only_keys(const json& obj, std::initializer_list<std::string_view> keys, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw ConfigError(child(path, k), "unknown key");
  }
}

std::string parse_string(const json& value, const std::string& path) {
  if (!value.is_string()) throw ConfigError(path, "expected a string");
  return value.get<std::string>();
}

bool parse_bool(const json& value, const std::string& path) {
  if (!value.is_boolean()) throw ConfigError(path, "expected true or false");
  return value.get<bool>();
}

std::size_t parse_positive(const json& value, const std::string& path) {
  const std::uint64_t n = parse_count(value, path);
  if (n < 1) throw ConfigError(path, "must be >= 1");
  return static_cast<std::size_t>(n);
}

using QuantityParser = double (*)(const json&, const std::string&);

// Either a list of quantities or {"from", "to", "step"}.
std::vector<double> parse_grid(const json& value, const std::string& path, QuantityParser parse) {
  std::vector<double> out;
  if (value.is_array()) {
    for (std::size_t i = 0; i < value.size(); ++i) out.push_back(parse(value[i], child(path, i)));
  } else if (value.is_object()) {
    only_keys(value, {"from", "to", "step"}, path);
    const double from = parse(member(value, "from", path), child(path, "from"));
    const double to = parse(member(value, "to", path), child(path, "to"));
    // The step is a difference, so it shares the unit of the endpoints.
    const json& step_value = member(value, "step", path);
    const double step = parse == &parse_dbm ? parse_db(step_value, child(path, "step"))
                                            : parse(step_value, child(path, "step"));
    if (!(step > 0.0)) throw ConfigError(child(path, "step"), "must be > 0");
    if (to < from) throw ConfigError(child(path, "to"), "must be >= from");
    const double count = std::floor((to - from) / step + 1e-9) + 1.0;
    if (count > 1e6) throw ConfigError(path, "more than 10^6 grid points");
    for (std::size_t k = 0; k < static_cast<std::size_t>(count); ++k) {
      // Snap to 1e-9 so decimal steps print cleanly.
      out.push_back(std::round((from + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
  } else {
    throw ConfigError(path, "expected a list or {\"from\", \"to\", \"step\"}");
  }
  if (out.empty()) throw ConfigError(path, "grid is empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw ConfigError(child(path, i), "grid must be strictly increasing");
  }
  return out;
}

scatter::Point parse_point(const json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) throw ConfigError(path, "expected [\"x m\", \"y m\"]");
  return {parse_meters(value[0], child(path, 0)), parse_meters(value[1], child(path, 1))};
}

sim::FadingLaw parse_law(const json& value, const std::string& path) {
  const std::string law = parse_string(member(value, "law", path), child(path, "law"));
  auto num = [&](std::string_view key) { return parse_number(member(value, key, path), child(path, key)); };
  sim::FadingLaw out;
  if (law == "rayleigh") {
    only_keys(value, {"law"}, path);
    out = sim::FadingLaw::rayleigh();
  } else if (law == "none") {
    only_keys(value, {"law"}, path);
    out = sim::FadingLaw::none();
  } else if (law == "nakagami") {
    only_keys(value, {"law", "m"}, path);
    out = sim::FadingLaw::fixed(num("m"));
  } else if (law == "rician") {
    only_keys(value, {"law", "kappa"}, path);
    const double kappa = num("kappa");
    if (!(kappa >= 0.0)) throw ConfigError(child(path, "kappa"), "must be >= 0");
    out = sim::FadingLaw::rician(kappa);
  } else if (law == "nakagami_uniform") {
    only_keys(value, {"law", "lo", "hi"}, path);
    out = sim::FadingLaw::nakagami_uniform(num("lo"), num("hi"));
  } else if (law == "rician_uniform") {
    only_keys(value, {"law", "lo", "hi"}, path);
    out = sim::FadingLaw::rician_uniform(num("lo"), num("hi"));
  } else {
    throw ConfigError(child(path, "law"),
                      "unknown law \"" + law + "\"; use rayleigh, nakagami, rician, nakagami_uniform, rician_uniform, none");
  }
  try {
    out.validate();
  } catch (const scatter::DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return out;
}

std::vector<FadingCase> parse_fading(const json& value, const std::string& path) {
  if (!value.is_array() || value.empty()) throw ConfigError(path, "expected a non-empty list of fading cases");
  std::vector<FadingCase> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    const std::string p = child(path, i);
    only_keys(value[i], {"name", "ce_tag", "tag_reader"}, p);
    FadingCase c;
    c.name = parse_string(member(value[i], "name", p), child(p, "name"));
    if (c.name.empty() || c.name.find_first_of(",\"\n") != std::string::npos) {
      throw ConfigError(child(p, "name"), "must be non-empty without commas, quotes or newlines");
    }
    for (const auto& prev : out) {
      if (prev.name == c.name) throw ConfigError(child(p, "name"), "duplicate case name");
    }
    c.ce_tag = parse_law(member(value[i], "ce_tag", p), child(p, "ce_tag"));
    c.tag_reader = parse_law(member(value[i], "tag_reader", p), child(p, "tag_reader"));
    out.push_back(std::move(c));
  }
  return out;
}

sim::SystemConstants parse_system(const json& v, const std::string& path) {
  sim::SystemConstants c;
  c.noise_density = parse_watts_per_hz(member(v, "noise_density", path), child(path, "noise_density"));
  const double carrier = parse_hz(member(v, "carrier", path), child(path, "carrier"));
  if (!(carrier > 0.0)) throw ConfigError(child(path, "carrier"), "must be > 0");
  c.wavelength = scatter::units::wavelength(carrier);
  c.bit_duration = parse_seconds(member(v, "bit_duration", path), child(path, "bit_duration"));
  c.tag.reflection_gap = parse_number(member(v, "reflection_gap", path), child(path, "reflection_gap"));
  c.tag.scattering_efficiency =
      parse_number(member(v, "scattering_efficiency", path), child(path, "scattering_efficiency"));
  c.base_freq = parse_hz(member(v, "base_freq", path), child(path, "base_freq"));
  c.subcarrier_spacing = parse_hz(member(v, "subcarrier_spacing", path), child(path, "subcarrier_spacing"));
  const json& eps = nullable(v, "epsilon");
  if (!eps.is_null()) c.epsilon = parse_number(eps, child(path, "epsilon"));
  c.reference_distance = parse_meters(member(v, "reference_distance", path), child(path, "reference_distance"));
  try {
    c.validate();
  } catch (const scatter::DomainError& e) {
    throw ConfigError(path, e.what());
  }
  return c;
}

scatter::detect::Detector parse_detector(const json& value, const std::string& path) {
  const std::string s = parse_string(value, path);
  if (s == "coherent") return scatter::detect::Detector::coherent;
  if (s == "noncoherent") return scatter::detect::Detector::noncoherent;
  if (s == "square_law") return scatter::detect::Detector::square_law;
  throw ConfigError(path, "unknown detector \"" + s + "\"; use coherent, noncoherent, square_law");
}

sim::PlacementMetric parse_metric(const json& value, const std::string& path) {
  const std::string s = parse_string(value, path);
  for (auto m : {sim::PlacementMetric::ber, sim::PlacementMetric::energy_average, sim::PlacementMetric::energy_maximum,
                 sim::PlacementMetric::outage_bound}) {
    if (s == sim::to_string(m)) return m;
  }
  throw ConfigError(path, "unknown metric \"" + s + "\"; use ber, energy_average, energy_maximum, outage_bound");
}

void check_keys_rec(const json& doc, const json& defaults, const std::string& path, const std::string& source) {
  for (const auto& [key, value] : doc.items()) {
    const auto it = defaults.find(key);
    if (it == defaults.end()) throw ConfigError(source + ":" + child(path, key), "unknown key");
    if (it->is_object() && value.is_object()) check_keys_rec(value, *it, child(path, key), source);
  }
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::ber: return "ber";
    case Command::outage: return "outage";
    case Command::energy: return "energy";
    case Command::diversity: return "diversity";
    case Command::place: return "place";
  }
  return "?";
}

std::optional<Command> command_from_string(std::string_view name) {
  for (auto c : {Command::ber, Command::outage, Command::energy, Command::diversity, Command::place}) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

json default_document() {
  return json::parse(R"({
    "architectures": ["monostatic", "multistatic"],
    "seed": 1,
    "trials": 10000,
    "threads": 1,
    "block_size": 2048,
    "analytic_only": false,
    "tags": 1,
    "slots": 1,
    "tx_power": "28 dBm",
    "grid": null,
    "layout": null,
    "exponent": {"lo": 2, "hi": 2},
    "sub_reference": "reject",
    "fading": [{"name": "rayleigh", "ce_tag": {"law": "rayleigh"}, "tag_reader": {"law": "rayleigh"}}],
    "system": {
      "noise_density": "-169 dBm/Hz",
      "carrier": "868 MHz",
      "bit_duration": "1 ms",
      "reflection_gap": 2,
      "scattering_efficiency": 0.1,
      "base_freq": "0.1 MHz",
      "subcarrier_spacing": "0.01 MHz",
      "epsilon": null,
      "reference_distance": "1 m"
    },
    "ber": {
      "sweep_kind": "snr",
      "sweep": {"from": "0 dB", "to": "30 dB", "step": "2 dB"},
      "detectors": ["coherent", "noncoherent"]
    },
    "outage": {
      "theta": {"from": "-20 dB", "to": "20 dB", "step": "1 dB"},
      "topologies": 20,
      "assignments": 10,
      "fading_draws": 100
    },
    "energy": {
      "theta_h": {"from": "-40 dBm", "to": "0 dBm", "step": "1 dB"},
      "topologies": 2000,
      "mc_draws": 0
    },
    "diversity": {
      "window": ["50 dB", "70 dB"],
      "points": 21
    },
    "place": {
      "metric": "energy_average",
      "t_max": 10,
      "topologies": 50,
      "theta": "0 dB",
      "theta_h": "-22 dBm"
    }
  })");
}

json parse_document(const std::string& text, const std::string& source) {
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigError(source + ":1:1", "top level must be a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    const auto pos = what.find("parse error");
    if (pos != std::string::npos) what = what.substr(pos);
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column), what);
  }
}

void check_keys(const json& doc, const std::string& source) { check_keys_rec(doc, default_document(), "", source); }

json merge(const json& base, const json& patch) {
  json out = base;
  out.merge_patch(patch);
  return out;
}

sim::ScenarioSpec RunConfig::spec_for(const FadingCase& c) const {
  sim::ScenarioSpec s = spec;
  s.fading_ce_tag = c.ce_tag;
  s.fading_tag_reader = c.tag_reader;
  return s;
}

RunConfig resolve(Command command, const json& doc) {
  const std::string root;
  RunConfig rc;
  rc.command = command;
  rc.document = doc;
  sim::ScenarioSpec& spec = rc.spec;

  const json& archs = member(doc, "architectures", root);
  if (!archs.is_array() || archs.empty()) throw ConfigError("/architectures", "expected a non-empty list");
  spec.architectures.clear();
  for (std::size_t i = 0; i < archs.size(); ++i) {
    const std::string p = child("/architectures", i);
    const std::string s = parse_string(archs[i], p);
    scatter::Architecture a;
    if (s == "monostatic") a = scatter::Architecture::monostatic;
    else if (s == "multistatic") a = scatter::Architecture::multistatic;
    else throw ConfigError(p, "unknown architecture \"" + s + "\"; use monostatic or multistatic");
    if (std::find(spec.architectures.begin(), spec.architectures.end(), a) != spec.architectures.end()) {
      throw ConfigError(p, "duplicate architecture");
    }
    spec.architectures.push_back(a);
  }

  spec.seed = parse_count(member(doc, "seed", root), "/seed");
  spec.trials = parse_positive(member(doc, "trials", root), "/trials");
  const std::size_t threads = parse_positive(member(doc, "threads", root), "/threads");
  if (threads > 1024) throw ConfigError("/threads", "must be <= 1024");
  spec.threads = static_cast<unsigned>(threads);
  spec.block_size = parse_positive(member(doc, "block_size", root), "/block_size");
  rc.analytic_only = parse_bool(member(doc, "analytic_only", root), "/analytic_only");
  spec.n_tags = parse_positive(member(doc, "tags", root), "/tags");
  spec.slots = parse_positive(member(doc, "slots", root), "/slots");
  spec.tx_power_dbm = parse_dbm(member(doc, "tx_power", root), "/tx_power");

  const json& grid = nullable(doc, "grid");
  if (!grid.is_null()) {
    only_keys(grid, {"side", "resolution"}, "/grid");
    try {
      spec.grid = topo::Grid(parse_meters(member(grid, "side", "/grid"), "/grid/side"),
                             parse_meters(member(grid, "resolution", "/grid"), "/grid/resolution"));
    } catch (const scatter::DomainError& e) {
      throw ConfigError("/grid", e.what());
    }
  }
  const json& layout = nullable(doc, "layout");
  if (!layout.is_null()) {
    only_keys(layout, {"reader", "emitters"}, "/layout");
    topo::Layout l;
    l.reader = parse_point(member(layout, "reader", "/layout"), "/layout/reader");
    const json& em = member(layout, "emitters", "/layout");
    if (!em.is_array()) throw ConfigError("/layout/emitters", "expected a list of points");
    for (std::size_t i = 0; i < em.size(); ++i) l.emitters.push_back(parse_point(em[i], child("/layout/emitters", i)));
    spec.layout = l;
  }
  const json& exponent = member(doc, "exponent", root);
  only_keys(exponent, {"lo", "hi"}, "/exponent");
  spec.exponent = {parse_number(member(exponent, "lo", "/exponent"), "/exponent/lo"),
                   parse_number(member(exponent, "hi", "/exponent"), "/exponent/hi")};
  const std::string policy = parse_string(member(doc, "sub_reference", root), "/sub_reference");
  if (policy == "reject") spec.sub_reference = scatter::channel::SubReferencePolicy::reject;
  else if (policy == "clamp") spec.sub_reference = scatter::channel::SubReferencePolicy::clamp;
  else if (policy == "extrapolate") spec.sub_reference = scatter::channel::SubReferencePolicy::extrapolate;
  else throw ConfigError("/sub_reference", "use reject, clamp or extrapolate");

  rc.fading = parse_fading(member(doc, "fading", root), "/fading");
  spec.constants = parse_system(member(doc, "system", root), "/system");

  switch (command) {
    case Command::ber: {
      const json& b = member(doc, "ber", root);
      const std::string kind = parse_string(member(b, "sweep_kind", "/ber"), "/ber/sweep_kind");
      if (kind == "snr") {
        spec.sweep_kind = sim::SweepKind::snr_db;
        spec.sweep = parse_grid(member(b, "sweep", "/ber"), "/ber/sweep", &parse_db);
      } else if (kind == "tx_power") {
        spec.sweep_kind = sim::SweepKind::tx_power_dbm;
        spec.sweep = parse_grid(member(b, "sweep", "/ber"), "/ber/sweep", &parse_dbm);
      } else {
        throw ConfigError("/ber/sweep_kind", "use snr or tx_power");
      }
      const json& dets = member(b, "detectors", "/ber");
      if (!dets.is_array() || dets.empty()) throw ConfigError("/ber/detectors", "expected a non-empty list");
      rc.ber.detectors.clear();
      for (std::size_t i = 0; i < dets.size(); ++i) {
        rc.ber.detectors.push_back(parse_detector(dets[i], child("/ber/detectors", i)));
      }
      rc.ber.analytic_only = rc.analytic_only;
      break;
    }
    case Command::outage: {
      const json& o = member(doc, "outage", root);
      rc.outage.theta_db = parse_grid(member(o, "theta", "/outage"), "/outage/theta", &parse_db);
      rc.outage.topologies = parse_positive(member(o, "topologies", "/outage"), "/outage/topologies");
      rc.outage.assignments = parse_positive(member(o, "assignments", "/outage"), "/outage/assignments");
      rc.outage.fading_draws = parse_positive(member(o, "fading_draws", "/outage"), "/outage/fading_draws");
      rc.outage.analytic_only = rc.analytic_only;
      if (!spec.grid) throw ConfigError("/grid", "the outage command needs a grid");
      break;
    }
    case Command::energy: {
      const json& e = member(doc, "energy", root);
      rc.energy.theta_h_dbm = parse_grid(member(e, "theta_h", "/energy"), "/energy/theta_h", &parse_dbm);
      rc.energy.topologies = parse_positive(member(e, "topologies", "/energy"), "/energy/topologies");
      rc.energy.mc_draws = parse_count(member(e, "mc_draws", "/energy"), "/energy/mc_draws");
      if (rc.analytic_only) rc.energy.mc_draws = 0;
      if (!spec.grid) throw ConfigError("/grid", "the energy command needs a grid");
      break;
    }
    case Command::diversity: {
      const json& d = member(doc, "diversity", root);
      const json& w = member(d, "window", "/diversity");
      if (!w.is_array() || w.size() != 2) throw ConfigError("/diversity/window", "expected [\"lo dB\", \"hi dB\"]");
      rc.diversity.lo_db = parse_db(w[0], "/diversity/window/0");
      rc.diversity.hi_db = parse_db(w[1], "/diversity/window/1");
      if (!(rc.diversity.hi_db > rc.diversity.lo_db)) throw ConfigError("/diversity/window", "needs hi > lo");
      const std::size_t points = parse_positive(member(d, "points", "/diversity"), "/diversity/points");
      if (points < 2 || points > 100000) throw ConfigError("/diversity/points", "must lie in [2, 100000]");
      rc.diversity.points = static_cast<int>(points);
      for (std::size_t i = 0; i < rc.fading.size(); ++i) {
        if (!rc.fading[i].ce_tag.deterministic() || !rc.fading[i].tag_reader.deterministic() ||
            rc.fading[i].ce_tag.kind == sim::FadingLaw::Kind::no_fading ||
            rc.fading[i].tag_reader.kind == sim::FadingLaw::Kind::no_fading) {
          throw ConfigError(child("/fading", i), "diversity needs fixed, faded laws on both links");
        }
      }
      break;
    }
    case Command::place: {
      const json& p = member(doc, "place", root);
      rc.place.metric = parse_metric(member(p, "metric", "/place"), "/place/metric");
      rc.place.t_max = parse_positive(member(p, "t_max", "/place"), "/place/t_max");
      rc.place.topologies = parse_positive(member(p, "topologies", "/place"), "/place/topologies");
      rc.place.theta_db = parse_db(member(p, "theta", "/place"), "/place/theta");
      rc.place.theta_h_dbm = parse_dbm(member(p, "theta_h", "/place"), "/place/theta_h");
      if (!spec.grid) throw ConfigError("/grid", "the place command needs a grid");
      if (rc.fading.size() != 1) throw ConfigError("/fading", "the place command takes exactly one fading case");
      if (spec.layout && !spec.layout->emitters.empty()) {
        throw ConfigError("/layout/emitters", "the place command chooses the emitters; give only the reader");
      }
      break;
    }
  }

  for (std::size_t i = 0; i < rc.fading.size(); ++i) {
    try {
      rc.spec_for(rc.fading[i]).validate();
    } catch (const scatter::DomainError& e) {
      throw ConfigError("/", std::string(e.what()) + " (fading case " + rc.fading[i].name + ")");
    }
  }
  return rc;
}

}  // namespace scatterlab
