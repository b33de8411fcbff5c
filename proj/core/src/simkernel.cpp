#include "scatter/simkernel.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "scatter/error.hpp"
#include "scatter/units.hpp"

namespace scatter::sim {

EstimateWithCI EstimateWithCI::from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) detail::fail_domain("EstimateWithCI", "zero trials");
  const double p = static_cast<double>(successes) / static_cast<double>(trials);
  return {p, 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, seed};
}

EstimateWithCI EstimateWithCI::from_replicates(const std::vector<double>& values, std::uint64_t trials,
                                               std::uint64_t seed) {
  if (values.empty()) detail::fail_domain("EstimateWithCI", "no replicates");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double half = values.size() > 1 ? 1.96 * std::sqrt(ss / (n - 1.0) / n) : 0.0;
  return {mean, half, trials, seed};
}

FadingLaw FadingLaw::rician(double kappa) { return fixed(channel::rician_to_m(kappa)); }

void FadingLaw::validate() const {
  switch (kind) {
    case Kind::no_fading: return;
    case Kind::nakagami:
    case Kind::nakagami_uniform:
      if (!(lo >= 0.5) || !(hi >= lo) || !std::isfinite(hi)) {
        detail::fail_domain("FadingLaw", "Nakagami m range must satisfy 0.5 <= lo <= hi");
      }
      return;
    case Kind::rician_uniform:
      if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
        detail::fail_domain("FadingLaw", "Rician K range must satisfy 0 <= lo <= hi");
      }
      return;
  }
}

channel::NakagamiM FadingLaw::value() const {
  if (!deterministic()) detail::fail_domain("FadingLaw", "law is random");
  switch (kind) {
    case Kind::no_fading: return channel::NakagamiM::no_fading();
    case Kind::rician_uniform: return channel::NakagamiM::from_rician(lo);
    default: return channel::NakagamiM(lo);
  }
}

channel::NakagamiM FadingLaw::sample(RandomStream& rng) const {
  switch (kind) {
    case Kind::no_fading: return channel::NakagamiM::no_fading();
    case Kind::nakagami: return channel::NakagamiM(lo);
    case Kind::nakagami_uniform: return channel::NakagamiM(rng.uniform(lo, hi));
    case Kind::rician_uniform: return channel::NakagamiM::from_rician(rng.uniform(lo, hi));
  }
  detail::fail_domain("FadingLaw", "unknown kind");
}

std::string FadingLaw::describe() const {
  std::ostringstream os;
  os.precision(6);
  switch (kind) {
    case Kind::no_fading: os << "none"; break;
    case Kind::nakagami:
      if (lo == 1.0) os << "rayleigh";
      else os << "nakagami(m=" << lo << ")";
      break;
    case Kind::nakagami_uniform: os << "nakagami(m~U[" << lo << "," << hi << "])"; break;
    case Kind::rician_uniform: os << "rician(K~U[" << lo << "," << hi << "])"; break;
  }
  return os.str();
}

SystemConstants::SystemConstants()
    : noise_density(units::dbm_to_watts(-169.0)), wavelength(units::wavelength(868e6)) {}

void SystemConstants::validate() const {
  if (!(noise_density > 0.0)) detail::fail_domain("SystemConstants", "noise density must be > 0");
  if (!(bit_duration > 0.0)) detail::fail_domain("SystemConstants", "bit duration must be > 0");
  if (!(wavelength > 0.0)) detail::fail_domain("SystemConstants", "wavelength must be > 0");
  if (!(subcarrier_spacing > 0.0)) detail::fail_domain("SystemConstants", "subcarrier spacing must be > 0");
  if (!(reference_distance > 0.0)) detail::fail_domain("SystemConstants", "reference distance must be > 0");
}

signal::SystemConfig SystemConstants::system_config(double tx_power_w, std::size_t n_ces, std::size_t n_tags) const {
  signal::SystemConfig c;
  c.noise_density = noise_density;
  c.bit_duration = bit_duration;
  c.wavelength = wavelength;
  c.reader_power = tx_power_w;
  c.ce_powers.assign(n_ces, tx_power_w);
  c.tags.assign(n_tags, tag);
  c.validate();
  return c;
}

void ScenarioSpec::validate() const {
  if (architectures.empty()) detail::fail_domain("ScenarioSpec", "no architecture selected");
  if (n_tags < 1) detail::fail_domain("ScenarioSpec", "need at least one tag");
  if (slots < 1) detail::fail_domain("ScenarioSpec", "need at least one slot");
  if (trials < 1) detail::fail_domain("ScenarioSpec", "trials must be >= 1");
  if (block_size < 1) detail::fail_domain("ScenarioSpec", "block size must be >= 1");
  fading_ce_tag.validate();
  fading_tag_reader.validate();
  exponent.validate("ScenarioSpec exponent law");
  constants.validate();
  if (fixed_topology) fixed_topology->validate();
  if (layout && grid) {
    layout->validate(*grid);
    if (!layout->emitters.empty() && layout->emitters.size() != slots) {
      detail::fail_domain("ScenarioSpec", "layout must hold one emitter per slot");
    }
  }
}

const topology::Grid& ScenarioSpec::require_grid() const {
  if (fixed_topology) return fixed_topology->grid;
  if (!grid) detail::fail_domain("ScenarioSpec", "this run needs a grid");
  return *grid;
}

topology::Layout ScenarioSpec::layout_for(Architecture arch) const {
  const topology::Grid& g = require_grid();
  if (layout) {
    if (arch == Architecture::monostatic) return {layout->reader, {}};
    if (layout->emitters.size() != slots) detail::fail_domain("ScenarioSpec", "layout must hold one emitter per slot");
    return *layout;
  }
  return arch == Architecture::monostatic ? topology::Layout::canonical_monostatic(g)
                                          : topology::Layout::canonical_multistatic(g, slots);
}

LinkRealization realize_links(const ScenarioSpec& spec, Architecture arch, double tx_power_w, RandomStream& rng) {
  LinkRealization r;
  if (spec.fixed_topology) {
    r.topology = *spec.fixed_topology;
    if (arch == Architecture::monostatic) {
      r.topology.emitters.clear();
      r.topology.exponent_ce_tag.clear();
    }
    if (r.topology.tags.size() != spec.n_tags) detail::fail_domain("realize_links", "fixed topology tag count differs from n_tags");
    if (arch == Architecture::multistatic && r.topology.emitters.size() != spec.slots) {
      detail::fail_domain("realize_links", "fixed topology must hold one emitter per slot");
    }
  } else {
    topology::SamplingOptions sampling{spec.exponent, spec.sub_reference, spec.constants.reference_distance};
    r.topology = topology::sample_topology(spec.require_grid(), spec.n_tags, spec.layout_for(arch), rng, sampling);
  }
  const std::size_t n_tags = spec.n_tags;
  const std::size_t n_ces = r.topology.emitters.size();
  r.m_tag_reader.reserve(n_tags);
  for (std::size_t n = 0; n < n_tags; ++n) r.m_tag_reader.push_back(spec.fading_tag_reader.sample(rng));
  for (std::size_t l = 0; l < n_ces; ++l) {
    std::vector<channel::NakagamiM> row;
    row.reserve(n_tags);
    for (std::size_t n = 0; n < n_tags; ++n) row.push_back(spec.fading_ce_tag.sample(rng));
    r.m_ce_tag.push_back(std::move(row));
  }
  r.gains = topology::link_gains(r.topology, spec.constants.wavelength, spec.sub_reference,
                                 spec.constants.reference_distance);
  const signal::SystemConfig config = spec.constants.system_config(tx_power_w, n_ces, n_tags);
  if (arch == Architecture::monostatic) {
    std::vector<double> row(n_tags);
    for (std::size_t n = 0; n < n_tags; ++n) {
      row[n] = signal::energy_per_bit_monostatic(config, r.gains.tag_reader[n], r.m_tag_reader[n], n);
    }
    r.energy.push_back(std::move(row));
  } else {
    for (std::size_t l = 0; l < n_ces; ++l) {
      std::vector<double> row(n_tags);
      for (std::size_t n = 0; n < n_tags; ++n) {
        row[n] = signal::energy_per_bit_multistatic(config, r.gains.ce_tag[l][n], r.gains.tag_reader[n], l, n);
      }
      r.energy.push_back(std::move(row));
    }
  }
  return r;
}

std::string_view to_string(AnalyticKind k) {
  switch (k) {
    case AnalyticKind::exact: return "exact";
    case AnalyticKind::upper_bound: return "upper_bound";
    case AnalyticKind::none: return "none";
  }
  return "none";
}

std::string_view to_string(PlacementMetric m) {
  switch (m) {
    case PlacementMetric::ber: return "ber";
    case PlacementMetric::energy_average: return "energy_average";
    case PlacementMetric::energy_maximum: return "energy_maximum";
    case PlacementMetric::outage_bound: return "outage_bound";
  }
  return "unknown";
}

std::optional<double> level_crossing(const std::vector<double>& x, const std::vector<double>& y, double level) {
  if (x.size() != y.size()) detail::fail_domain("level_crossing", "x and y differ in length");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double y0 = y[i] - level;
    const double y1 = y[i + 1] - level;
    if (y0 == 0.0) return x[i];
    if ((y0 < 0.0) != (y1 < 0.0)) return x[i] + (x[i + 1] - x[i]) * y0 / (y0 - y1);
  }
  if (!y.empty() && y.back() == level) return x.back();
  return std::nullopt;
}

}  // namespace scatter::sim
