#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scatter/channel.hpp"
#include "scatter/detect.hpp"
#include "scatter/signal.hpp"
#include "scatter/topology.hpp"
#include "scatter/types.hpp"

namespace scatter::sim {

struct EstimateWithCI {
  double mean = 0.0;
  double half_width_95 = 0.0;
  std::uint64_t n_trials = 0;
  std::uint64_t seed = 0;

  // Wald interval for a Bernoulli proportion.
  static EstimateWithCI from_counts(std::uint64_t successes, std::uint64_t trials, std::uint64_t seed);
  // Normal interval for the mean of independent replicate values.
  static EstimateWithCI from_replicates(const std::vector<double>& values, std::uint64_t trials,
                                        std::uint64_t seed);
};

// Distribution of the Nakagami parameter of one link class; drawn per link.
struct FadingLaw {
  enum class Kind { nakagami, nakagami_uniform, rician_uniform, no_fading };
  Kind kind = Kind::nakagami;
  double lo = 1.0;
  double hi = 1.0;

  static FadingLaw fixed(double m) { return {Kind::nakagami, m, m}; }
  static FadingLaw rayleigh() { return fixed(1.0); }
  static FadingLaw rician(double kappa);
  static FadingLaw nakagami_uniform(double lo, double hi) { return {Kind::nakagami_uniform, lo, hi}; }
  static FadingLaw rician_uniform(double lo, double hi) { return {Kind::rician_uniform, lo, hi}; }
  static FadingLaw none() { return {Kind::no_fading, 0.0, 0.0}; }

  void validate() const;
  bool deterministic() const { return kind == Kind::no_fading || lo == hi; }
  bool rayleigh_only() const { return deterministic() && kind != Kind::no_fading && value().value() == 1.0; }
  // The fixed parameter of a deterministic law.
  channel::NakagamiM value() const;
  channel::NakagamiM sample(RandomStream& rng) const;
  std::string describe() const;
};

enum class SweepKind { snr_db, tx_power_dbm };

struct SystemConstants {
  double noise_density;   // W/Hz
  double bit_duration = 1e-3;
  double wavelength;
  signal::TagConstants tag;
  double base_freq = 0.1e6;
  double subcarrier_spacing = 1e4;
  std::optional<double> epsilon;
  double reference_distance = 1.0;

  SystemConstants();
  void validate() const;
  signal::SystemConfig system_config(double tx_power_w, std::size_t n_ces, std::size_t n_tags) const;
};

struct ScenarioSpec {
  std::vector<Architecture> architectures{Architecture::monostatic, Architecture::multistatic};
  std::optional<topology::Grid> grid;
  // Reader and emitter positions; canonical layouts when unset.
  std::optional<topology::Layout> layout;
  // Evaluate every trial on these positions instead of sampling tags. The
  // emitter list is ignored for monostatic runs.
  std::optional<topology::Topology> fixed_topology;
  std::size_t n_tags = 1;
  std::size_t slots = 1;
  SweepKind sweep_kind = SweepKind::snr_db;
  std::vector<double> sweep;
  double tx_power_dbm = 28.0;  // outage and energy runs (P_tx = P_R = P_Cl)
  FadingLaw fading_ce_tag = FadingLaw::rayleigh();
  FadingLaw fading_tag_reader = FadingLaw::rayleigh();
  topology::UniformRange exponent{2.0, 2.0};
  channel::SubReferencePolicy sub_reference = channel::SubReferencePolicy::reject;
  SystemConstants constants;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t block_size = 2048;

  void validate() const;
  const topology::Grid& require_grid() const;
  topology::Layout layout_for(Architecture arch) const;
};

// Per-tag, per-slot scenario realization shared by the kernels.
struct LinkRealization {
  topology::Topology topology;
  std::vector<channel::NakagamiM> m_tag_reader;                // [n]
  std::vector<std::vector<channel::NakagamiM>> m_ce_tag;       // [l][n]
  topology::LinkGains gains;
  // Average energy per bit: [l][n] (multistatic) or one row (monostatic).
  std::vector<std::vector<double>> energy;
};

LinkRealization realize_links(const ScenarioSpec& spec, Architecture arch, double tx_power_w,
                              RandomStream& rng);

// ---------------------------------------------------------------- BER
enum class AnalyticKind { exact, upper_bound, none };
std::string_view to_string(AnalyticKind k);

struct BerOptions {
  std::vector<detect::Detector> detectors{detect::Detector::coherent, detect::Detector::noncoherent};
  bool analytic_only = false;
};

struct BerPoint {
  double sweep_value = 0.0;
  Architecture architecture = Architecture::monostatic;
  detect::Detector detector = detect::Detector::noncoherent;
  std::optional<EstimateWithCI> mc;
  double analytic = 0.0;  // NaN when AnalyticKind::none
  AnalyticKind analytic_kind = AnalyticKind::none;
};

std::vector<BerPoint> run_ber(const ScenarioSpec& spec, const BerOptions& options = {});

// ---------------------------------------------------------------- information outage
struct InfoOutageOptions {
  std::vector<double> theta_db;
  std::size_t topologies = 20;
  std::size_t assignments = 10;
  std::size_t fading_draws = 100;
  bool analytic_only = false;
};

struct OutagePoint {
  double theta_db = 0.0;
  std::optional<EstimateWithCI> mc;  // L-slot outage averaged over tags and topologies
  std::optional<double> bound;       // Rayleigh only
};

// Per-topology single-slot statistics averaged over tags and slots.
struct TopologySlotCheck {
  std::vector<double> mc;     // per theta
  std::vector<double> sigma;  // conservative standard error of mc
  std::vector<double> bound;  // empty unless Rayleigh
};

struct InfoOutageCurve {
  Architecture architecture = Architecture::monostatic;
  std::vector<OutagePoint> points;
  std::vector<TopologySlotCheck> per_topology;
  std::size_t sub_reference_links = 0;
};

std::vector<InfoOutageCurve> run_info_outage(const ScenarioSpec& spec, const InfoOutageOptions& options);

// ---------------------------------------------------------------- energy outage
struct EnergyOutageOptions {
  std::vector<double> theta_h_dbm;
  std::size_t topologies = 2000;
  std::size_t mc_draws = 0;  // per tag and topology; 0 disables the sampling oracle
};

struct EnergyPoint {
  double theta_h_dbm = 0.0;
  EstimateWithCI average;
  EstimateWithCI maximum;
  std::optional<EstimateWithCI> mc_average;
  std::optional<EstimateWithCI> mc_maximum;
};

struct EnergyOutageCurve {
  Architecture architecture = Architecture::monostatic;
  std::vector<EnergyPoint> points;
  std::size_t sub_reference_links = 0;
  std::size_t topologies = 0;
};

std::vector<EnergyOutageCurve> run_energy_outage(const ScenarioSpec& spec, const EnergyOutageOptions& options);

// ---------------------------------------------------------------- placement search
enum class PlacementMetric { ber, energy_average, energy_maximum, outage_bound };
std::string_view to_string(PlacementMetric m);

struct PlacementOptions {
  PlacementMetric metric = PlacementMetric::energy_average;
  std::size_t t_max = 10;
  std::size_t topologies = 50;  // tag placements per candidate layout
  double theta_db = 0.0;        // outage_bound
  double theta_h_dbm = -22.0;   // energy metrics
};

struct PlacementCandidate {
  std::size_t index = 0;
  topology::Layout layout;
  double metric = 0.0;
};

struct PlacementResult {
  std::vector<PlacementCandidate> ranked;  // ascending metric, ties in discovery order
  PlacementCandidate best;
  bool exhaustive = false;
};

// Tag-averaged metric of one emitter layout, averaged over `topologies` tag
// placements drawn from common random numbers.
double placement_metric(const ScenarioSpec& spec, const topology::Layout& layout, const PlacementOptions& options);

// When t_max covers every distinct layout, all layouts are evaluated in
// lexicographic order instead of sampling.
PlacementResult run_placement_search(const ScenarioSpec& spec, const PlacementOptions& options);

// x at which the piecewise-linear curve y(x) first reaches `level`.
std::optional<double> level_crossing(const std::vector<double>& x, const std::vector<double>& y, double level);

}  // namespace scatter::sim
