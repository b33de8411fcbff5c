#include <algorithm>
#include <cmath>
#include <limits>

#include "scatter/analytic.hpp"
#include "scatter/error.hpp"
#include "scatter/parallel.hpp"
#include "scatter/simkernel.hpp"
#include "scatter/units.hpp"

namespace scatter::sim {

namespace {

constexpr std::uint64_t kStreamPlaceTags = 0x91ace;
constexpr std::uint64_t kStreamPlaceLayout = 0x91acf;

std::uint64_t layout_count(const topology::Grid& grid, std::size_t n_emitters) {
  return topology::binomial(grid.point_count() - 1, n_emitters).value_or(std::numeric_limits<std::uint64_t>::max());
}

double tag_ber(const LinkRealization& r, std::size_t l, std::size_t n, double n0) {
  const double snr = r.energy[l][n] / n0;
  const auto& m_ct = r.m_ce_tag[l][n];
  const auto& m_tr = r.m_tag_reader[n];
  if (!m_ct.fading() && !m_tr.fading()) return 0.5 * std::exp(-0.5 * snr);
  if (!m_ct.fading() || !m_tr.fading()) detail::fail_domain("placement_metric", "BER metric needs both links faded");
  return analytic::ber_bound_multistatic(m_ct.value(), m_tr.value(), snr);
}

}  // namespace

double placement_metric(const ScenarioSpec& base, const topology::Layout& layout, const PlacementOptions& options) {
  ScenarioSpec spec = base;
  spec.layout = layout;
  spec.slots = layout.emitters.size();
  spec.architectures = {Architecture::multistatic};
  spec.validate();
  if (options.topologies < 1) detail::fail_domain("placement_metric", "need at least one tag topology");
  if (options.metric == PlacementMetric::outage_bound &&
      !(spec.fading_ce_tag.rayleigh_only() && spec.fading_tag_reader.rayleigh_only())) {
    detail::fail_domain("placement_metric", "the outage bound metric requires Rayleigh fading");
  }
  const double tx_w = units::dbm_to_watts(spec.tx_power_dbm);
  const double n0 = spec.constants.noise_density;
  const double theta = units::db_to_ratio(options.theta_db);
  const double theta_h = units::dbm_to_watts(options.theta_h_dbm);
  const std::size_t n_tags = spec.n_tags;
  const std::size_t slots = spec.slots;

  double total = 0.0;
  for (std::size_t t = 0; t < options.topologies; ++t) {
    // Common random numbers: the stream depends on the tag topology only.
    RandomStream rng(spec.seed, {kStreamPlaceTags, t});
    const LinkRealization r = realize_links(spec, Architecture::multistatic, tx_w, rng);
    double value = 0.0;
    switch (options.metric) {
      case PlacementMetric::ber: {
        for (std::size_t n = 0; n < n_tags; ++n) {
          for (std::size_t l = 0; l < slots; ++l) value += tag_ber(r, l, n, n0);
        }
        value /= static_cast<double>(n_tags * slots);
        break;
      }
      case PlacementMetric::energy_average:
      case PlacementMetric::energy_maximum: {
        std::vector<double> per_tag(n_tags);
        std::vector<analytic::EmitterLink> links(slots);
        for (std::size_t n = 0; n < n_tags; ++n) {
          for (std::size_t l = 0; l < slots; ++l) links[l] = {tx_w, r.gains.ce_tag[l][n], r.m_ce_tag[l][n]};
          per_tag[n] = analytic::energy_outage_multistatic(theta_h, links);
        }
        const auto agg = analytic::energy_outage_aggregates(per_tag);
        value = options.metric == PlacementMetric::energy_average ? agg.average : agg.maximum;
        break;
      }
      case PlacementMetric::outage_bound: {
        signal::FrequencyAssignment assignment =
            signal::FrequencyAssignment::random(n_tags, rng, spec.constants.subcarrier_spacing);
        assignment.base_freq = spec.constants.base_freq;
        assignment.epsilon = spec.constants.epsilon;
        const signal::RhoMatrix rho = signal::rho_coefficients(assignment, spec.constants.bit_duration);
        for (std::size_t n = 0; n < n_tags; ++n) {
          double product = 1.0;
          for (std::size_t l = 0; l < slots; ++l) {
            product *= analytic::outage_bound_multistatic(theta, analytic::avg_sinr_multistatic(l, n, r.energy, rho, n0));
          }
          value += product / static_cast<double>(n_tags);
        }
        break;
      }
    }
    total += value;
  }
  return total / static_cast<double>(options.topologies);
}

PlacementResult run_placement_search(const ScenarioSpec& spec, const PlacementOptions& options) {
  if (options.t_max < 1) detail::fail_domain("run_placement_search", "T_max must be >= 1");
  const topology::Grid& grid = spec.require_grid();
  const Point reader = spec.layout ? spec.layout->reader : Point{grid.side() / 2.0, grid.side() / 2.0};
  const std::size_t n_emitters = spec.slots;

  PlacementResult result;
  std::vector<topology::Layout> layouts;
  if (options.t_max >= layout_count(grid, n_emitters)) {
    layouts = topology::enumerate_emitter_layouts(grid, reader, n_emitters);
    result.exhaustive = true;
  } else {
    for (std::size_t i = 0; i < options.t_max; ++i) {
      RandomStream rng(spec.seed, {kStreamPlaceLayout, i});
      layouts.push_back(topology::sample_emitter_layout(grid, reader, n_emitters, rng));
    }
  }

  const auto metrics = parallel_blocks<double>(layouts.size(), spec.threads, [&](std::size_t i) {
    return placement_metric(spec, layouts[i], options);
  });
  for (std::size_t i = 0; i < layouts.size(); ++i) result.ranked.push_back({i, layouts[i], metrics[i]});

  result.best = result.ranked.front();
  for (const auto& c : result.ranked) {
    if (c.metric < result.best.metric) result.best = c;
  }
  std::stable_sort(result.ranked.begin(), result.ranked.end(),
                   [](const PlacementCandidate& a, const PlacementCandidate& b) { return a.metric < b.metric; });
  return result;
}

}  // namespace scatter::sim
