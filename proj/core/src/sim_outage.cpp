#include <algorithm>
#include <cmath>

#include "scatter/analytic.hpp"
#include "scatter/error.hpp"
#include "scatter/parallel.hpp"
#include "scatter/simkernel.hpp"
#include "scatter/units.hpp"

namespace scatter::sim {

namespace {

constexpr std::uint64_t kStreamOutage = 0x0a7e;

struct TopologyOutcome {
  std::vector<double> l_slot;        // MC L-slot outage, tag average
  std::vector<double> l_slot_bound;  // Rayleigh bound, tag average
  TopologySlotCheck check;
  std::size_t sub_reference = 0;
};

// Index of the first threshold >= value; thresholds.size() when none.
std::size_t bin_of(const std::vector<double>& thresholds, double value) {
  return static_cast<std::size_t>(std::lower_bound(thresholds.begin(), thresholds.end(), value) -
                                  thresholds.begin());
}

std::vector<double> cumulative(const std::uint64_t* counts, std::size_t n, double denominator) {
  std::vector<double> out(n);
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < n; ++k) {
    acc += counts[k];
    out[k] = static_cast<double>(acc) / denominator;
  }
  return out;
}

TopologyOutcome simulate_topology(const ScenarioSpec& spec, const InfoOutageOptions& options, Architecture arch,
                                  const std::vector<double>& theta, bool with_bound, std::size_t t) {
  RandomStream rng(spec.seed, {kStreamOutage, static_cast<std::uint64_t>(arch), t});
  const LinkRealization r = realize_links(spec, arch, units::dbm_to_watts(spec.tx_power_dbm), rng);
  const std::size_t n_tags = spec.n_tags;
  const std::size_t slots = spec.slots;
  const std::size_t nt = theta.size();
  const double n0 = spec.constants.noise_density;
  const bool mono = arch == Architecture::monostatic;

  // Received-energy prefactor per tag (M/(M+1) for the roundtrip).
  std::vector<double> scale(n_tags, 1.0);
  if (mono) {
    for (std::size_t n = 0; n < n_tags; ++n) scale[n] = signal::rx_energy_scale(arch, r.m_tag_reader[n]);
  }
  auto energy = [&](std::size_t l, std::size_t n) { return mono ? r.energy[0][n] : r.energy[l][n]; };

  std::vector<std::uint64_t> hist_l_slot(nt + 1, 0);
  std::vector<std::uint64_t> hist_slot(slots * n_tags * (nt + 1), 0);
  std::vector<double> bound_slot_sum(nt, 0.0);
  std::vector<double> bound_l_slot_sum(nt, 0.0);
  std::vector<double> received(n_tags);
  std::vector<double> best(n_tags);
  std::vector<double> product(nt);

  for (std::size_t a = 0; a < options.assignments; ++a) {
    signal::FrequencyAssignment assignment =
        signal::FrequencyAssignment::random(n_tags, rng, spec.constants.subcarrier_spacing);
    assignment.base_freq = spec.constants.base_freq;
    assignment.epsilon = spec.constants.epsilon;
    const signal::RhoMatrix rho = signal::rho_coefficients(assignment, spec.constants.bit_duration);

    if (with_bound) {
      for (std::size_t n = 0; n < n_tags; ++n) {
        std::fill(product.begin(), product.end(), 1.0);
        for (std::size_t l = 0; l < slots; ++l) {
          const double avg = mono ? analytic::avg_sinr_monostatic(n, r.energy[0], rho, n0)
                                  : analytic::avg_sinr_multistatic(l, n, r.energy, rho, n0);
          for (std::size_t k = 0; k < nt; ++k) {
            const double b = mono ? analytic::outage_bound_monostatic(theta[k], avg)
                                  : analytic::outage_bound_multistatic(theta[k], avg);
            bound_slot_sum[k] += b;
            product[k] *= b;
          }
        }
        for (std::size_t k = 0; k < nt; ++k) bound_l_slot_sum[k] += product[k];
      }
    }
    if (options.analytic_only) continue;

    for (std::size_t f = 0; f < options.fading_draws; ++f) {
      std::fill(best.begin(), best.end(), 0.0);
      for (std::size_t l = 0; l < slots; ++l) {
        for (std::size_t j = 0; j < n_tags; ++j) {
          double g;
          if (mono) {
            const double p = channel::sample_link_power(r.m_tag_reader[j], rng);
            g = p * p;
          } else {
            g = channel::sample_link_power(r.m_ce_tag[l][j], rng) * channel::sample_link_power(r.m_tag_reader[j], rng);
          }
          received[j] = g * scale[j] * energy(l, j);
        }
        for (std::size_t n = 0; n < n_tags; ++n) {
          const double sinr = analytic::instantaneous_sinr(n, received, rho, n0);
          best[n] = std::max(best[n], sinr);
          ++hist_slot[(l * n_tags + n) * (nt + 1) + bin_of(theta, sinr)];
        }
      }
      for (std::size_t n = 0; n < n_tags; ++n) ++hist_l_slot[bin_of(theta, best[n])];
    }
  }

  TopologyOutcome out;
  out.sub_reference = r.gains.below_reference;
  const double draws = static_cast<double>(options.assignments * options.fading_draws);
  if (!options.analytic_only) {
    out.l_slot = cumulative(hist_l_slot.data(), nt, draws * static_cast<double>(n_tags));
    out.check.mc.assign(nt, 0.0);
    out.check.sigma.assign(nt, 0.0);
    const double links = static_cast<double>(slots * n_tags);
    for (std::size_t i = 0; i < slots * n_tags; ++i) {
      const std::vector<double> p = cumulative(&hist_slot[i * (nt + 1)], nt, draws);
      for (std::size_t k = 0; k < nt; ++k) {
        out.check.mc[k] += p[k] / links;
        out.check.sigma[k] += std::sqrt(p[k] * (1.0 - p[k]) / draws) / links;
      }
    }
  }
  if (with_bound) {
    out.l_slot_bound.resize(nt);
    out.check.bound.resize(nt);
    for (std::size_t k = 0; k < nt; ++k) {
      out.l_slot_bound[k] = bound_l_slot_sum[k] / static_cast<double>(options.assignments * n_tags);
      out.check.bound[k] = bound_slot_sum[k] / static_cast<double>(options.assignments * n_tags * slots);
    }
  }
  return out;
}

}  // namespace

std::vector<InfoOutageCurve> run_info_outage(const ScenarioSpec& spec, const InfoOutageOptions& options) {
  spec.validate();
  spec.require_grid();
  if (options.theta_db.empty()) detail::fail_domain("run_info_outage", "theta grid is empty");
  if (!std::is_sorted(options.theta_db.begin(), options.theta_db.end()) ||
      std::adjacent_find(options.theta_db.begin(), options.theta_db.end()) != options.theta_db.end()) {
    detail::fail_domain("run_info_outage", "theta grid must be strictly increasing");
  }
  if (options.topologies < 1 || options.assignments < 1 || options.fading_draws < 1) {
    detail::fail_domain("run_info_outage", "topology, assignment and fading-draw counts must be >= 1");
  }
  std::vector<double> theta;
  for (double db : options.theta_db) theta.push_back(units::db_to_ratio(db));

  std::vector<InfoOutageCurve> curves;
  for (Architecture arch : spec.architectures) {
    const bool rayleigh = spec.fading_tag_reader.rayleigh_only() &&
                          (arch == Architecture::monostatic || spec.fading_ce_tag.rayleigh_only());
    const auto outcomes = parallel_blocks<TopologyOutcome>(options.topologies, spec.threads, [&](std::size_t t) {
      return simulate_topology(spec, options, arch, theta, rayleigh, t);
    });

    InfoOutageCurve curve;
    curve.architecture = arch;
    const std::uint64_t trials = options.topologies * options.assignments * options.fading_draws * spec.n_tags;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      OutagePoint point;
      point.theta_db = options.theta_db[k];
      if (!options.analytic_only) {
        std::vector<double> values;
        for (const auto& o : outcomes) values.push_back(o.l_slot[k]);
        point.mc = EstimateWithCI::from_replicates(values, trials, spec.seed);
      }
      if (rayleigh) {
        double sum = 0.0;
        for (const auto& o : outcomes) sum += o.l_slot_bound[k];
        point.bound = sum / static_cast<double>(outcomes.size());
      }
      curve.points.push_back(point);
    }
    for (const auto& o : outcomes) {
      curve.per_topology.push_back(o.check);
      curve.sub_reference_links += o.sub_reference;
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace scatter::sim
