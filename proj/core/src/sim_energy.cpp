#include <algorithm>
#include <cmath>

#include "scatter/analytic.hpp"
#include "scatter/error.hpp"
#include "scatter/parallel.hpp"
#include "scatter/simkernel.hpp"
#include "scatter/units.hpp"

namespace scatter::sim {

namespace {

constexpr std::uint64_t kStreamEnergy = 0xe0e;

struct EnergyOutcome {
  std::vector<double> average, maximum;
  std::vector<double> mc_average, mc_maximum;
  std::size_t sub_reference = 0;
};

EnergyOutcome energy_topology(const ScenarioSpec& spec, const EnergyOutageOptions& options, Architecture arch,
                              const std::vector<double>& theta_w, std::size_t t) {
  RandomStream rng(spec.seed, {kStreamEnergy, static_cast<std::uint64_t>(arch), t});
  const double tx_w = units::dbm_to_watts(spec.tx_power_dbm);
  const LinkRealization r = realize_links(spec, arch, tx_w, rng);
  const std::size_t n_tags = spec.n_tags;
  const std::size_t nt = theta_w.size();
  const bool mono = arch == Architecture::monostatic;

  EnergyOutcome out;
  out.sub_reference = r.gains.below_reference;
  out.average.assign(nt, 0.0);
  out.maximum.assign(nt, 0.0);
  std::vector<analytic::EmitterLink> links(r.topology.emitters.size());
  for (std::size_t n = 0; n < n_tags; ++n) {
    for (std::size_t l = 0; l < links.size(); ++l) links[l] = {tx_w, r.gains.ce_tag[l][n], r.m_ce_tag[l][n]};
    for (std::size_t k = 0; k < nt; ++k) {
      const double p = mono ? analytic::energy_outage_monostatic(theta_w[k], tx_w, r.gains.tag_reader[n],
                                                                 r.m_tag_reader[n], spec.slots)
                            : analytic::energy_outage_multistatic(theta_w[k], links);
      out.average[k] += p / static_cast<double>(n_tags);
      out.maximum[k] = std::max(out.maximum[k], p);
    }
  }

  if (options.mc_draws > 0) {
    out.mc_average.assign(nt, 0.0);
    out.mc_maximum.assign(nt, 0.0);
    std::vector<std::uint64_t> hist(nt + 1);
    for (std::size_t n = 0; n < n_tags; ++n) {
      std::fill(hist.begin(), hist.end(), 0);
      for (std::size_t d = 0; d < options.mc_draws; ++d) {
        // Outage in every slot <=> the strongest slot is still below theta_h.
        double strongest = 0.0;
        for (std::size_t l = 0; l < spec.slots; ++l) {
          const double harvested =
              mono ? tx_w * r.gains.tag_reader[n] * channel::sample_link_power(r.m_tag_reader[n], rng)
                   : tx_w * r.gains.ce_tag[l][n] * channel::sample_link_power(r.m_ce_tag[l][n], rng);
          strongest = std::max(strongest, harvested);
        }
        ++hist[static_cast<std::size_t>(std::lower_bound(theta_w.begin(), theta_w.end(), strongest) - theta_w.begin())];
      }
      std::uint64_t acc = 0;
      for (std::size_t k = 0; k < nt; ++k) {
        acc += hist[k];
        const double p = static_cast<double>(acc) / static_cast<double>(options.mc_draws);
        out.mc_average[k] += p / static_cast<double>(n_tags);
        out.mc_maximum[k] = std::max(out.mc_maximum[k], p);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<EnergyOutageCurve> run_energy_outage(const ScenarioSpec& spec, const EnergyOutageOptions& options) {
  spec.validate();
  spec.require_grid();
  if (options.theta_h_dbm.empty()) detail::fail_domain("run_energy_outage", "theta_h grid is empty");
  if (!std::is_sorted(options.theta_h_dbm.begin(), options.theta_h_dbm.end())) {
    detail::fail_domain("run_energy_outage", "theta_h grid must be increasing");
  }
  if (options.topologies < 1) detail::fail_domain("run_energy_outage", "need at least one topology");
  std::vector<double> theta_w;
  for (double dbm : options.theta_h_dbm) theta_w.push_back(units::dbm_to_watts(dbm));

  std::vector<EnergyOutageCurve> curves;
  for (Architecture arch : spec.architectures) {
    const auto outcomes = parallel_blocks<EnergyOutcome>(options.topologies, spec.threads, [&](std::size_t t) {
      return energy_topology(spec, options, arch, theta_w, t);
    });
    EnergyOutageCurve curve;
    curve.architecture = arch;
    curve.topologies = options.topologies;
    for (const auto& o : outcomes) curve.sub_reference_links += o.sub_reference;
    const std::uint64_t trials = options.topologies * spec.n_tags;
    for (std::size_t k = 0; k < theta_w.size(); ++k) {
      EnergyPoint point;
      point.theta_h_dbm = options.theta_h_dbm[k];
      std::vector<double> avg, mx, mc_avg, mc_mx;
      for (const auto& o : outcomes) {
        avg.push_back(o.average[k]);
        mx.push_back(o.maximum[k]);
        if (options.mc_draws > 0) {
          mc_avg.push_back(o.mc_average[k]);
          mc_mx.push_back(o.mc_maximum[k]);
        }
      }
      point.average = EstimateWithCI::from_replicates(avg, trials, spec.seed);
      point.maximum = EstimateWithCI::from_replicates(mx, trials, spec.seed);
      if (options.mc_draws > 0) {
        point.mc_average = EstimateWithCI::from_replicates(mc_avg, trials * options.mc_draws, spec.seed);
        point.mc_maximum = EstimateWithCI::from_replicates(mc_mx, trials * options.mc_draws, spec.seed);
      }
      curve.points.push_back(point);
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

}  // namespace scatter::sim
