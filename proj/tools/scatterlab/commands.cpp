#include "scatterlab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "scatter/analytic.hpp"
#include "scatter/error.hpp"

namespace scatterlab {

namespace sim = scatter::sim;
using scatter::Architecture;

namespace {

std::string arch_name(Architecture a) { return std::string(scatter::to_string(a)); }

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : ""; }

CommandResult run_ber(const RunConfig& rc) {
  CommandResult result;
  std::ostringstream csv;
  const bool power = rc.spec.sweep_kind == sim::SweepKind::tx_power_dbm;
  csv << (power ? "tx_power_dbm" : "snr_db") << ",arch,fading,detector,ber,ci,analytic,analytic_kind,bits\n";
  for (const FadingCase& c : rc.fading) {
    for (const sim::BerPoint& p : sim::run_ber(rc.spec_for(c), rc.ber)) {
      csv << format_real(p.sweep_value) << ',' << arch_name(p.architecture) << ',' << c.name << ','
          << scatter::detect::to_string(p.detector) << ',' << (p.mc ? format_real(p.mc->mean) : "") << ','
          << (p.mc ? format_real(p.mc->half_width_95) : "") << ',' << format_real(p.analytic) << ','
          << sim::to_string(p.analytic_kind) << ',' << (p.mc ? std::to_string(p.mc->n_trials) : "") << '\n';
    }
  }
  result.files.push_back({"ber.csv", csv.str()});
  return result;
}

CommandResult run_outage(const RunConfig& rc) {
  CommandResult result;
  std::ostringstream csv;
  csv << "theta_db,arch,fading,mc,ci,bound,bound_ge_mc\n";
  std::size_t violations = 0;
  for (const FadingCase& c : rc.fading) {
    for (const sim::InfoOutageCurve& curve : sim::run_info_outage(rc.spec_for(c), rc.outage)) {
      result.summary["sub_reference_links"][c.name][arch_name(curve.architecture)] = curve.sub_reference_links;
      for (const sim::OutagePoint& p : curve.points) {
        // Jensen: the bound dominates the outage, up to 3 sigma of sampling
        // error. Few topology replicates understate the spread, so the
        // binomial variance of all draws is added.
        std::string ok;
        if (p.bound && p.mc) {
          const double rep = p.mc->half_width_95 / 1.96;
          const double q = p.mc->mean;
          const double sigma = std::sqrt(rep * rep + q * (1.0 - q) / static_cast<double>(p.mc->n_trials));
          const bool holds = *p.bound >= q - 3.0 * sigma;
          ok = holds ? "1" : "0";
          if (!holds) ++violations;
        }
        csv << format_real(p.theta_db) << ',' << arch_name(curve.architecture) << ',' << c.name << ','
            << (p.mc ? format_real(p.mc->mean) : "") << ',' << (p.mc ? format_real(p.mc->half_width_95) : "") << ','
            << optional_real(p.bound) << ',' << ok << '\n';
      }
    }
  }
  result.summary["bound_ge_mc_violations"] = violations;
  if (violations > 0) {
    result.warnings.push_back(std::to_string(violations) + " outage rows have mc above the bound by more than 3 sigma");
  }
  result.files.push_back({"outage.csv", csv.str()});
  return result;
}

CommandResult run_energy(const RunConfig& rc) {
  CommandResult result;
  std::ostringstream csv;
  csv << "theta_h_dbm,arch,fading,avg,avg_ci,max,max_ci,mc_avg,mc_avg_ci,mc_max,mc_max_ci\n";
  double worst_gap = 0.0;
  for (const FadingCase& c : rc.fading) {
    for (const sim::EnergyOutageCurve& curve : sim::run_energy_outage(rc.spec_for(c), rc.energy)) {
      result.summary["sub_reference_links"][c.name][arch_name(curve.architecture)] = curve.sub_reference_links;
      for (const sim::EnergyPoint& p : curve.points) {
        if (p.maximum.mean < p.average.mean) {
          throw scatter::NumericError("energy outage maximum below average at " + format_real(p.theta_h_dbm) + " dBm");
        }
        csv << format_real(p.theta_h_dbm) << ',' << arch_name(curve.architecture) << ',' << c.name << ','
            << format_real(p.average.mean) << ',' << format_real(p.average.half_width_95) << ','
            << format_real(p.maximum.mean) << ',' << format_real(p.maximum.half_width_95) << ',';
        if (p.mc_average && p.mc_maximum) {
          worst_gap = std::max({worst_gap, std::abs(p.mc_average->mean - p.average.mean),
                                std::abs(p.mc_maximum->mean - p.maximum.mean)});
          csv << format_real(p.mc_average->mean) << ',' << format_real(p.mc_average->half_width_95) << ','
              << format_real(p.mc_maximum->mean) << ',' << format_real(p.mc_maximum->half_width_95) << '\n';
        } else {
          csv << ",,,\n";
        }
      }
    }
  }
  if (rc.energy.mc_draws > 0) result.summary["max_abs_closed_form_vs_mc"] = worst_gap;
  result.files.push_back({"energy.csv", csv.str()});
  return result;
}

CommandResult run_diversity(const RunConfig& rc) {
  CommandResult result;
  std::ostringstream csv;
  csv << "arch,fading,window_lo_db,window_hi_db,points,slope\n";
  const DiversityOptions& d = rc.diversity;
  for (const FadingCase& c : rc.fading) {
    const double m_ct = c.ce_tag.value().value();
    const double m_tr = c.tag_reader.value().value();
    for (Architecture a : rc.spec.architectures) {
      const auto ber = [&](double snr) {
        return a == Architecture::monostatic ? scatter::analytic::ber_bound_monostatic(m_tr, snr)
                                             : scatter::analytic::ber_bound_multistatic(m_ct, m_tr, snr);
      };
      const double slope = scatter::analytic::diversity_order(ber, d.lo_db, d.hi_db, d.points);
      csv << arch_name(a) << ',' << c.name << ',' << format_real(d.lo_db) << ',' << format_real(d.hi_db) << ','
          << d.points << ',' << format_real(slope) << '\n';
    }
  }
  result.files.push_back({"diversity.csv", csv.str()});
  return result;
}

CommandResult run_place(const RunConfig& rc) {
  CommandResult result;
  const sim::ScenarioSpec spec = rc.spec_for(rc.fading.front());
  const sim::PlacementResult placement = sim::run_placement_search(spec, rc.place);
  std::ostringstream csv;
  csv << "rank,candidate,metric,reader_x_m,reader_y_m";
  for (std::size_t l = 1; l <= spec.slots; ++l) csv << ",ce" << l << "_x_m,ce" << l << "_y_m";
  csv << '\n';
  for (std::size_t r = 0; r < placement.ranked.size(); ++r) {
    const sim::PlacementCandidate& c = placement.ranked[r];
    csv << r + 1 << ',' << c.index << ',' << format_real(c.metric) << ',' << format_real(c.layout.reader.x) << ','
        << format_real(c.layout.reader.y);
    for (const auto& e : c.layout.emitters) csv << ',' << format_real(e.x) << ',' << format_real(e.y);
    csv << '\n';
  }
  result.summary["metric"] = std::string(sim::to_string(rc.place.metric));
  result.summary["exhaustive"] = placement.exhaustive;
  result.summary["best_candidate"] = placement.best.index;
  result.summary["best_metric"] = placement.best.metric;
  result.files.push_back({"place.csv", csv.str()});
  return result;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9e", value);
  return buf;
}

CommandResult run_command(const RunConfig& config) {
  switch (config.command) {
    case Command::ber: return run_ber(config);
    case Command::outage: return run_outage(config);
    case Command::energy: return run_energy(config);
    case Command::diversity: return run_diversity(config);
    case Command::place: return run_place(config);
  }
  throw ConfigError("command", "unknown command");
}

}  // namespace scatterlab
