#include <cmath>
#include <limits>
#include <numbers>

#include "scatter/analytic.hpp"
#include "scatter/error.hpp"
#include "scatter/parallel.hpp"
#include "scatter/simkernel.hpp"
#include "scatter/specfun.hpp"
#include "scatter/units.hpp"

namespace scatter::sim {

namespace {

constexpr std::uint64_t kStreamBer = 0xbe7;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct BlockTally {
  std::vector<std::uint64_t> errors;
  std::vector<double> analytic_sum;
  std::uint64_t bits = 0;
  std::uint64_t analytic_count = 0;
};

struct LinkDraw {
  double amplitude;
  double phase;
};

// Channel amplitude and phase of one slot: a^2 with phase 2 phi for the
// roundtrip, the product of both links for the dyadic channel.
LinkDraw draw_link(Architecture arch, const channel::NakagamiM& m_tr, const channel::NakagamiM* m_ct,
                   RandomStream& rng) {
  const double p_tr = channel::sample_link_power(m_tr, rng);
  const double phi_tr = channel::sample_phase(rng);
  if (arch == Architecture::monostatic) {
    return {p_tr, std::fmod(2.0 * phi_tr, 2.0 * std::numbers::pi)};
  }
  const double p_ct = channel::sample_link_power(*m_ct, rng);
  const double phi_ct = channel::sample_phase(rng);
  return {std::sqrt(p_ct * p_tr), std::fmod(phi_ct + phi_tr, 2.0 * std::numbers::pi)};
}

AnalyticKind analytic_kind(Architecture arch, detect::Detector det, const ScenarioSpec& spec) {
  if (det == detect::Detector::square_law) return AnalyticKind::none;
  if (det == detect::Detector::noncoherent) return AnalyticKind::exact;
  const bool tr_fixed = spec.fading_tag_reader.deterministic();
  const bool no_fading = tr_fixed && spec.fading_tag_reader.kind == FadingLaw::Kind::no_fading &&
                         (arch == Architecture::monostatic ||
                          spec.fading_ce_tag.kind == FadingLaw::Kind::no_fading);
  if (no_fading) return AnalyticKind::exact;
  if (arch == Architecture::monostatic && spec.fading_tag_reader.rayleigh_only()) return AnalyticKind::exact;
  return AnalyticKind::upper_bound;
}

// Conditional analytic BER given the link parameters and average SNR.
double analytic_ber(Architecture arch, detect::Detector det, const channel::NakagamiM& m_tr,
                    const channel::NakagamiM* m_ct, double snr) {
  if (det == detect::Detector::square_law) return kNaN;
  if (std::isinf(snr)) return 0.0;
  const bool faded = arch == Architecture::monostatic ? m_tr.fading() : (m_tr.fading() || m_ct->fading());
  if (!faded) {
    return det == detect::Detector::coherent ? specfun::q_function(std::sqrt(snr)) : 0.5 * std::exp(-0.5 * snr);
  }
  if (arch == Architecture::monostatic) {
    if (det == detect::Detector::coherent && m_tr.value() == 1.0) return analytic::ber_exact_rayleigh_monostatic(snr);
    return analytic::ber_bound_monostatic(m_tr.value(), snr);
  }
  // A single unfaded link in the dyadic product is outside the closed form.
  if (!m_tr.fading() || !m_ct->fading()) detail::fail_domain("run_ber", "dyadic closed form needs both links faded");
  return analytic::ber_bound_multistatic(m_ct->value(), m_tr.value(), snr);
}

// One detection per requested detector on a shared received vector.
void detect_all(const std::vector<detect::Detector>& detectors, const signal::RxSymbol& rx,
                const signal::LinkState& link, double energy, const signal::TagPhases& phases,
                BlockTally& tally) {
  const double scale = signal::rx_energy_scale(link.architecture, link.m_tag_reader) * energy;
  for (std::size_t d = 0; d < detectors.size(); ++d) {
    int bit = 0;
    switch (detectors[d]) {
      case detect::Detector::coherent: bit = detect::detect_coherent(rx, link.gain(), scale, phases); break;
      case detect::Detector::noncoherent: bit = detect::detect_noncoherent(rx, phases); break;
      case detect::Detector::square_law: bit = detect::detect_square_law(rx); break;
    }
    tally.errors[d] += bit != rx.truth_bit;
  }
}

BlockTally snr_block(const ScenarioSpec& spec, const BerOptions& options, Architecture arch, double snr_db,
                     std::uint64_t count, RandomStream& rng) {
  const std::size_t nd = options.detectors.size();
  BlockTally tally{std::vector<std::uint64_t>(nd, 0), std::vector<double>(nd, 0.0), 0, 0};
  const bool noiseless = std::isinf(snr_db) && snr_db > 0;
  const double n0 = noiseless ? 0.0 : spec.constants.noise_density;
  const double snr = noiseless ? std::numeric_limits<double>::infinity() : units::db_to_ratio(snr_db);
  const double energy = noiseless ? 1.0 : snr * n0;
  const bool laws_fixed = spec.fading_tag_reader.deterministic() &&
                          (arch == Architecture::monostatic || spec.fading_ce_tag.deterministic());

  for (std::uint64_t t = 0; t < count; ++t) {
    const channel::NakagamiM m_tr = spec.fading_tag_reader.sample(rng);
    const channel::NakagamiM m_ct = spec.fading_ce_tag.sample(rng);
    if (!laws_fixed) {
      for (std::size_t d = 0; d < nd; ++d) {
        tally.analytic_sum[d] += analytic_ber(arch, options.detectors[d], m_tr, &m_ct, snr);
      }
      ++tally.analytic_count;
    }
    if (options.analytic_only) continue;
    const signal::TagPhases phases = signal::TagPhases::sample(rng);
    const int bit = rng.bit();
    for (std::size_t l = 0; l < spec.slots; ++l) {
      const LinkDraw draw = draw_link(arch, m_tr, &m_ct, rng);
      const signal::LinkState link{draw.amplitude, draw.phase, arch, m_tr};
      const signal::RxSymbol rx = signal::synthesize_rx(bit, phases, link, energy, n0, rng);
      detect_all(options.detectors, rx, link, energy, phases, tally);
      ++tally.bits;
    }
  }
  return tally;
}

BlockTally power_block(const ScenarioSpec& spec, const BerOptions& options, Architecture arch, double tx_dbm,
                       std::uint64_t count, RandomStream& rng) {
  const std::size_t nd = options.detectors.size();
  BlockTally tally{std::vector<std::uint64_t>(nd, 0), std::vector<double>(nd, 0.0), 0, 0};
  const double n0 = spec.constants.noise_density;
  const double tx_w = units::dbm_to_watts(tx_dbm);
  for (std::uint64_t t = 0; t < count; ++t) {
    const LinkRealization r = realize_links(spec, arch, tx_w, rng);
    for (std::size_t n = 0; n < spec.n_tags; ++n) {
      const channel::NakagamiM& m_tr = r.m_tag_reader[n];
      for (std::size_t l = 0; l < spec.slots; ++l) {
        const channel::NakagamiM* m_ct = arch == Architecture::multistatic ? &r.m_ce_tag[l][n] : &m_tr;
        const double energy = arch == Architecture::multistatic ? r.energy[l][n] : r.energy[0][n];
        for (std::size_t d = 0; d < nd; ++d) {
          tally.analytic_sum[d] += analytic_ber(arch, options.detectors[d], m_tr, m_ct, energy / n0);
        }
        ++tally.analytic_count;
      }
    }
    if (options.analytic_only) continue;
    for (std::size_t n = 0; n < spec.n_tags; ++n) {
      const channel::NakagamiM& m_tr = r.m_tag_reader[n];
      const signal::TagPhases phases = signal::TagPhases::sample(rng);
      const int bit = rng.bit();
      for (std::size_t l = 0; l < spec.slots; ++l) {
        const channel::NakagamiM* m_ct = arch == Architecture::multistatic ? &r.m_ce_tag[l][n] : &m_tr;
        const double energy = arch == Architecture::multistatic ? r.energy[l][n] : r.energy[0][n];
        const LinkDraw draw = draw_link(arch, m_tr, m_ct, rng);
        const signal::LinkState link{draw.amplitude, draw.phase, arch, m_tr};
        const signal::RxSymbol rx = signal::synthesize_rx(bit, phases, link, energy, n0, rng);
        detect_all(options.detectors, rx, link, energy, phases, tally);
        ++tally.bits;
      }
    }
  }
  return tally;
}

}  // namespace

std::vector<BerPoint> run_ber(const ScenarioSpec& spec, const BerOptions& options) {
  spec.validate();
  if (spec.sweep.empty()) detail::fail_domain("run_ber", "sweep is empty");
  if (options.detectors.empty()) detail::fail_domain("run_ber", "no detector selected");
  if (spec.sweep_kind == SweepKind::tx_power_dbm) spec.require_grid();

  std::vector<BerPoint> out;
  const std::uint64_t n_blocks = (spec.trials + spec.block_size - 1) / spec.block_size;
  for (Architecture arch : spec.architectures) {
    const auto arch_id = static_cast<std::uint64_t>(arch);
    const bool laws_fixed = spec.fading_tag_reader.deterministic() &&
                            (arch == Architecture::monostatic || spec.fading_ce_tag.deterministic());
    const bool closed_form_only = spec.sweep_kind == SweepKind::snr_db && laws_fixed && options.analytic_only;

    for (std::size_t p = 0; p < spec.sweep.size(); ++p) {
      const double x = spec.sweep[p];
      std::vector<BlockTally> blocks;
      if (!closed_form_only) {
        blocks = parallel_blocks<BlockTally>(n_blocks, spec.threads, [&](std::size_t b) {
          RandomStream rng(spec.seed, {kStreamBer, arch_id, p, b});
          const std::uint64_t first = b * spec.block_size;
          const std::uint64_t count = std::min<std::uint64_t>(spec.block_size, spec.trials - first);
          return spec.sweep_kind == SweepKind::snr_db ? snr_block(spec, options, arch, x, count, rng)
                                                      : power_block(spec, options, arch, x, count, rng);
        });
      }
      for (std::size_t d = 0; d < options.detectors.size(); ++d) {
        BerPoint point;
        point.sweep_value = x;
        point.architecture = arch;
        point.detector = options.detectors[d];
        point.analytic_kind = analytic_kind(arch, point.detector, spec);
        std::uint64_t errors = 0, bits = 0, acount = 0;
        double asum = 0.0;
        for (const BlockTally& t : blocks) {
          errors += t.errors[d];
          bits += t.bits;
          asum += t.analytic_sum[d];
          acount += t.analytic_count;
        }
        if (spec.sweep_kind == SweepKind::snr_db && laws_fixed) {
          const channel::NakagamiM m_tr = spec.fading_tag_reader.value();
          const channel::NakagamiM m_ct = spec.fading_ce_tag.value();
          const bool inf = std::isinf(x) && x > 0;
          point.analytic = analytic_ber(arch, point.detector, m_tr, &m_ct,
                                        inf ? std::numeric_limits<double>::infinity() : units::db_to_ratio(x));
        } else {
          point.analytic = acount > 0 ? asum / static_cast<double>(acount) : kNaN;
        }
        if (point.analytic_kind == AnalyticKind::none) point.analytic = kNaN;
        if (!options.analytic_only) point.mc = EstimateWithCI::from_counts(errors, bits, spec.seed);
        out.push_back(point);
      }
    }
  }
  return out;
}

}  // namespace scatter::sim
