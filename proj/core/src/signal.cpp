#include "scatter/signal.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>

#include "scatter/error.hpp"
#include "scatter/units.hpp"

namespace scatter::signal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_bit(const char* where, int bit) {
  if (bit != 0 && bit != 1) detail::fail_domain(where, "bit must be 0 or 1");
}

double tag_amplitude_factor(const TagConstants& tag) {
  const double k = tag.reflection_gap * (2.0 / std::numbers::pi) * tag.scattering_efficiency;
  return k * k;
}

}  // namespace

void SystemConfig::validate() const {
  if (!(noise_density > 0.0)) detail::fail_domain("SystemConfig", "noise density must be > 0");
  if (!(bit_duration > 0.0)) detail::fail_domain("SystemConfig", "bit duration must be > 0");
  if (!(wavelength > 0.0)) detail::fail_domain("SystemConfig", "wavelength must be > 0");
  if (!(reader_power > 0.0)) detail::fail_domain("SystemConfig", "reader power must be > 0");
  for (double p : ce_powers) {
    if (!(p > 0.0)) detail::fail_domain("SystemConfig", "CE powers must be > 0");
  }
  for (const auto& t : tags) {
    if (!(t.scattering_efficiency > 0.0 && t.scattering_efficiency <= 1.0)) {
      detail::fail_domain("SystemConfig", "scattering efficiency must lie in (0, 1]");
    }
    if (!(t.reflection_gap > 0.0 && t.reflection_gap <= 2.0)) {
      detail::fail_domain("SystemConfig", "reflection gap must lie in (0, 2]");
    }
  }
}

const TagConstants& SystemConfig::tag(std::size_t n) const {
  if (n >= tags.size()) detail::fail_domain("SystemConfig", "tag index out of range");
  return tags[n];
}

double SystemConfig::ce_power(std::size_t l) const {
  if (l >= ce_powers.size()) detail::fail_domain("SystemConfig", "CE index out of range");
  return ce_powers[l];
}

SystemConfig reference_config(double tx_power_w, std::size_t n_ces, std::size_t n_tags) {
  SystemConfig c;
  c.noise_density = units::dbm_to_watts(-169.0);
  c.bit_duration = 1e-3;
  c.wavelength = units::wavelength(868e6);
  c.reader_power = tx_power_w;
  c.ce_powers.assign(n_ces, tx_power_w);
  c.tags.assign(n_tags, TagConstants{});
  c.validate();
  return c;
}

void TagPhases::validate() const {
  for (double p : {phi0, phi1}) {
    if (!(p >= 0.0 && p < kTwoPi)) detail::fail_domain("TagPhases", "phases must lie in [0, 2 pi)");
  }
}

TagPhases TagPhases::sample(RandomStream& rng) {
  return {kTwoPi * rng.uniform(), kTwoPi * rng.uniform()};
}

void FrequencyAssignment::validate() const {
  std::vector<bool> seen(permutation.size(), false);
  for (std::size_t c : permutation) {
    if (c >= permutation.size() || seen[c]) detail::fail_domain("FrequencyAssignment", "not a permutation");
    seen[c] = true;
  }
  if (!(spacing > 0.0)) detail::fail_domain("FrequencyAssignment", "spacing must be > 0");
  if (!(base_freq >= 0.0)) detail::fail_domain("FrequencyAssignment", "base frequency must be >= 0");
  if (epsilon && !(*epsilon > 0.0)) detail::fail_domain("FrequencyAssignment", "epsilon must be > 0");
}

double FrequencyAssignment::subcarrier(std::size_t n, int bit) const {
  require_bit("FrequencyAssignment::subcarrier", bit);
  if (n >= permutation.size()) detail::fail_domain("FrequencyAssignment", "tag index out of range");
  const double f0 = base_freq + static_cast<double>(permutation[n] + 1) * spacing;
  return bit == 0 ? f0 : f0 + spacing / 5.0;
}

FrequencyAssignment FrequencyAssignment::identity(std::size_t n_tags, double spacing) {
  FrequencyAssignment a;
  a.permutation.resize(n_tags);
  std::iota(a.permutation.begin(), a.permutation.end(), std::size_t{0});
  a.spacing = spacing;
  return a;
}

FrequencyAssignment FrequencyAssignment::random(std::size_t n_tags, RandomStream& rng, double spacing) {
  FrequencyAssignment a = identity(n_tags, spacing);
  // Fisher-Yates with an explicit draw so the permutation is library-independent.
  for (std::size_t i = n_tags; i > 1; --i) std::swap(a.permutation[i - 1], a.permutation[rng.below(i)]);
  return a;
}

SymbolVector tag_symbol(int bit, const TagPhases& phases) {
  require_bit("tag_symbol", bit);
  const double s = std::sqrt(0.5);
  SymbolVector x{};
  if (bit == 0) {
    x[0] = std::polar(s, phases.phi0);
    x[1] = std::polar(s, -phases.phi0);
  } else {
    x[2] = std::polar(s, phases.phi1);
    x[3] = std::polar(s, -phases.phi1);
  }
  return x;
}

double energy_per_bit_multistatic(const SystemConfig& config, double gain_ce_tag,
                                  double gain_tag_reader, std::size_t l, std::size_t n) {
  if (!(gain_ce_tag > 0.0) || !(gain_tag_reader > 0.0)) {
    detail::fail_domain("energy_per_bit_multistatic", "path gains must be > 0");
  }
  // mu^2 T / 2 with mu^2 = 2 P L L (|dGamma| (2/pi) s)^2.
  return config.ce_power(l) * gain_ce_tag * gain_tag_reader * tag_amplitude_factor(config.tag(n)) *
         config.bit_duration;
}

double energy_per_bit_monostatic(const SystemConfig& config, double gain_tag_reader,
                                 const channel::NakagamiM& m_n, std::size_t n) {
  if (!(gain_tag_reader > 0.0)) detail::fail_domain("energy_per_bit_monostatic", "path gain must be > 0");
  const double m = m_n.value();
  const double prefactor = m_n.fading() ? (1.0 + m) / (2.0 * m) : 0.5;
  const double mu2 = 2.0 * config.reader_power * gain_tag_reader * gain_tag_reader *
                     tag_amplitude_factor(config.tag(n));
  return prefactor * mu2 * config.bit_duration;
}

double snr(double energy_per_bit, const SystemConfig& config) {
  return energy_per_bit / config.noise_density;
}

double rx_energy_scale(Architecture arch, const channel::NakagamiM& m_tag_reader) {
  if (arch == Architecture::multistatic || !m_tag_reader.fading()) return 1.0;
  const double m = m_tag_reader.value();
  return m / (m + 1.0);
}

OrthogonalityReport check_orthogonality(const FrequencyAssignment& assignment, double bit_duration,
                                        bool coherent, double min_ratio) {
  assignment.validate();
  if (!(bit_duration > 0.0)) detail::fail_domain("check_orthogonality", "bit duration must be > 0");
  const double half_rate = 1.0 / (2.0 * bit_duration);
  const double unit = coherent ? half_rate : 1.0 / bit_duration;

  struct Line {
    std::size_t tag;
    int bit;
    double f;
  };
  std::vector<Line> lines;
  for (std::size_t n = 0; n < assignment.size(); ++n) {
    for (int b = 0; b < 2; ++b) lines.push_back({n, b, assignment.subcarrier(n, b)});
  }

  OrthogonalityReport report;
  for (const Line& line : lines) {
    if (line.f < min_ratio * half_rate) {
      report.violations.push_back({line.tag, line.bit, line.tag, line.bit, line.f,
                                   "subcarrier not much larger than 1/(2T)"});
    }
  }
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      const double gap = std::abs(lines[i].f - lines[k].f);
      const double q = gap / unit;
      if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q) || gap == 0.0) {
        report.violations.push_back({lines[i].tag, lines[i].bit, lines[k].tag, lines[k].bit, gap,
                                     gap == 0.0 ? "coincident subcarriers"
                                                : "gap is not a multiple of the orthogonality unit"});
      }
    }
  }
  report.orthogonal = report.violations.empty();
  return report;
}

double rho(const FrequencyAssignment& assignment, std::size_t n, std::size_t j, double bit_duration) {
  if (n == j) detail::fail_domain("rho", "interference coefficient requires n != j");
  if (!(bit_duration > 0.0)) detail::fail_domain("rho", "bit duration must be > 0");
  const double eps = assignment.epsilon.value_or(2.0 * std::numbers::pi * bit_duration);
  double closest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      closest = std::min(closest, std::abs(assignment.subcarrier(n, i) - assignment.subcarrier(j, k)));
    }
  }
  const double d = eps * closest;
  return 1.0 / (d * d);
}

RhoMatrix rho_coefficients(const FrequencyAssignment& assignment, double bit_duration) {
  assignment.validate();
  const std::size_t n_tags = assignment.size();
  RhoMatrix out(n_tags);
  for (std::size_t n = 0; n < n_tags; ++n) {
    for (std::size_t j = n + 1; j < n_tags; ++j) {
      const double v = rho(assignment, n, j, bit_duration);
      out.at(n, j) = v;
      out.at(j, n) = v;
    }
  }
  return out;
}

RxSymbol synthesize_rx(int bit, const TagPhases& phases, const LinkState& link, double energy,
                       double noise_density, RandomStream& rng) {
  require_bit("synthesize_rx", bit);
  if (!(energy >= 0.0)) detail::fail_domain("synthesize_rx", "energy must be >= 0");
  if (!(noise_density >= 0.0)) detail::fail_domain("synthesize_rx", "noise density must be >= 0");
  const double scale = rx_energy_scale(link.architecture, link.m_tag_reader);
  const Complex c = link.gain() * std::sqrt(scale * energy);
  const SymbolVector x = tag_symbol(bit, phases);
  const double sigma = std::sqrt(0.5 * noise_density);

  RxSymbol rx;
  rx.truth_bit = bit;
  rx.channel_amp = link.amplitude;
  rx.channel_phase = link.phase;
  for (std::size_t k = 0; k < 4; ++k) {
    const double re = rng.normal();
    const double im = rng.normal();
    rx.vector[k] = c * x[k] + Complex(sigma * re, sigma * im);
  }
  return rx;
}

RxSymbol synthesize_rx(int bit, const TagPhases& phases, const LinkState& link, double energy,
                       const SystemConfig& config, RandomStream& rng) {
  return synthesize_rx(bit, phases, link, energy, config.noise_density, rng);
}

}  // namespace scatter::signal
