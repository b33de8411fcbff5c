#include "scatter/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scatter/error.hpp"
#include "scatter/specfun.hpp"

namespace scatter::analytic {

namespace {

void require_snr(const char* where, double snr) {
  if (std::isnan(snr) || snr <= 0.0) detail::fail_domain(where, "SNR must be > 0");
}

void require_m(const char* where, double m) {
  if (!(m >= 0.5) || !std::isfinite(m)) detail::fail_domain(where, "Nakagami m must be finite and >= 0.5");
}

void require_probability(const char* where, double p) {
  if (!(p >= 0.0 && p <= 1.0)) detail::fail_domain(where, "probabilities must lie in [0, 1]");
}

}  // namespace

double ber_bound_monostatic(double m_n, double snr) {
  require_m("ber_bound_monostatic", m_n);
  require_snr("ber_bound_monostatic", snr);
  if (std::isinf(snr)) return 0.0;
  const double z = (m_n + m_n * m_n) / (2.0 * snr);
  const double log_p = -std::numbers::ln2 + 0.5 * m_n * std::log(z) +
                       specfun::log_hyper_u(0.5 * m_n, 0.5, z);
  return std::min(0.5, std::exp(log_p));
}

double ber_exact_rayleigh_monostatic(double snr) {
  require_snr("ber_exact_rayleigh_monostatic", snr);
  if (std::isinf(snr)) return 0.0;
  // 1/2 - e^{1/SNR} Q(sqrt(2/SNR)) = (1 - erfcx(y)) / 2 with y = 1/sqrt(SNR).
  const double y = 1.0 / std::sqrt(snr);
  if (y < 1.0) return 0.5 * (std::exp(y * y) * std::erf(y) - std::expm1(y * y));
  return 0.5 * (1.0 - specfun::erfcx(y));
}

double ber_bound_multistatic(double m_ln, double m_n, double snr) {
  require_m("ber_bound_multistatic", m_ln);
  require_m("ber_bound_multistatic", m_n);
  require_snr("ber_bound_multistatic", snr);
  if (std::isinf(snr)) return 0.0;
  const double z = 2.0 * m_ln * m_n / snr;
  const double log_p = -std::numbers::ln2 + m_n * std::log(z) +
                       specfun::log_hyper_u(m_n, 1.0 + m_n - m_ln, z);
  return std::min(0.5, std::exp(log_p));
}

double diversity_order(const std::function<double(double)>& ber_of_snr, double snr_lo_db,
                       double snr_hi_db, int points) {
  if (!(snr_hi_db > snr_lo_db)) detail::fail_domain("diversity_order", "window must satisfy hi > lo");
  if (points < 2) detail::fail_domain("diversity_order", "need at least two points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < points; ++i) {
    const double db = snr_lo_db + (snr_hi_db - snr_lo_db) * i / (points - 1);
    const double snr = std::pow(10.0, db / 10.0);
    const double p = ber_of_snr(snr);
    if (!(p > 0.0) || !std::isfinite(p)) detail::fail_domain("diversity_order", "BER values must be positive");
    const double x = std::log(snr);
    const double y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = points;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

double SinrBreakdown::interference() const {
  double total = 0.0;
  for (const auto& t : interference_terms) total += t.energy;
  return total;
}

double SinrBreakdown::sinr() const { return signal_energy / (interference() + noise); }

SinrBreakdown sinr_breakdown(std::size_t n, std::span<const double> energies,
                             const signal::RhoMatrix& rho, double noise_density) {
  if (n >= energies.size() || rho.size() != energies.size()) {
    detail::fail_domain("sinr_breakdown", "tag index and interference matrix must match the energy list");
  }
  if (!(noise_density > 0.0)) detail::fail_domain("sinr_breakdown", "noise density must be > 0");
  SinrBreakdown out;
  out.signal_energy = energies[n];
  out.noise = noise_density;
  for (std::size_t j = 0; j < energies.size(); ++j) {
    if (j == n) continue;
    if (energies[j] < 0.0) detail::fail_domain("sinr_breakdown", "energies must be >= 0");
    out.interference_terms.push_back({j, rho(n, j) * energies[j]});
  }
  return out;
}

double avg_sinr_monostatic(std::size_t n, std::span<const double> energies,
                           const signal::RhoMatrix& rho, double noise_density) {
  return sinr_breakdown(n, energies, rho, noise_density).sinr();
}

double avg_sinr_multistatic(std::size_t l, std::size_t n,
                            const std::vector<std::vector<double>>& energies_by_slot,
                            const signal::RhoMatrix& rho, double noise_density) {
  if (l >= energies_by_slot.size()) detail::fail_domain("avg_sinr_multistatic", "slot index out of range");
  return sinr_breakdown(n, energies_by_slot[l], rho, noise_density).sinr();
}

double instantaneous_sinr(std::size_t n, std::span<const double> received,
                          const signal::RhoMatrix& rho, double noise_density) {
  double interference = 0.0;
  for (std::size_t j = 0; j < received.size(); ++j) {
    if (j != n) interference += rho(n, j) * received[j];
  }
  return received[n] / (interference + noise_density);
}

double outage_bound_monostatic(double theta, double avg_sinr) {
  if (!(theta >= 0.0) || !(avg_sinr > 0.0)) detail::fail_domain("outage_bound_monostatic", "need theta >= 0, SINR > 0");
  return -std::expm1(-std::sqrt(2.0 * theta / avg_sinr));
}

double outage_bound_multistatic(double theta, double avg_sinr) {
  if (!(theta >= 0.0) || !(avg_sinr > 0.0)) detail::fail_domain("outage_bound_multistatic", "need theta >= 0, SINR > 0");
  return channel::dyadic_power_cdf_rayleigh(theta / avg_sinr);
}

double l_slot_outage(std::span<const double> per_slot_probs) {
  if (per_slot_probs.empty()) detail::fail_domain("l_slot_outage", "need at least one slot");
  double p = 1.0;
  for (double q : per_slot_probs) {
    require_probability("l_slot_outage", q);
    p *= q;
  }
  return p;
}

double energy_outage_slot(double theta_h, double power, double gain, const channel::NakagamiM& m) {
  if (!(theta_h > 0.0)) detail::fail_domain("energy_outage", "theta_h must be > 0");
  if (!(power > 0.0) || !(gain > 0.0)) detail::fail_domain("energy_outage", "power and gain must be > 0");
  const double mean = power * gain;
  if (!m.fading()) return mean <= theta_h ? 1.0 : 0.0;
  const double shape = m.value();
  return specfun::regularized_lower_gamma(shape, shape * theta_h / mean);
}

double energy_outage_monostatic(double theta_h, double reader_power, double gain,
                                const channel::NakagamiM& m_n, std::size_t slots) {
  if (slots < 1) detail::fail_domain("energy_outage_monostatic", "need at least one slot");
  return std::pow(energy_outage_slot(theta_h, reader_power, gain, m_n), static_cast<double>(slots));
}

double energy_outage_multistatic(double theta_h, std::span<const EmitterLink> links) {
  if (links.empty()) detail::fail_domain("energy_outage_multistatic", "need at least one emitter");
  double p = 1.0;
  for (const auto& link : links) p *= energy_outage_slot(theta_h, link.power, link.gain, link.m);
  return p;
}

OutageAggregates energy_outage_aggregates(std::span<const double> per_tag_probs) {
  if (per_tag_probs.empty()) detail::fail_domain("energy_outage_aggregates", "need at least one tag");
  OutageAggregates out;
  double sum = 0.0;
  for (double p : per_tag_probs) {
    require_probability("energy_outage_aggregates", p);
    sum += p;
    out.maximum = std::max(out.maximum, p);
  }
  out.average = sum / static_cast<double>(per_tag_probs.size());
  return out;
}

}  // namespace scatter::analytic
