#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "scatter/channel.hpp"
#include "scatter/signal.hpp"

namespace scatter::analytic {

// Noncoherent-exact (and coherent Chernoff) BER, roundtrip Nakagami link.
double ber_bound_monostatic(double m_n, double snr);
// Exact coherent BER for the monostatic Rayleigh roundtrip.
double ber_exact_rayleigh_monostatic(double snr);
// Noncoherent-exact (and coherent Chernoff) BER, dyadic Nakagami link.
double ber_bound_multistatic(double m_ln, double m_n, double snr);

// Negative least-squares slope of log(BER) against log(SNR) on `points`
// SNR values evenly spaced in dB over [snr_lo_db, snr_hi_db].
double diversity_order(const std::function<double(double)>& ber_of_snr, double snr_lo_db = 50.0,
                       double snr_hi_db = 70.0, int points = 21);

struct InterferenceTerm {
  std::size_t tag = 0;
  double energy = 0.0;  // rho_nj * E_j
};

struct SinrBreakdown {
  double signal_energy = 0.0;
  std::vector<InterferenceTerm> interference_terms;
  double noise = 0.0;

  double interference() const;
  double sinr() const;
};

// Average SINR with unit-mean fading; energies are E^[m]_j (monostatic) or
// E^[b]_{l,j} for the slot of interest (multistatic).
SinrBreakdown sinr_breakdown(std::size_t n, std::span<const double> energies,
                             const signal::RhoMatrix& rho, double noise_density);
double avg_sinr_monostatic(std::size_t n, std::span<const double> energies,
                           const signal::RhoMatrix& rho, double noise_density);
// energies_by_slot[l][j] = E^[b]_{l,j}.
double avg_sinr_multistatic(std::size_t l, std::size_t n,
                            const std::vector<std::vector<double>>& energies_by_slot,
                            const signal::RhoMatrix& rho, double noise_density);

// Instantaneous SINR of tag n given per-tag received energies (g_j E_j, with
// the M/(M+1) prefactor already applied in the monostatic case).
double instantaneous_sinr(std::size_t n, std::span<const double> received,
                          const signal::RhoMatrix& rho, double noise_density);

// Rayleigh per-slot outage bounds.
double outage_bound_monostatic(double theta, double avg_sinr);
double outage_bound_multistatic(double theta, double avg_sinr);

// Outage over L independent slots: product of per-slot probabilities.
double l_slot_outage(std::span<const double> per_slot_probs);

struct EmitterLink {
  double power = 0.0;  // P_Cl, W
  double gain = 0.0;   // L_{C_l T_n}
  channel::NakagamiM m = channel::NakagamiM::rayleigh();
};

// Probability that harvested power stays at or below theta_h in every slot.
double energy_outage_monostatic(double theta_h, double reader_power, double gain,
                                const channel::NakagamiM& m_n, std::size_t slots);
double energy_outage_multistatic(double theta_h, std::span<const EmitterLink> links);
// Single-slot factor P(a^2 P L <= theta_h).
double energy_outage_slot(double theta_h, double power, double gain, const channel::NakagamiM& m);

struct OutageAggregates {
  double average = 0.0;
  double maximum = 0.0;
};
OutageAggregates energy_outage_aggregates(std::span<const double> per_tag_probs);

}  // namespace scatter::analytic
