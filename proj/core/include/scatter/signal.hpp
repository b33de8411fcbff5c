#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "scatter/channel.hpp"
#include "scatter/random.hpp"
#include "scatter/types.hpp"

namespace scatter::signal {

using Complex = std::complex<double>;
using SymbolVector = std::array<Complex, 4>;

struct TagConstants {
  double reflection_gap = 2.0;          // |Gamma_0 - Gamma_1|
  double scattering_efficiency = 0.1;   // s_n
};

struct SystemConfig {
  double noise_density = 0.0;     // N0, W/Hz
  double bit_duration = 0.0;      // T, s
  double wavelength = 0.0;        // m
  double reader_power = 0.0;      // P_R, W
  std::vector<double> ce_powers;  // P_Cl, W
  std::vector<TagConstants> tags;

  void validate() const;
  const TagConstants& tag(std::size_t n) const;
  double ce_power(std::size_t l) const;
};

// Reference constants (868 MHz carrier, N0 = -169 dBm/Hz, T = 1 ms,
// |dGamma| = 2, s = 0.1) with a common transmit power for reader and CEs.
SystemConfig reference_config(double tx_power_w, std::size_t n_ces, std::size_t n_tags);

// Per-tag FSK phase mismatch, constant over all slots.
struct TagPhases {
  double phi0 = 0.0;
  double phi1 = 0.0;

  void validate() const;
  static TagPhases sample(RandomStream& rng);
};

struct RxSymbol {
  SymbolVector vector{};
  std::size_t slot = 0;
  std::size_t tag = 0;
  int truth_bit = 0;
  double channel_amp = 0.0;
  double channel_phase = 0.0;
};

// Tag-to-subcarrier mapping. permutation[n] is the zero-based channel index of
// tag n, so the channel number c in the frequency plan is permutation[n] + 1.
struct FrequencyAssignment {
  std::vector<std::size_t> permutation;
  double base_freq = 0.1e6;  // Hz
  double spacing = 1e4;      // F_sp, Hz
  std::optional<double> epsilon;  // defaults to 2 pi T

  void validate() const;
  std::size_t size() const { return permutation.size(); }
  double subcarrier(std::size_t n, int bit) const;

  static FrequencyAssignment identity(std::size_t n_tags, double spacing = 1e4);
  static FrequencyAssignment random(std::size_t n_tags, RandomStream& rng, double spacing = 1e4);
};

SymbolVector tag_symbol(int bit, const TagPhases& phases);

double energy_per_bit_multistatic(const SystemConfig& config, double gain_ce_tag,
                                  double gain_tag_reader, std::size_t l, std::size_t n);
double energy_per_bit_monostatic(const SystemConfig& config, double gain_tag_reader,
                                 const channel::NakagamiM& m_n, std::size_t n);
double snr(double energy_per_bit, const SystemConfig& config);

// Received-energy prefactor: M/(M+1) for the monostatic roundtrip, 1 otherwise.
double rx_energy_scale(Architecture arch, const channel::NakagamiM& m_tag_reader);

struct OrthogonalityViolation {
  std::size_t tag_a = 0;
  int bit_a = 0;
  std::size_t tag_b = 0;  // equals tag_a for single-subcarrier violations
  int bit_b = 0;
  double frequency_gap = 0.0;
  std::string reason;
};

struct OrthogonalityReport {
  bool orthogonal = true;
  std::vector<OrthogonalityViolation> violations;
};

OrthogonalityReport check_orthogonality(const FrequencyAssignment& assignment, double bit_duration,
                                        bool coherent, double min_ratio = 10.0);

// Symmetric interference-coefficient matrix with an unused zero diagonal.
class RhoMatrix {
 public:
  explicit RhoMatrix(std::size_t n = 0) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double operator()(std::size_t n, std::size_t j) const { return data_[n * n_ + j]; }
  double& at(std::size_t n, std::size_t j) { return data_[n * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

double rho(const FrequencyAssignment& assignment, std::size_t n, std::size_t j, double bit_duration);
RhoMatrix rho_coefficients(const FrequencyAssignment& assignment, double bit_duration);

struct LinkState {
  double amplitude = 1.0;  // a^[m] or a^[b]
  double phase = 0.0;      // h = amplitude * exp(-j phase)
  Architecture architecture = Architecture::multistatic;
  channel::NakagamiM m_tag_reader = channel::NakagamiM::rayleigh();

  Complex gain() const { return std::polar(amplitude, -phase); }
};

// r = h sqrt(scale E) x + w with w ~ CN(0, N0 I4).
RxSymbol synthesize_rx(int bit, const TagPhases& phases, const LinkState& link, double energy,
                       double noise_density, RandomStream& rng);
RxSymbol synthesize_rx(int bit, const TagPhases& phases, const LinkState& link, double energy,
                       const SystemConfig& config, RandomStream& rng);

}  // namespace scatter::signal
