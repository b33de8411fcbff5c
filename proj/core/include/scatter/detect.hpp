#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

#include "scatter/signal.hpp"

namespace scatter::detect {

enum class CsiMode : std::uint8_t { full_csi, amplitudes_and_tag_phases_only };

struct ChannelKnowledge {
  double amplitude = 0.0;
  double phase = 0.0;
  CsiMode mode = CsiMode::full_csi;

  void validate() const;
  signal::Complex gain() const { return std::polar(amplitude, -phase); }
};

enum class Detector : std::uint8_t { coherent, noncoherent, square_law };

std::string_view to_string(Detector d);

// All detectors resolve exact ties to bit 0.

// Minimum Euclidean distance to h sqrt(energy_scale) x(i); energy_scale is the
// full effective energy (including any monostatic prefactor).
int detect_coherent(const signal::RxSymbol& rx, signal::Complex h, double energy_scale,
                    const signal::TagPhases& phases);

// |r1 + e^{2j phi0} r2| vs |r3 + e^{2j phi1} r4|.
int detect_noncoherent(const signal::RxSymbol& rx, const signal::TagPhases& phases);

// |r1|^2 + |r2|^2 vs |r3|^2 + |r4|^2.
int detect_square_law(const signal::RxSymbol& rx);

// Dispatch; the coherent detector requires full CSI.
int detect(Detector detector, const signal::RxSymbol& rx, const ChannelKnowledge& csi,
           double energy_scale, const signal::TagPhases& phases);

}  // namespace scatter::detect
