#include "scatter/detect.hpp"

#include <cmath>

#include "scatter/error.hpp"

namespace scatter::detect {

void ChannelKnowledge::validate() const {
  if (!(amplitude >= 0.0)) detail::fail_domain("ChannelKnowledge", "amplitude must be >= 0");
}

std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::coherent: return "coherent";
    case Detector::noncoherent: return "noncoherent";
    case Detector::square_law: return "square_law";
  }
  return "unknown";
}

int detect_coherent(const signal::RxSymbol& rx, signal::Complex h, double energy_scale,
                    const signal::TagPhases& phases) {
  const signal::Complex c = h * std::sqrt(energy_scale);
  const signal::SymbolVector x0 = signal::tag_symbol(0, phases);
  const signal::SymbolVector x1 = signal::tag_symbol(1, phases);
  double d0 = 0.0;
  double d1 = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    d0 += std::norm(rx.vector[k] - c * x0[k]);
    d1 += std::norm(rx.vector[k] - c * x1[k]);
  }
  return d0 <= d1 ? 0 : 1;
}

int detect_noncoherent(const signal::RxSymbol& rx, const signal::TagPhases& phases) {
  const auto& r = rx.vector;
  const double e0 = std::norm(r[0] + std::polar(1.0, 2.0 * phases.phi0) * r[1]);
  const double e1 = std::norm(r[2] + std::polar(1.0, 2.0 * phases.phi1) * r[3]);
  return e0 >= e1 ? 0 : 1;
}

int detect_square_law(const signal::RxSymbol& rx) {
  const auto& r = rx.vector;
  return std::norm(r[0]) + std::norm(r[1]) >= std::norm(r[2]) + std::norm(r[3]) ? 0 : 1;
}

int detect(Detector detector, const signal::RxSymbol& rx, const ChannelKnowledge& csi,
           double energy_scale, const signal::TagPhases& phases) {
  switch (detector) {
    case Detector::coherent:
      if (csi.mode != CsiMode::full_csi) detail::fail_domain("detect", "coherent detection needs full CSI");
      return detect_coherent(rx, csi.gain(), energy_scale, phases);
    case Detector::noncoherent: return detect_noncoherent(rx, phases);
    case Detector::square_law: return detect_square_law(rx);
  }
  detail::fail_domain("detect", "unknown detector");
}

}  // namespace scatter::detect
