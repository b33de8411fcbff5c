#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "scatter/random.hpp"

namespace scatter::channel {

// Nakagami shape parameter of one unidirectional link. The no-fading case is
// an explicit flag so that the amplitude is exactly 1 rather than "large m".
class NakagamiM {
 public:
  explicit NakagamiM(double m);
  static NakagamiM from_rician(double kappa);
  static NakagamiM no_fading();
  static NakagamiM rayleigh() { return NakagamiM(1.0); }

  bool fading() const { return !no_fading_; }
  // Shape value; +inf for the no-fading flag.
  double value() const;

 private:
  NakagamiM() = default;
  double m_ = 1.0;
  bool no_fading_ = false;
};

// Rician K-factor to Nakagami m: (kappa+1)^2 / (2 kappa + 1).
double rician_to_m(double kappa);

struct FadingParams {
  NakagamiM m_tag_reader = NakagamiM::rayleigh();
  std::vector<NakagamiM> m_ce_tag;  // one per carrier emitter
};

struct PathLossParams {
  double wavelength = 0.0;
  double reference_distance = 1.0;
  double exponent = 2.0;

  void validate() const;
};

// How links shorter than the reference distance are evaluated.
enum class SubReferencePolicy {
  reject,       // domain error (model invalid inside d0)
  clamp,        // evaluate at d0
  extrapolate,  // evaluate the power law as written
};

// Large-scale gain (lambda / (4 pi d0))^2 (d0/d)^nu.
double path_loss(double distance, const PathLossParams& params);
double path_loss(double distance, const PathLossParams& params, SubReferencePolicy policy);

// Nakagami amplitude a with a^2 ~ Gamma(m, 1/m).
double sample_nakagami_amplitude(const NakagamiM& m, RandomStream& rng);
// a^2 drawn directly.
double sample_link_power(const NakagamiM& m, RandomStream& rng);
// Channel phase, uniform on [0, 2 pi).
double sample_phase(RandomStream& rng);

// Density and CDF of a^2 (Gamma(m, 1/m)).
double link_power_pdf(double x, double m);
double link_power_cdf(double x, double m);

// Density of a^2_{CE->tag} a^2_{tag->reader} (product of independent Gammas).
double dyadic_power_pdf(double x, double m_ce_tag, double m_tag_reader);
double dyadic_power_cdf_rayleigh(double x);

// Density and CDF of a^4 for Nakagami amplitude a (roundtrip power).
double monostatic_power_pdf(double x, double m);
double monostatic_power_cdf(double x, double m);
double monostatic_power_cdf_rayleigh(double x);

}  // namespace scatter::channel
