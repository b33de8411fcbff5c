#include "scatter/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "scatter/error.hpp"
#include "scatter/specfun.hpp"

namespace scatter::channel {

namespace {

void require_m(const char* where, double m) {
  if (!(m >= 0.5) || !std::isfinite(m)) {
    detail::fail_domain(where, "Nakagami m must be finite and >= 0.5, got " + std::to_string(m));
  }
}

void require_x(const char* where, double x, bool strictly_positive) {
  if (std::isnan(x) || x < 0.0 || (strictly_positive && x == 0.0)) {
    detail::fail_domain(where, strictly_positive ? "x must be > 0" : "x must be >= 0");
  }
}

}  // namespace

NakagamiM::NakagamiM(double m) : m_(m) { require_m("NakagamiM", m); }

NakagamiM NakagamiM::from_rician(double kappa) { return NakagamiM(rician_to_m(kappa)); }

NakagamiM NakagamiM::no_fading() {
  NakagamiM out;
  out.no_fading_ = true;
  return out;
}

double NakagamiM::value() const {
  return no_fading_ ? std::numeric_limits<double>::infinity() : m_;
}

double rician_to_m(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) detail::fail_domain("rician_to_m", "kappa must be >= 0");
  return (kappa + 1.0) * (kappa + 1.0) / (2.0 * kappa + 1.0);
}

void PathLossParams::validate() const {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) detail::fail_domain("PathLossParams", "wavelength must be > 0");
  if (!(reference_distance > 0.0)) detail::fail_domain("PathLossParams", "reference distance must be > 0");
  if (!(exponent > 0.0) || !std::isfinite(exponent)) detail::fail_domain("PathLossParams", "exponent must be > 0");
}

double path_loss(double distance, const PathLossParams& params) {
  return path_loss(distance, params, SubReferencePolicy::reject);
}

double path_loss(double distance, const PathLossParams& params, SubReferencePolicy policy) {
  params.validate();
  if (!(distance > 0.0) || !std::isfinite(distance)) detail::fail_domain("path_loss", "distance must be > 0");
  const double d0 = params.reference_distance;
  if (distance < d0) {
    if (policy == SubReferencePolicy::reject) {
      detail::fail_domain("path_loss", "distance " + std::to_string(distance) +
                                           " m is inside the reference distance");
    }
    if (policy == SubReferencePolicy::clamp) distance = d0;
  }
  const double ref = params.wavelength / (4.0 * std::numbers::pi * d0);
  return ref * ref * std::pow(d0 / distance, params.exponent);
}

double sample_link_power(const NakagamiM& m, RandomStream& rng) {
  if (!m.fading()) return 1.0;
  const double shape = m.value();
  return rng.gamma(shape, 1.0 / shape);
}

double sample_nakagami_amplitude(const NakagamiM& m, RandomStream& rng) {
  return std::sqrt(sample_link_power(m, rng));
}

double sample_phase(RandomStream& rng) { return 2.0 * std::numbers::pi * rng.uniform(); }

double link_power_pdf(double x, double m) {
  require_m("link_power_pdf", m);
  require_x("link_power_pdf", x, false);
  if (x == 0.0) {
    if (m < 1.0) return std::numeric_limits<double>::infinity();
    return m == 1.0 ? 1.0 : 0.0;
  }
  return std::exp(m * std::log(m) + (m - 1.0) * std::log(x) - m * x - std::lgamma(m));
}

double link_power_cdf(double x, double m) {
  require_m("link_power_cdf", m);
  require_x("link_power_cdf", x, false);
  return specfun::regularized_lower_gamma(m, m * x);
}

double dyadic_power_pdf(double x, double m_ce_tag, double m_tag_reader) {
  require_m("dyadic_power_pdf", m_ce_tag);
  require_m("dyadic_power_pdf", m_tag_reader);
  require_x("dyadic_power_pdf", x, true);
  if (std::isinf(x)) return 0.0;
  const double mm = m_ce_tag * m_tag_reader;
  const double log_pdf = std::log(2.0) + 0.5 * (m_ce_tag + m_tag_reader) * std::log(x * mm) +
                         specfun::log_bessel_k(m_tag_reader - m_ce_tag, 2.0 * std::sqrt(mm * x)) -
                         std::log(x) - std::lgamma(m_ce_tag) - std::lgamma(m_tag_reader);
  return std::exp(log_pdf);
}

double dyadic_power_cdf_rayleigh(double x) {
  require_x("dyadic_power_cdf_rayleigh", x, false);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  // 1 - z K1(z) with z = 2 sqrt(x); below x = 1/4 the series
  // sum_k x^{k+1} / (k! (k+1)!) [psi(k+1) + psi(k+2) - ln x] avoids cancellation.
  if (x < 0.25) {
    const double log_x = std::log(x);
    double psi_sum = 1.0 - 2.0 * std::numbers::egamma;
    double term = x;
    double sum = 0.0;
    for (int k = 0; k < 40; ++k) {
      const double add = term * (psi_sum - log_x);
      sum += add;
      if (std::abs(add) < 1e-17 * std::abs(sum)) break;
      term *= x / ((k + 1.0) * (k + 2.0));
      psi_sum += 1.0 / (k + 1.0) + 1.0 / (k + 2.0);
    }
    return sum;
  }
  const double z = 2.0 * std::sqrt(x);
  return 1.0 - z * specfun::bessel_k(1.0, z);
}

double monostatic_power_pdf(double x, double m) {
  require_m("monostatic_power_pdf", m);
  require_x("monostatic_power_pdf", x, true);
  if (std::isinf(x)) return 0.0;
  const double r = std::sqrt(x);
  return std::exp(m * std::log(m) + (0.5 * m - 1.0) * std::log(x) - m * r - std::lgamma(m)) / 2.0;
}

double monostatic_power_cdf(double x, double m) {
  require_m("monostatic_power_cdf", m);
  require_x("monostatic_power_cdf", x, false);
  return specfun::regularized_lower_gamma(m, m * std::sqrt(x));
}

double monostatic_power_cdf_rayleigh(double x) {
  require_x("monostatic_power_cdf_rayleigh", x, false);
  return -std::expm1(-std::sqrt(x));
}

}  // namespace scatter::channel
