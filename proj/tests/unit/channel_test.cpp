#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scatter/channel.hpp"
#include "scatter/error.hpp"
#include "scatter/random.hpp"
#include "scatter/units.hpp"

namespace ch = scatter::channel;
using oracle::rel_err;

namespace {

const double kLambda = scatter::units::wavelength(868e6);

ch::PathLossParams params(double exponent = 2.0, double d0 = 1.0) { return {kLambda, d0, exponent}; }

// Normalization with the x = u^2 substitution so densities singular at 0 stay integrable.
double total_mass(const std::function<double(double)>& pdf) {
  return oracle::quad([&](double u) { return u == 0.0 ? 0.0 : 2.0 * u * pdf(u * u); }, 0.0, oracle::kInf, 1e-10);
}

}  // namespace

TEST(PathLoss, ReferenceValues) {
  EXPECT_NEAR(kLambda, 0.3456221198156682, 1e-15);
  EXPECT_LT(rel_err(ch::path_loss(1.0, params()), 0.00075645540623626267), 1e-14);
  EXPECT_LT(rel_err(ch::path_loss(10.0, params()), 0.00075645540623626267e-2), 1e-14);
}

TEST(PathLoss, InverseSquareAndMonotone) {
  double prev = ch::path_loss(1.0, params());
  for (double d : oracle::linspace(1.5, 200.0, 60)) {
    EXPECT_LT(rel_err(ch::path_loss(2.0 * d, params()), 0.25 * ch::path_loss(d, params())), 1e-14);
    const double g = ch::path_loss(d, params(2.7));
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(PathLoss, SubReferencePolicies) {
  EXPECT_THROW(ch::path_loss(0.5, params()), scatter::DomainError);
  EXPECT_THROW(ch::path_loss(0.0, params(), ch::SubReferencePolicy::extrapolate), scatter::DomainError);
  EXPECT_EQ(ch::path_loss(0.5, params(), ch::SubReferencePolicy::clamp), ch::path_loss(1.0, params()));
  EXPECT_LT(rel_err(ch::path_loss(0.5, params(), ch::SubReferencePolicy::extrapolate), 4.0 * ch::path_loss(1.0, params())),
            1e-14);
  EXPECT_THROW(ch::path_loss(2.0, params(-1.0)), scatter::DomainError);
}

TEST(NakagamiM, RicianConversion) {
  EXPECT_NEAR(ch::rician_to_m(10.0), 121.0 / 21.0, 1e-14);
  EXPECT_NEAR(ch::rician_to_m(9.0), 100.0 / 19.0, 1e-14);
  EXPECT_NEAR(ch::NakagamiM::from_rician(10.0).value(), 5.761904761904762, 1e-12);
  EXPECT_EQ(ch::rician_to_m(0.0), 1.0);
}

TEST(NakagamiM, ValidatesShape) {
  EXPECT_THROW(ch::NakagamiM(0.49), scatter::DomainError);
  EXPECT_NO_THROW(ch::NakagamiM(0.5));
  EXPECT_FALSE(ch::NakagamiM::no_fading().fading());
  EXPECT_TRUE(std::isinf(ch::NakagamiM::no_fading().value()));
}

TEST(Sampling, NoFadingIsDeterministic) {
  scatter::RandomStream rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(ch::sample_nakagami_amplitude(ch::NakagamiM::no_fading(), rng), 1.0);
}

TEST(Sampling, RayleighPowerIsExponential) {
  scatter::RandomStream rng(2);
  std::vector<double> s(1000000);
  for (double& x : s) x = ch::sample_link_power(ch::NakagamiM::rayleigh(), rng);
  const double d = oracle::ks_statistic(s, [](double x) { return -std::expm1(-x); });
  EXPECT_GT(oracle::ks_pvalue(d, s.size()), 0.01);
}

TEST(Sampling, UnitMeanPower) {
  scatter::RandomStream rng(3);
  for (double m : {0.5, 1.0, 5.7619}) {
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
      const double a = ch::sample_nakagami_amplitude(ch::NakagamiM(m), rng);
      sum += a * a;
    }
    EXPECT_NEAR(sum / n, 1.0, 0.01) << m;
  }
}

TEST(Sampling, PhaseIsUniform) {
  scatter::RandomStream rng(4);
  std::vector<double> s(100000);
  for (double& x : s) {
    x = ch::sample_phase(rng);
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 2.0 * std::numbers::pi);
  }
  const double d = oracle::ks_statistic(s, [](double x) { return x / (2.0 * std::numbers::pi); });
  EXPECT_GT(oracle::ks_pvalue(d, s.size()), 0.01);
}

TEST(LinkPower, DensityNormalizedWithUnitMean) {
  EXPECT_NEAR(ch::link_power_pdf(0.7, 1.0), std::exp(-0.7), 1e-15);
  for (double m : {0.5, 1.0, 2.0, 5.0}) {
    EXPECT_NEAR(total_mass([m](double x) { return ch::link_power_pdf(x, m); }), 1.0, 1e-8) << m;
    const double mean = oracle::quad([m](double x) { return x * ch::link_power_pdf(x, m); }, 0.0, oracle::kInf);
    EXPECT_NEAR(mean, 1.0, 1e-8) << m;
  }
}

TEST(LinkPower, CdfMatchesDensity) {
  for (double m : {0.5, 1.0, 5.7619}) {
    for (double x : oracle::logspace(1e-3, 10.0, 20)) {
      const double integral = oracle::quad([m](double u) { return 2.0 * u * ch::link_power_pdf(u * u, m); }, 0.0, std::sqrt(x));
      EXPECT_LT(rel_err(ch::link_power_cdf(x, m), integral), 1e-8) << m << " " << x;
    }
  }
}

TEST(DyadicPower, RayleighReducesToBesselK0) {
  for (double x : oracle::logspace(1e-4, 20.0, 50)) {
    EXPECT_LT(rel_err(ch::dyadic_power_pdf(x, 1.0, 1.0), 2.0 * oracle::bessel_k(0.0, 2.0 * std::sqrt(x))), 1e-8) << x;
  }
}

TEST(DyadicPower, NormalizedForScenarioPairs) {
  const std::pair<double, double> pairs[] = {{1.0, 1.0}, {5.2632, 5.7619}, {1.0, 5.7619}, {0.5, 2.0}};
  for (const auto& [a, b] : pairs) {
    EXPECT_NEAR(total_mass([a, b](double x) { return ch::dyadic_power_pdf(x, a, b); }), 1.0, 1e-6) << a << " " << b;
  }
}

TEST(DyadicPower, SymmetricInShapes) {
  for (double x : oracle::logspace(1e-3, 10.0, 20)) {
    EXPECT_LT(rel_err(ch::dyadic_power_pdf(x, 5.2632, 5.7619), ch::dyadic_power_pdf(x, 5.7619, 5.2632)), 1e-12);
  }
}

TEST(DyadicPower, RayleighCdf) {
  EXPECT_EQ(ch::dyadic_power_cdf_rayleigh(0.0), 0.0);
  EXPECT_EQ(ch::dyadic_power_cdf_rayleigh(oracle::kInf), 1.0);
  EXPECT_NEAR(ch::dyadic_power_cdf_rayleigh(1.0), 0.72026823636695515, 1e-14);
  for (double x : oracle::logspace(1e-18, 30.0, 50)) {
    const double integral =
        oracle::quad([](double u) { return 4.0 * u * oracle::bessel_k(0.0, 2.0 * u); }, 0.0, std::sqrt(x), 1e-10);
    EXPECT_LT(rel_err(ch::dyadic_power_cdf_rayleigh(x), integral), 1e-7) << x;
  }
}

TEST(DyadicPower, CdfConcave) {
  const auto xs = oracle::linspace(0.01, 10.0, 100);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double mid = ch::dyadic_power_cdf_rayleigh(xs[i]);
    const double chord = 0.5 * (ch::dyadic_power_cdf_rayleigh(xs[i - 1]) + ch::dyadic_power_cdf_rayleigh(xs[i + 1]));
    EXPECT_GE(mid, chord - 1e-14);
  }
}

TEST(DyadicPower, SampledProductsPassKs) {
  const std::pair<double, double> pairs[] = {{1.0, 1.0}, {5.2632, 5.7619}, {1.0, 5.7619}};
  scatter::RandomStream rng(5);
  for (const auto& [a, b] : pairs) {
    std::vector<double> s(100000);
    for (double& x : s) x = ch::sample_link_power(ch::NakagamiM(a), rng) * ch::sample_link_power(ch::NakagamiM(b), rng);
    const double d = oracle::ks_statistic_pdf(s, [a = a, b = b](double x) { return ch::dyadic_power_pdf(x, a, b); });
    EXPECT_GT(oracle::ks_pvalue(d, s.size()), 0.01) << a << " " << b;
  }
}

TEST(MonostaticPower, RayleighForms) {
  for (double x : oracle::logspace(1e-4, 50.0, 30)) {
    const double r = std::sqrt(x);
    EXPECT_LT(rel_err(ch::monostatic_power_pdf(x, 1.0), std::exp(-r) / (2.0 * r)), 1e-13);
    EXPECT_LT(rel_err(ch::monostatic_power_cdf_rayleigh(x), 1.0 - std::exp(-r)), 1e-13);
    EXPECT_LT(rel_err(ch::monostatic_power_cdf(x, 1.0), ch::monostatic_power_cdf_rayleigh(x)), 1e-12);
  }
  EXPECT_EQ(ch::monostatic_power_cdf(0.0, 2.0), 0.0);
  EXPECT_NEAR(ch::monostatic_power_cdf(1e8, 1.0), 1.0, 1e-15);
}

TEST(MonostaticPower, CdfMatchesDensity) {
  for (double m : {0.5, 1.0, 5.7619}) {
    EXPECT_NEAR(total_mass([m](double x) { return ch::monostatic_power_pdf(x, m); }), 1.0, 1e-8);
    for (double x : oracle::logspace(1e-3, 20.0, 20)) {
      const double integral =
          oracle::quad([m](double u) { return 2.0 * u * ch::monostatic_power_pdf(u * u, m); }, 0.0, std::sqrt(x));
      EXPECT_LT(rel_err(ch::monostatic_power_cdf(x, m), integral), 1e-8) << m << " " << x;
    }
  }
}

TEST(MonostaticPower, CdfConcave) {
  const auto xs = oracle::linspace(0.01, 10.0, 100);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double mid = ch::monostatic_power_cdf_rayleigh(xs[i]);
    const double chord = 0.5 * (ch::monostatic_power_cdf_rayleigh(xs[i - 1]) + ch::monostatic_power_cdf_rayleigh(xs[i + 1]));
    EXPECT_GE(mid, chord - 1e-14);
  }
}

TEST(MonostaticPower, SampledRoundtripMatchesCdf) {
  scatter::RandomStream rng(6);
  const int n = 1000000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    const double a = ch::sample_nakagami_amplitude(ch::NakagamiM::rayleigh(), rng);
    below += a * a * a * a <= 1.0;
  }
  EXPECT_NEAR(static_cast<double>(below) / n, 1.0 - std::exp(-1.0), 0.005);
}

TEST(ChannelDensities, RejectBadArguments) {
  EXPECT_THROW(ch::link_power_pdf(-1.0, 1.0), scatter::DomainError);
  EXPECT_THROW(ch::dyadic_power_pdf(1.0, 0.2, 1.0), scatter::DomainError);
  EXPECT_THROW(ch::monostatic_power_cdf(-0.1, 1.0), scatter::DomainError);
}
