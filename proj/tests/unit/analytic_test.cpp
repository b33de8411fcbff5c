#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "scatter/analytic.hpp"
#include "scatter/channel.hpp"
#include "scatter/error.hpp"
#include "scatter/random.hpp"
#include "scatter/signal.hpp"
#include "scatter/specfun.hpp"
#include "scatter/units.hpp"

namespace an = scatter::analytic;
namespace ch = scatter::channel;
namespace sg = scatter::signal;
using oracle::rel_err;
using scatter::units::db_to_ratio;

namespace {

double gamma_pdf(double g, double m) {
  return std::exp(m * std::log(m) + (m - 1.0) * std::log(g) - m * g - std::lgamma(m));
}

// Average of 1/2 exp(-g^2 s) over g ~ Gamma(m, 1/m), s = M/(M+1) SNR / 2.
double mono_bound_oracle(double m, double snr) {
  const double s = m / (m + 1.0) * snr / 2.0;
  return oracle::quad([&](double g) { return g == 0.0 ? 0.0 : 0.5 * std::exp(-g * g * s) * gamma_pdf(g, m); }, 0.0,
                      oracle::kInf);
}

// Average of 1/2 exp(-g1 g2 SNR/2); the inner average is the Gamma moment generating function.
double multi_bound_oracle(double m1, double m2, double snr) {
  return oracle::quad([&](double g) {
    if (g == 0.0) return 0.0;
    return 0.5 * std::pow(1.0 + g * snr / (2.0 * m1), -m1) * gamma_pdf(g, m2);
  }, 0.0, oracle::kInf);
}

// Average of Q(g sqrt(SNR/2)) over exponential g.
double coherent_rayleigh_oracle(double snr) {
  return oracle::quad([&](double g) { return 0.5 * std::erfc(g * std::sqrt(snr / 2.0) / std::sqrt(2.0)) * std::exp(-g); },
                      0.0, oracle::kInf);
}

const std::vector<std::pair<double, double>> kPairs = {{1.0, 1.0}, {5.2632, 5.7619}, {1.0, 5.7619}, {0.5, 3.0}};

}  // namespace

TEST(BerBoundMonostatic, ReferenceValue) {
  EXPECT_LT(rel_err(an::ber_bound_monostatic(1.0, 100.0), 0.079446431315870378), 1e-11);
  EXPECT_LT(rel_err(an::ber_bound_monostatic(1.0, 100.0), mono_bound_oracle(1.0, 100.0)), 1e-9);
}

TEST(BerBoundMonostatic, MatchesQuadrature) {
  for (double m : {0.5, 1.0, 2.5, 5.7619}) {
    for (double db : oracle::linspace(-10.0, 40.0, 15)) {
      EXPECT_LT(rel_err(an::ber_bound_monostatic(m, db_to_ratio(db)), mono_bound_oracle(m, db_to_ratio(db))), 1e-7)
          << m << " " << db;
    }
  }
}

TEST(BerBoundMonostatic, HalfSlopeAndLowSnrLimit) {
  const double c60 = an::ber_bound_monostatic(1.0, 1e6) * std::sqrt(1e6);
  const double c70 = an::ber_bound_monostatic(1.0, 1e7) * std::sqrt(1e7);
  EXPECT_LT(rel_err(c70, c60), 1e-2);
  for (double db : {-20.0, -40.0, -60.0}) {
    const double p = an::ber_bound_monostatic(1.0, db_to_ratio(db));
    EXPECT_LE(p, 0.5);
    EXPECT_GT(p, 0.49);
  }
  EXPECT_NEAR(an::ber_bound_monostatic(1.0, 1e-8), 0.5, 1e-3);
  EXPECT_THROW(an::ber_bound_monostatic(0.4, 1.0), scatter::DomainError);
  EXPECT_THROW(an::ber_bound_monostatic(1.0, 0.0), scatter::DomainError);
}

TEST(BerExactRayleigh, ReferenceValues) {
  EXPECT_LT(rel_err(an::ber_exact_rayleigh_monostatic(1.0), 0.2862082119220965), 1e-13);
  const double direct = 0.5 - std::exp(1.0) * scatter::specfun::q_function(std::sqrt(2.0));
  EXPECT_LT(rel_err(an::ber_exact_rayleigh_monostatic(1.0), direct), 1e-13);
  for (double db : oracle::linspace(-10.0, 40.0, 11)) {
    EXPECT_LT(rel_err(an::ber_exact_rayleigh_monostatic(db_to_ratio(db)), coherent_rayleigh_oracle(db_to_ratio(db))), 1e-8);
  }
}

TEST(BerExactRayleigh, AsymptoteAndGuardedLowSnr) {
  EXPECT_LT(rel_err(an::ber_exact_rayleigh_monostatic(1e8) * 1e4, 1.0 / std::sqrt(std::numbers::pi)), 1e-3);
  for (double db : {-25.0, -40.0, -80.0}) {
    const double p = an::ber_exact_rayleigh_monostatic(db_to_ratio(db));
    EXPECT_TRUE(std::isfinite(p));
    EXPECT_LT(p, 0.5);
    EXPECT_GT(p, 0.4);
  }
  // Branch boundaries of the evaluation.
  for (double snr : {1.0, 1.0 / 25.0}) {
    EXPECT_LT(rel_err(an::ber_exact_rayleigh_monostatic(snr * (1.0 + 1e-12)), an::ber_exact_rayleigh_monostatic(snr)), 1e-9);
  }
}

TEST(BerExactRayleigh, BelowNoncoherent) {
  for (double db : oracle::linspace(-20.0, 80.0, 101)) {
    EXPECT_LE(an::ber_exact_rayleigh_monostatic(db_to_ratio(db)), an::ber_bound_monostatic(1.0, db_to_ratio(db)));
  }
}

TEST(BerBoundMultistatic, RayleighExponentialIntegralForm) {
  for (double db : oracle::linspace(0.0, 60.0, 25)) {
    const double z = 2.0 / db_to_ratio(db);
    const double expected = 0.5 * z * std::exp(z) * scatter::specfun::upper_incomplete_gamma(0.0, z);
    EXPECT_LT(rel_err(an::ber_bound_multistatic(1.0, 1.0, db_to_ratio(db)), expected), 1e-9) << db;
  }
}

TEST(BerBoundMultistatic, ReferenceValue) {
  const double snr = db_to_ratio(15.0);
  EXPECT_LT(rel_err(an::ber_bound_multistatic(5.2632, 5.7619, snr), 0.0015853194648942862), 1e-10);
  const double dyadic = oracle::quad([&](double u) {
    if (u == 0.0) return 0.0;
    return 2.0 * u * 0.5 * std::exp(-u * u * snr / 2.0) * ch::dyadic_power_pdf(u * u, 5.2632, 5.7619);
  }, 0.0, oracle::kInf);
  EXPECT_LT(rel_err(an::ber_bound_multistatic(5.2632, 5.7619, snr), dyadic), 1e-7);
}

TEST(BerBoundMultistatic, MatchesQuadrature) {
  for (const auto& [a, b] : kPairs) {
    for (double db : oracle::linspace(-10.0, 40.0, 15)) {
      EXPECT_LT(rel_err(an::ber_bound_multistatic(a, b, db_to_ratio(db)), multi_bound_oracle(a, b, db_to_ratio(db))), 1e-7)
          << a << " " << b << " " << db;
    }
  }
}

TEST(BerBoundMultistatic, SlopeCarriesLogCorrection) {
  // Local order 1 - 1/(ln(SNR/2) - gamma) of z e^z E1(z), z = 2/SNR.
  const auto curve = [](double s) { return an::ber_bound_multistatic(1.0, 1.0, s); };
  for (double mid : {45.0, 60.0, 100.0}) {
    const double expected = 1.0 - 1.0 / (std::log(db_to_ratio(mid) / 2.0) - std::numbers::egamma);
    EXPECT_NEAR(an::diversity_order(curve, mid - 5.0, mid + 5.0), expected, 5e-3) << mid;
  }
  EXPECT_LT(an::diversity_order(curve, 40.0, 50.0), an::diversity_order(curve, 50.0, 70.0));
  EXPECT_GE(an::diversity_order(curve, 150.0, 170.0), 0.95);
}

TEST(BerBounds, RangeAndMonotone) {
  for (const auto& [a, b] : kPairs) {
    double prev_multi = 0.5, prev_mono = 0.5;
    for (double db : oracle::linspace(-20.0, 70.0, 91)) {
      const double s = db_to_ratio(db);
      const double pm = an::ber_bound_multistatic(a, b, s);
      const double p1 = an::ber_bound_monostatic(b, s);
      EXPECT_GT(pm, 0.0);
      EXPECT_LE(pm, 0.5);
      EXPECT_GT(p1, 0.0);
      EXPECT_LE(p1, 0.5);
      EXPECT_LT(pm, prev_multi);
      EXPECT_LT(p1, prev_mono);
      prev_multi = pm;
      prev_mono = p1;
    }
  }
  EXPECT_EQ(an::ber_bound_multistatic(1.0, 1.0, oracle::kInf), 0.0);
}

TEST(BerBounds, MultistaticDominatesAboveTenDb) {
  for (double db : oracle::linspace(10.0, 80.0, 71)) {
    EXPECT_LE(an::ber_bound_multistatic(1.0, 1.0, db_to_ratio(db)), an::ber_bound_monostatic(1.0, db_to_ratio(db)));
  }
}

TEST(DiversityOrder, SyntheticPowerLaws) {
  EXPECT_NEAR(an::diversity_order([](double s) { return 3.0 / std::sqrt(s); }), 0.5, 1e-6);
  EXPECT_NEAR(an::diversity_order([](double s) { return 0.2 / (s * s); }), 2.0, 1e-6);
  EXPECT_NEAR(an::diversity_order([](double s) { return an::ber_exact_rayleigh_monostatic(s); }), 0.5, 0.02);
  EXPECT_NEAR(an::diversity_order([](double s) { return an::ber_bound_monostatic(1.0, s); }), 0.5, 0.05);
}

TEST(DiversityOrder, RejectsBadInput) {
  EXPECT_THROW(an::diversity_order([](double) { return 0.0; }), scatter::DomainError);
  EXPECT_THROW(an::diversity_order([](double s) { return 1.0 / s; }, 70.0, 50.0), scatter::DomainError);
}

TEST(AverageSinr, SmallCases) {
  sg::RhoMatrix rho1(1);
  const std::vector<double> one{4.0};
  EXPECT_DOUBLE_EQ(an::avg_sinr_monostatic(0, one, rho1, 2.0), 2.0);
  sg::RhoMatrix rho2(2);
  rho2.at(0, 1) = rho2.at(1, 0) = 1.0;
  const std::vector<double> two{3.0, 3.0};
  EXPECT_DOUBLE_EQ(an::avg_sinr_monostatic(0, two, rho2, 0.5), 3.0 / 3.5);
  const auto b = an::sinr_breakdown(1, two, rho2, 0.5);
  EXPECT_EQ(b.interference_terms.size(), 1u);
  EXPECT_EQ(b.interference_terms[0].tag, 0u);
  EXPECT_THROW(an::avg_sinr_monostatic(2, two, rho2, 0.5), scatter::DomainError);
}

TEST(AverageSinr, HundredTagsMatchBruteForce) {
  scatter::RandomStream rng(41);
  const auto a = sg::FrequencyAssignment::random(100, rng);
  const auto rho = sg::rho_coefficients(a, 1e-3);
  std::vector<std::vector<double>> energies(4, std::vector<double>(100));
  for (auto& row : energies)
    for (double& e : row) e = std::exp(rng.uniform(-40.0, -25.0));
  const double n0 = scatter::units::dbm_to_watts(-169.0);
  for (std::size_t n = 0; n < 100; n += 7) {
    for (std::size_t l = 0; l < 4; ++l) {
      double interference = 0.0;
      for (std::size_t j = 0; j < 100; ++j) {
        if (j == n) continue;
        const double k = std::abs(static_cast<double>(a.permutation[n]) - static_cast<double>(a.permutation[j]));
        interference += 25.0 / std::pow(2.0 * std::numbers::pi * 1e-3 * (5.0 * k - 1.0) * 1e4, 2) * energies[l][j];
      }
      const double expected = energies[l][n] / (interference + n0);
      EXPECT_LT(rel_err(an::avg_sinr_multistatic(l, n, energies, rho, n0), expected), 1e-12);
    }
    EXPECT_LT(rel_err(an::avg_sinr_monostatic(n, energies[0], rho, n0), an::avg_sinr_multistatic(0, n, energies, rho, n0)),
              1e-15);
  }
}

TEST(InstantaneousSinr, ReducesWithoutInterference) {
  sg::RhoMatrix rho(3);
  const std::vector<double> rx{2.0, 5.0, 7.0};
  EXPECT_DOUBLE_EQ(an::instantaneous_sinr(0, rx, rho, 0.5), 4.0);
  rho.at(0, 2) = 0.1;
  EXPECT_DOUBLE_EQ(an::instantaneous_sinr(0, rx, rho, 0.5), 2.0 / 1.2);
}

TEST(OutageBounds, Limits) {
  EXPECT_EQ(an::outage_bound_monostatic(0.0, 3.0), 0.0);
  EXPECT_EQ(an::outage_bound_multistatic(0.0, 3.0), 0.0);
  EXPECT_LT(rel_err(an::outage_bound_monostatic(1.5, 3.0), 1.0 - std::exp(-1.0)), 1e-15);
  EXPECT_LT(rel_err(an::outage_bound_multistatic(3.0, 3.0), 1.0 - 2.0 * 0.13986588181652243), 1e-14);
  EXPECT_LT(an::outage_bound_multistatic(1e-20, 1.0), 1e-17);
  EXPECT_THROW(an::outage_bound_monostatic(1.0, 0.0), scatter::DomainError);
}

TEST(OutageBounds, Monotone) {
  double prev_mono = 0.0, prev_multi = 0.0;
  for (double theta : oracle::logspace(1e-4, 1e3, 60)) {
    const double a = an::outage_bound_monostatic(theta, 10.0);
    const double b = an::outage_bound_multistatic(theta, 10.0);
    EXPECT_GT(a, prev_mono);
    EXPECT_GT(b, prev_multi);
    EXPECT_LE(a, 1.0);
    EXPECT_LE(b, 1.0);
    EXPECT_GT(an::outage_bound_monostatic(theta, 10.0), an::outage_bound_monostatic(theta, 11.0));
    prev_mono = a;
    prev_multi = b;
  }
}

TEST(LSlotOutage, Products) {
  const std::vector<double> single{0.3};
  EXPECT_EQ(an::l_slot_outage(single), 0.3);
  const std::vector<double> four(4, 0.5);
  EXPECT_EQ(an::l_slot_outage(four), 0.0625);
  std::vector<double> slots;
  double expected = 1.0;
  for (double avg : {2.0, 5.0, 11.0, 30.0}) {
    slots.push_back(an::outage_bound_multistatic(1.0, avg));
    expected *= an::outage_bound_multistatic(1.0, avg);
  }
  EXPECT_DOUBLE_EQ(an::l_slot_outage(slots), expected);
  const std::vector<double> bad{1.2};
  EXPECT_THROW(an::l_slot_outage(bad), scatter::DomainError);
  EXPECT_THROW(an::l_slot_outage({}), scatter::DomainError);
}

TEST(EnergyOutage, LimitsAndRayleighForm) {
  const ch::NakagamiM m(2.0);
  EXPECT_LT(an::energy_outage_monostatic(1e-30, 1.0, 1e-3, m, 4), 1e-100);
  EXPECT_THROW(an::energy_outage_monostatic(0.0, 1.0, 1e-3, m, 4), scatter::DomainError);
  EXPECT_NEAR(an::energy_outage_monostatic(1e6, 1.0, 1e-3, m, 4), 1.0, 1e-15);
  for (double th : oracle::logspace(1e-6, 1e-2, 20)) {
    EXPECT_LT(rel_err(an::energy_outage_slot(th, 2.0, 1e-3, ch::NakagamiM::rayleigh()), -std::expm1(-th / 2e-3)), 1e-12);
    EXPECT_LT(rel_err(an::energy_outage_monostatic(th, 2.0, 1e-3, m, 3), std::pow(an::energy_outage_slot(th, 2.0, 1e-3, m), 3)),
              1e-12);
  }
  EXPECT_EQ(an::energy_outage_slot(1e-3, 1.0, 1e-3, ch::NakagamiM::no_fading()), 1.0);
  EXPECT_EQ(an::energy_outage_slot(0.99e-3, 1.0, 1e-3, ch::NakagamiM::no_fading()), 0.0);
}

TEST(EnergyOutage, MultistaticIsProductOverEmitters) {
  const std::vector<an::EmitterLink> links{{1.0, 1e-3, ch::NakagamiM(1.0)}, {2.0, 4e-4, ch::NakagamiM(5.7619)},
                                           {0.5, 3e-3, ch::NakagamiM(2.0)}};
  const double th = 1e-3;
  double expected = 1.0;
  for (const auto& l : links) expected *= an::energy_outage_slot(th, l.power, l.gain, l.m);
  EXPECT_LT(rel_err(an::energy_outage_multistatic(th, links), expected), 1e-14);
}

TEST(EnergyOutage, MatchesGammaSampling) {
  scatter::RandomStream rng(42);
  const int draws = 100000;
  const std::vector<an::EmitterLink> links{{1.0, 1e-3, ch::NakagamiM(1.0)}, {1.0, 2e-3, ch::NakagamiM(5.7619)}};
  for (double th : {2e-4, 1e-3, 3e-3}) {
    int mono = 0, multi = 0;
    for (int i = 0; i < draws; ++i) {
      bool all_low = true;
      for (int l = 0; l < 4; ++l) all_low &= ch::sample_link_power(ch::NakagamiM(2.0), rng) * 1.0 * 1e-3 <= th;
      mono += all_low;
      bool all_low_b = true;
      for (const auto& l : links) all_low_b &= ch::sample_link_power(l.m, rng) * l.power * l.gain <= th;
      multi += all_low_b;
    }
    EXPECT_NEAR(static_cast<double>(mono) / draws, an::energy_outage_monostatic(th, 1.0, 1e-3, ch::NakagamiM(2.0), 4), 0.005);
    EXPECT_NEAR(static_cast<double>(multi) / draws, an::energy_outage_multistatic(th, links), 0.005);
  }
}

TEST(EnergyOutage, Aggregates) {
  const std::vector<double> one{0.3};
  EXPECT_EQ(an::energy_outage_aggregates(one).average, 0.3);
  EXPECT_EQ(an::energy_outage_aggregates(one).maximum, 0.3);
  const std::vector<double> same(5, 0.2);
  EXPECT_DOUBLE_EQ(an::energy_outage_aggregates(same).average, an::energy_outage_aggregates(same).maximum);
  scatter::RandomStream rng(43);
  std::vector<double> p(37);
  double sum = 0.0, mx = 0.0;
  for (double& v : p) {
    v = rng.uniform();
    sum += v;
    mx = std::max(mx, v);
  }
  EXPECT_NEAR(an::energy_outage_aggregates(p).average, sum / 37.0, 1e-15);
  EXPECT_EQ(an::energy_outage_aggregates(p).maximum, mx);
}
