#include <gtest/gtest.h>

#include <cmath>

#include "quarkonia/approximation.hpp"
#include "quarkonia/closed_form.hpp"
#include "quarkonia/errors.hpp"
#include "test_support.hpp"

using namespace quarkonia;
using quarkonia::testing::charmonium;
using quarkonia::testing::Draw;

TEST(CoulombLevels, HydrogenLike) {
  EXPECT_DOUBLE_EQ(coulomb_levels(1.0, 1.0, 1.0, 0, 0), -0.5);
  EXPECT_DOUBLE_EQ(coulomb_levels(1.0, 1.0, 1.0, 1, 0), -0.125);
  EXPECT_DOUBLE_EQ(coulomb_levels(1.0, 1.0, 1.0, 0, 1), -0.125);
  EXPECT_NEAR(coulomb_levels(4.0 * 0.5 / 3.0, 0.75, 1.0, 0, 0), -1.0 / 6.0, 1e-15);
  EXPECT_THROW(coulomb_levels(0.0, 1.0, 1.0, 0, 0), DomainError);
}

TEST(OscillatorLevels, Exact) {
  EXPECT_DOUBLE_EQ(oscillator_levels(1.0, 1.0, 0, 0), 1.5);
  EXPECT_DOUBLE_EQ(oscillator_levels(1.0, 1.0, 1, 2), 5.5);
  EXPECT_THROW(oscillator_levels(-1.0, 1.0, 0, 0), DomainError);
}

TEST(OscillatorLevels, FrequencyOfTheTruncatedGaussian) {
  const auto p = charmonium(0);
  const double omega = p.sigma * std::sqrt(2.0 * std::abs(spin_coupling(p)) / reduced_mass(p.m_q, p.m_qbar));
  EXPECT_NEAR(omega, 0.944223939579731, 1e-14);
}

TEST(KratzerLevels, Examples) {
  EXPECT_DOUBLE_EQ(kratzer_levels({0.0, 2.0, 0.0, 0.7}, 0), 1.0);
  EXPECT_DOUBLE_EQ(kratzer_levels({2.0, 4.0, 0.0, 0.7}, 0), 1.0);
}

TEST(KratzerLevels, DecreasesTowardZero) {
  double prev = kratzer_levels({2.0, 4.0, 0.0, 0.7}, 0);
  for (int n = 1; n < 200; ++n) {
    const double c = kratzer_levels({2.0, 4.0, 0.0, 0.7}, n);
    EXPECT_LT(c, prev);
    EXPECT_GT(c, 0.0);
    prev = c;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(KratzerLevels, ReducesToCoulombForm) {
  Draw draw;
  for (int i = 0; i < 100; ++i) {
    const double B = draw.uniform(0.1, 20.0);
    const int n = draw.integer(0, 30);
    EXPECT_EQ(kratzer_levels({0.0, B, 0.0, 0.7}, n), B * B / (4.0 * (n + 1.0) * (n + 1.0)));
  }
}

TEST(KratzerLevels, Errors) {
  EXPECT_THROW(kratzer_levels({-0.3, 2.0, 0.0, 0.7}, 0), FallToCenterError);
  EXPECT_THROW(kratzer_levels({1.0, 0.0, 0.0, 0.7}, 0), NoBoundStateError);
  EXPECT_THROW(kratzer_levels({1.0, -1.0, 0.0, 0.7}, 0), NoBoundStateError);
  // A fall to center is itself a missing bound state.
  EXPECT_THROW(kratzer_levels({-0.3, 2.0, 0.0, 0.7}, 0), NoBoundStateError);
}

TEST(OEASpectrum, DegenerateWithoutGamma1) {
  const OEAGammas g{2.5, 0.0, 1.7};
  for (int n = 0; n < 10; ++n) EXPECT_EQ(oea_spectrum(g, 0.75, 1.0, n), 2.5);
}

TEST(OEASpectrum, IncreasesTowardGamma0) {
  const OEAGammas g{4.0, 9.0, 3.2};
  double prev = oea_spectrum(g, 0.75, 1.0, 0);
  for (int n = 1; n < 500; ++n) {
    const double e = oea_spectrum(g, 0.75, 1.0, n);
    EXPECT_GT(e, prev);
    EXPECT_LT(e, g.Gamma0);
    prev = e;
  }
  EXPECT_NEAR(prev, g.Gamma0, 1e-3);
}

TEST(OEASpectrum, SingularDenominator) {
  EXPECT_THROW(oea_spectrum({1.0, 1.0, 0.0}, 1.0, 1.0, 0), SingularInputError);
  EXPECT_THROW(oea_spectrum({1.0, 1.0, 1.0}, 1.0, 1.0, -1), DomainError);
}

TEST(OEASpectrum, GammaMapsReproduceKratzerConstant) {
  Draw draw;
  for (int i = 0; i < 1000; ++i) {
    const KratzerCoefficients k{draw.uniform(-0.25, 20.0), draw.uniform(0.01, 30.0), draw.uniform(-10.0, 10.0), 0.7};
    const double cs = draw.uniform(-1.0, 1.0);
    const double mu = draw.uniform(0.1, 5.0);
    const double hbar = draw.uniform(0.5, 2.0);
    const int n = draw.integer(0, 50);
    const auto g = oea_gammas(k, cs, mu, hbar);
    const double kinetic = hbar * hbar / (2.0 * mu);
    const double direct = cs + kinetic * (k.W - k.B * k.B / (4.0 * (n + g.Gamma2) * (n + g.Gamma2)));
    EXPECT_NEAR(oea_spectrum(g, mu, hbar, n), direct, 1e-12 * std::max(1.0, std::abs(direct)));
    EXPECT_NEAR(oea_spectrum(g, mu, hbar, n), cs + kinetic * (k.W - kratzer_levels(k, n)),
                1e-12 * std::max(1.0, std::abs(direct)));
    EXPECT_GE(g.Gamma2, 0.5);
  }
}

TEST(OEASpectrum, CharmoniumChainFrozen) {
  // Independent high-precision evaluation of the chain at delta = 0.7, l = 0.
  const auto chain = build_oea_chain(charmonium(0), 0, 0.7);
  EXPECT_NEAR(chain.kratzer.effective_l(), 2.17808493628901, 1e-12);
  EXPECT_NEAR(chain.gammas.Gamma0, 4.40241524456313, 1e-12);
  EXPECT_NEAR(chain.gammas.Gamma1, 9.38292481309932, 1e-12);
  EXPECT_NEAR(chain.gammas.Gamma2, 3.17808493628901, 1e-12);
  const double expected[] = {1.13370261815878, 2.51114664867889, 3.17109959151745, 3.53744734392788};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(chain.level(n), expected[n], 1e-12);
}

TEST(OEASpectrum, TripletChainFallsToCenter) {
  EXPECT_THROW(build_oea_chain(charmonium(1), 0, 0.7), FallToCenterError);
}
