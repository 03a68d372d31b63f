#include <gtest/gtest.h>

#include <cmath>

#include "quarkonia/approximation.hpp"
#include "quarkonia/errors.hpp"
#include "test_support.hpp"

using namespace quarkonia;
using quarkonia::testing::charmonium;
using quarkonia::testing::Draw;

namespace {

double inv(double q) { return 1.0 / q; }
double invsq(double q) { return 1.0 / (q * q); }

}  // namespace

TEST(QTransform, CharmoniumCoefficients) {
  const auto t = q_transform(charmonium(0), 0);
  EXPECT_NEAR(t.a, 1.0, 1e-15);
  EXPECT_NEAR(t.c, 0.225, 1e-15);
  EXPECT_NEAR(t.d, -0.501501852042450, 1e-14);
  EXPECT_EQ(t.L, 0);
  EXPECT_DOUBLE_EQ(t.epsilon_scale, 1.5);
  EXPECT_NEAR(t.energy(t.epsilon(0.37)), 0.37, 1e-15);
}

TEST(QTransform, SpecialCases) {
  auto p = charmonium(0);
  p.b = 0.0;
  EXPECT_EQ(q_transform(p, 0).c, 0.0);
  EXPECT_EQ(q_transform(charmonium(0), 1).L, 2);
  EXPECT_EQ(q_transform(charmonium(0), 3).L, 12);
  EXPECT_THROW(q_transform(charmonium(0), -1), DomainError);
}

TEST(QTransform, SignInvariants) {
  Draw draw;
  for (int i = 0; i < 200; ++i) {
    const auto p = draw.params(draw.integer(0, 1));
    const auto t = q_transform(p, draw.integer(0, 4));
    EXPECT_GT(t.a, 0.0);
    EXPECT_GT(t.c, 0.0);
    EXPECT_EQ(std::signbit(t.d), std::signbit(spin_coupling(p)));
  }
}

TEST(ResidualOracle, ExponentialTestFunction) {
  const std::vector<double> q{0.5, 1.0, 2.0};
  const auto m = residual_oracle(charmonium(0), 0, 0.8, [](double r) { return std::exp(-r); }, q);
  EXPECT_LT(m.max_rel, 1e-6);
}

TEST(ResidualOracle, SecondOrderUnderStepHalving) {
  const std::vector<double> q{0.5, 1.0, 2.0};
  auto f = [](double r) { return std::exp(-r); };
  const auto coarse = residual_oracle(charmonium(0), 1, 0.8, f, q, 0.02, DifferenceScheme::central);
  const auto fine = residual_oracle(charmonium(0), 1, 0.8, f, q, 0.01, DifferenceScheme::central);
  EXPECT_NEAR(std::log2(coarse.max_abs / fine.max_abs), 2.0, 0.15);
}

TEST(ResidualOracle, ConstantTestFunctionIsExact) {
  const std::vector<double> q{0.3, 0.9, 2.7};
  const auto m = residual_oracle(charmonium(1), 2, -0.4, [](double) { return 1.7; }, q);
  EXPECT_LT(m.max_rel, 1e-12);
}

TEST(ResidualOracle, RandomGaussians) {
  Draw draw;
  for (int i = 0; i < 25; ++i) {
    const auto p = draw.params(draw.integer(0, 1));
    const double width = draw.uniform(0.3, 2.0);
    const double centre = draw.uniform(0.5, 3.0);
    auto f = [=](double r) { return r * std::exp(-width * (r - centre) * (r - centre)); };
    const std::vector<double> q{draw.uniform(0.3, 1.0), draw.uniform(1.0, 3.0)};
    const auto m = residual_oracle(p, draw.integer(0, 3), draw.uniform(-1.0, 3.0), f, q);
    EXPECT_LT(m.max_rel, 1e-6);
  }
}

TEST(ResidualOracle, RejectsBadInput) {
  const std::vector<double> bad{0.0};
  EXPECT_THROW(residual_oracle(charmonium(), 0, 0.0, inv, bad), DomainError);
  const std::vector<double> good{1.0};
  EXPECT_THROW(residual_oracle(charmonium(), 0, 0.0, inv, good, 0.0), DomainError);
}

TEST(TaylorQuadratic, TangencyValues) {
  const double c = 0.225;
  const double d = -0.5015;
  EXPECT_NEAR(taylor_quadratic(ExpansionKind::inverse, c, 0.7, 0.7), c / 0.7, 1e-15);
  EXPECT_NEAR(taylor_quadratic(ExpansionKind::inverse_square, d, 0.7, 0.7), d / 0.49, 1e-14);
}

TEST(TaylorQuadratic, TwiceTheExpansionPoint) {
  for (double delta : {0.3, 0.7, 1.9}) {
    const double approx = taylor_quadratic(ExpansionKind::inverse, 1.0, delta, 2.0 * delta);
    EXPECT_NEAR(approx, 1.0 / delta, 1e-13 / delta);
    EXPECT_NEAR(approx / inv(2.0 * delta), 2.0, 1e-13);
  }
}

TEST(TaylorQuadratic, FigureDiscrepancyAtTwo) {
  // 3/0.7 - 6/0.49 + 4/0.343, evaluated with mpmath
  EXPECT_NEAR(taylor_quadratic(ExpansionKind::inverse, 1.0, 0.7, 2.0), 3.70262390670554, 1e-13);
}

TEST(TaylorQuadratic, DerivativesMatchAtExpansionPoint) {
  const double delta = 0.7;
  const double h = 1e-4;
  auto check = [&](ExpansionKind kind, double (*exact)(double)) {
    auto approx = [&](double q) { return taylor_quadratic(kind, 1.0, delta, q); };
    const double d1a = (approx(delta + h) - approx(delta - h)) / (2 * h);
    const double d1e = (exact(delta + h) - exact(delta - h)) / (2 * h);
    const double d2a = (approx(delta + h) - 2 * approx(delta) + approx(delta - h)) / (h * h);
    const double d2e = (exact(delta + h) - 2 * exact(delta) + exact(delta - h)) / (h * h);
    EXPECT_NEAR(d1a / d1e, 1.0, 1e-6);
    EXPECT_NEAR(d2a / d2e, 1.0, 1e-6);
  };
  check(ExpansionKind::inverse, inv);
  check(ExpansionKind::inverse_square, invsq);
}

TEST(TaylorQuadratic, CubicRemainder) {
  const double delta = 0.7;
  for (double e : {1e-2, 5e-3, 2.5e-3}) {
    const double q = delta + e;
    // 1/q - approx = -(q - delta)^3 / (delta^3 q) exactly.
    const double rem = inv(q) - taylor_quadratic(ExpansionKind::inverse, 1.0, delta, q);
    EXPECT_NEAR(rem / (e * e * e), -1.0 / (delta * delta * delta * q), 1e-5);
  }
}

TEST(TaylorQuadratic, DivergesFarFromTangency) {
  const double delta = 0.7;
  const double q = 10.0 * delta;
  EXPECT_GT(taylor_quadratic(ExpansionKind::inverse, 1.0, delta, q) / inv(q), 500.0);
}

TEST(TaylorQuadratic, RejectsNonPositiveDelta) {
  EXPECT_THROW(taylor_quadratic(ExpansionKind::inverse, 1.0, 0.0, 1.0), DomainError);
  EXPECT_THROW(taylor_quadratic(ExpansionKind::inverse_square, 1.0, -1.0, 1.0), DomainError);
}

TEST(ExpansionTable, RowsAndCsv) {
  const std::vector<double> grid{1.4, 0.7, 0.01};
  const auto rows = expansion_error_table(0.7, grid);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].q, 0.01);
  EXPECT_NEAR(rows[1].rel_err_inv, 0.0, 1e-14);
  EXPECT_NEAR(rows[1].rel_err_invsq, 0.0, 1e-14);
  EXPECT_NEAR(rows[2].approx_inv, 1.0 / 0.7, 1e-13);
  EXPECT_NEAR(rows[2].exact_inv, 1.0 / 1.4, 1e-15);
  // Near q = 0 the approximations stay finite while 1/q and 1/q^2 blow up.
  EXPECT_LT(rows[0].approx_inv / rows[0].exact_inv, 0.05);
  EXPECT_LT(rows[0].approx_invsq / rows[0].exact_invsq, 0.002);

  const std::string csv = expansion_table_to_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "q,exact_inv,approx_inv,rel_err_inv,exact_invsq,approx_invsq,rel_err_invsq");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(ExpansionTable, RejectsNonPositive) {
  const std::vector<double> bad{0.5, -0.1};
  EXPECT_THROW(expansion_error_table(0.7, bad), DomainError);
  const std::vector<double> good{0.5};
  EXPECT_THROW(expansion_error_table(0.0, good), DomainError);
}

TEST(Linspace, Endpoints) {
  const auto g = linspace(0.05, 3.0, 200);
  ASSERT_EQ(g.size(), 200u);
  EXPECT_EQ(g.front(), 0.05);
  EXPECT_EQ(g.back(), 3.0);
  EXPECT_THROW(linspace(0.0, 1.0, 1), DomainError);
}

TEST(AssembleKratzer, NothingToExpand) {
  QTransformCoeffs t;
  t.a = 1.3;
  t.L = 6;
  const auto k = assemble_kratzer(t, 0.7);
  EXPECT_EQ(k.A, 6.0);
  EXPECT_EQ(k.B, 1.3);
  EXPECT_EQ(k.W, 0.0);
}

TEST(AssembleKratzer, CharmoniumFrozen) {
  const auto k = assemble_kratzer(q_transform(charmonium(0), 0), 0.7);
  EXPECT_NEAR(k.A, 6.92213892597813, 1e-12);
  EXPECT_NEAR(k.B, 14.0743872196490, 1e-12);
  EXPECT_NEAR(k.W, 7.10512471888714, 1e-12);
  EXPECT_EQ(k.delta, 0.7);
}

TEST(AssembleKratzer, SingletContributionsArePositive) {
  auto t = q_transform(charmonium(0), 0);
  ASSERT_LT(t.d, 0.0);
  const auto with_d = assemble_kratzer(t, 0.7);
  t.d = 0.0;
  const auto without_d = assemble_kratzer(t, 0.7);
  EXPECT_GT(with_d.A, without_d.A);
  EXPECT_GT(with_d.B, without_d.B);
  EXPECT_GT(with_d.W, without_d.W);
}

TEST(AssembleKratzer, CollectsPowersOfQ) {
  // eps + a q - [c/q]_2 + [d/q^2]_2 - L q^2 must equal -A q^2 + B q - (W - eps) for every q.
  Draw draw;
  for (int i = 0; i < 200; ++i) {
    const auto p = draw.params(draw.integer(0, 1));
    const auto t = q_transform(p, draw.integer(0, 3));
    const double delta = draw.uniform(0.2, 2.0);
    const auto k = assemble_kratzer(t, delta);
    const double eps = draw.uniform(-5.0, 5.0);
    for (double q : {draw.uniform(0.05, 4.0), draw.uniform(0.05, 4.0)}) {
      const double expanded = eps + t.a * q - taylor_quadratic(ExpansionKind::inverse, t.c, delta, q) +
                              taylor_quadratic(ExpansionKind::inverse_square, t.d, delta, q) - t.L * q * q;
      const double kratzer = -k.A * q * q + k.B * q - (k.W - eps);
      EXPECT_NEAR(expanded, kratzer, 1e-10 * (1.0 + std::abs(expanded)));
    }
  }
}

TEST(BackTransform, ConstantAndExponential) {
  const KratzerCoefficients k{6.9, 14.1, 7.1, 0.7};
  const std::vector<double> r{0.3, 1.0, 2.5};
  EXPECT_LT(back_transform_check(k, 2.0, [](double) { return 0.4; }, r).max_rel, 1e-12);
  EXPECT_LT(back_transform_check(k, 2.0, [](double x) { return std::exp(-x); }, r).max_rel, 1e-6);
}

TEST(BackTransform, FourthOrderWithRichardson) {
  const KratzerCoefficients k{2.0, 4.0, 0.0, 0.7};
  const std::vector<double> r{0.8, 1.6};
  auto f = [](double x) { return x * x * std::exp(-x); };
  const auto coarse = back_transform_check(k, 1.0, f, r, 0.1, DifferenceScheme::richardson);
  const auto fine = back_transform_check(k, 1.0, f, r, 0.05, DifferenceScheme::richardson);
  EXPECT_NEAR(std::log2(coarse.max_abs / fine.max_abs), 4.0, 0.3);
}

TEST(BuildChain, ConsistentWithStages) {
  const auto p = charmonium(0);
  const auto chain = build_oea_chain(p, 1, 0.9);
  EXPECT_EQ(chain.transform.L, 2);
  EXPECT_EQ(chain.kratzer.delta, 0.9);
  EXPECT_DOUBLE_EQ(chain.spin_coupling, spin_coupling(p));
  EXPECT_DOUBLE_EQ(chain.level(3), oea_spectrum(chain.gammas, chain.kin.mu, chain.kin.hbar, 3));
}
