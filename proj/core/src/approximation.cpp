#include "quarkonia/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quarkonia/errors.hpp"
#include "quarkonia/format.hpp"

namespace quarkonia {

namespace {

struct Derivatives {
  double first = 0.0;
  double second = 0.0;
};

Derivatives central(const TestFunction& f, double x, double h) {
  const double fp = f(x + h);
  const double f0 = f(x);
  const double fm = f(x - h);
  return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

Derivatives differentiate(const TestFunction& f, double x, double h, DifferenceScheme scheme) {
  const auto coarse = central(f, x, h);
  if (scheme == DifferenceScheme::central) return coarse;
  const auto fine = central(f, x, 0.5 * h);
  return {(4.0 * fine.first - coarse.first) / 3.0, (4.0 * fine.second - coarse.second) / 3.0};
}

void require_positive_step(double step) {
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
}

}  // namespace

QTransformCoeffs q_transform(const QuarkoniumParams& params, int l) {
  if (l < 0) throw DomainError("q_transform: l must be non-negative");
  const double cs = spin_coupling(params);
  const double scale = 2.0 * reduced_mass(params.m_q, params.m_qbar) / (params.hbar * params.hbar);
  QTransformCoeffs t;
  t.a = scale * 4.0 * params.alpha_s / 3.0;
  t.c = scale * params.b;
  t.d = scale * cs * params.sigma * params.sigma;
  t.L = l * (l + 1);
  t.epsilon_scale = scale;
  t.epsilon_offset = cs;
  return t;
}

ResidualMismatch residual_oracle(const QuarkoniumParams& params, int l, double energy,
                                 const TestFunction& test_function, std::span<const double> q_points,
                                 double step, DifferenceScheme scheme) {
  require_positive_step(step);
  const auto t = q_transform(params, l);
  const Kinematics kin = kinematics(params);
  const PotentialSpec truncated = potential::TruncatedOEA{params};
  const double eps = t.epsilon(energy);
  const TestFunction in_q = [&test_function](double q) { return test_function(1.0 / q); };

  ResidualMismatch out;
  for (double q : q_points) {
    if (!(q > 0.0)) throw DomainError("residual_oracle: q points must be positive");
    const double r = 1.0 / q;

    // psi'' + [(2mu/hbar^2)(E - V) - l(l+1)/r^2] psi, straight from the potential.
    const double f = test_function(r);
    const auto dr = differentiate(test_function, r, step, scheme);
    const double radial_coeff =
        t.epsilon_scale * (energy - evaluate_potential(truncated, r, kin)) - l * (l + 1.0) / (r * r);
    const double radial = dr.second + radial_coeff * f;

    const double g = in_q(q);
    const auto dq = differentiate(in_q, q, step * q * q, scheme);
    const double bracket = eps + t.a * q - t.c / q + t.d / (q * q) - t.L * q * q;
    const double transformed = dq.second + 2.0 / q * dq.first + bracket * g / std::pow(q, 4);

    const double mismatch = std::abs(radial - std::pow(q, 4) * transformed);
    const double size = std::max({std::abs(dr.second), std::abs(radial_coeff * f), 1e-300});
    out.max_abs = std::max(out.max_abs, mismatch);
    out.max_rel = std::max(out.max_rel, mismatch / size);
  }
  return out;
}

double taylor_quadratic(ExpansionKind kind, double coeff, double delta, double q) {
  if (!(delta > 0.0)) throw DomainError("taylor_quadratic: delta must be positive");
  const double d2 = delta * delta;
  const double d3 = d2 * delta;
  if (kind == ExpansionKind::inverse) return coeff * (3.0 / delta - 3.0 * q / d2 + q * q / d3);
  return coeff * (6.0 / d2 - 8.0 * q / d3 + 3.0 * q * q / (d2 * d2));
}

std::vector<ExpansionRow> expansion_error_table(double delta, std::span<const double> q_grid) {
  if (!(delta > 0.0)) throw DomainError("expansion_error_table: delta must be positive");
  std::vector<ExpansionRow> rows;
  rows.reserve(q_grid.size());
  for (double q : q_grid) {
    if (!(q > 0.0)) throw DomainError("expansion_error_table: q must be positive");
    ExpansionRow row;
    row.q = q;
    row.exact_inv = 1.0 / q;
    row.approx_inv = taylor_quadratic(ExpansionKind::inverse, 1.0, delta, q);
    row.rel_err_inv = std::abs(row.approx_inv - row.exact_inv) / row.exact_inv;
    row.exact_invsq = 1.0 / (q * q);
    row.approx_invsq = taylor_quadratic(ExpansionKind::inverse_square, 1.0, delta, q);
    row.rel_err_invsq = std::abs(row.approx_invsq - row.exact_invsq) / row.exact_invsq;
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(), [](const ExpansionRow& a, const ExpansionRow& b) { return a.q < b.q; });
  return rows;
}

std::string expansion_table_to_csv(std::span<const ExpansionRow> rows) {
  std::ostringstream out;
  out << "q,exact_inv,approx_inv,rel_err_inv,exact_invsq,approx_invsq,rel_err_invsq\n";
  for (const auto& r : rows) {
    out << format_number(r.q) << ',' << format_number(r.exact_inv) << ',' << format_number(r.approx_inv) << ','
        << format_number(r.rel_err_inv) << ',' << format_number(r.exact_invsq) << ','
        << format_number(r.approx_invsq) << ',' << format_number(r.rel_err_invsq) << '\n';
  }
  return out.str();
}

std::vector<double> linspace(double lo, double hi, int points) {
  if (points < 2) throw DomainError("linspace: need at least two points");
  std::vector<double> out(points);
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = lo + i * h;
  out.back() = hi;
  return out;
}

KratzerCoefficients assemble_kratzer(const QTransformCoeffs& t, double delta) {
  if (!(delta > 0.0)) throw DomainError("assemble_kratzer: delta must be positive");
  const double d2 = delta * delta;
  const double d3 = d2 * delta;
  const double d4 = d2 * d2;
  KratzerCoefficients k;
  k.A = t.L + t.c / d3 - 3.0 * t.d / d4;
  k.B = t.a + 3.0 * t.c / d2 - 8.0 * t.d / d3;
  k.W = 3.0 * t.c / delta - 6.0 * t.d / d2;
  k.delta = delta;
  return k;
}

ResidualMismatch back_transform_check(const KratzerCoefficients& kratzer, double C,
                                      const TestFunction& test_function, std::span<const double> r_points,
                                      double step, DifferenceScheme scheme) {
  require_positive_step(step);
  const TestFunction in_q = [&test_function](double q) { return test_function(1.0 / q); };
  const double A = kratzer.A;
  const double B = kratzer.B;

  ResidualMismatch out;
  for (double r : r_points) {
    if (!(r > 0.0)) throw DomainError("back_transform_check: r points must be positive");
    const double q = 1.0 / r;

    const double f = test_function(r);
    const auto dr = differentiate(test_function, r, step, scheme);
    const double radial_coeff = B / r - A / (r * r) - C;
    const double radial = dr.second + radial_coeff * f;

    const double g = in_q(q);
    const auto dq = differentiate(in_q, q, step * q * q, scheme);
    const double transformed = dq.second + 2.0 / q * dq.first + (-A * q * q + B * q - C) * g / std::pow(q, 4);

    const double mismatch = std::abs(radial - std::pow(q, 4) * transformed);
    const double size = std::max({std::abs(dr.second), std::abs(radial_coeff * f), 1e-300});
    out.max_abs = std::max(out.max_abs, mismatch);
    out.max_rel = std::max(out.max_rel, mismatch / size);
  }
  return out;
}

OEAChain build_oea_chain(const QuarkoniumParams& params, int l, double delta) {
  OEAChain chain;
  chain.spin_coupling = spin_coupling(params);
  chain.transform = q_transform(params, l);
  chain.kratzer = assemble_kratzer(chain.transform, delta);
  chain.kin = kinematics(params);
  chain.gammas = oea_gammas(chain.kratzer, chain.spin_coupling, chain.kin.mu, chain.kin.hbar);
  return chain;
}

}  // namespace quarkonia
