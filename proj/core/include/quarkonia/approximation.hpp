#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "quarkonia/closed_form.hpp"
#include "quarkonia/model.hpp"

namespace quarkonia {

inline constexpr double kDefaultDelta = 0.7;

/// Coefficients of the radial equation rewritten in q = 1/r:
///   psi_qq + (2/q) psi_q + q^-4 (eps + a q - c/q + d/q^2 - L q^2) psi = 0,
/// with eps = (2 mu / hbar^2)(E - C_s).
struct QTransformCoeffs {
  double a = 0.0;
  double c = 0.0;
  double d = 0.0;
  int L = 0;                    ///< l (l + 1)
  double epsilon_scale = 0.0;   ///< 2 mu / hbar^2
  double epsilon_offset = 0.0;  ///< C_s

  double epsilon(double energy) const { return epsilon_scale * (energy - epsilon_offset); }
  double energy(double epsilon) const { return epsilon_offset + epsilon / epsilon_scale; }
};

/// Derived from the truncated potential: a = (2mu/hbar^2)(4 alpha_s / 3), c = (2mu/hbar^2) b,
/// d = (2mu/hbar^2) C_s sigma^2.
QTransformCoeffs q_transform(const QuarkoniumParams& params, int l);

using TestFunction = std::function<double(double)>;

enum class DifferenceScheme {
  central,     ///< second order
  richardson,  ///< central differences at h and h/2 combined, fourth order
};

struct ResidualMismatch {
  double max_abs = 0.0;
  double max_rel = 0.0;  ///< relative to the magnitude of the largest residual term
};

/// Compares the radial-equation residual of `test_function` at r = 1/q with q^4 times the
/// residual of the transformed equation for phi(q) = test_function(1/q). Derivatives come from
/// finite differences with step `step`; the mismatch vanishes at the order of the scheme.
ResidualMismatch residual_oracle(const QuarkoniumParams& params, int l, double energy,
                                 const TestFunction& test_function, std::span<const double> q_points,
                                 double step = 1e-4, DifferenceScheme scheme = DifferenceScheme::richardson);

enum class ExpansionKind { inverse, inverse_square };

/// Second-order expansion about q = delta:
///   inverse:        coeff (3/delta - 3q/delta^2 + q^2/delta^3)       ~ coeff / q
///   inverse_square: coeff (6/delta^2 - 8q/delta^3 + 3q^2/delta^4)    ~ coeff / q^2
double taylor_quadratic(ExpansionKind kind, double coeff, double delta, double q);

struct ExpansionRow {
  double q = 0.0;
  double exact_inv = 0.0;
  double approx_inv = 0.0;
  double rel_err_inv = 0.0;
  double exact_invsq = 0.0;
  double approx_invsq = 0.0;
  double rel_err_invsq = 0.0;
};

std::vector<ExpansionRow> expansion_error_table(double delta, std::span<const double> q_grid);

/// Header "q,exact_inv,approx_inv,rel_err_inv,exact_invsq,approx_invsq,rel_err_invsq".
std::string expansion_table_to_csv(std::span<const ExpansionRow> rows);

/// `points` evenly spaced values in [lo, hi].
std::vector<double> linspace(double lo, double hi, int points);

/// Collects powers of q after substituting the expansions:
/// A = L + c/delta^3 - 3d/delta^4, B = a + 3c/delta^2 - 8d/delta^3, W = 3c/delta - 6d/delta^2.
KratzerCoefficients assemble_kratzer(const QTransformCoeffs& coeffs, double delta);

/// Residual of psi_qq + (2/q) psi_q + q^-4 (-A q^2 + B q - C) psi against the r-space
/// equation psi'' + (B/r - A/r^2 - C) psi, at each r in `r_points`.
ResidualMismatch back_transform_check(const KratzerCoefficients& kratzer, double C,
                                      const TestFunction& test_function, std::span<const double> r_points,
                                      double step = 1e-4, DifferenceScheme scheme = DifferenceScheme::richardson);

/// Every stage of the approximation chain for one channel.
struct OEAChain {
  double spin_coupling = 0.0;
  QTransformCoeffs transform;
  KratzerCoefficients kratzer;
  OEAGammas gammas;
  Kinematics kin;

  double level(int n) const { return oea_spectrum(gammas, kin.mu, kin.hbar, n); }
};

/// Throws FallToCenterError when the expanded 1/r^2 coefficient is too attractive.
OEAChain build_oea_chain(const QuarkoniumParams& params, int l, double delta = kDefaultDelta);

}  // namespace quarkonia
