#include "quarkonia/closed_form.hpp"

#include <cmath>

#include "quarkonia/errors.hpp"

namespace quarkonia {

double KratzerCoefficients::effective_l() const {
  const double disc = 1.0 + 4.0 * A;
  if (disc < 0.0) throw FallToCenterError("Kratzer coefficients with 1 + 4A < 0: fall to center");
  return 0.5 * (-1.0 + std::sqrt(disc));
}

double coulomb_levels(double k, double mu, double hbar, int n_r, int l) {
  if (!(k > 0.0)) throw DomainError("coulomb_levels: k must be positive");
  if (n_r < 0 || l < 0) throw DomainError("coulomb_levels: quantum numbers must be non-negative");
  const double N = n_r + l + 1.0;
  return -mu * k * k / (2.0 * hbar * hbar * N * N);
}

double oscillator_levels(double omega, double hbar, int n_r, int l) {
  if (!(omega > 0.0)) throw DomainError("oscillator_levels: omega must be positive");
  if (n_r < 0 || l < 0) throw DomainError("oscillator_levels: quantum numbers must be non-negative");
  return hbar * omega * (2.0 * n_r + l + 1.5);
}

double kratzer_levels(const KratzerCoefficients& coeffs, int n_r) {
  if (n_r < 0) throw DomainError("kratzer_levels: n_r must be non-negative");
  const double lambda = coeffs.effective_l();
  if (!(coeffs.B > 0.0)) throw NoBoundStateError("kratzer_levels: B <= 0 has no bound states");
  const double N = n_r + lambda + 1.0;
  return coeffs.B * coeffs.B / (4.0 * N * N);
}

double oea_spectrum(const OEAGammas& g, double mu, double hbar, int n) {
  if (n < 0) throw DomainError("oea_spectrum: n must be non-negative");
  const double denom = n + g.Gamma2;
  if (denom == 0.0) throw SingularInputError("oea_spectrum: n + Gamma2 = 0");
  const double ratio = g.Gamma1 / denom;
  return g.Gamma0 - mu / (2.0 * hbar * hbar) * ratio * ratio;
}

OEAGammas oea_gammas(const KratzerCoefficients& coeffs, double spin_coupling, double mu, double hbar) {
  const double kinetic = hbar * hbar / (2.0 * mu);
  return {spin_coupling + kinetic * coeffs.W, kinetic * coeffs.B, coeffs.effective_l() + 1.0};
}

}  // namespace quarkonia
