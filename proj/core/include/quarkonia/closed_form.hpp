#pragma once

namespace quarkonia {

/// Coefficients of psi'' + (B/r - A/r^2 - C) psi = 0 obtained from the quadratic expansion,
/// together with the constant W that combines with the scaled energy into C = W - epsilon.
struct KratzerCoefficients {
  double A = 0.0;      ///< 1/r^2 coefficient, centrifugal part included
  double B = 0.0;      ///< 1/r coefficient, inverse length
  double W = 0.0;      ///< inverse length^2
  double delta = 0.0;  ///< expansion point in q = 1/r

  /// Lambda = (-1 + sqrt(1 + 4A)) / 2, the effective angular momentum. Throws FallToCenterError.
  double effective_l() const;
};

/// Spectrum E(n) = Gamma0 - (mu / 2 hbar^2) (Gamma1 / (n + Gamma2))^2.
struct OEAGammas {
  double Gamma0 = 0.0;  ///< energy
  double Gamma1 = 0.0;  ///< energy * length
  double Gamma2 = 0.0;  ///< dimensionless
};

/// -mu k^2 / (2 hbar^2 N^2), N = n_r + l + 1.
double coulomb_levels(double k, double mu, double hbar, int n_r, int l);

/// hbar omega (2 n_r + l + 3/2).
double oscillator_levels(double omega, double hbar, int n_r, int l);

/// Eigen-constant C = B^2 / (4 N^2), N = n_r + Lambda + 1, for which the Kratzer equation has a
/// normalizable solution with n_r nodes. Throws FallToCenterError (1 + 4A < 0) or
/// NoBoundStateError (B <= 0).
double kratzer_levels(const KratzerCoefficients& coeffs, int n_r);

double oea_spectrum(const OEAGammas& gammas, double mu, double hbar, int n);

/// Gamma0 = C_s + (hbar^2 / 2 mu) W, Gamma1 = hbar^2 B / (2 mu), Gamma2 = Lambda + 1.
/// These reproduce C_s + (hbar^2 / 2 mu)(W - kratzer_levels(coeffs, n)).
OEAGammas oea_gammas(const KratzerCoefficients& coeffs, double spin_coupling, double mu, double hbar);

}  // namespace quarkonia
