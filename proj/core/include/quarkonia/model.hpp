#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quarkonia {

/// Physical inputs of a quark-antiquark system in natural units
/// (energies in GeV, lengths in GeV^-1, hbar = 1 unless overridden).
struct QuarkoniumParams {
  double alpha_s = 0.0;  ///< strong coupling
  double b = 0.0;        ///< string tension, GeV^2
  double sigma = 0.0;    ///< smearing of the spin-spin contact term, GeV
  double m_q = 0.0;
  double m_qbar = 0.0;
  int s = 0;             ///< total spin, 0 (singlet) or 1 (triplet)
  double hbar = 1.0;

  bool operator==(const QuarkoniumParams&) const = default;
};

/// Throws DomainError unless alpha_s > 0, sigma >= 0, both masses > 0, hbar > 0 and s in {0, 1}.
void validate(const QuarkoniumParams& params);

double reduced_mass(double m_q, double m_qbar);

/// Spin-spin coupling strength C_s of the Gaussian contact term.
/// Negative for singlets, positive for triplets, zero when sigma = 0.
double spin_coupling(const QuarkoniumParams& params);

/// Mass and action constant a potential needs when it is expressed in
/// hbar^2/(2 mu) units (Kratzer) or through a frequency (oscillator).
struct Kinematics {
  double mu = 1.0;
  double hbar = 1.0;

  /// hbar^2 / (2 mu)
  double kinetic_scale() const { return hbar * hbar / (2.0 * mu); }
};

Kinematics kinematics(const QuarkoniumParams& params);

namespace potential {

/// -4 alpha_s / (3 r) + b r + C_s exp(-sigma^2 r^2)
struct CornellSpin {
  QuarkoniumParams params;
};

/// Gaussian replaced by its second-order expansion:
/// C_s - 4 alpha_s / (3 r) + b r - C_s sigma^2 r^2
struct TruncatedOEA {
  QuarkoniumParams params;
};

/// (hbar^2 / 2 mu) (A / r^2 - B / r). A includes any centrifugal contribution.
struct KratzerEffective {
  double A = 0.0;
  double B = 0.0;
};

/// -k / r
struct Coulomb {
  double k = 0.0;
};

/// mu omega^2 r^2 / 2
struct Oscillator {
  double omega = 0.0;
};

/// Sampled potential with monotone cubic (PCHIP) interpolation.
/// Evaluation outside [r.front(), r.back()] is a DomainError.
class Tabulated {
public:
  Tabulated(std::vector<double> r, std::vector<double> values);

  double operator()(double r) const;
  double r_front() const { return r_.front(); }
  double r_back() const { return r_.back(); }
  std::span<const double> radii() const { return r_; }
  std::span<const double> values() const { return values_; }

private:
  struct Interpolant;
  std::vector<double> r_;
  std::vector<double> values_;
  std::shared_ptr<const Interpolant> interpolant_;
};

}  // namespace potential

using PotentialSpec =
    std::variant<potential::CornellSpin, potential::TruncatedOEA, potential::KratzerEffective,
                 potential::Coulomb, potential::Oscillator, potential::Tabulated>;

/// Pointwise potential energy. `ctx` is only consulted by the Kratzer and oscillator variants.
double evaluate_potential(const PotentialSpec& spec, double r, const Kinematics& ctx = {});

/// Coefficients of the singular terms of (2 mu / hbar^2) V(r) at the origin:
/// inverse_square / r^2 + inverse_linear / r + O(1).
struct OriginBehavior {
  double inverse_square = 0.0;
  double inverse_linear = 0.0;
};

OriginBehavior origin_behavior(const PotentialSpec& spec, const Kinematics& ctx);

struct FeasibilityReport {
  bool bounded_below = false;
  bool confining = false;
  std::string reason;
};

/// Large-r analysis of the Cornell and truncated potentials. Other variants raise UnsupportedSpecError.
FeasibilityReport boundedness_check(const PotentialSpec& spec);

std::string variant_name(const PotentialSpec& spec);

/// JSON object with keys alpha_s, b, sigma, m_q, m_qbar, s, hbar (hbar optional on input).
std::string params_to_json(const QuarkoniumParams& params);
QuarkoniumParams params_from_json(std::string_view text);
QuarkoniumParams load_params(const std::string& path);

}  // namespace quarkonia
