#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quarkonia/approximation.hpp"
#include "quarkonia/model.hpp"
#include "quarkonia/numerov.hpp"

namespace quarkonia {

enum class Backend { cornell_numerov, truncated_numerov, oea_closed_form };

/// "cornell-numerov", "truncated-numerov" or "oea-closed-form".
Backend parse_backend(std::string_view name);
std::string backend_name(Backend backend);

struct BackendOptions {
  double delta = kDefaultDelta;
  SolverConfig solver;
};

/// Binding energy E(n_r, l) in spin channel `s` from the chosen backend.
double binding_energy(const QuarkoniumParams& params, Backend backend, int n_r, int l, int s,
                      const BackendOptions& options = {});

/// M = m_q + m_qbar + E(n_r, l, s). Unbound channels raise NoBoundStateError.
double mass_model(const QuarkoniumParams& params, Backend backend, int n_r, int l, int s,
                  const BackendOptions& options = {});

struct MesonObservation {
  std::string label;
  int n_r = 0;
  int l = 0;
  int s = 0;
  double mass = 0.0;
  double weight = 1.0;

  bool operator==(const MesonObservation&) const = default;
};

/// JSON array of {label, n_r, l, s, mass, weight}; weight defaults to 1.
std::vector<MesonObservation> observations_from_json(std::string_view text);
std::string observations_to_json(std::span<const MesonObservation> observations);

enum class FitParameter { alpha_s, b, sigma, m_q, m_qbar };

FitParameter parse_fit_parameter(std::string_view name);
std::string fit_parameter_name(FitParameter parameter);

struct FitConfig {
  BackendOptions backend;
  int max_iterations = 500;
  double tolerance = 1e-6;  ///< relative simplex diameter
  int restarts = 1;         ///< fresh simplexes built around the optimum after convergence
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
};

struct FitResult {
  QuarkoniumParams params;
  std::vector<FitParameter> free;
  double objective = 0.0;  ///< sum of w (M_model - M_obs)^2
  int iterations = 0;
  bool converged = false;
  bool underdetermined = false;         ///< more free parameters than observations
  std::vector<double> model_masses;     ///< in input order
  std::vector<double> residuals;        ///< M_model - M_obs, input order
  std::vector<double> trace;            ///< best objective at the start of every iteration
  double simplex_diameter = 0.0;
};

/// Weighted least-squares fit with a Nelder-Mead simplex on the free parameters. Trial points
/// outside the parameter domain, or with unbound channels, score +infinity.
/// Throws InputError (no observations, no free parameters) or InfeasibleStartError.
FitResult fit(std::span<const MesonObservation> observations, const QuarkoniumParams& initial,
              std::span<const FitParameter> free, Backend backend, const FitConfig& config = {});

std::string fit_report_json(const FitResult& result, std::span<const MesonObservation> observations,
                            Backend backend);

}  // namespace quarkonia
