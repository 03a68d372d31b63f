#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quarkonia/model.hpp"

namespace quarkonia {

/// r_max = buffer * (outer classical turning point) for confining potentials,
/// max(50 / kappa, 20) for potentials with a Coulomb tail.
struct AdaptiveRange {
  double buffer = 2.5;
};

struct FixedRange {
  double r_max = 0.0;
};

struct SolverConfig {
  double r_min = 1e-6;
  std::variant<AdaptiveRange, FixedRange> r_max_policy = AdaptiveRange{};
  int grid_points = 20000;
  double energy_tolerance = 1e-10;  ///< relative bracket width
  int max_bisections = 200;
  std::optional<std::pair<double, double>> energy_bracket;

  /// Throws InputError on r_min <= 0, r_max <= r_min, fewer than 100 points,
  /// non-positive tolerance or a degenerate bracket.
  void validate() const;
};

/// Outward Numerov propagation at a trial energy.
struct TrialSolution {
  std::vector<double> r;
  std::vector<double> psi;  ///< rescaled to stay below 1e150
  double terminal_value = 0.0;  ///< psi(r_max) in the rescaled units; its sign is meaningful
  double log_scale = 0.0;       ///< natural log of the factor removed by rescaling
  int nodes = 0;
};

struct Eigensolution {
  int n_r = 0;
  int l = 0;
  int s = 0;
  double energy = 0.0;
  int nodes_observed = 0;
  bool converged = false;
  std::vector<double> r;
  std::vector<double> wavefunction;  ///< reduced radial function u(r), unit norm
  double norm_residual = 0.0;
  double r_max = 0.0;
  int bisections = 0;
};

struct SpectrumEntry {
  int n_r = 0;
  int l = 0;
  int s = 0;
  double energy = 0.0;
  int nodes = 0;
  bool converged = false;
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  ///< sorted by (l, n_r)
  std::vector<std::string> diagnostics;
};

/// Integrates psi'' = (2 mu / hbar^2)(V_eff - E) psi outward from r_min, starting from the
/// Frobenius form r^(Lambda+1) (1 + c r) of the regular solution.
TrialSolution integrate_numerov(const PotentialSpec& spec, const QuarkoniumParams& params, int l,
                                double energy, const SolverConfig& config = {});

/// Bound state with `n_r` radial nodes in partial wave `l`, located by bisection on the node
/// count of the outward solution. Throws NoBoundStateError or ConvergenceError.
Eigensolution find_eigenvalue(const PotentialSpec& spec, const QuarkoniumParams& params, int l, int n_r,
                              const SolverConfig& config = {});

/// All channels n_r <= n_r_max, l <= l_max. Failing channels only add a diagnostic.
Spectrum solve_spectrum(const PotentialSpec& spec, const QuarkoniumParams& params, int l_max, int n_r_max,
                        const SolverConfig& config = {});

/// Header "n_r,l,s,E,nodes,converged".
std::string spectrum_to_csv(const Spectrum& spectrum);

/// Header "r,psi". `stride` > 1 thins the grid.
std::string wavefunction_to_csv(const Eigensolution& solution, int stride = 1);

}  // namespace quarkonia
