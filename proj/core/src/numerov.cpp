#include "quarkonia/numerov.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "quarkonia/errors.hpp"
#include "quarkonia/format.hpp"

namespace quarkonia {

namespace {

constexpr double kRescaleThreshold = 1e150;
constexpr double kRescaleFactor = 1e-150;
constexpr int kMaxRangeIterations = 40;
constexpr double kCoulombRangeCap = 1e6;
constexpr double kTailDecay = 25.0;  // WKB exponent past the turning point, psi ~ e^-25

enum class Regime { confining, coulomb_tail, box };

/// One partial wave of one potential, with everything the propagator needs precomputed.
struct Channel {
  PotentialSpec spec;
  Kinematics kin;
  int l = 0;
  double scale = 0.0;        // 2 mu / hbar^2
  double start_power = 1.0;  // Lambda + 1
  double start_slope = 0.0;  // c in r^(Lambda+1) exp(c r)
  Regime regime = Regime::confining;

  double veff(double r) const {
    return evaluate_potential(spec, r, kin) + l * (l + 1.0) / (scale * r * r);
  }
};

Channel make_channel(const PotentialSpec& spec, const QuarkoniumParams& params, int l) {
  if (l < 0) throw DomainError("orbital quantum number must be non-negative");
  validate(params);

  Channel ch{spec, kinematics(params), l};
  ch.scale = 2.0 * ch.kin.mu / (ch.kin.hbar * ch.kin.hbar);

  if (std::holds_alternative<potential::CornellSpin>(spec) ||
      std::holds_alternative<potential::TruncatedOEA>(spec)) {
    const auto report = boundedness_check(spec);
    if (!report.bounded_below) throw NoBoundStateError(report.reason);
    ch.regime = report.confining ? Regime::confining : Regime::coulomb_tail;
  } else if (const auto* k = std::get_if<potential::KratzerEffective>(&spec)) {
    if (!(k->B > 0.0)) throw NoBoundStateError("Kratzer potential without attractive 1/r term (B <= 0)");
    ch.regime = Regime::coulomb_tail;
  } else if (const auto* c = std::get_if<potential::Coulomb>(&spec)) {
    if (!(c->k > 0.0)) throw NoBoundStateError("repulsive Coulomb potential (k <= 0)");
    ch.regime = Regime::coulomb_tail;
  } else if (const auto* o = std::get_if<potential::Oscillator>(&spec)) {
    if (!(o->omega > 0.0)) throw DomainError("oscillator frequency must be positive");
    ch.regime = Regime::confining;
  } else {
    ch.regime = Regime::box;
  }

  const auto origin = origin_behavior(spec, ch.kin);
  const double inverse_square = l * (l + 1.0) + origin.inverse_square;
  const double disc = 1.0 + 4.0 * inverse_square;
  if (disc < 0.0) throw FallToCenterError("inverse-square attraction below -1/4: fall to center");
  ch.start_power = 0.5 * (1.0 + std::sqrt(disc));
  ch.start_slope = origin.inverse_linear / (2.0 * ch.start_power);
  return ch;
}

struct Grid {
  std::vector<double> r;
  std::vector<double> g0;  // (2 mu / hbar^2) V_eff(r)
  double h = 0.0;
};

Grid make_grid(const Channel& ch, double r_lo, double r_hi, int points) {
  Grid g;
  g.h = (r_hi - r_lo) / (points - 1);
  g.r.resize(points);
  g.g0.resize(points);
  for (int i = 0; i < points; ++i) {
    g.r[i] = (i == points - 1) ? r_hi : r_lo + i * g.h;
    g.g0[i] = ch.scale * ch.veff(g.r[i]);
    if (!std::isfinite(g.g0[i])) throw DomainError("effective potential is not finite on the grid");
  }
  return g;
}

int sign_changes(double prev, double next) { return (prev > 0.0 && next < 0.0) || (prev < 0.0 && next > 0.0); }

struct Propagation {
  int nodes = 0;
  double terminal = 0.0;
  double log_scale = 0.0;
};

/// Outward Numerov sweep over grid indices [0, last]. When `store` is non-null it receives psi.
Propagation propagate_outward(const Channel& ch, const Grid& g, double scaled_energy, std::size_t last,
                              std::vector<double>* store) {
  const double h2 = g.h * g.h / 12.0;
  auto w = [&](std::size_t i) { return 1.0 - h2 * (g.g0[i] - scaled_energy); };
  auto start = [&](double r) { return std::pow(r, ch.start_power) * std::exp(ch.start_slope * r); };

  Propagation out;
  double prev = start(g.r[0]);
  double cur = start(g.r[1]);
  if (store) {
    store->assign(last + 1, 0.0);
    (*store)[0] = prev;
    (*store)[1] = cur;
  }
  double last_sign = cur != 0.0 ? cur : prev;
  double w_prev = w(0);
  double w_cur = w(1);
  for (std::size_t i = 1; i < last; ++i) {
    const double w_next = w(i + 1);
    double next = ((12.0 - 10.0 * w_cur) * cur - w_prev * prev) / w_next;
    if (std::abs(next) > kRescaleThreshold) {
      next *= kRescaleFactor;
      cur *= kRescaleFactor;
      out.log_scale -= std::log(kRescaleFactor);
      if (store) {
        for (std::size_t k = 0; k <= i; ++k) (*store)[k] *= kRescaleFactor;
      }
    }
    if (next != 0.0) {
      out.nodes += sign_changes(last_sign, next);
      last_sign = next;
    }
    if (store) (*store)[i + 1] = next;
    prev = cur;
    cur = next;
    w_prev = w_cur;
    w_cur = w_next;
  }
  out.terminal = cur;
  return out;
}

/// Inward sweep from psi(r_max) = 0 down to index `first`; fills store[first..N-1].
void propagate_inward(const Grid& g, double scaled_energy, std::size_t first, std::vector<double>& store) {
  const std::size_t n = g.r.size();
  const double h2 = g.h * g.h / 12.0;
  auto w = [&](std::size_t i) { return 1.0 - h2 * (g.g0[i] - scaled_energy); };
  store.assign(n, 0.0);
  store[n - 1] = 0.0;
  store[n - 2] = 1.0;
  for (std::size_t i = n - 2; i > first; --i) {
    double next = ((12.0 - 10.0 * w(i)) * store[i] - w(i + 1) * store[i + 1]) / w(i - 1);
    if (std::abs(next) > kRescaleThreshold) {
      next *= kRescaleFactor;
      for (std::size_t k = i; k < n; ++k) store[k] *= kRescaleFactor;
    }
    store[i - 1] = next;
  }
}

/// Largest r with V_eff(r) = E, or nullopt when E lies below V_eff everywhere scanned.
std::optional<double> outer_turning_point(const Channel& ch, double energy, double r_lo) {
  double far = 1.0;
  for (int k = 0; k < 200; ++k, far *= 2.0) {
    const double v1 = ch.veff(far);
    const double v2 = ch.veff(2.0 * far);
    if (v1 > energy && v2 > energy && v2 >= v1) break;
    if (far > 1e12) return std::nullopt;
  }
  constexpr int kScan = 4000;
  const double ratio = std::log(far / r_lo) / kScan;
  for (int k = kScan; k > 0; --k) {
    const double lo = r_lo * std::exp((k - 1) * ratio);
    if (ch.veff(lo) <= energy) {
      double a = lo;
      double b = r_lo * std::exp(k * ratio);
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        (ch.veff(mid) <= energy ? a : b) = mid;
      }
      return 0.5 * (a + b);
    }
  }
  return std::nullopt;
}

double grid_start(const Channel& ch, const SolverConfig& cfg) {
  if (const auto* t = std::get_if<potential::Tabulated>(&ch.spec)) return std::max(cfg.r_min, t->r_front());
  return cfg.r_min;
}

double clamp_to_table(const Channel& ch, double r_max) {
  if (const auto* t = std::get_if<potential::Tabulated>(&ch.spec)) return std::min(r_max, t->r_back());
  return r_max;
}

/// integral of kappa = sqrt(2 mu (V_eff - E)) / hbar from r_t to r.
double wkb_exponent(const Channel& ch, double energy, double r_t, double r) {
  constexpr int kSteps = 256;
  const double dr = (r - r_t) / kSteps;
  double sum = 0.0;
  for (int k = 0; k <= kSteps; ++k) {
    const double excess = std::max(0.0, ch.veff(r_t + k * dr) - energy);
    sum += (k == 0 || k == kSteps ? 0.5 : 1.0) * std::sqrt(ch.scale * excess);
  }
  return sum * dr;
}

/// r_max the adaptive policy assigns to a trial energy.
double adaptive_r_max(const Channel& ch, const SolverConfig& cfg, double buffer, double energy) {
  switch (ch.regime) {
    case Regime::box:
      return std::get<potential::Tabulated>(ch.spec).r_back();
    case Regime::coulomb_tail:
      if (energy < 0.0) {
        const double kappa = std::sqrt(2.0 * ch.kin.mu * -energy) / ch.kin.hbar;
        return std::max(50.0 / kappa, 20.0);
      }
      return 20.0;
    case Regime::confining: {
      const auto turning = outer_turning_point(ch, energy, cfg.r_min);
      if (!turning) return 20.0;
      // buffer * r_t alone leaves ~1e-5 of the peak at the wall for shallow low-lying states.
      double r = std::max(buffer * *turning, 10.0 * cfg.r_min);
      for (int k = 0; k < 60 && wkb_exponent(ch, energy, *turning, r) < kTailDecay; ++k) r *= 1.25;
      return r;
    }
  }
  return 20.0;
}

struct LevelSearch {
  double energy = 0.0;
  int bisections = 0;
};

LevelSearch bisect_level(const Channel& ch, const Grid& g, int n_r, const SolverConfig& cfg) {
  const std::size_t last = g.r.size() - 1;
  auto nodes = [&](double e) { return propagate_outward(ch, g, ch.scale * e, last, nullptr).nodes; };

  double lo = 0.0;
  double hi = 0.0;
  if (cfg.energy_bracket) {
    std::tie(lo, hi) = *cfg.energy_bracket;
    if (nodes(lo) > n_r) {
      throw NoBoundStateError("energy bracket lower end lies above the level with " + std::to_string(n_r) +
                              " nodes");
    }
    if (nodes(hi) <= n_r) {
      throw NoBoundStateError("no bound state with " + std::to_string(n_r) + " nodes in the energy bracket");
    }
  } else {
    // The first sample only enters through w_0 psi_0 with psi_0 ~ r_min^(Lambda+1), so the singular
    // V_eff(r_min) is left out. Far below the grid minimum the Numerov weight 1 - h^2 g / 12 turns
    // negative in the forbidden region and the recurrence fakes nodes.
    lo = *std::min_element(g.g0.begin() + 1, g.g0.end()) / ch.scale;
    if (nodes(lo) > n_r) {
      throw ConvergenceError("grid too coarse to resolve the level with " + std::to_string(n_r) + " nodes");
    }
    double span = std::max(1.0, std::abs(lo));
    hi = lo + span;
    int doublings = 0;
    while (nodes(hi) <= n_r) {
      if (++doublings > 200) {
        throw NoBoundStateError("could not bracket the level with " + std::to_string(n_r) + " nodes");
      }
      span *= 2.0;
      hi = lo + span;
    }
  }

  int steps = 0;
  bool converged = false;
  for (; steps < cfg.max_bisections; ++steps) {
    if (hi - lo <= cfg.energy_tolerance * std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()})) {
      converged = true;
      break;
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {  // bracket at floating-point resolution
      converged = true;
      break;
    }
    (nodes(mid) > n_r ? hi : lo) = mid;
  }
  if (!converged) {
    throw ConvergenceError("eigenvalue bisection did not reach the requested tolerance in " +
                           std::to_string(cfg.max_bisections) + " steps");
  }
  return {0.5 * (lo + hi), steps};
}

double simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 3) return 0.0;
  // Simpson on an even number of intervals, trapezoid on a leftover one.
  const std::size_t m = (n - 1) % 2 == 0 ? n : n - 1;
  double sum = f[0] + f[m - 1];
  for (std::size_t i = 1; i + 1 < m; ++i) sum += (i % 2 ? 4.0 : 2.0) * f[i];
  double total = sum * h / 3.0;
  if (m != n) total += 0.5 * h * (f[n - 2] + f[n - 1]);
  return total;
}

double trapezoid(const std::vector<double>& f, double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += (i == 0 || i + 1 == f.size() ? 0.5 : 1.0) * f[i];
  return sum * h;
}

Eigensolution build_solution(const Channel& ch, const Grid& g, int n_r, const LevelSearch& level) {
  const double scaled = ch.scale * level.energy;
  const std::size_t n = g.r.size();

  std::size_t match = n / 2;
  for (std::size_t i = n; i-- > 0;) {
    if (g.g0[i] < scaled) {
      match = i;
      break;
    }
  }
  match = std::clamp<std::size_t>(match, 2, n - 3);

  std::vector<double> outward;
  propagate_outward(ch, g, scaled, match, &outward);
  std::vector<double> inward;
  propagate_inward(g, scaled, match, inward);

  std::vector<double> psi(n);
  const double join = inward[match] != 0.0 ? outward[match] / inward[match] : 0.0;
  for (std::size_t i = 0; i < n; ++i) psi[i] = i <= match ? outward[i] : join * inward[i];

  std::vector<double> density(n);
  for (std::size_t i = 0; i < n; ++i) density[i] = psi[i] * psi[i];
  const double norm = simpson(density, g.h);
  const double inv = 1.0 / std::sqrt(norm);
  for (auto& v : psi) v *= inv;
  for (auto& v : density) v *= inv * inv;

  Eigensolution sol;
  sol.n_r = n_r;
  sol.l = ch.l;
  sol.energy = level.energy;
  sol.bisections = level.bisections;
  sol.r_max = g.r.back();
  sol.norm_residual = std::abs(trapezoid(density, g.h) - 1.0);
  double last_sign = 0.0;
  for (double v : psi) {
    if (v == 0.0) continue;
    sol.nodes_observed += last_sign != 0.0 && sign_changes(last_sign, v);
    last_sign = v;
  }
  sol.converged = sol.nodes_observed == n_r && sol.norm_residual < 1e-6;
  sol.r = g.r;
  sol.wavefunction = std::move(psi);
  return sol;
}

int spin_of(const PotentialSpec& spec, const QuarkoniumParams& params) {
  if (const auto* c = std::get_if<potential::CornellSpin>(&spec)) return c->params.s;
  if (const auto* t = std::get_if<potential::TruncatedOEA>(&spec)) return t->params.s;
  return params.s;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(r_min > 0.0)) throw InputError("solver: r_min must be positive");
  if (const auto* fixed = std::get_if<FixedRange>(&r_max_policy); fixed && !(fixed->r_max > r_min)) {
    throw InputError("solver: r_max must exceed r_min");
  }
  if (const auto* adaptive = std::get_if<AdaptiveRange>(&r_max_policy); adaptive && !(adaptive->buffer > 1.0)) {
    throw InputError("solver: turning-point buffer must exceed 1");
  }
  if (grid_points < 100) throw InputError("solver: need at least 100 grid points");
  if (!(energy_tolerance > 0.0)) throw InputError("solver: energy tolerance must be positive");
  if (max_bisections < 1) throw InputError("solver: max_bisections must be positive");
  if (energy_bracket && !(energy_bracket->first < energy_bracket->second)) {
    throw InputError("solver: degenerate energy bracket");
  }
}

TrialSolution integrate_numerov(const PotentialSpec& spec, const QuarkoniumParams& params, int l, double energy,
                                const SolverConfig& config) {
  config.validate();
  const Channel ch = make_channel(spec, params, l);
  double r_max = 0.0;
  if (const auto* fixed = std::get_if<FixedRange>(&config.r_max_policy)) {
    r_max = fixed->r_max;
  } else {
    r_max = adaptive_r_max(ch, config, std::get<AdaptiveRange>(config.r_max_policy).buffer, energy);
  }
  const Grid g = make_grid(ch, grid_start(ch, config), clamp_to_table(ch, r_max), config.grid_points);

  TrialSolution trial;
  const auto prop = propagate_outward(ch, g, ch.scale * energy, g.r.size() - 1, &trial.psi);
  trial.r = g.r;
  trial.terminal_value = prop.terminal;
  trial.log_scale = prop.log_scale;
  trial.nodes = prop.nodes;
  return trial;
}

Eigensolution find_eigenvalue(const PotentialSpec& spec, const QuarkoniumParams& params, int l, int n_r,
                              const SolverConfig& config) {
  config.validate();
  if (n_r < 0) throw DomainError("radial quantum number must be non-negative");
  const Channel ch = make_channel(spec, params, l);
  const double r_lo = grid_start(ch, config);

  if (const auto* fixed = std::get_if<FixedRange>(&config.r_max_policy)) {
    const Grid g = make_grid(ch, r_lo, clamp_to_table(ch, fixed->r_max), config.grid_points);
    auto sol = build_solution(ch, g, n_r, bisect_level(ch, g, n_r, config));
    sol.s = spin_of(spec, params);
    return sol;
  }

  const double buffer = std::get<AdaptiveRange>(config.r_max_policy).buffer;
  double r_max = clamp_to_table(ch, 20.0);
  if (ch.regime == Regime::box) r_max = std::get<potential::Tabulated>(ch.spec).r_back();

  for (int it = 0;; ++it) {
    const Grid g = make_grid(ch, r_lo, r_max, config.grid_points);
    const auto level = bisect_level(ch, g, n_r, config);

    double next = 0.0;
    if (ch.regime == Regime::coulomb_tail && level.energy >= 0.0) {
      next = 2.0 * r_max;
      if (next > kCoulombRangeCap) {
        throw NoBoundStateError("no bound state with " + std::to_string(n_r) +
                                " nodes below the continuum threshold");
      }
    } else {
      next = clamp_to_table(ch, adaptive_r_max(ch, config, buffer, level.energy));
    }

    if (std::abs(next - r_max) <= 1e-6 * r_max || it + 1 >= kMaxRangeIterations) {
      auto sol = build_solution(ch, g, n_r, level);
      sol.s = spin_of(spec, params);
      return sol;
    }
    r_max = next;
  }
}

Spectrum solve_spectrum(const PotentialSpec& spec, const QuarkoniumParams& params, int l_max, int n_r_max,
                        const SolverConfig& config) {
  struct ChannelResult {
    std::vector<SpectrumEntry> entries;
    std::vector<std::string> diagnostics;
  };

  std::vector<std::future<ChannelResult>> jobs;
  for (int l = 0; l <= l_max; ++l) {
    jobs.push_back(std::async(std::launch::async, [&, l] {
      ChannelResult out;
      for (int n_r = 0; n_r <= n_r_max; ++n_r) {
        try {
          const auto sol = find_eigenvalue(spec, params, l, n_r, config);
          out.entries.push_back({n_r, l, sol.s, sol.energy, sol.nodes_observed, sol.converged});
        } catch (const Error& e) {
          out.diagnostics.push_back("n_r=" + std::to_string(n_r) + " l=" + std::to_string(l) + ": " + e.what());
        }
      }
      return out;
    }));
  }

  Spectrum spectrum;
  for (auto& job : jobs) {
    auto part = job.get();
    spectrum.entries.insert(spectrum.entries.end(), part.entries.begin(), part.entries.end());
    spectrum.diagnostics.insert(spectrum.diagnostics.end(), part.diagnostics.begin(), part.diagnostics.end());
  }
  std::sort(spectrum.entries.begin(), spectrum.entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) { return std::tie(a.l, a.n_r) < std::tie(b.l, b.n_r); });
  return spectrum;
}

std::string spectrum_to_csv(const Spectrum& spectrum) {
  std::ostringstream out;
  out << "n_r,l,s,E,nodes,converged\n";
  for (const auto& e : spectrum.entries) {
    out << e.n_r << ',' << e.l << ',' << e.s << ',' << format_number(e.energy) << ',' << e.nodes << ','
        << (e.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string wavefunction_to_csv(const Eigensolution& solution, int stride) {
  if (stride < 1) throw InputError("wavefunction export: stride must be positive");
  std::ostringstream out;
  out << "r,psi\n";
  const std::size_t n = solution.r.size();
  for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(stride)) {
    out << format_number(solution.r[i]) << ',' << format_number(solution.wavefunction[i]) << '\n';
  }
  if (n > 0 && (n - 1) % static_cast<std::size_t>(stride) != 0) {
    out << format_number(solution.r[n - 1]) << ',' << format_number(solution.wavefunction[n - 1]) << '\n';
  }
  return out.str();
}

}  // namespace quarkonia
