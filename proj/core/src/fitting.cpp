#include "quarkonia/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "json.hpp"
#include "quarkonia/errors.hpp"
#include "quarkonia/format.hpp"

namespace quarkonia {

namespace {

constexpr double kInfeasible = std::numeric_limits<double>::infinity();

double& slot(QuarkoniumParams& p, FitParameter which) {
  switch (which) {
    case FitParameter::alpha_s: return p.alpha_s;
    case FitParameter::b: return p.b;
    case FitParameter::sigma: return p.sigma;
    case FitParameter::m_q: return p.m_q;
    case FitParameter::m_qbar: return p.m_qbar;
  }
  throw InputError("unknown fit parameter");
}

using Point = std::vector<double>;

struct Vertex {
  Point x;
  double f = kInfeasible;
};

/// Observations in a canonical order so the objective sum does not depend on input order.
std::vector<std::size_t> canonical_order(std::span<const MesonObservation> obs) {
  std::vector<std::size_t> idx(obs.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = obs[a];
    const auto& y = obs[b];
    return std::tie(x.s, x.l, x.n_r, x.mass, x.weight, x.label) < std::tie(y.s, y.l, y.n_r, y.mass, y.weight, y.label);
  });
  return idx;
}

class Objective {
public:
  Objective(std::span<const MesonObservation> obs, const QuarkoniumParams& base, std::span<const FitParameter> free,
            Backend backend, const BackendOptions& options)
      : obs_(obs), order_(canonical_order(obs)), base_(base), free_(free.begin(), free.end()), backend_(backend),
        options_(options) {}

  QuarkoniumParams params_at(const Point& x) const {
    QuarkoniumParams p = base_;
    for (std::size_t i = 0; i < free_.size(); ++i) slot(p, free_[i]) = x[i];
    return p;
  }

  double operator()(const Point& x) const {
    for (double v : x) {
      if (!std::isfinite(v)) return kInfeasible;
    }
    const QuarkoniumParams p = params_at(x);
    try {
      validate(p);
      double sum = 0.0;
      for (std::size_t i : order_) {
        const auto& o = obs_[i];
        const double r = mass_model(p, backend_, o.n_r, o.l, o.s, options_) - o.mass;
        sum += o.weight * r * r;
      }
      return std::isfinite(sum) ? sum : kInfeasible;
    } catch (const Error&) {
      return kInfeasible;
    }
  }

private:
  std::span<const MesonObservation> obs_;
  std::vector<std::size_t> order_;
  QuarkoniumParams base_;
  std::vector<FitParameter> free_;
  Backend backend_;
  BackendOptions options_;
};

std::vector<Vertex> initial_simplex(const Point& start, const Objective& f) {
  std::vector<Vertex> simplex;
  simplex.push_back({start, f(start)});
  for (std::size_t i = 0; i < start.size(); ++i) {
    Point x = start;
    x[i] += std::max(0.05 * std::abs(start[i]), 1e-3);
    simplex.push_back({x, f(x)});
  }
  return simplex;
}

double relative_diameter(const std::vector<Vertex>& simplex) {
  const Point& best = simplex.front().x;
  double diameter = 0.0;
  for (std::size_t v = 1; v < simplex.size(); ++v) {
    for (std::size_t j = 0; j < best.size(); ++j) {
      const double scale = std::max(std::abs(best[j]), 1e-12);
      diameter = std::max(diameter, std::abs(simplex[v].x[j] - best[j]) / scale);
    }
  }
  return diameter;
}

Point along(const Point& from, const Point& to, double t) {
  Point out(from.size());
  for (std::size_t j = 0; j < from.size(); ++j) out[j] = from[j] + t * (to[j] - from[j]);
  return out;
}

struct RunOutcome {
  std::vector<Vertex> simplex;
  int iterations = 0;
  bool converged = false;
};

RunOutcome nelder_mead(std::vector<Vertex> simplex, const Objective& f, const FitConfig& cfg, int budget,
                       std::vector<double>& trace) {
  const std::size_t n = simplex.size() - 1;
  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };

  RunOutcome out;
  for (;;) {
    order();
    if (relative_diameter(simplex) < cfg.tolerance) {
      out.converged = true;
      break;
    }
    if (out.iterations >= budget) break;
    ++out.iterations;
    trace.push_back(simplex.front().f);

    Point centroid(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[v].x[j] / static_cast<double>(n);
    }
    Vertex& worst = simplex.back();
    const double f_best = simplex.front().f;
    const double f_second = simplex[n - 1].f;

    const Point xr = along(centroid, worst.x, -cfg.reflection);
    const double fr = f(xr);
    if (fr < f_best) {
      const Point xe = along(centroid, xr, cfg.expansion);
      const double fe = f(xe);
      worst = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
      continue;
    }
    if (fr < f_second) {
      worst = {xr, fr};
      continue;
    }
    if (fr < worst.f) {
      const Point xc = along(centroid, xr, cfg.contraction);
      const double fc = f(xc);
      if (fc <= fr) {
        worst = {xc, fc};
        continue;
      }
    } else {
      const Point xc = along(centroid, worst.x, cfg.contraction);
      const double fc = f(xc);
      if (fc < worst.f) {
        worst = {xc, fc};
        continue;
      }
    }
    for (std::size_t v = 1; v <= n; ++v) {
      simplex[v].x = along(simplex.front().x, simplex[v].x, cfg.shrink);
      simplex[v].f = f(simplex[v].x);
    }
  }
  out.simplex = std::move(simplex);
  return out;
}

}  // namespace

Backend parse_backend(std::string_view name) {
  if (name == "cornell-numerov") return Backend::cornell_numerov;
  if (name == "truncated-numerov") return Backend::truncated_numerov;
  if (name == "oea-closed-form") return Backend::oea_closed_form;
  throw InputError("unknown backend '" + std::string(name) + "'");
}

std::string backend_name(Backend backend) {
  switch (backend) {
    case Backend::cornell_numerov: return "cornell-numerov";
    case Backend::truncated_numerov: return "truncated-numerov";
    case Backend::oea_closed_form: return "oea-closed-form";
  }
  return "unknown";
}

double binding_energy(const QuarkoniumParams& params, Backend backend, int n_r, int l, int s,
                      const BackendOptions& options) {
  QuarkoniumParams p = params;
  p.s = s;
  validate(p);
  switch (backend) {
    case Backend::cornell_numerov:
      return find_eigenvalue(potential::CornellSpin{p}, p, l, n_r, options.solver).energy;
    case Backend::truncated_numerov:
      return find_eigenvalue(potential::TruncatedOEA{p}, p, l, n_r, options.solver).energy;
    case Backend::oea_closed_form:
      return build_oea_chain(p, l, options.delta).level(n_r);
  }
  throw InputError("unknown backend");
}

double mass_model(const QuarkoniumParams& params, Backend backend, int n_r, int l, int s,
                  const BackendOptions& options) {
  return params.m_q + params.m_qbar + binding_energy(params, backend, n_r, l, s, options);
}

std::vector<MesonObservation> observations_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("observations: invalid JSON: ") + e.what());
  }
  if (!j.is_array()) throw InputError("observations: expected a JSON array");
  std::vector<MesonObservation> out;
  for (const auto& item : j) {
    try {
      MesonObservation o;
      o.label = item.at("label").get<std::string>();
      o.n_r = item.at("n_r").get<int>();
      o.l = item.at("l").get<int>();
      o.s = item.at("s").get<int>();
      o.mass = item.at("mass").get<double>();
      if (item.contains("weight")) o.weight = item.at("weight").get<double>();
      if (!(o.mass > 0.0)) throw InputError("observation '" + o.label + "': mass must be positive");
      if (o.n_r < 0 || o.l < 0 || o.s < 0) {
        throw InputError("observation '" + o.label + "': quantum numbers must be non-negative");
      }
      if (!(o.weight > 0.0)) throw InputError("observation '" + o.label + "': weight must be positive");
      out.push_back(std::move(o));
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("observations: ") + e.what());
    }
  }
  return out;
}

std::string observations_to_json(std::span<const MesonObservation> observations) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& o : observations) {
    j.push_back({{"label", o.label}, {"n_r", o.n_r}, {"l", o.l}, {"s", o.s}, {"mass", o.mass}, {"weight", o.weight}});
  }
  return j.dump(2) + "\n";
}

FitParameter parse_fit_parameter(std::string_view name) {
  if (name == "alpha_s") return FitParameter::alpha_s;
  if (name == "b") return FitParameter::b;
  if (name == "sigma") return FitParameter::sigma;
  if (name == "m_q") return FitParameter::m_q;
  if (name == "m_qbar") return FitParameter::m_qbar;
  throw InputError("unknown fit parameter '" + std::string(name) + "'");
}

std::string fit_parameter_name(FitParameter parameter) {
  switch (parameter) {
    case FitParameter::alpha_s: return "alpha_s";
    case FitParameter::b: return "b";
    case FitParameter::sigma: return "sigma";
    case FitParameter::m_q: return "m_q";
    case FitParameter::m_qbar: return "m_qbar";
  }
  return "unknown";
}

FitResult fit(std::span<const MesonObservation> observations, const QuarkoniumParams& initial,
              std::span<const FitParameter> free, Backend backend, const FitConfig& config) {
  if (observations.empty()) throw InputError("fit: no observations");
  if (free.empty()) throw InputError("fit: no free parameters");
  for (std::size_t i = 0; i < free.size(); ++i) {
    for (std::size_t j = i + 1; j < free.size(); ++j) {
      if (free[i] == free[j]) throw InputError("fit: parameter listed twice");
    }
  }
  if (config.max_iterations < 1 || !(config.tolerance > 0.0)) throw InputError("fit: invalid configuration");

  const Objective objective(observations, initial, free, backend, config.backend);
  Point start(free.size());
  {
    QuarkoniumParams p = initial;
    for (std::size_t i = 0; i < free.size(); ++i) start[i] = slot(p, free[i]);
  }

  auto simplex = initial_simplex(start, objective);
  if (std::all_of(simplex.begin(), simplex.end(), [](const Vertex& v) { return !std::isfinite(v.f); })) {
    throw InfeasibleStartError("fit: every vertex of the initial simplex is infeasible");
  }

  FitResult result;
  auto run = nelder_mead(std::move(simplex), objective, config, config.max_iterations, result.trace);
  result.iterations = run.iterations;
  for (int r = 0; r < config.restarts && result.iterations < config.max_iterations; ++r) {
    const Vertex best = run.simplex.front();
    auto next = nelder_mead(initial_simplex(best.x, objective), objective, config,
                            config.max_iterations - result.iterations, result.trace);
    result.iterations += next.iterations;
    run = std::move(next);
    if (run.simplex.front().f > best.f) {  // keep the better optimum
      run.simplex.front() = best;
    }
  }

  const Vertex& best = run.simplex.front();
  result.params = objective.params_at(best.x);
  result.free.assign(free.begin(), free.end());
  result.objective = best.f;
  result.converged = run.converged;
  result.simplex_diameter = relative_diameter(run.simplex);
  result.underdetermined = free.size() > observations.size();
  for (const auto& o : observations) {
    double model = std::numeric_limits<double>::quiet_NaN();
    try {
      model = mass_model(result.params, backend, o.n_r, o.l, o.s, config.backend);
    } catch (const Error&) {
    }
    result.model_masses.push_back(model);
    result.residuals.push_back(model - o.mass);
  }
  return result;
}

std::string fit_report_json(const FitResult& result, std::span<const MesonObservation> observations,
                            Backend backend) {
  auto num = [](double v) -> nlohmann::ordered_json {
    if (!std::isfinite(v)) return nullptr;
    return round_to_exported(v);
  };
  nlohmann::ordered_json j;
  j["backend"] = backend_name(backend);
  const auto& p = result.params;
  j["params"] = {{"alpha_s", num(p.alpha_s)}, {"b", num(p.b)},   {"sigma", num(p.sigma)}, {"m_q", num(p.m_q)},
                 {"m_qbar", num(p.m_qbar)},   {"s", p.s},        {"hbar", num(p.hbar)}};
  j["free"] = nlohmann::ordered_json::array();
  for (auto f : result.free) j["free"].push_back(fit_parameter_name(f));
  j["objective"] = num(result.objective);
  j["iterations"] = result.iterations;
  j["converged"] = result.converged;
  j["underdetermined"] = result.underdetermined;
  j["residuals"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < observations.size(); ++i) {
    const auto& o = observations[i];
    j["residuals"].push_back({{"label", o.label},
                              {"n_r", o.n_r},
                              {"l", o.l},
                              {"s", o.s},
                              {"mass", num(o.mass)},
                              {"model", num(result.model_masses[i])},
                              {"residual", num(result.residuals[i])}});
  }
  return j.dump(2) + "\n";
}

}  // namespace quarkonia
