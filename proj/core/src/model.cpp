#include "quarkonia/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

// pchip.hpp in Boost 1.74 calls unqualified isnan.
#include <math.h>

#include <boost/math/interpolators/pchip.hpp>

#include "json.hpp"
#include "quarkonia/errors.hpp"
#include "quarkonia/format.hpp"

namespace quarkonia {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double spin_factor(int s) { return s * (s + 1) - 1.5; }

}  // namespace

void validate(const QuarkoniumParams& p) {
  if (!(p.alpha_s > 0.0)) throw DomainError("alpha_s must be positive");
  if (!(p.sigma >= 0.0)) throw DomainError("sigma must be non-negative");
  if (!(p.m_q > 0.0) || !(p.m_qbar > 0.0)) throw DomainError("quark masses must be positive");
  if (!(p.hbar > 0.0)) throw DomainError("hbar must be positive");
  if (!std::isfinite(p.b)) throw DomainError("b must be finite");
  if (p.s != 0 && p.s != 1) throw DomainError("spin must be 0 or 1");
}

double reduced_mass(double m_q, double m_qbar) {
  if (!(m_q > 0.0) || !(m_qbar > 0.0)) throw DomainError("reduced_mass: masses must be positive");
  // m_q / (1 + m_q / m_qbar) keeps the heavy-partner limit finite.
  return m_q / (1.0 + m_q / m_qbar);
}

double spin_coupling(const QuarkoniumParams& p) {
  validate(p);
  const double smear = p.sigma / std::sqrt(std::numbers::pi);
  return 16.0 * p.alpha_s * std::numbers::pi * smear * smear * smear * spin_factor(p.s) /
         (9.0 * p.m_q * p.m_qbar);
}

Kinematics kinematics(const QuarkoniumParams& p) {
  return {reduced_mass(p.m_q, p.m_qbar), p.hbar};
}

namespace potential {

struct Tabulated::Interpolant {
  boost::math::interpolators::pchip<std::vector<double>> spline;
};

Tabulated::Tabulated(std::vector<double> r, std::vector<double> values)
    : r_(std::move(r)), values_(std::move(values)) {
  if (r_.size() != values_.size()) throw InputError("tabulated potential: size mismatch");
  if (r_.size() < 4) throw InputError("tabulated potential: need at least 4 samples");
  if (!(r_.front() > 0.0)) throw DomainError("tabulated potential: radii must be positive");
  for (std::size_t i = 1; i < r_.size(); ++i) {
    if (!(r_[i] > r_[i - 1])) throw InputError("tabulated potential: radii must increase strictly");
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw InputError("tabulated potential: non-finite sample");
  }
  auto x = r_;
  auto y = values_;
  interpolant_ = std::make_shared<const Interpolant>(
      Interpolant{boost::math::interpolators::pchip<std::vector<double>>(std::move(x), std::move(y))});
}

double Tabulated::operator()(double r) const {
  if (r < r_.front() || r > r_.back()) {
    throw DomainError("tabulated potential evaluated outside its sample range");
  }
  return interpolant_->spline(r);
}

}  // namespace potential

double evaluate_potential(const PotentialSpec& spec, double r, const Kinematics& ctx) {
  if (!(r > 0.0)) throw DomainError("potential evaluated at r <= 0");
  return std::visit(
      overloaded{
          [r](const potential::CornellSpin& v) {
            const auto& p = v.params;
            const double cs = spin_coupling(p);
            const double s2r2 = p.sigma * p.sigma * r * r;
            return -4.0 * p.alpha_s / (3.0 * r) + p.b * r + cs * std::exp(-s2r2);
          },
          [r](const potential::TruncatedOEA& v) {
            const auto& p = v.params;
            const double cs = spin_coupling(p);
            const double s2r2 = p.sigma * p.sigma * r * r;
            return cs - 4.0 * p.alpha_s / (3.0 * r) + p.b * r - cs * s2r2;
          },
          [r, &ctx](const potential::KratzerEffective& v) {
            return ctx.kinetic_scale() * (v.A / (r * r) - v.B / r);
          },
          [r](const potential::Coulomb& v) { return -v.k / r; },
          [r, &ctx](const potential::Oscillator& v) {
            return 0.5 * ctx.mu * v.omega * v.omega * r * r;
          },
          [r](const potential::Tabulated& v) { return v(r); },
      },
      spec);
}

OriginBehavior origin_behavior(const PotentialSpec& spec, const Kinematics& ctx) {
  const double scale = 2.0 * ctx.mu / (ctx.hbar * ctx.hbar);
  return std::visit(
      overloaded{
          [scale](const potential::CornellSpin& v) {
            return OriginBehavior{0.0, -scale * 4.0 * v.params.alpha_s / 3.0};
          },
          [scale](const potential::TruncatedOEA& v) {
            return OriginBehavior{0.0, -scale * 4.0 * v.params.alpha_s / 3.0};
          },
          [](const potential::KratzerEffective& v) { return OriginBehavior{v.A, -v.B}; },
          [scale](const potential::Coulomb& v) { return OriginBehavior{0.0, -scale * v.k}; },
          [](const potential::Oscillator&) { return OriginBehavior{}; },
          [](const potential::Tabulated&) { return OriginBehavior{}; },
      },
      spec);
}

FeasibilityReport boundedness_check(const PotentialSpec& spec) {
  if (const auto* v = std::get_if<potential::TruncatedOEA>(&spec)) {
    const auto& p = v->params;
    const double quad = spin_coupling(p) * p.sigma * p.sigma;  // coefficient of -r^2
    FeasibilityReport report;
    if (quad > 0.0) {
      report.reason =
          "truncated potential is unbounded from below: -C_s sigma^2 r^2 with C_s > 0 "
          "(triplet channel) has no bound states";
    } else if (quad < 0.0) {
      report.bounded_below = true;
      report.confining = true;
      report.reason = "-C_s sigma^2 r^2 with C_s < 0 confines";
    } else if (p.b > 0.0) {
      report.bounded_below = true;
      report.confining = true;
      report.reason = "no quadratic term; linear term b r confines";
    } else if (p.b == 0.0) {
      report.bounded_below = true;
      report.reason = "Coulomb tail only; bound states accumulate below C_s";
    } else {
      report.reason = "b < 0: potential unbounded from below";
    }
    return report;
  }
  if (const auto* v = std::get_if<potential::CornellSpin>(&spec)) {
    const auto& p = v->params;
    validate(p);
    FeasibilityReport report;
    if (p.b > 0.0) {
      report.bounded_below = true;
      report.confining = true;
      report.reason = "linear term b r dominates the Coulomb and the bounded Gaussian";
    } else if (p.b == 0.0) {
      report.bounded_below = true;
      report.reason = "no confinement; Coulomb tail supports a discrete series below 0";
    } else {
      report.reason = "b < 0: potential unbounded from below";
    }
    return report;
  }
  throw UnsupportedSpecError("boundedness_check supports the Cornell and truncated potentials only, got " +
                             variant_name(spec));
}

std::string variant_name(const PotentialSpec& spec) {
  return std::visit(overloaded{
                        [](const potential::CornellSpin&) { return std::string("cornell-spin"); },
                        [](const potential::TruncatedOEA&) { return std::string("truncated-oea"); },
                        [](const potential::KratzerEffective&) { return std::string("kratzer"); },
                        [](const potential::Coulomb&) { return std::string("coulomb"); },
                        [](const potential::Oscillator&) { return std::string("oscillator"); },
                        [](const potential::Tabulated&) { return std::string("tabulated"); },
                    },
                    spec);
}

std::string params_to_json(const QuarkoniumParams& p) {
  nlohmann::ordered_json j;
  j["alpha_s"] = p.alpha_s;
  j["b"] = p.b;
  j["sigma"] = p.sigma;
  j["m_q"] = p.m_q;
  j["m_qbar"] = p.m_qbar;
  j["s"] = p.s;
  j["hbar"] = p.hbar;
  return j.dump(2) + "\n";
}

QuarkoniumParams params_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("params: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("params: expected a JSON object");

  static const std::set<std::string> known{"alpha_s", "b", "sigma", "m_q", "m_qbar", "s", "hbar"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) throw InputError("params: unknown key '" + key + "'");
  }
  auto number = [&j](const char* key) {
    if (!j.contains(key)) throw InputError(std::string("params: missing key '") + key + "'");
    if (!j[key].is_number()) throw InputError(std::string("params: '") + key + "' must be a number");
    return j[key].get<double>();
  };

  QuarkoniumParams p;
  p.alpha_s = number("alpha_s");
  p.b = number("b");
  p.sigma = number("sigma");
  p.m_q = number("m_q");
  p.m_qbar = number("m_qbar");
  if (!j.contains("s") || !j["s"].is_number_integer()) throw InputError("params: 's' must be an integer");
  p.s = j["s"].get<int>();
  if (j.contains("hbar")) p.hbar = number("hbar");

  try {
    validate(p);
  } catch (const DomainError& e) {
    throw InputError(std::string("params: ") + e.what());
  }
  return p;
}

QuarkoniumParams load_params(const std::string& path) { return params_from_json(read_text_file(path)); }

}  // namespace quarkonia
