#include "quarkonia/spectrum_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "quarkonia/errors.hpp"
#include "quarkonia/format.hpp"

namespace quarkonia {

namespace {

using nlohmann::ordered_json;

struct ChannelRows {
  std::vector<ComparisonRow> rows;
  std::optional<int> crossing;
  std::vector<std::string> diagnostics;
};

std::string channel_tag(int n_r, int l) { return "n_r=" + std::to_string(n_r) + " l=" + std::to_string(l); }

ChannelRows compare_channel(const QuarkoniumParams& params, int l, const std::optional<OEAGammas>& gammas,
                            std::optional<double> gamma0, bool truncated_unbound, const CompareOptions& opt) {
  const PotentialSpec cornell = potential::CornellSpin{params};
  const PotentialSpec truncated = potential::TruncatedOEA{params};
  const Kinematics kin = kinematics(params);

  ChannelRows out;
  for (int n = 0;; ++n) {
    ComparisonRow row;
    row.n_r = n;
    row.l = l;
    row.s = params.s;
    try {
      row.E_cornell = find_eigenvalue(cornell, params, l, n, opt.solver).energy;
    } catch (const Error& e) {
      out.diagnostics.push_back(channel_tag(n, l) + " cornell: " + e.what());
    }
    if (truncated_unbound) {
      row.flags.emplace_back("truncated_unbound");
    } else {
      try {
        row.E_truncated = find_eigenvalue(truncated, params, l, n, opt.solver).energy;
      } catch (const Error& e) {
        out.diagnostics.push_back(channel_tag(n, l) + " truncated: " + e.what());
      }
    }
    if (gammas) row.E_oea = oea_spectrum(*gammas, kin.mu, kin.hbar, n);

    if (gamma0) {
      if (row.E_oea && *row.E_oea < *gamma0) row.flags.emplace_back("oea_below_gamma0");
      if (row.E_cornell && *row.E_cornell > *gamma0) {
        row.flags.emplace_back("cornell_above_gamma0");
        if (!out.crossing) out.crossing = n;
      }
    }
    out.rows.push_back(std::move(row));

    if (n < opt.n_max) continue;
    if (out.crossing || !opt.extend_to_crossing || !gamma0 || n >= opt.scan_limit) break;
  }
  return out;
}

std::vector<double> cornell_levels(const std::vector<ComparisonRow>& rows, int l) {
  std::vector<double> levels;
  for (const auto& r : rows) {
    if (r.l != l) continue;
    if (!r.E_cornell) break;
    levels.push_back(*r.E_cornell);
  }
  return levels;
}

std::optional<double> decay_exponent(const std::vector<double>& levels) {
  if (levels.size() < 5) return std::nullopt;
  const std::size_t count = levels.size() - 1;
  const std::size_t first = count / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t n = first; n < count; ++n) {
    const double spacing = levels[n + 1] - levels[n];
    if (!(spacing > 0.0)) return std::nullopt;
    const double x = std::log(n + 1.0);
    const double y = std::log(spacing);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

AuditSummary summarize(const SpectrumComparison& cmp, const std::vector<std::optional<OEAGammas>>& gammas,
                       const Kinematics& kin, int l_max) {
  AuditSummary audit;

  bool saturation = cmp.oea_below_gamma0;
  bool any_gamma = false;
  for (const auto& g : gammas) {
    if (!g) continue;
    any_gamma = true;
    const auto a = asymptotic_audit(*g, kin.mu, kin.hbar, 200);
    saturation = saturation && a.monotone && std::abs(a.cauchy_decay_ratio - 0.25) <= 0.05;
  }
  audit.gamma0_saturation = saturation && any_gamma;

  bool growth = true;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (int l = 0; l <= l_max; ++l) {
    const auto levels = cornell_levels(cmp.rows, l);
    for (std::size_t i = 1; i < levels.size(); ++i) growth = growth && levels[i] > levels[i - 1];
    growth = growth && l < static_cast<int>(cmp.cornell_exceeds_gamma0_at.size()) &&
             cmp.cornell_exceeds_gamma0_at[l].has_value();
    if (levels.size() >= 3) {
      const double first = levels[1] - levels[0];
      for (std::size_t n = 1; n + 1 < levels.size(); ++n) {
        min_ratio = std::min(min_ratio, (levels[n + 1] - levels[n]) / first);
      }
    }
  }
  audit.cornell_growth = growth;
  if (std::isfinite(min_ratio)) audit.min_spacing_ratio = min_ratio;
  audit.spacing_bounded_below = std::isfinite(min_ratio) && min_ratio > 0.5;
  audit.spacing_decay_exponent = decay_exponent(cornell_levels(cmp.rows, 0));

  if (!cmp.truncated_unbound) {
    bool grows_everywhere = l_max >= 0;
    for (int l = 0; l <= l_max; ++l) {
      std::vector<double> diff;
      for (const auto& r : cmp.rows) {
        if (r.l != l || !r.E_cornell || !r.E_truncated) continue;
        diff.push_back(std::abs(*r.E_truncated - *r.E_cornell));
      }
      // Increasing tail of at least three points.
      std::size_t tail = diff.empty() ? 0 : 1;
      for (std::size_t i = diff.size(); i-- > 1;) {
        if (!(diff[i] > diff[i - 1])) break;
        ++tail;
      }
      grows_everywhere = grows_everywhere && tail >= 3;
    }
    audit.truncated_gap_grows = grows_everywhere;
  }
  return audit;
}

ordered_json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return round_to_exported(*v);
}

ordered_json number_or_null(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_to_exported(v);
}

std::optional<double> optional_number(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

std::string optional_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string{}; }

}  // namespace

SpectrumComparison compare_spectra(const QuarkoniumParams& params, const CompareOptions& opt) {
  validate(params);
  opt.solver.validate();
  if (opt.l_max < 0 || opt.n_max < 0) throw DomainError("compare_spectra: l_max and n_max must be non-negative");
  if (!(opt.delta > 0.0)) throw DomainError("compare_spectra: delta must be positive");

  SpectrumComparison cmp;
  cmp.params = params;
  cmp.delta = opt.delta;
  const Kinematics kin = kinematics(params);

  std::vector<std::optional<OEAGammas>> gammas(opt.l_max + 1);
  for (int l = 0; l <= opt.l_max; ++l) {
    if (opt.gammas_override) {
      gammas[l] = *opt.gammas_override;
      continue;
    }
    try {
      gammas[l] = build_oea_chain(params, l, opt.delta).gammas;
    } catch (const Error& e) {
      cmp.diagnostics.push_back("l=" + std::to_string(l) + " oea: " + e.what());
    }
  }
  for (const auto& g : gammas) {
    cmp.gamma2.push_back(g ? std::optional<double>(g->Gamma2) : std::nullopt);
    if (g && !cmp.gamma0) {
      cmp.gamma0 = g->Gamma0;
      cmp.gamma1 = g->Gamma1;
    }
  }

  cmp.truncated_unbound = !boundedness_check(potential::TruncatedOEA{params}).bounded_below;
  if (cmp.truncated_unbound) {
    cmp.diagnostics.push_back(boundedness_check(potential::TruncatedOEA{params}).reason);
  }

  std::vector<std::future<ChannelRows>> jobs;
  for (int l = 0; l <= opt.l_max; ++l) {
    jobs.push_back(std::async(std::launch::async, compare_channel, std::cref(params), l, gammas[l], cmp.gamma0,
                              cmp.truncated_unbound, std::cref(opt)));
  }
  for (auto& job : jobs) {
    auto part = job.get();
    cmp.rows.insert(cmp.rows.end(), part.rows.begin(), part.rows.end());
    cmp.cornell_exceeds_gamma0_at.push_back(part.crossing);
    cmp.diagnostics.insert(cmp.diagnostics.end(), part.diagnostics.begin(), part.diagnostics.end());
  }

  bool any_oea = false;
  bool all_below = true;
  for (const auto& r : cmp.rows) {
    if (!r.E_oea) continue;
    any_oea = true;
    all_below = all_below && cmp.gamma0 && *r.E_oea < *cmp.gamma0;
  }
  cmp.oea_below_gamma0 = any_oea && all_below;
  cmp.audit = summarize(cmp, gammas, kin, opt.l_max);
  return cmp;
}

AsymptoticAudit asymptotic_audit(const OEAGammas& gammas, double mu, double hbar, int n_max) {
  if (n_max < 3) throw DomainError("asymptotic_audit: n_max must be at least 3");
  AsymptoticAudit audit;
  audit.gap_sequence.reserve(n_max + 1);
  for (int n = 0; n <= n_max; ++n) audit.gap_sequence.push_back(gammas.Gamma0 - oea_spectrum(gammas, mu, hbar, n));

  audit.monotone = audit.gap_sequence.front() > 0.0;
  for (std::size_t i = 1; i < audit.gap_sequence.size(); ++i) {
    audit.monotone = audit.monotone && audit.gap_sequence[i] > 0.0 && audit.gap_sequence[i] < audit.gap_sequence[i - 1];
  }
  const int m = n_max / 2;
  const double base = audit.gap_sequence[m];
  audit.cauchy_decay_ratio =
      base != 0.0 ? audit.gap_sequence[2 * m] / base : std::numeric_limits<double>::quiet_NaN();
  return audit;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw InputError("unknown report format '" + std::string(name) + "'");
}

std::string emit_report(const SpectrumComparison& cmp, ReportFormat format) {
  if (format == ReportFormat::csv) {
    std::ostringstream out;
    out << "n_r,l,s,E_cornell,E_truncated,E_oea,flags\n";
    for (const auto& r : cmp.rows) {
      out << r.n_r << ',' << r.l << ',' << r.s << ',' << optional_field(r.E_cornell) << ','
          << optional_field(r.E_truncated) << ',' << optional_field(r.E_oea) << ',' << join_flags(r.flags) << '\n';
    }
    return out.str();
  }

  ordered_json j;
  const auto& p = cmp.params;
  j["params"] = {{"alpha_s", round_to_exported(p.alpha_s)}, {"b", round_to_exported(p.b)},
                 {"sigma", round_to_exported(p.sigma)},     {"m_q", round_to_exported(p.m_q)},
                 {"m_qbar", round_to_exported(p.m_qbar)},   {"s", p.s},
                 {"hbar", round_to_exported(p.hbar)}};
  j["delta"] = number_or_null(cmp.delta);
  j["gamma0"] = number_or_null(cmp.gamma0);
  j["gamma1"] = number_or_null(cmp.gamma1);
  j["gamma2"] = ordered_json::array();
  for (const auto& g : cmp.gamma2) j["gamma2"].push_back(number_or_null(g));
  j["oea_below_gamma0"] = cmp.oea_below_gamma0;
  j["cornell_exceeds_gamma0_at"] = ordered_json::array();
  for (const auto& c : cmp.cornell_exceeds_gamma0_at) {
    j["cornell_exceeds_gamma0_at"].push_back(c ? ordered_json(*c) : ordered_json(nullptr));
  }
  j["truncated_unbound"] = cmp.truncated_unbound;
  const auto& a = cmp.audit;
  j["audit"] = {{"gamma0_saturation", a.gamma0_saturation},
                {"cornell_growth", a.cornell_growth},
                {"min_spacing_ratio", number_or_null(a.min_spacing_ratio)},
                {"spacing_bounded_below", a.spacing_bounded_below},
                {"spacing_decay_exponent", number_or_null(a.spacing_decay_exponent)},
                {"truncated_gap_grows", a.truncated_gap_grows}};
  j["rows"] = ordered_json::array();
  for (const auto& r : cmp.rows) {
    j["rows"].push_back({{"n_r", r.n_r},
                         {"l", r.l},
                         {"s", r.s},
                         {"E_cornell", number_or_null(r.E_cornell)},
                         {"E_truncated", number_or_null(r.E_truncated)},
                         {"E_oea", number_or_null(r.E_oea)},
                         {"flags", r.flags}});
  }
  j["diagnostics"] = cmp.diagnostics;
  return j.dump(2) + "\n";
}

SpectrumComparison comparison_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("comparison report: invalid JSON: ") + e.what());
  }
  try {
    SpectrumComparison cmp;
    cmp.params = params_from_json(j.at("params").dump());
    cmp.delta = j.at("delta").get<double>();
    cmp.gamma0 = optional_number(j.at("gamma0"));
    cmp.gamma1 = optional_number(j.at("gamma1"));
    for (const auto& g : j.at("gamma2")) cmp.gamma2.push_back(optional_number(g));
    cmp.oea_below_gamma0 = j.at("oea_below_gamma0").get<bool>();
    for (const auto& c : j.at("cornell_exceeds_gamma0_at")) {
      cmp.cornell_exceeds_gamma0_at.push_back(c.is_null() ? std::nullopt : std::optional<int>(c.get<int>()));
    }
    cmp.truncated_unbound = j.at("truncated_unbound").get<bool>();
    const auto& a = j.at("audit");
    cmp.audit.gamma0_saturation = a.at("gamma0_saturation").get<bool>();
    cmp.audit.cornell_growth = a.at("cornell_growth").get<bool>();
    cmp.audit.min_spacing_ratio = optional_number(a.at("min_spacing_ratio"));
    cmp.audit.spacing_bounded_below = a.at("spacing_bounded_below").get<bool>();
    cmp.audit.spacing_decay_exponent = optional_number(a.at("spacing_decay_exponent"));
    cmp.audit.truncated_gap_grows = a.at("truncated_gap_grows").get<bool>();
    for (const auto& r : j.at("rows")) {
      ComparisonRow row;
      row.n_r = r.at("n_r").get<int>();
      row.l = r.at("l").get<int>();
      row.s = r.at("s").get<int>();
      row.E_cornell = optional_number(r.at("E_cornell"));
      row.E_truncated = optional_number(r.at("E_truncated"));
      row.E_oea = optional_number(r.at("E_oea"));
      row.flags = r.at("flags").get<std::vector<std::string>>();
      cmp.rows.push_back(std::move(row));
    }
    cmp.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return cmp;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("comparison report: ") + e.what());
  }
}

}  // namespace quarkonia
