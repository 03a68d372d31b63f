#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quarkonia/approximation.hpp"
#include "quarkonia/closed_form.hpp"
#include "quarkonia/model.hpp"
#include "quarkonia/numerov.hpp"

namespace quarkonia {

struct ComparisonRow {
  int n_r = 0;
  int l = 0;
  int s = 0;
  std::optional<double> E_cornell;    ///< Numerov on the full Gaussian potential
  std::optional<double> E_truncated;  ///< Numerov on the truncated potential, when bound
  std::optional<double> E_oea;        ///< closed form of the Kratzer-type reduction
  std::vector<std::string> flags;

  bool operator==(const ComparisonRow&) const = default;
};

/// Outcome of the qualitative checks. `gamma0_saturation` and `cornell_growth` gate the CLI.
struct AuditSummary {
  bool gamma0_saturation = false;    ///< OEA gaps positive, decreasing, gap(2n)/gap(n) -> 1/4
  bool cornell_growth = false;       ///< Cornell levels increase and pass Gamma0 in every channel
  std::optional<double> min_spacing_ratio;  ///< min over l, n of spacing(n) / spacing(0) for E_cornell
  bool spacing_bounded_below = false;  ///< min_spacing_ratio > 0.5
  std::optional<double> spacing_decay_exponent;  ///< slope of log spacing vs log(n + 1) over the upper half, l = 0
  bool truncated_gap_grows = false;  ///< |E_truncated - E_cornell| increasing from some n0 on (s = 0)

  bool operator==(const AuditSummary&) const = default;
};

struct SpectrumComparison {
  QuarkoniumParams params;
  double delta = kDefaultDelta;
  std::optional<double> gamma0;
  std::optional<double> gamma1;
  std::vector<std::optional<double>> gamma2;  ///< per l
  std::vector<ComparisonRow> rows;            ///< sorted by (l, n_r)
  bool oea_below_gamma0 = false;
  std::vector<std::optional<int>> cornell_exceeds_gamma0_at;  ///< per l
  bool truncated_unbound = false;
  AuditSummary audit;
  std::vector<std::string> diagnostics;

  bool operator==(const SpectrumComparison&) const = default;
};

struct CompareOptions {
  double delta = kDefaultDelta;
  int l_max = 0;
  int n_max = 10;
  /// Keep adding radial states past n_max until E_cornell exceeds Gamma0, up to scan_limit.
  bool extend_to_crossing = true;
  int scan_limit = 64;
  SolverConfig solver;
  /// Replaces the Gamma values derived from the parameters (degenerate-input studies).
  std::optional<OEAGammas> gammas_override;
};

SpectrumComparison compare_spectra(const QuarkoniumParams& params, const CompareOptions& options = {});

struct AsymptoticAudit {
  bool monotone = false;            ///< gap strictly decreasing and positive
  std::vector<double> gap_sequence;  ///< Gamma0 - E_oea(n), n = 0..n_max
  double cauchy_decay_ratio = 0.0;   ///< gap(2m) / gap(m), m = n_max / 2
};

AsymptoticAudit asymptotic_audit(const OEAGammas& gammas, double mu, double hbar, int n_max);

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(std::string_view name);

/// CSV header "n_r,l,s,E_cornell,E_truncated,E_oea,flags"; flags joined by ';'.
/// Floats carry 12 significant digits in both formats.
std::string emit_report(const SpectrumComparison& comparison, ReportFormat format);

/// Inverse of the JSON report.
SpectrumComparison comparison_from_json(std::string_view text);

}  // namespace quarkonia
