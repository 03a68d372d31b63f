#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "oracle_suite.hpp"
#include "quarkonia/approximation.hpp"
#include "quarkonia/errors.hpp"
#include "quarkonia/fitting.hpp"
#include "quarkonia/format.hpp"
#include "quarkonia/numerov.hpp"
#include "quarkonia/spectrum_analysis.hpp"

namespace quarkonia::cli {

namespace {

struct ValidateArgs {
  double tolerance = 1e-6;
  bool inject_fault = false;
};

struct SpectrumArgs {
  std::string params;
  std::string backend = "cornell-numerov";
  int n_max = 4;
  int l_max = 0;
  double delta = kDefaultDelta;
  std::string out;
  std::string wavefunction;
  int wf_n_r = 0;
  int wf_l = 0;
  int wf_stride = 10;
};

struct CompareArgs {
  std::string params;
  double delta = kDefaultDelta;
  int n_max = 10;
  int l_max = 0;
  std::string out;
  std::string format;
  bool no_extend = false;
};

struct ExpansionArgs {
  double delta = kDefaultDelta;
  double q_min = 0.05;
  double q_max = 3.0;
  int points = 200;
  std::string out;
};

struct FitArgs {
  std::string observations;
  std::string params;
  std::vector<std::string> free;
  std::string backend = "cornell-numerov";
  double delta = kDefaultDelta;
  std::string out;
};

/// Writes `doc` to `path`, or to `out` when no path was given.
void emit(const std::string& path, const std::string& doc, std::ostream& out) {
  if (path.empty()) {
    out << doc;
  } else {
    write_text_file(path, doc);
  }
}

int cmd_validate(const ValidateArgs& a, std::ostream& out) {
  if (!(a.tolerance > 0.0)) throw InputError("--tolerance must be positive");
  const auto report = run_oracle_suite(a.tolerance, a.inject_fault);
  out << format_oracle_table(report, a.tolerance);
  return report.all_pass ? kSuccess : kCheckFailed;
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out, std::ostream& err) {
  const auto params = load_params(a.params);
  const Backend backend = parse_backend(a.backend);
  if (a.n_max < 0 || a.l_max < 0) throw InputError("--n-max and --l-max must be non-negative");
  if (!(a.delta > 0.0)) throw InputError("--delta must be positive");

  Spectrum spectrum;
  std::optional<PotentialSpec> spec;
  if (backend == Backend::oea_closed_form) {
    for (int l = 0; l <= a.l_max; ++l) {
      try {
        const auto chain = build_oea_chain(params, l, a.delta);
        for (int n = 0; n <= a.n_max; ++n) spectrum.entries.push_back({n, l, params.s, chain.level(n), n, true});
      } catch (const Error& e) {
        spectrum.diagnostics.push_back("l=" + std::to_string(l) + ": " + e.what());
      }
    }
  } else {
    spec = backend == Backend::cornell_numerov ? PotentialSpec{potential::CornellSpin{params}}
                                               : PotentialSpec{potential::TruncatedOEA{params}};
    const auto report = boundedness_check(*spec);
    if (!report.bounded_below) {
      err << "no bound states: " << report.reason << '\n';
      return kNoBoundStates;
    }
    spectrum = solve_spectrum(*spec, params, a.l_max, a.n_max);
  }

  for (const auto& d : spectrum.diagnostics) err << "warning: " << d << '\n';
  if (spectrum.entries.empty()) {
    err << "no bound states for " << backend_name(backend) << " with these parameters\n";
    return kNoBoundStates;
  }
  emit(a.out, spectrum_to_csv(spectrum), out);

  if (!a.wavefunction.empty()) {
    if (!spec) throw InputError("--wavefunction needs a Numerov backend");
    const auto sol = find_eigenvalue(*spec, params, a.wf_l, a.wf_n_r);
    write_text_file(a.wavefunction, wavefunction_to_csv(sol, a.wf_stride));
  }
  return kSuccess;
}

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const auto params = load_params(a.params);
  if (!(a.delta > 0.0)) throw InputError("--delta must be positive");
  if (a.n_max < 0 || a.l_max < 0) throw InputError("--n-max and --l-max must be non-negative");

  ReportFormat format = ReportFormat::csv;
  if (!a.format.empty()) {
    format = parse_report_format(a.format);
  } else if (a.out.size() >= 5 && a.out.compare(a.out.size() - 5, 5, ".json") == 0) {
    format = ReportFormat::json;
  }

  CompareOptions opts;
  opts.delta = a.delta;
  opts.n_max = a.n_max;
  opts.l_max = a.l_max;
  opts.extend_to_crossing = !a.no_extend;
  const auto cmp = compare_spectra(params, opts);
  emit(a.out, emit_report(cmp, format), out);

  std::ostream& log = a.out.empty() ? err : out;
  for (const auto& d : cmp.diagnostics) log << "note: " << d << '\n';
  log << "gamma0 " << (cmp.gamma0 ? format_number(*cmp.gamma0) : "n/a") << '\n';
  log << "oea_below_gamma0 " << (cmp.oea_below_gamma0 ? "true" : "false") << '\n';
  for (std::size_t l = 0; l < cmp.cornell_exceeds_gamma0_at.size(); ++l) {
    const auto& at = cmp.cornell_exceeds_gamma0_at[l];
    log << "cornell_exceeds_gamma0_at l=" << l << ' ' << (at ? std::to_string(*at) : "none") << '\n';
  }
  log << "truncated_unbound " << (cmp.truncated_unbound ? "true" : "false") << '\n';
  log << "gamma0_saturation " << (cmp.audit.gamma0_saturation ? "pass" : "FAIL") << '\n';
  log << "cornell_growth " << (cmp.audit.cornell_growth ? "pass" : "FAIL") << '\n';
  return cmp.audit.gamma0_saturation && cmp.audit.cornell_growth ? kSuccess : kCheckFailed;
}

int cmd_expansion_error(const ExpansionArgs& a, std::ostream& out) {
  if (!(a.delta > 0.0)) throw InputError("--delta must be positive");
  if (!(a.q_min > 0.0) || !(a.q_max > a.q_min)) throw InputError("need 0 < --q-min < --q-max");
  if (a.points < 2) throw InputError("--points must be at least 2");
  const auto grid = linspace(a.q_min, a.q_max, a.points);
  emit(a.out, expansion_table_to_csv(expansion_error_table(a.delta, grid)), out);
  return kSuccess;
}

int cmd_fit(const FitArgs& a, std::ostream& out, std::ostream& err) {
  const auto observations = observations_from_json(read_text_file(a.observations));
  const auto initial = load_params(a.params);
  const Backend backend = parse_backend(a.backend);
  std::vector<FitParameter> free;
  for (const auto& name : a.free) free.push_back(parse_fit_parameter(name));

  FitConfig cfg;
  cfg.backend.delta = a.delta;
  const auto result = fit(observations, initial, free, backend, cfg);
  emit(a.out, fit_report_json(result, observations, backend), out);

  std::ostream& log = a.out.empty() ? err : out;
  log << "objective " << format_number(result.objective) << " after " << result.iterations << " iterations"
      << (result.converged ? "" : " (not converged)") << '\n';
  if (result.underdetermined) log << "warning: more free parameters than observations\n";
  return result.converged ? kSuccess : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quarkonium spectra with the Cornell potential and its Kratzer-type reduction", "quarkonia"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Numerov eigenvalues against closed-form oracles");
  validate->add_option("--tolerance", va.tolerance, "relative tolerance")->capture_default_str();
  validate->add_flag("--inject-fault", va.inject_fault, "corrupt one reference level (self-test)");

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Bound-state spectrum as CSV");
  spectrum->add_option("--params", sa.params, "parameter JSON")->required();
  spectrum->add_option("--backend", sa.backend, "cornell-numerov | truncated-numerov | oea-closed-form")
      ->capture_default_str();
  spectrum->add_option("--n-max", sa.n_max, "largest n_r")->capture_default_str();
  spectrum->add_option("--l-max", sa.l_max, "largest l")->capture_default_str();
  spectrum->add_option("--delta", sa.delta, "expansion point for oea-closed-form")->capture_default_str();
  spectrum->add_option("--out", sa.out, "output CSV (stdout when omitted)");
  spectrum->add_option("--wavefunction", sa.wavefunction, "also write psi(r) of one state to this CSV");
  spectrum->add_option("--wf-n-r", sa.wf_n_r, "n_r of the exported state")->capture_default_str();
  spectrum->add_option("--wf-l", sa.wf_l, "l of the exported state")->capture_default_str();
  spectrum->add_option("--wf-stride", sa.wf_stride, "keep every k-th grid point")->capture_default_str();

  CompareArgs ca;
  auto* compare = app.add_subcommand("compare", "Cornell, truncated and closed-form spectra side by side");
  compare->add_option("--params", ca.params, "parameter JSON")->required();
  compare->add_option("--delta", ca.delta, "expansion point")->capture_default_str();
  compare->add_option("--n-max", ca.n_max, "largest n_r")->capture_default_str();
  compare->add_option("--l-max", ca.l_max, "largest l")->capture_default_str();
  compare->add_option("--out", ca.out, "report file (stdout when omitted)");
  compare->add_option("--format", ca.format, "csv | json (default from the --out extension)");
  compare->add_flag("--no-extend", ca.no_extend, "do not scan past --n-max for the Gamma0 crossing");

  ExpansionArgs ea;
  auto* expansion = app.add_subcommand("expansion-error", "Quadratic expansions of 1/q and 1/q^2 vs exact");
  expansion->add_option("--delta", ea.delta, "expansion point")->capture_default_str();
  expansion->add_option("--q-min", ea.q_min)->capture_default_str();
  expansion->add_option("--q-max", ea.q_max)->capture_default_str();
  expansion->add_option("--points", ea.points)->capture_default_str();
  expansion->add_option("--out", ea.out, "output CSV (stdout when omitted)");

  FitArgs fa;
  auto* fitting = app.add_subcommand("fit", "Nelder-Mead fit of parameters to meson masses");
  fitting->add_option("--observations", fa.observations, "observation JSON")->required();
  fitting->add_option("--params", fa.params, "initial parameter JSON")->required();
  fitting->add_option("--free", fa.free, "parameters to vary: alpha_s,b,sigma,m_q,m_qbar")
      ->required()
      ->delimiter(',');
  fitting->add_option("--backend", fa.backend)->capture_default_str();
  fitting->add_option("--delta", fa.delta, "expansion point for oea-closed-form")->capture_default_str();
  fitting->add_option("--out", fa.out, "report JSON (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(va, out);
    if (spectrum->parsed()) return cmd_spectrum(sa, out, err);
    if (compare->parsed()) return cmd_compare(ca, out, err);
    if (expansion->parsed()) return cmd_expansion_error(ea, out);
    if (fitting->parsed()) return cmd_fit(fa, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NoBoundStateError& e) {
    err << "no bound states: " << e.what() << '\n';
    return kNoBoundStates;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace quarkonia::cli
