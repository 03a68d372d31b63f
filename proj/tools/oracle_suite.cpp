#include "oracle_suite.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>

#include "quarkonia/closed_form.hpp"
#include "quarkonia/errors.hpp"
#include "quarkonia/format.hpp"
#include "quarkonia/numerov.hpp"

namespace quarkonia::cli {

namespace {

// m_q = m_qbar = 2 gives mu = 1; only the kinematics of these params matter.
const QuarkoniumParams kUnitMass{1.0, 0.0, 0.0, 2.0, 2.0, 0, 1.0};

struct Pending {
  std::string family;
  std::string label;
  PotentialSpec spec;
  int n_r = 0;
  int l = 0;
  double reference = 0.0;
};

std::vector<Pending> oracle_cases() {
  std::vector<Pending> cases;
  char label[64];
  for (int N = 1; N <= 4; ++N) {
    for (int l = 0; l < N; ++l) {
      const int n_r = N - l - 1;
      std::snprintf(label, sizeof label, "k=1 n_r=%d l=%d", n_r, l);
      cases.push_back({"coulomb", label, potential::Coulomb{1.0}, n_r, l, coulomb_levels(1.0, 1.0, 1.0, n_r, l)});
    }
  }
  for (int n_r = 0; 2 * n_r <= 5; ++n_r) {
    for (int l = 0; 2 * n_r + l <= 5; ++l) {
      std::snprintf(label, sizeof label, "omega=1 n_r=%d l=%d", n_r, l);
      cases.push_back({"oscillator", label, potential::Oscillator{1.0}, n_r, l, oscillator_levels(1.0, 1.0, n_r, l)});
    }
  }
  const double kinetic = kinematics(kUnitMass).kinetic_scale();
  for (double A : {0.0, 2.0, 6.922}) {
    for (double B : {2.0, 4.0, 14.074}) {
      for (int n_r = 0; n_r <= 3; ++n_r) {
        std::snprintf(label, sizeof label, "A=%g B=%g n_r=%d", A, B, n_r);
        const double C = kratzer_levels({A, B, 0.0, 0.0}, n_r);
        cases.push_back({"kratzer", label, potential::KratzerEffective{A, B}, n_r, 0, -kinetic * C});
      }
    }
  }
  return cases;
}

}  // namespace

OracleReport run_oracle_suite(double tolerance, bool inject_fault) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleReport report;
  report.all_pass = true;
  bool first = true;
  for (const auto& c : oracle_cases()) {
    OracleCase out;
    out.family = c.family;
    out.label = c.label;
    out.reference = c.reference;
    if (inject_fault && first) out.reference *= 1.0 + 1e-3;
    first = false;
    try {
      const auto sol = find_eigenvalue(c.spec, kUnitMass, c.l, c.n_r);
      out.computed = sol.energy;
      out.rel_error = std::abs(out.computed - out.reference) / std::abs(out.reference);
      out.pass = out.rel_error <= tolerance && sol.nodes_observed == c.n_r;
    } catch (const Error& e) {
      out.computed = std::numeric_limits<double>::quiet_NaN();
      out.rel_error = std::numeric_limits<double>::infinity();
      out.error = e.what();
    }
    report.all_pass = report.all_pass && out.pass;
    report.cases.push_back(std::move(out));
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::string format_oracle_table(const OracleReport& report, double tolerance) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-24s %20s %20s %10s  %s\n", "family", "case", "reference", "numerov",
                "rel_err", "result");
  out << line;
  int failed = 0;
  for (const auto& c : report.cases) {
    std::snprintf(line, sizeof line, "%-10s %-24s %20.12g %20.12g %10.2e  %s", c.family.c_str(), c.label.c_str(),
                  c.reference, c.computed, c.rel_error, c.pass ? "PASS" : "FAIL");
    out << line;
    if (!c.error.empty()) out << " (" << c.error << ")";
    out << '\n';
    failed += !c.pass;
  }
  std::snprintf(line, sizeof line, "%zu cases, %d failed, tolerance %.1e relative, %.2f s\n", report.cases.size(),
                failed, tolerance, report.seconds);
  out << line;
  return out.str();
}

}  // namespace quarkonia::cli
