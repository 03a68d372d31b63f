#pragma once

#include <string>
#include <vector>

namespace quarkonia::cli {

/// One Numerov eigenvalue checked against its closed form.
struct OracleCase {
  std::string family;  // coulomb, oscillator, kratzer
  std::string label;
  double reference = 0.0;
  double computed = 0.0;
  double rel_error = 0.0;
  bool pass = false;
  std::string error;  // solver exception text, empty on success
};

struct OracleReport {
  std::vector<OracleCase> cases;
  bool all_pass = false;
  double seconds = 0.0;
};

/// Coulomb (N <= 4), isotropic oscillator (2 n_r + l <= 5) and Kratzer
/// (A in {0, 2, 6.922}, B in {2, 4, 14.074}, n_r <= 3), all with mu = hbar = 1.
/// `inject_fault` shifts the first reference by one part in a thousand.
OracleReport run_oracle_suite(double tolerance = 1e-6, bool inject_fault = false);

std::string format_oracle_table(const OracleReport& report, double tolerance);

}  // namespace quarkonia::cli
