#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "quarkonia/closed_form.hpp"
#include "quarkonia/fitting.hpp"
#include "quarkonia/format.hpp"
#include "test_support.hpp"

using namespace quarkonia;
using quarkonia::testing::charmonium;
using quarkonia::testing::scratch_dir;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string params_file(const QuarkoniumParams& p, const std::string& name = "params.json") const {
    write_text_file(path(name), params_to_json(p));
    return path(name);
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, ValidatePasses) {
  const auto o = run({"validate"});
  EXPECT_EQ(o.code, cli::kSuccess) << o.out;
  EXPECT_NE(o.out.find("58 cases, 0 failed"), std::string::npos);
}

TEST_F(CliTest, ValidateInjectedFault) {
  const auto o = run({"validate", "--inject-fault"});
  EXPECT_EQ(o.code, cli::kCheckFailed);
  EXPECT_NE(o.out.find("coulomb    k=1 n_r=0 l=0"), std::string::npos);
  EXPECT_NE(o.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, ValidateUnreachableTolerance) {
  EXPECT_EQ(run({"validate", "--tolerance", "1e-20"}).code, cli::kCheckFailed);
  EXPECT_EQ(run({"validate", "--tolerance", "-1"}).code, cli::kUsage);
}

TEST_F(CliTest, TripletTruncationHasNoBoundStates) {
  const auto o = run({"spectrum", "--params", params_file(charmonium(1)), "--backend", "truncated-numerov", "--out",
                      path("s.csv")});
  EXPECT_EQ(o.code, cli::kNoBoundStates);
  EXPECT_NE(o.err.find("unbounded"), std::string::npos);
  EXPECT_NE(o.err.find("triplet"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("s.csv")));
}

TEST_F(CliTest, CoulombOnlySpectrumMatchesClosedForm) {
  QuarkoniumParams p{0.5, 0.0, 0.0, 1.5, 1.5, 0, 1.0};
  const auto o = run({"spectrum", "--params", params_file(p), "--n-max", "2", "--l-max", "1", "--out", path("c.csv")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const auto rows = csv_rows(read_text_file(path("c.csv")));
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int n_r = std::stoi(rows[i][0]);
    const int l = std::stoi(rows[i][1]);
    const double expected = coulomb_levels(4.0 * 0.5 / 3.0, 0.75, 1.0, n_r, l);
    EXPECT_NEAR(std::stod(rows[i][3]) / expected, 1.0, 1e-6);
    EXPECT_EQ(rows[i][5], "1");
  }
}

TEST_F(CliTest, CharmoniumSpectrumRowCount) {
  const auto o = run({"spectrum", "--params", params_file(charmonium(0)), "--n-max", "3", "--l-max", "2", "--out",
                      path("s.csv"), "--wavefunction", path("wf.csv"), "--wf-n-r", "1", "--wf-stride", "100"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const auto rows = csv_rows(read_text_file(path("s.csv")));
  EXPECT_EQ(rows.front(), (std::vector<std::string>{"n_r", "l", "s", "E", "nodes", "converged"}));
  EXPECT_EQ(rows.size(), 1u + 4u * 3u);
  const std::string wf = read_text_file(path("wf.csv"));
  EXPECT_EQ(wf.substr(0, 6), "r,psi\n");
}

TEST_F(CliTest, ClosedFormBackend) {
  const auto o = run({"spectrum", "--params", params_file(charmonium(0)), "--backend", "oea-closed-form", "--n-max",
                      "3"});
  ASSERT_EQ(o.code, cli::kSuccess);
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_NEAR(std::stod(rows[1][3]), 1.13370261815878, 1e-11);
  // The triplet reduction collapses (fall to center), so nothing is bound.
  EXPECT_EQ(run({"spectrum", "--params", params_file(charmonium(1)), "--backend", "oea-closed-form"}).code,
            cli::kNoBoundStates);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"spectrum"}).code, cli::kUsage);
  EXPECT_EQ(run({"spectrum", "--params", path("missing.json")}).code, cli::kUsage);
  write_text_file(path("bad.json"), "{\"alpha_s\": 0.5");
  EXPECT_EQ(run({"spectrum", "--params", path("bad.json")}).code, cli::kUsage);
  EXPECT_EQ(run({"spectrum", "--params", params_file(charmonium()), "--backend", "x"}).code, cli::kUsage);
  EXPECT_EQ(run({"spectrum", "--params", params_file(charmonium()), "--n-max", "two"}).code, cli::kUsage);
  EXPECT_EQ(run({"compare", "--params", params_file(charmonium()), "--format", "xml"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kSuccess);
}

TEST_F(CliTest, ExpansionErrorDefaults) {
  const auto o = run({"expansion-error", "--out", path("e.csv")});
  ASSERT_EQ(o.code, cli::kSuccess);
  const auto rows = csv_rows(read_text_file(path("e.csv")));
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows[0][0], "q");
  std::size_t nearest = 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::abs(std::stod(rows[i][0]) - 0.7) < std::abs(std::stod(rows[nearest][0]) - 0.7)) nearest = i;
  }
  EXPECT_LT(std::stod(rows[nearest][3]), 1e-3);
  EXPECT_LT(std::stod(rows[nearest][6]), 1e-3);
}

TEST_F(CliTest, ExpansionErrorAtTwiceDelta) {
  const auto o = run({"expansion-error", "--q-min", "1.4", "--q-max", "2.8", "--points", "2"});
  ASSERT_EQ(o.code, cli::kSuccess);
  const auto rows = csv_rows(o.out);
  EXPECT_NEAR(std::stod(rows[1][2]) / std::stod(rows[1][1]), 2.0, 1e-11);
}

TEST_F(CliTest, ExpansionErrorBadRange) {
  EXPECT_EQ(run({"expansion-error", "--delta", "0"}).code, cli::kUsage);
  EXPECT_EQ(run({"expansion-error", "--q-min", "2", "--q-max", "1"}).code, cli::kUsage);
  EXPECT_EQ(run({"expansion-error", "--q-min", "0"}).code, cli::kUsage);
  EXPECT_EQ(run({"expansion-error", "--points", "1"}).code, cli::kUsage);
}

TEST_F(CliTest, ScientificNotationFlags) {
  const auto a = run({"expansion-error", "--delta", "7e-1", "--q-min", "5E-2", "--points", "20"});
  const auto b = run({"expansion-error", "--delta", "0.7", "--q-min", "0.05", "--points", "20"});
  EXPECT_EQ(a.code, cli::kSuccess);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, CompareCharmonium) {
  const auto o = run({"compare", "--params", params_file(charmonium(0)), "--out", path("cmp.json")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.out << o.err;
  const auto j = nlohmann::json::parse(read_text_file(path("cmp.json")));
  EXPECT_TRUE(j.at("oea_below_gamma0").get<bool>());
  EXPECT_EQ(j.at("cornell_exceeds_gamma0_at").at(0).get<int>(), 16);
  EXPECT_NE(o.out.find("gamma0_saturation pass"), std::string::npos);

  const auto again = run({"compare", "--params", params_file(charmonium(0)), "--out", path("cmp2.json")});
  EXPECT_EQ(read_text_file(path("cmp.json")), read_text_file(path("cmp2.json")));
}

TEST_F(CliTest, CompareCsvAndNoExtend) {
  const auto o = run({"compare", "--params", params_file(charmonium(0)), "--n-max", "3", "--no-extend"});
  EXPECT_EQ(o.code, cli::kCheckFailed);  // no crossing inside n_r <= 3
  const auto rows = csv_rows(o.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"n_r", "l", "s", "E_cornell", "E_truncated", "E_oea", "flags"}));
}

TEST_F(CliTest, FitRoundTrip) {
  const auto truth = charmonium(0);
  std::vector<MesonObservation> obs;
  for (int l = 0; l <= 1; ++l) {
    for (int n = 0; n <= 3; ++n) obs.push_back({"s" + std::to_string(n) + std::to_string(l), n, l, 0,
                                                mass_model(truth, Backend::oea_closed_form, n, l, 0), 1.0});
  }
  write_text_file(path("obs.json"), observations_to_json(obs));
  auto start = truth;
  start.alpha_s *= 1.1;
  start.b *= 0.9;
  start.sigma *= 1.1;
  const auto o = run({"fit", "--observations", path("obs.json"), "--params", params_file(start), "--free",
                      "alpha_s,b,sigma", "--backend", "oea-closed-form", "--out", path("fit.json")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const auto j = nlohmann::json::parse(read_text_file(path("fit.json")));
  EXPECT_LT(j.at("objective").get<double>(), 1e-8);
  EXPECT_NEAR(j.at("params").at("b").get<double>(), 0.15, 1.5e-3);
}

TEST_F(CliTest, FitEmptyObservations) {
  write_text_file(path("obs.json"), "[]");
  const auto o = run({"fit", "--observations", path("obs.json"), "--params", params_file(charmonium()), "--free", "b"});
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_EQ(run({"fit", "--observations", path("obs.json"), "--params", params_file(charmonium()), "--free", "hbar"})
                .code,
            cli::kUsage);
}
