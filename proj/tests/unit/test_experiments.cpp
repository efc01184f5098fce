#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "resonance/errors.hpp"
#include "resonance/experiments.hpp"
#include "resonance/sums.hpp"

using namespace resonance;
using namespace resonance::experiments;

TEST(Config, ParsesKeyValueText) {
  const auto cfg = parse_config_text(
      "# comment\n"
      "experiment = recover\n"
      "n = 4\n"
      "M = 1e5, 3e5\n"
      "gamma=0.8   # trailing\n"
      "d = 2,3\n"
      "weight = plateau\n"
      "threads = 4\n"
      "assume-maass-phase = yes\n");
  EXPECT_EQ(cfg.experiment, Experiment::recover);
  EXPECT_EQ(cfg.n_rank, 4);
  ASSERT_EQ(cfg.M.size(), 2u);
  EXPECT_EQ(cfg.M[1], 3e5);
  EXPECT_EQ(cfg.gamma, 0.8);
  EXPECT_EQ(cfg.d, (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(cfg.weight, weights::Shape::plateau);
  EXPECT_EQ(cfg.threads, 4);
  EXPECT_TRUE(cfg.assume_maass_phase);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config_text("n 3"), ConfigError);
  EXPECT_THROW(parse_config_text("colour = red"), ConfigError);
  EXPECT_THROW(parse_config_text("d = 1.5"), ConfigError);
  EXPECT_THROW(parse_config_text("gamma = abc"), ConfigError);
  EXPECT_THROW(parse_config_text("experiment = plot"), ConfigError);
  EXPECT_THROW(read_config_file("/nonexistent/cfg.txt"), ConfigError);
  ExperimentConfig c;
  c.gamma = 0.2;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.n_rank = 5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.d = {0};
  EXPECT_THROW(c.validate(), ConfigError);
  for (auto e : {Experiment::coeffs, Experiment::resonance, Experiment::nonlinear, Experiment::kernel,
                 Experiment::omega_scan, Experiment::recover}) {
    EXPECT_EQ(parse_experiment(experiment_name(e)), e);
  }
}

TEST(Csv, FormatAndRoundTrip) {
  CsvReport r{"resonance", {"a", "b"}, {{0.1, 1e6}, {-2.5, NAN}}};
  const auto s = r.to_string();
  EXPECT_EQ(s, "# schema=1 experiment=resonance\na,b\n0.10000000000000001,1000000\n-2.5,nan\n");
  EXPECT_EQ(r.column("b"), 1u);
  EXPECT_THROW(r.column("c"), ConfigError);
  const auto path = std::filesystem::temp_directory_path() / "resonance_csv_test.csv";
  r.write(path);
  std::ifstream in(path);
  std::string all((std::istreambuf_iterator<char>(in)), {});
  EXPECT_EQ(all, s);
  std::filesystem::remove(path);
}

TEST(Experiments, SmallRunsAreDeterministic) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::resonance;
  cfg.n_rank = 3;
  cfg.M = {2e4};
  cfg.d = {1, 2};
  const auto a = run(cfg);
  cfg.threads = 4;
  const auto b = run(cfg);
  EXPECT_EQ(a.to_string(), b.to_string());
  ASSERT_EQ(a.rows.size(), 2u);
  EXPECT_GT(a.rows[0][a.column("abs_ratio")], 0.0);
}

TEST(Experiments, CoeffsReport) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::coeffs;
  cfg.n_rank = 2;
  cfg.M = {5};
  const auto r = run(cfg);
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_EQ(r.rows[0][2], 1.0);
  EXPECT_NEAR(r.rows[1][2], -24.0 / std::pow(2.0, 5.5), 1e-15);
}

TEST(Experiments, KernelZeroFunction) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::kernel;
  cfg.n_rank = 2;
  cfg.y = {1e2, 1e3};
  const analytic::TestFunction zero{1.0, 2.0, [](double) { return 0.0; }};
  const auto r = run_kernel_check(cfg, zero);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row[r.column("contour")], 0.0);
    EXPECT_EQ(row[r.column("kernel_form")], 0.0);
  }
}

TEST(Experiments, OmegaScanOnUnitTable) {
  FormData f;
  f.n_rank = 2;
  f.table = forms::CoefficientTable::unit(2, 20000);
  f.dual = f.table;
  ExperimentConfig cfg;
  cfg.experiment = Experiment::omega_scan;
  cfg.n_rank = 2;
  cfg.M = {1e4};
  const auto r = run_omega_scan(cfg, f);
  ASSERT_EQ(r.rows.size(), 16u);
  const double alpha = 1.0 / std::sqrt(1e4);
  for (const auto& row : r.rows) {
    const double Delta = row[r.column("Delta")];
    const auto count = static_cast<std::int64_t>(std::floor(1e4 + Delta)) - 10000 + 1;
    const double want = std::abs(sums::geometric_sum(count, alpha)) / 100.0;
    EXPECT_NEAR(row[r.column("scaled_abs")], want, 1e-12 * std::max(1.0, want));
  }
}

TEST(Experiments, RecoverUnitCoefficient) {
  ExperimentConfig cfg;
  cfg.experiment = Experiment::recover;
  cfg.n_rank = 3;
  cfg.M = {1e5};
  cfg.gamma = 0.85;
  cfg.d = {1};
  const auto r = run(cfg);
  EXPECT_EQ(r.rows[0][r.column("truth")], 1.0);
  // first-order kernel corrections are still large at this M
  EXPECT_LT(r.rows[0][r.column("rel_error")], 0.5);
}

TEST(Experiments, LogLogSlope) {
  EXPECT_NEAR(log_log_slope({1, 10, 100}, {1, 0.1, 0.01}), -1.0, 1e-14);
  EXPECT_THROW(log_log_slope({1}, {1}), DomainError);
}
