#pragma once

// Experiment drivers producing CSV reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "resonance/analytic.hpp"
#include "resonance/forms.hpp"
#include "resonance/weights.hpp"

namespace resonance::experiments {

inline constexpr int kCsvSchema = 1;

enum class Experiment { coeffs, resonance, nonlinear, kernel, omega_scan, recover };

Experiment parse_experiment(const std::string& name);
std::string experiment_name(Experiment e);

struct ExperimentConfig {
  Experiment experiment = Experiment::resonance;
  int n_rank = 3;
  std::vector<double> M = {1e6};
  double gamma = 0.75;
  std::vector<std::int64_t> d = {1};
  weights::Shape weight = weights::Shape::bump;
  std::filesystem::path out;
  int threads = 1;
  std::uint64_t seed = 1;
  std::filesystem::path tau_cache;
  bool assume_maass_phase = false;
  std::vector<double> y = {1e2, 1e3, 1e4};  // kernel check grid
  int scan_points = 16;                      // omega scan grid

  // Throws ConfigError on an invalid combination.
  void validate() const;
};

// Applies `key = value` settings; keys mirror the long CLI flags.
// List-valued keys (M, d, y) accept comma-separated values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig read_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

struct CsvReport {
  std::string experiment;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // "# schema=<v> experiment=<name>", the header row, then rows printed with
  // 17 significant digits.
  std::string to_string() const;
  void write(const std::filesystem::path& path) const;
  std::size_t column(const std::string& name) const;
};

// Coefficients of the default form of rank n (tau for n = 2, its symmetric
// square and cube for n = 3, 4) and of its dual.
struct FormData {
  int n_rank = 2;
  forms::CoefficientTable table;
  forms::CoefficientTable dual;
};

FormData load_form(int n_rank, std::uint64_t n_max, const std::filesystem::path& tau_cache);

// Table length an experiment needs.
std::uint64_t required_size(const ExperimentConfig& cfg);

std::int64_t window_length(double M, double gamma);

CsvReport run_coeffs(const ExperimentConfig& cfg, const FormData& form);
CsvReport run_resonance(const ExperimentConfig& cfg, const FormData& form);
CsvReport run_nonlinear(const ExperimentConfig& cfg, const FormData& form);
CsvReport run_kernel_check(const ExperimentConfig& cfg);
CsvReport run_kernel_check(const ExperimentConfig& cfg, const analytic::TestFunction& f);
CsvReport run_omega_scan(const ExperimentConfig& cfg, const FormData& form);
CsvReport run_recover(const ExperimentConfig& cfg, const FormData& form);

// Dispatches on cfg.experiment, building the form when needed.
CsvReport run(const ExperimentConfig& cfg);

// max over every integer Delta in [0.5, 2] M^{1 - 1/(2n)} of
// |linear-twisted unweighted sum| / M^{1/2}.
double omega_exhaustive_max(const FormData& form, double M, std::int64_t d);

// Least-squares slope of log(values) against log(xs).
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& values);

}  // namespace resonance::experiments
