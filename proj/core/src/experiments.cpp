#include "resonance/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "resonance/errors.hpp"
#include "resonance/predict.hpp"
#include "resonance/sums.hpp"

namespace resonance::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

std::int64_t to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 9e15) throw ConfigError("config: '" + key + "' expects an integer, got '" + v + "'");
  return static_cast<std::int64_t>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw ConfigError("config: '" + key + "' expects a boolean, got '" + v + "'");
}

weights::WeightSpec make_weight(weights::Shape shape, double M, double Delta) {
  return shape == weights::Shape::bump ? weights::make_bump(M, Delta) : weights::make_plateau(M, Delta);
}

double table_value(const forms::CoefficientTable& t, std::int64_t m) {
  if (m < 1 || static_cast<std::uint64_t>(m) > t.n_max()) {
    throw RangeError("coefficient index " + std::to_string(m) + " outside the table");
  }
  return t(static_cast<std::uint64_t>(m));
}

double omega_exponent(int n) { return 1.0 - 0.5 / n; }

// Ramanujan holds for the lifts of a holomorphic form, so theta = 0 here.
std::int64_t omega_window(double M) {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(std::pow(M, 0.4 * 0.5))));
}

}  // namespace

Experiment parse_experiment(const std::string& name) {
  if (name == "coeffs") return Experiment::coeffs;
  if (name == "resonance") return Experiment::resonance;
  if (name == "nonlinear") return Experiment::nonlinear;
  if (name == "kernel") return Experiment::kernel;
  if (name == "omega-scan") return Experiment::omega_scan;
  if (name == "recover") return Experiment::recover;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::coeffs: return "coeffs";
    case Experiment::resonance: return "resonance";
    case Experiment::nonlinear: return "nonlinear";
    case Experiment::kernel: return "kernel";
    case Experiment::omega_scan: return "omega-scan";
    case Experiment::recover: return "recover";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (n_rank < 2 || n_rank > 4) throw ConfigError("config: n must be 2, 3 or 4");
  if (M.empty()) throw ConfigError("config: at least one M is required");
  for (double m : M) {
    if (!(m >= 1.0)) throw ConfigError("config: every M must be at least 1");
  }
  const double lo = 0.5 - 0.5 / n_rank;
  if (!(gamma >= lo - 1e-12) || !(gamma <= 1.0)) {
    throw ConfigError("config: gamma must lie in [1/2 - 1/(2n), 1]");
  }
  if (d.empty()) throw ConfigError("config: at least one d is required");
  for (auto v : d) {
    if (v < 1) throw ConfigError("config: every d must be positive");
  }
  if (threads < 1) throw ConfigError("config: threads must be positive");
  if (scan_points < 2) throw ConfigError("config: scan-points must be at least 2");
  for (double v : y) {
    if (!(v >= 1.0)) throw ConfigError("config: every y must be at least 1");
  }
}

void apply_setting(ExperimentConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key);
  const std::string value = trim(raw_value);
  if (key == "experiment") {
    cfg.experiment = parse_experiment(value);
  } else if (key == "n") {
    cfg.n_rank = static_cast<int>(to_int(key, value));
  } else if (key == "M") {
    cfg.M.clear();
    for (const auto& v : split_list(value)) cfg.M.push_back(to_double(key, v));
  } else if (key == "gamma") {
    cfg.gamma = to_double(key, value);
  } else if (key == "d") {
    cfg.d.clear();
    for (const auto& v : split_list(value)) cfg.d.push_back(to_int(key, v));
  } else if (key == "y") {
    cfg.y.clear();
    for (const auto& v : split_list(value)) cfg.y.push_back(to_double(key, v));
  } else if (key == "weight") {
    if (value == "bump") {
      cfg.weight = weights::Shape::bump;
    } else if (value == "plateau") {
      cfg.weight = weights::Shape::plateau;
    } else {
      throw ConfigError("config: weight must be bump or plateau");
    }
  } else if (key == "out") {
    cfg.out = value;
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(to_int(key, value));
  } else if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(to_int(key, value));
  } else if (key == "tau-cache") {
    cfg.tau_cache = value;
  } else if (key == "assume-maass-phase") {
    cfg.assume_maass_phase = to_bool(key, value);
  } else if (key == "scan-points") {
    cfg.scan_points = static_cast<int>(to_int(key, value));
  } else {
    throw ConfigError("config: unknown key '" + key + "'");
  }
}

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

ExperimentConfig read_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::move(base));
}

std::string CsvReport::to_string() const {
  std::string out = "# schema=" + std::to_string(kCsvSchema) + " experiment=" + experiment + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  char buf[64];
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void CsvReport::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open " + path.string() + " for writing");
  f << to_string();
  if (!f) throw ConfigError("failed writing " + path.string());
}

std::size_t CsvReport::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("report has no column '" + name + "'");
  return static_cast<std::size_t>(it - header.begin());
}

FormData load_form(int n_rank, std::uint64_t n_max, const std::filesystem::path& tau_cache) {
  if (n_rank < 2 || n_rank > 4) throw ConfigError("load_form: n must be 2, 3 or 4");
  n_max = std::max<std::uint64_t>(n_max, 16);
  const auto tau = forms::load_or_build_tau(n_max, tau_cache);
  const auto g = forms::normalize_gl2(tau);
  FormData out;
  out.n_rank = n_rank;
  out.table = forms::sym_lift_table(g, n_rank, n_max);
  out.dual = forms::dual_table(out.table);
  return out;
}

std::int64_t window_length(double M, double gamma) {
  return static_cast<std::int64_t>(std::floor(std::pow(M, gamma)));
}

std::uint64_t required_size(const ExperimentConfig& cfg) {
  double need = 1.0;
  for (double M : cfg.M) {
    switch (cfg.experiment) {
      case Experiment::coeffs:
        need = std::max(need, M);
        break;
      case Experiment::resonance:
      case Experiment::nonlinear:
      case Experiment::recover:
        need = std::max(need, M + static_cast<double>(window_length(M, cfg.gamma)) + 1.0);
        break;
      case Experiment::omega_scan: {
        const double span = std::pow(M, omega_exponent(cfg.n_rank));
        need = std::max(need, M + 2.0 * span + 2.0);
        need = std::max(need, M + static_cast<double>(sums::window_span(M, cfg.n_rank) + omega_window(M)) + 1.0);
        break;
      }
      case Experiment::kernel:
        break;
    }
  }
  for (auto d : cfg.d) need = std::max(need, static_cast<double>(d));
  return static_cast<std::uint64_t>(std::ceil(need));
}

CsvReport run_coeffs(const ExperimentConfig& cfg, const FormData& form) {
  CsvReport r{"coeffs", {"n", "m", "A", "A_dual"}, {}};
  const auto count = static_cast<std::int64_t>(cfg.M.front());
  for (std::int64_t m = 1; m <= count; ++m) {
    r.rows.push_back({static_cast<double>(form.n_rank), static_cast<double>(m), table_value(form.table, m),
                      table_value(form.dual, m)});
  }
  return r;
}

namespace {

CsvReport run_twisted(const ExperimentConfig& cfg, const FormData& form, bool linear) {
  cfg.validate();
  if (cfg.n_rank != form.n_rank) throw ConfigError("run: config rank does not match the form");
  CsvReport r{linear ? "resonance" : "nonlinear",
              {"n", "M", "Delta", "d", "re_sum", "im_sum", "re_main", "im_main", "abs_ratio", "arg_diff",
               "budget", "main_zero"},
              {}};
  for (double M : cfg.M) {
    const auto Delta = static_cast<double>(window_length(M, cfg.gamma));
    const auto w = make_weight(cfg.weight, M, Delta);
    for (auto d : cfg.d) {
      sums::SumSpec spec{&form.table, M, Delta, d, linear ? sums::Twist::linear : sums::Twist::nonlinear, w};
      const auto S = sums::exp_sum(spec, cfg.threads);
      const double a1d = table_value(form.dual, d);
      predict::MainTermResult mt;
      if (a1d != 0.0) {
        mt = linear ? predict::main_term_linear(form.dual, M, Delta, d, cfg.n_rank, w)
                    : predict::main_term_nonlinear(form.dual, M, Delta, d, cfg.n_rank, w);
      } else {
        mt.error_budget = predict::error_budget_constant(cfg.n_rank) * Delta * std::pow(M, -0.5 - 0.5 / cfg.n_rank);
      }
      const bool zero = a1d == 0.0;
      const double abs_ratio = zero ? NAN : std::abs(S.value) / std::abs(mt.value);
      const double arg_diff = zero ? NAN : std::arg(S.value / mt.value);
      if (cfg.assume_maass_phase && !zero && std::abs(arg_diff) > 0.5) {
        throw AccuracyError("phase check: arg(sum/main) = " + std::to_string(arg_diff) + " at M = " +
                                std::to_string(M) + ", d = " + std::to_string(d),
                            std::abs(arg_diff));
      }
      r.rows.push_back({static_cast<double>(cfg.n_rank), M, Delta, static_cast<double>(d), S.value.real(),
                        S.value.imag(), mt.value.real(), mt.value.imag(), abs_ratio, arg_diff, mt.error_budget,
                        zero ? 1.0 : 0.0});
    }
  }
  return r;
}

}  // namespace

CsvReport run_resonance(const ExperimentConfig& cfg, const FormData& form) { return run_twisted(cfg, form, true); }

CsvReport run_nonlinear(const ExperimentConfig& cfg, const FormData& form) { return run_twisted(cfg, form, false); }

double log_log_slope(const std::vector<double>& xs, const std::vector<double>& values) {
  if (xs.size() != values.size() || xs.size() < 2) throw DomainError("log_log_slope: need two or more points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double k = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]);
    const double ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

CsvReport run_kernel_check(const ExperimentConfig& cfg, const analytic::TestFunction& f) {
  cfg.validate();
  CsvReport r{"kernel", {"n", "y", "contour", "kernel_form", "residual", "tail", "slope", "predicted_slope"}, {}};
  const auto params = analytic::SpectralParams::zero(cfg.n_rank);
  std::vector<double> ys;
  std::vector<double> residuals;
  for (double y : cfg.y) {
    const auto c = analytic::omega_contour(f, y, params);
    const double k = analytic::kernel_form(f, y, cfg.n_rank);
    const double diff = std::abs(c.value - analytic::cplx(k, 0.0));
    const double residual = diff == 0.0 ? 0.0 : diff / std::abs(k);
    r.rows.push_back({static_cast<double>(cfg.n_rank), y, c.value.real(), k, residual, c.tail_estimate, NAN,
                      -1.0 / cfg.n_rank});
    if (residual > 0.0) {
      ys.push_back(y);
      residuals.push_back(residual);
    }
  }
  const double slope = ys.size() >= 2 ? log_log_slope(ys, residuals) : NAN;
  for (auto& row : r.rows) row[6] = slope;
  return r;
}

CsvReport run_kernel_check(const ExperimentConfig& cfg) {
  return run_kernel_check(cfg, analytic::from_weight(weights::make_bump(1.0, 1.0)));
}

CsvReport run_omega_scan(const ExperimentConfig& cfg, const FormData& form) {
  cfg.validate();
  if (cfg.n_rank != form.n_rank) throw ConfigError("run: config rank does not match the form");
  CsvReport r{"omega-scan", {"n", "M", "d", "c", "Delta", "scaled_abs", "scan_max", "window_delta", "window_max"}, {}};
  const std::int64_t d = cfg.d.front();
  for (double M : cfg.M) {
    const double span = std::pow(M, omega_exponent(cfg.n_rank));
    std::vector<std::vector<double>> rows;
    double best = 0.0;
    for (int i = 0; i < cfg.scan_points; ++i) {
      const double c = 0.5 + 1.5 * i / (cfg.scan_points - 1);
      const double Delta = c * span;
      sums::SumSpec spec{&form.table, M, Delta, d, sums::Twist::linear, std::nullopt};
      const double scaled = std::abs(sums::exp_sum(spec, cfg.threads).value) / std::sqrt(M);
      best = std::max(best, scaled);
      rows.push_back({static_cast<double>(cfg.n_rank), M, static_cast<double>(d), c, Delta, scaled});
    }
    const std::int64_t dp = omega_window(M);
    const auto windows = sums::windowed_plain_sums(form.table, M, dp, 0);
    double wmax = 0.0;
    for (const auto& v : windows) wmax = std::max(wmax, std::abs(v));
    wmax /= static_cast<double>(dp) * std::pow(M, 0.5 / cfg.n_rank - 0.5);
    for (auto& row : rows) {
      row.push_back(best);
      row.push_back(static_cast<double>(dp));
      row.push_back(wmax);
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

double omega_exhaustive_max(const FormData& form, double M, std::int64_t d) {
  const double span = std::pow(M, omega_exponent(form.n_rank));
  const auto first = static_cast<std::int64_t>(std::ceil(M));
  const auto lo = static_cast<std::int64_t>(std::ceil(0.5 * span));
  const auto hi = static_cast<std::int64_t>(std::floor(2.0 * span));
  if (first + hi > static_cast<std::int64_t>(form.table.n_max())) throw RangeError("omega_exhaustive_max: table too short");
  // Running sum over [M, M + Delta]; Delta steps through every integer.
  analytic::cplx sum = 0.0;
  analytic::cplx comp = 0.0;
  double best = 0.0;
  for (std::int64_t m = first; m <= first + hi; ++m) {
    const double phase = sums::twist_phase(sums::Twist::linear, M, d, form.n_rank, m);
    const analytic::cplx term = table_value(form.table, m) * sums::unit_phase(phase) - comp;
    const analytic::cplx next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    if (m - first >= lo) best = std::max(best, std::abs(sum) / std::sqrt(M));
  }
  return best;
}

CsvReport run_recover(const ExperimentConfig& cfg, const FormData& form) {
  cfg.validate();
  if (cfg.n_rank != form.n_rank) throw ConfigError("run: config rank does not match the form");
  CsvReport r{"recover", {"n", "M", "Delta", "d", "re_estimate", "im_estimate", "truth", "rel_error"}, {}};
  const int n = cfg.n_rank;
  for (double M : cfg.M) {
    const auto Delta = static_cast<double>(window_length(M, cfg.gamma));
    const auto w = make_weight(cfg.weight, M, Delta);
    for (auto d : cfg.d) {
      sums::SumSpec spec{&form.table, M, Delta, d, sums::Twist::linear, w};
      const auto S = sums::exp_sum(spec, cfg.threads);
      const auto integral = predict::oscillatory_integral(predict::IntegralSpec::resonant(w, d, n));
      if (std::abs(integral) < 1e-12) {
        throw AccuracyError("run_recover: degenerate window, main integral below 1e-12", std::abs(integral));
      }
      const auto estimate = S.value / (integral * predict::resonance_constant(1.0, d, n));
      const double truth = table_value(form.dual, d);
      const double rel = truth == 0.0 ? std::abs(estimate) : std::abs(estimate - truth) / std::abs(truth);
      r.rows.push_back({static_cast<double>(n), M, Delta, static_cast<double>(d), estimate.real(), estimate.imag(),
                        truth, rel});
    }
  }
  return r;
}

CsvReport run(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.experiment == Experiment::kernel) return run_kernel_check(cfg);
  const auto form = load_form(cfg.n_rank, required_size(cfg), cfg.tau_cache);
  switch (cfg.experiment) {
    case Experiment::coeffs: return run_coeffs(cfg, form);
    case Experiment::resonance: return run_resonance(cfg, form);
    case Experiment::nonlinear: return run_nonlinear(cfg, form);
    case Experiment::omega_scan: return run_omega_scan(cfg, form);
    case Experiment::recover: return run_recover(cfg, form);
    case Experiment::kernel: break;
  }
  return run_kernel_check(cfg);
}

}  // namespace resonance::experiments
