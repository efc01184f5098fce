// Command-line driver: one subcommand per experiment, CSV on stdout or --out.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resonance/errors.hpp"
#include "resonance/experiments.hpp"

namespace {

namespace ex = resonance::experiments;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ',';
    out += s;
  }
  return out;
}

struct Flags {
  std::string n, gamma, weight, out, threads, seed, tau_cache, scan_points;
  std::vector<std::string> M, d, y;
  bool maass_phase = false;
  std::string config;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--n", f.n, "rank n (2, 3 or 4)");
  sub->add_option("--M", f.M, "window start; repeatable")->take_all();
  sub->add_option("--gamma", f.gamma, "window length exponent, Delta = floor(M^gamma)");
  sub->add_option("--d", f.d, "twist index; repeatable")->take_all();
  sub->add_option("--y", f.y, "kernel check points; repeatable")->take_all();
  sub->add_option("--weight", f.weight, "bump or plateau")->check(CLI::IsMember({"bump", "plateau"}));
  sub->add_option("--out", f.out, "CSV output path (default: stdout)");
  sub->add_option("--threads", f.threads, "worker threads for the sums");
  sub->add_option("--seed", f.seed, "seed for randomized grids");
  sub->add_option("--tau-cache", f.tau_cache, "binary cache for tau values");
  sub->add_option("--scan-points", f.scan_points, "grid size of the omega scan");
  sub->add_flag("--assume-maass-phase", f.maass_phase, "fail unless arg(sum/main) is near 0");
  sub->add_option("--config", f.config, "key = value file; flags given on the command line win");
}

ex::ExperimentConfig build_config(const std::string& name, const Flags& f) {
  ex::ExperimentConfig cfg;
  if (!f.config.empty()) cfg = ex::read_config_file(f.config, cfg);
  cfg.experiment = ex::parse_experiment(name);
  std::map<std::string, std::string> given;
  if (!f.n.empty()) given["n"] = f.n;
  if (!f.M.empty()) given["M"] = join(f.M);
  if (!f.gamma.empty()) given["gamma"] = f.gamma;
  if (!f.d.empty()) given["d"] = join(f.d);
  if (!f.y.empty()) given["y"] = join(f.y);
  if (!f.weight.empty()) given["weight"] = f.weight;
  if (!f.out.empty()) given["out"] = f.out;
  if (!f.threads.empty()) given["threads"] = f.threads;
  if (!f.seed.empty()) given["seed"] = f.seed;
  if (!f.tau_cache.empty()) given["tau-cache"] = f.tau_cache;
  if (!f.scan_points.empty()) given["scan-points"] = f.scan_points;
  if (f.maass_phase) given["assume-maass-phase"] = "true";
  for (const auto& [k, v] : given) ex::apply_setting(cfg, k, v);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance experiments for GL(n) exponential sums"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::string> names = {"coeffs", "resonance", "nonlinear", "kernel", "omega-scan", "recover"};
  std::map<std::string, CLI::App*> subs;
  subs["coeffs"] = app.add_subcommand("coeffs", "print A(m) and its dual for m <= M");
  subs["resonance"] = app.add_subcommand("resonance", "linear twist: direct sum vs main term");
  subs["nonlinear"] = app.add_subcommand("nonlinear", "nonlinear twist: direct sum vs main term");
  subs["kernel"] = app.add_subcommand("kernel", "contour integral vs leading kernel");
  subs["omega-scan"] = app.add_subcommand("omega-scan", "large values over Delta ~ M^{1-1/(2n)}");
  subs["recover"] = app.add_subcommand("recover", "estimate dual coefficients from short sums");
  for (auto& [name, sub] : subs) add_flags(sub, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    std::string chosen;
    for (const auto& name : names) {
      if (subs[name]->parsed()) chosen = name;
    }
    const auto cfg = build_config(chosen, flags);
    const auto report = ex::run(cfg);
    if (cfg.out.empty()) {
      std::cout << report.to_string();
    } else {
      report.write(cfg.out);
    }
  } catch (const resonance::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << " (achieved " << e.achieved() << ")\n";
    return 2;
  } catch (const resonance::RangeError& e) {
    std::cerr << "range error: " << e.what() << '\n';
    return 3;
  } catch (const resonance::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const resonance::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
