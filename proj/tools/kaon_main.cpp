// Command-line front end: time-series CSV for single and bipartite kaon
// scenarios, the invariant check suite, and parameter inspection.

#include "kaon/run.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

struct FlagOverrides {
  std::optional<std::string> config;
  std::optional<double> gamma_S, gamma_ratio, delta_m_ratio;
  std::optional<double> epsilon_mag, epsilon_phase, t_max;
  std::optional<int> steps;
  std::optional<std::string> basis, mode, initial, out;
  std::optional<uint64_t> seed;
};

void add_common_flags(CLI::App* cmd, FlagOverrides& f) {
  cmd->add_option("--config", f.config, "key=value parameter file");
  cmd->add_option("--gamma-S", f.gamma_S, "K_S decay rate (units 1/tau_S)");
  cmd->add_option("--gamma-ratio", f.gamma_ratio, "gamma_S / gamma_L");
  cmd->add_option("--delta-m-ratio", f.delta_m_ratio, "delta_m / gamma_S");
  cmd->add_option("--epsilon-mag", f.epsilon_mag, "|epsilon|");
  cmd->add_option("--epsilon-phase", f.epsilon_phase, "arg(epsilon) in rad");
  cmd->add_option("--t-max", f.t_max, "time-grid end (units tau_S)");
  cmd->add_option("--steps", f.steps, "time-grid points");
  cmd->add_option("--basis", f.basis, "strangeness or cp");
  cmd->add_option("--mode", f.mode, "raw or surviving");
  cmd->add_option("--initial", f.initial, "initial state name or spec");
  cmd->add_option("--out", f.out, "output path or '-' for stdout");
  cmd->add_option("--seed", f.seed, "RNG seed for the check suites");
}

kaon::RunConfig resolve_config(const FlagOverrides& f) {
  kaon::RunConfig cfg;
  if (f.config) kaon::apply_config_file(cfg, *f.config);
  if (f.gamma_S) cfg.gamma_S = *f.gamma_S;
  if (f.gamma_ratio) cfg.gamma_ratio = *f.gamma_ratio;
  if (f.delta_m_ratio) cfg.delta_m_ratio = *f.delta_m_ratio;
  if (f.epsilon_mag) cfg.epsilon_mag = *f.epsilon_mag;
  if (f.epsilon_phase) cfg.epsilon_phase = *f.epsilon_phase;
  if (f.t_max) cfg.t_max = *f.t_max;
  if (f.steps) cfg.steps = *f.steps;
  if (f.basis) cfg.basis = kaon::parse_basis(*f.basis);
  if (f.mode) cfg.mode = kaon::parse_mode(*f.mode);
  if (f.out) cfg.out = *f.out;
  if (f.seed) cfg.seed = *f.seed;
  return cfg;
}

template <typename Fn>
int with_output(const kaon::RunConfig& cfg, Fn&& fn) {
  if (cfg.out == "-" || cfg.out == "stdout") return fn(std::cout);
  std::ofstream os(cfg.out);
  if (!os) {
    std::cerr << "error: cannot open output file " << cfg.out << '\n';
    return 2;
  }
  return fn(os);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neutral-kaon complementarity and concurrence simulator"};
  app.require_subcommand(1);

  FlagOverrides single_f, bipartite_f, check_f, params_f;
  CLI::App* single = app.add_subcommand(
      "single", "single-kaon complementarity time series (CSV)");
  add_common_flags(single, single_f);
  CLI::App* bipartite = app.add_subcommand(
      "bipartite", "two-kaon concurrence time series (CSV)");
  add_common_flags(bipartite, bipartite_f);
  CLI::App* check =
      app.add_subcommand("check", "run all invariant suites, exit 0 on pass");
  add_common_flags(check, check_f);
  CLI::App* params =
      app.add_subcommand("params", "print resolved physical parameters");
  add_common_flags(params, params_f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (single->parsed()) {
      kaon::RunConfig cfg = resolve_config(single_f);
      std::string initial = single_f.initial.value_or("K0");
      return with_output(cfg, [&](std::ostream& os) {
        kaon::run_single(cfg, initial, os);
        return 0;
      });
    }
    if (bipartite->parsed()) {
      kaon::RunConfig cfg = resolve_config(bipartite_f);
      std::string initial = bipartite_f.initial.value_or("singlet");
      return with_output(cfg, [&](std::ostream& os) {
        kaon::run_bipartite(cfg, initial, os);
        return 0;
      });
    }
    if (check->parsed()) {
      kaon::RunConfig cfg = resolve_config(check_f);
      return with_output(
          cfg, [&](std::ostream& os) { return kaon::run_check(cfg, os); });
    }
    kaon::RunConfig cfg = resolve_config(params_f);
    return with_output(cfg, [&](std::ostream& os) {
      kaon::print_params(cfg, os);
      return 0;
    });
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
