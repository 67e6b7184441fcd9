#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "driftkin/cli/run.hpp"
#include "driftkin/config/scenario.hpp"
#include "driftkin/error.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kSolverFailure = 1;
constexpr int kConfigError = 2;

using driftkin::config::ScenarioConfig;

ScenarioConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw driftkin::ConfigError({"cannot read config file '" + path + "'"});
  std::ostringstream text;
  text << in.rdbuf();
  return driftkin::config::parse_config(text.str());
}

void print_errors(const driftkin::ConfigError& e) {
  for (const auto& m : e.messages()) std::cerr << "error: " << m << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drift-kinetic scenario runner"};
  app.require_subcommand(1);

  std::string config_path, scenario_name, out_dir;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;

  auto* run = app.add_subcommand("run", "run one scenario");
  run->add_option("--config", config_path, "scenario config file")->check(CLI::ExistingFile);
  run->add_option("--scenario", scenario_name, "scenario name (overrides the config)");
  run->add_option("--epsilon", epsilon, "epsilon (overrides [epsilon] value)");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "random seed");
  run->add_option("--threads", threads, "worker threads");

  auto* validate = app.add_subcommand("validate", "check a config file and list every error");
  validate->add_option("--config", config_path, "scenario config file")->required();

  auto* list = app.add_subcommand("list-scenarios", "print the known scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (list->parsed()) {
    for (auto s : driftkin::config::all_scenarios()) {
      std::cout << driftkin::config::to_string(s) << "  " << driftkin::config::describe(s) << '\n';
    }
    return kOk;
  }

  try {
    if (validate->parsed()) {
      const auto cfg = load(config_path);
      std::cout << "ok: " << driftkin::config::to_string(cfg.scenario) << '\n';
      return kOk;
    }

    ScenarioConfig cfg;
    if (!config_path.empty()) {
      cfg = load(config_path);
    } else if (scenario_name.empty()) {
      throw driftkin::ConfigError({"run needs --config or --scenario"});
    }
    if (!scenario_name.empty()) {
      const auto s = driftkin::config::scenario_from_string(scenario_name);
      if (!s) throw driftkin::ConfigError({"unknown scenario '" + scenario_name + "'"});
      if (config_path.empty()) {
        cfg = driftkin::config::default_config(*s);
      } else {
        cfg.scenario = *s;
      }
    }
    if (run->count("--epsilon")) cfg.epsilon.value = epsilon;
    if (run->count("--out")) cfg.out = out_dir;
    if (run->count("--seed")) cfg.seed = seed;
    if (run->count("--threads")) cfg.threads = threads;

    const auto outcome = driftkin::cli::run_scenario(cfg, std::cout);
    if (outcome.has_verdict) std::cout << outcome.summary << '\n';
    return outcome.pass ? kOk : kSolverFailure;
  } catch (const driftkin::ConfigError& e) {
    print_errors(e);
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}
