// nullwave command-line driver.
//
// Exit codes: 0 every verdict passed, 1 some verdict failed, 2 invalid
// configuration, 3 I/O or other runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "nullwave/app.hpp"
#include "nullwave/config.hpp"
#include "nullwave/errors.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_summary(const nullwave::RunOutcome& outcome) {
  const auto& r = outcome.report.result;
  for (const auto& w : r.warnings) std::cout << "warning: " << w << '\n';
  for (const auto& s : r.slopes) {
    std::cout << (s.pass ? "PASS " : "FAIL ") << "slope " << s.observable << " sign=" << s.sign
              << " p=" << s.p << " " << s.quantity << ": " << s.slope << " +- " << s.std_error
              << " (declared " << s.declared << ")";
    if (!s.note.empty()) std::cout << " [" << s.note << "]";
    std::cout << '\n';
  }
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.value << " vs " << c.expected;
    if (c.tolerance > 0) std::cout << " +- " << c.tolerance;
    std::cout << '\n';
  }
  for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
  std::cout << (outcome.report.pass ? "verdict: pass" : "verdict: FAIL") << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo experiments for a stochastic wave equation on a null lattice"};
  app.require_subcommand(1);

  std::string config_path;
  nullwave::ConfigOverrides overrides;

  auto* run = app.add_subcommand("run", "run the configured experiment and write CSV/JSON reports");
  run->add_option("config", config_path, "configuration file")->required();
  run->add_option("--paths", overrides.paths, "number of Monte Carlo paths");
  run->add_option("--seed", overrides.seed, "master seed");
  run->add_option("--out", overrides.out_dir, "output directory (default $NULLWAVE_OUT or ./nullwave-out)");
  run->add_option("--workers", overrides.workers, "worker threads (0 = all cores); never changes results");

  auto* validate = app.add_subcommand("validate", "check a configuration and print the resolved grid");
  validate->add_option("config", config_path, "configuration file")->required();

  auto* once = app.add_subcommand("solve-once", "solve one path and dump v, Z and V0 as CSV grids");
  once->add_option("config", config_path, "configuration file")->required();
  once->add_option("--seed", overrides.seed, "master seed");
  once->add_option("--out", overrides.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  nullwave::ExperimentConfig config;
  try {
    config = nullwave::parse_config(read_file(config_path), overrides);
  } catch (const nullwave::ConfigError& e) {
    std::cerr << "invalid configuration " << config_path << ":\n";
    for (const auto& m : e.messages()) std::cerr << "  " << m << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }

  if (*validate) {
    for (const auto& w : config.warnings) std::cout << "warning: " << w << '\n';
    std::cout << "ok: " << nullwave::to_string(config.experiment) << " on " << config.grid.describe()
              << '\n'
              << nullwave::config_echo(config).dump(2) << std::endl;
    return 0;
  }

  try {
    if (*once && config.experiment != nullwave::ExperimentKind::solve_once) {
      std::cerr << "solve-once needs a config with experiment = solve_once\n";
      return 2;
    }
    const auto outcome = *once ? nullwave::solve_once(config) : nullwave::run(config);
    print_summary(outcome);
    return outcome.report.pass ? 0 : 1;
  } catch (const nullwave::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
