#include "nullwave/app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "nullwave/detail/text.hpp"
#include "nullwave/errors.hpp"
#include "nullwave/geometry.hpp"
#include "nullwave/noise.hpp"
#include "nullwave/parallel.hpp"
#include "nullwave/rng.hpp"
#include "nullwave/solver.hpp"

namespace nullwave {

namespace fs = std::filesystem;

namespace {

std::string field_csv(const SolutionField& f) {
  using detail::format_double;
  std::string out = "i,j,x1,x2,t,x,value\n";
  const int n = f.size();
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= j; ++i) {
      const NullPoint q = f.point({i, j});
      const SpaceTimePoint s = from_null(q);
      out += std::to_string(i) + ',' + std::to_string(j) + ',' + format_double(q.x1) + ',' +
             format_double(q.x2) + ',' + format_double(s.t) + ',' + format_double(s.x) + ',' +
             format_double(f(i, j)) + '\n';
    }
  }
  return out;
}

void write_timing(const fs::path& path, double seconds, unsigned workers) {
  const nlohmann::json j = {{"wall_seconds", seconds}, {"workers", workers}};
  write_text(path, j.dump(2) + "\n");
}

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

RunOutcome run(const ExperimentConfig& config) {
  if (config.experiment == ExperimentKind::solve_once) return solve_once(config);
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  outcome.report = make_run_report(config, run_experiment(config));
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

  const fs::path dir = resolve_out_dir(config);
  const std::string stem = to_string(config.experiment);
  outcome.files = {dir / (stem + ".csv"), dir / (stem + ".json")};
  write_text(outcome.files[0], format_csv(outcome.report.result));
  write_text(outcome.files[1], format_json(outcome.report));
  outcome.timing = dir / (stem + ".timing.json");
  write_timing(outcome.timing, elapsed.count(), resolve_workers(config.workers));
  return outcome;
}

RunOutcome solve_once(const ExperimentConfig& config) {
  if (config.experiment != ExperimentKind::solve_once) {
    throw ConfigError("experiment: solve-once needs experiment = solve_once");
  }
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = rng::path_seed(config.seed, config.path_index);
  const auto noise = NoiseField::sample(config.grid, seed);
  const auto v0 = tabulate_V0(config.grid, config.data);
  const auto z = solve_linear(noise);
  const auto v = solve_marching(noise, config.data, config.F);

  double max_v = 0.0, max_v_minus_z = 0.0;
  for (int j = 0; j <= config.grid.n; ++j) {
    for (int i = 0; i <= j; ++i) {
      max_v = std::max(max_v, std::abs(v(i, j)));
      max_v_minus_z = std::max(max_v_minus_z, std::abs(v(i, j) - z(i, j)));
    }
  }

  const fs::path dir = resolve_out_dir(config);
  RunOutcome outcome;
  outcome.files = {dir / "field_v.csv", dir / "field_z.csv", dir / "field_v0.csv",
                   dir / "solve_once.json"};
  write_text(outcome.files[0], field_csv(v));
  write_text(outcome.files[1], field_csv(z));
  write_text(outcome.files[2], field_csv(v0));

  ExperimentReport result;
  result.experiment = "solve_once";
  result.warnings = config.warnings;
  result.pass = true;
  result.details = {{"master_seed", config.seed},
                    {"path", config.path_index},
                    {"path_seed", seed},
                    {"files", {"field_v.csv", "field_z.csv", "field_v0.csv"}},
                    {"max_abs_v", max_v},
                    {"max_abs_v_minus_z", max_v_minus_z}};
  outcome.report = make_run_report(config, std::move(result));
  write_text(outcome.files[3], format_json(outcome.report));

  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  outcome.timing = dir / "solve_once.timing.json";
  write_timing(outcome.timing, elapsed.count(), 1);
  return outcome;
}

}  // namespace nullwave
