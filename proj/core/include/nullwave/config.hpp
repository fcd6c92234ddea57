#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "nullwave/geometry.hpp"
#include "nullwave/grid.hpp"

namespace nullwave {

enum class ExperimentKind {
  variance_z,
  remainder_scaling,
  original_coords,
  one_param_failure,
  holder,
  decay_probe,
  solve_once,
};

const char* to_string(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_experiment(std::string_view name) noexcept;

struct Limits {
  int max_n = 4096;
  std::size_t max_paths = 1'000'000;
};

/// Acceptance thresholds. These are tooling choices and are echoed into every report.
struct Verdicts {
  double se_tolerance = 4.0;        // variance_z: |estimate - eps^2/4| in standard errors
  double exact_se_tolerance = 3.0;  // exact lattice variance controls
  double variance_slope_tolerance = 0.05;
  double slope_min = 1.35;
  double slope_max = 1.65;
  double ratio_floor = 0.1;
  double slope_agreement = 0.15;
  double holder_min = 0.85;
  double holder_max = 1.15;
  double tail_confidence = 0.99;
  double bound_se = 3.0;
  double divergence_fraction = 0.9;
};

/// Grid as requested; unset extents are fitted to the stencils during validation.
struct GridRequest {
  double h = 0x1.0p-10;
  std::optional<int> n;
  std::optional<double> origin;  // diagonal origin (a, a)
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::remainder_scaling;

  // [run]
  std::size_t paths = 2000;
  std::uint64_t seed = 1234;
  unsigned workers = 0;      // hint only; never affects results
  std::string out_dir;       // empty: $NULLWAVE_OUT, else ./nullwave-out
  int bootstrap = 1000;
  std::size_t path_index = 0;  // solve_once

  // [grid]
  GridRequest grid_request;
  GridSpec grid;  // resolved by validate()

  // [data] / [model]
  InitialData data{ScalarPreset::constant(1.0), ScalarPreset::zero()};
  Nonlinearity F = Nonlinearity::tanh();

  // [probe]
  NullPoint base{0.0, 1.0};
  std::vector<double> epsilons;
  std::vector<double> p_values{2.0};
  std::vector<Sign> signs{Sign::plus, Sign::minus};

  // [holder]
  int holder_axis = 2;

  // [decay_probe]
  double kappa = 0.5;
  double M = 1.0;
  int n_max = 8;

  Verdicts verdicts;
  Limits limits;

  /// Non-fatal notes from validation (window placement and similar).
  std::vector<std::string> warnings;
};

/// Values given on the command line; they win over the file.
struct ConfigOverrides {
  std::optional<std::size_t> paths;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> workers;
};

/// Documented defaults for an experiment, already validated.
ExperimentConfig default_config(ExperimentKind kind);

/// Parses the `key = value` format with [section] headers, applies overrides and
/// validates. Throws ConfigError carrying every problem found.
ExperimentConfig parse_config(std::string_view text, const ConfigOverrides& overrides = {});

/// Checks the configuration and resolves the grid. Throws ConfigError listing all
/// problems.
void validate(ExperimentConfig& config);

/// Snapped probe scales e^-n, n = 1..n_max, in lattice steps (at least 1).
std::vector<int> decay_steps(const ExperimentConfig& config);

/// Canonical echo used in reports. Leaves out the worker hint and output directory,
/// which never influence results.
nlohmann::json config_echo(const ExperimentConfig& config);

/// Output directory after applying $NULLWAVE_OUT.
std::string resolve_out_dir(const ExperimentConfig& config);

}  // namespace nullwave
