#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nullwave/config.hpp"

namespace nullwave {

/// One CSV row: an L^p norm over paths at one scale.
struct NormRow {
  std::string observable;
  double epsilon = 0.0;
  double p = 2.0;
  std::string sign;
  double norm = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t n_paths = 0;

  friend bool operator==(const NormRow&, const NormRow&) = default;
};

/// Log-log slope of one observable against epsilon. Without bounds the fit is
/// informational and always passes.
struct SlopeReport {
  std::string observable;
  std::string sign;
  double p = 2.0;
  std::string quantity;  // "norm" or "second_moment"
  double slope = 0.0;
  double std_error = 0.0;
  double declared = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
  bool pass = true;
  std::string note;

  friend bool operator==(const SlopeReport&, const SlopeReport&) = default;
};

/// A scalar acceptance check: |value - expected| <= tolerance, or a one-sided
/// comparison spelled out in `name`.
struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  friend bool operator==(const Check&, const Check&) = default;
};

struct ExperimentReport {
  std::string experiment;
  std::vector<NormRow> rows;
  std::vector<SlopeReport> slopes;
  std::vector<Check> checks;
  std::vector<std::string> warnings;
  bool degenerate = false;
  nlohmann::json details = nlohmann::json::object();
  bool pass = false;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

ExperimentReport experiment_variance_Z(const ExperimentConfig& config);
ExperimentReport experiment_remainder_scaling(const ExperimentConfig& config);
ExperimentReport experiment_original_coordinates(const ExperimentConfig& config);
ExperimentReport experiment_one_param_failure(const ExperimentConfig& config);
ExperimentReport experiment_holder(const ExperimentConfig& config);
ExperimentReport experiment_decay_probe(const ExperimentConfig& config);

/// Dispatches on config.experiment (not solve_once).
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Exact lattice variance counts for the linear field at separation m = j - i.
/// delta^(2)_{r h} Z: r m + r (r - 1) / 2 cells.
long long delta2_cells(int m, int r);
/// delta^(1)_{r h} Z (needs r <= m): r (m - 1) - r (r - 1) / 2 cells.
long long delta1_cells(int m, int r);

}  // namespace nullwave
