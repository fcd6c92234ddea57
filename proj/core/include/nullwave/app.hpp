#pragma once

#include <filesystem>
#include <vector>

#include "nullwave/config.hpp"
#include "nullwave/report.hpp"

namespace nullwave {

struct RunOutcome {
  RunReport report;
  std::vector<std::filesystem::path> files;  // deterministic outputs
  std::filesystem::path timing;              // wall clock and worker count
};

/// Runs the configured experiment and writes <experiment>.csv, <experiment>.json and
/// <experiment>.timing.json into the output directory. A solve_once config is
/// forwarded to solve_once(). Throws std::runtime_error on I/O failure.
RunOutcome run(const ExperimentConfig& config);

/// Solves one path and writes field_v.csv, field_z.csv and field_v0.csv (columns
/// i,j,x1,x2,t,x,value) plus solve_once.json with the seeds used.
RunOutcome solve_once(const ExperimentConfig& config);

/// Writes `text` to `path`, creating parent directories. Throws std::runtime_error.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace nullwave
