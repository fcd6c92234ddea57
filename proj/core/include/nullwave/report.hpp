#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "nullwave/config.hpp"
#include "nullwave/experiments.hpp"

namespace nullwave {

/// Version of the JSON summary layout. Bump on any field change.
inline constexpr int kSchemaVersion = 1;

/// Library version string.
const char* version() noexcept;

/// Deterministic summary of one run. Wall-clock time lives in a separate timing
/// file so this document depends only on the configuration and master seed.
struct RunReport {
  int schema_version = kSchemaVersion;
  std::string version;
  nlohmann::json config;
  ExperimentReport result;
  bool pass = false;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

RunReport make_run_report(const ExperimentConfig& config, ExperimentReport result);

void to_json(nlohmann::json& j, const NormRow& row);
void from_json(const nlohmann::json& j, NormRow& row);
void to_json(nlohmann::json& j, const SlopeReport& s);
void from_json(const nlohmann::json& j, SlopeReport& s);
void to_json(nlohmann::json& j, const Check& c);
void from_json(const nlohmann::json& j, Check& c);
void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, ExperimentReport& r);
void to_json(nlohmann::json& j, const RunReport& r);
/// Throws DataError on a schema version this build does not read.
void from_json(const nlohmann::json& j, RunReport& r);

/// Pretty-printed JSON with a trailing newline.
std::string format_json(const RunReport& report);

/// CSV header line (without newline).
const char* csv_header() noexcept;

/// One row per (epsilon, p, sign, observable), in report order.
std::string format_csv(const ExperimentReport& report);

}  // namespace nullwave
