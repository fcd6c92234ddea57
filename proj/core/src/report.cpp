#include "nullwave/report.hpp"

#include "nullwave/detail/text.hpp"
#include "nullwave/errors.hpp"

#ifndef NULLWAVE_VERSION
#define NULLWAVE_VERSION "0.0.0"
#endif

namespace nullwave {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

const char* version() noexcept { return NULLWAVE_VERSION; }

RunReport make_run_report(const ExperimentConfig& config, ExperimentReport result) {
  RunReport r;
  r.version = version();
  r.config = config_echo(config);
  r.pass = result.pass;
  r.result = std::move(result);
  return r;
}

void to_json(json& j, const NormRow& row) {
  j = json{{"observable", row.observable}, {"epsilon", row.epsilon}, {"p", row.p},
           {"sign", row.sign},             {"norm", row.norm},       {"ci_lo", row.ci_lo},
           {"ci_hi", row.ci_hi},           {"n_paths", row.n_paths}};
}

void from_json(const json& j, NormRow& row) {
  j.at("observable").get_to(row.observable);
  j.at("epsilon").get_to(row.epsilon);
  j.at("p").get_to(row.p);
  j.at("sign").get_to(row.sign);
  j.at("norm").get_to(row.norm);
  j.at("ci_lo").get_to(row.ci_lo);
  j.at("ci_hi").get_to(row.ci_hi);
  j.at("n_paths").get_to(row.n_paths);
}

void to_json(json& j, const SlopeReport& s) {
  j = json{{"observable", s.observable},
           {"sign", s.sign},
           {"p", s.p},
           {"quantity", s.quantity},
           {"slope", s.slope},
           {"std_error", s.std_error},
           {"declared", s.declared},
           {"lower", optional_number(s.lower)},
           {"upper", optional_number(s.upper)},
           {"pass", s.pass},
           {"note", s.note}};
}

void from_json(const json& j, SlopeReport& s) {
  j.at("observable").get_to(s.observable);
  j.at("sign").get_to(s.sign);
  j.at("p").get_to(s.p);
  j.at("quantity").get_to(s.quantity);
  j.at("slope").get_to(s.slope);
  j.at("std_error").get_to(s.std_error);
  j.at("declared").get_to(s.declared);
  s.lower = read_optional(j.at("lower"));
  s.upper = read_optional(j.at("upper"));
  j.at("pass").get_to(s.pass);
  j.at("note").get_to(s.note);
}

void to_json(json& j, const Check& c) {
  j = json{{"name", c.name},
           {"value", c.value},
           {"expected", c.expected},
           {"tolerance", c.tolerance},
           {"pass", c.pass}};
}

void from_json(const json& j, Check& c) {
  j.at("name").get_to(c.name);
  j.at("value").get_to(c.value);
  j.at("expected").get_to(c.expected);
  j.at("tolerance").get_to(c.tolerance);
  j.at("pass").get_to(c.pass);
}

void to_json(json& j, const ExperimentReport& r) {
  j = json{{"experiment", r.experiment}, {"rows", r.rows},       {"slopes", r.slopes},
           {"checks", r.checks},         {"warnings", r.warnings}, {"degenerate", r.degenerate},
           {"details", r.details},       {"pass", r.pass}};
}

void from_json(const json& j, ExperimentReport& r) {
  j.at("experiment").get_to(r.experiment);
  j.at("rows").get_to(r.rows);
  j.at("slopes").get_to(r.slopes);
  j.at("checks").get_to(r.checks);
  j.at("warnings").get_to(r.warnings);
  j.at("degenerate").get_to(r.degenerate);
  r.details = j.at("details");
  j.at("pass").get_to(r.pass);
}

void to_json(json& j, const RunReport& r) {
  j = json{{"schema_version", r.schema_version},
           {"versions", {{"nullwave", r.version}, {"schema", r.schema_version}}},
           {"config", r.config},
           {"result", r.result},
           {"pass", r.pass}};
}

void from_json(const json& j, RunReport& r) {
  j.at("schema_version").get_to(r.schema_version);
  if (r.schema_version != kSchemaVersion) {
    throw DataError("report schema version " + std::to_string(r.schema_version) +
                    " is not supported (expected " + std::to_string(kSchemaVersion) + ")");
  }
  j.at("versions").at("nullwave").get_to(r.version);
  r.config = j.at("config");
  j.at("result").get_to(r.result);
  j.at("pass").get_to(r.pass);
}

std::string format_json(const RunReport& report) { return json(report).dump(2) + "\n"; }

const char* csv_header() noexcept { return "epsilon,p,sign,norm,ci_lo,ci_hi,n_paths,observable"; }

std::string format_csv(const ExperimentReport& report) {
  using detail::format_double;
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : report.rows) {
    out += format_double(r.epsilon) + ',' + format_double(r.p) + ',' + r.sign + ',' +
           format_double(r.norm) + ',' + format_double(r.ci_lo) + ',' + format_double(r.ci_hi) +
           ',' + std::to_string(r.n_paths) + ',' + r.observable + '\n';
  }
  return out;
}

}  // namespace nullwave
