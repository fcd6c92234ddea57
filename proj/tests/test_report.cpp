#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "nullwave/app.hpp"
#include "nullwave/config.hpp"
#include "nullwave/errors.hpp"
#include "nullwave/experiments.hpp"
#include "nullwave/report.hpp"

using namespace nullwave;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("nullwave_test_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small(ExperimentKind kind) {
  auto c = default_config(kind);
  c.paths = 40;
  c.grid_request.h = 1.0 / 128;
  c.epsilons = {0.125, 0.0625, 0.03125};
  validate(c);
  return c;
}

}  // namespace

TEST(Report, JsonRoundTripIsLossless) {
  for (auto kind : {ExperimentKind::remainder_scaling, ExperimentKind::one_param_failure,
                    ExperimentKind::holder}) {
    const auto c = small(kind);
    const auto report = make_run_report(c, run_experiment(c));
    const auto text = format_json(report);
    RunReport back = nlohmann::json::parse(text).get<RunReport>();
    EXPECT_EQ(back, report);
    EXPECT_EQ(format_json(back), text);
  }
}

TEST(Report, LayoutAndSchemaVersion) {
  const auto c = small(ExperimentKind::holder);
  const auto j = nlohmann::json::parse(format_json(make_run_report(c, run_experiment(c))));
  EXPECT_EQ(j.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(j.at("versions").at("nullwave"), version());
  EXPECT_TRUE(j.at("config").contains("grid"));
  EXPECT_TRUE(j.at("result").contains("rows"));
  EXPECT_TRUE(j.at("pass").is_boolean());
  auto bad = j;
  bad["schema_version"] = kSchemaVersion + 1;
  EXPECT_THROW(bad.get<RunReport>(), DataError);
}

TEST(Report, CsvColumns) {
  EXPECT_STREQ(csv_header(), "epsilon,p,sign,norm,ci_lo,ci_hi,n_paths,observable");
  const auto c = small(ExperimentKind::remainder_scaling);
  const auto r = run_experiment(c);
  const auto csv = format_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, csv_header());
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7) << line;
  }
  EXPECT_EQ(rows, r.rows.size());
}

TEST(Report, WorkerCountDoesNotChangeOutputs) {
  for (auto kind : {ExperimentKind::remainder_scaling, ExperimentKind::variance_z, ExperimentKind::decay_probe}) {
    auto c = small(kind);
    if (kind == ExperimentKind::decay_probe) c.paths = 500;
    std::string csv[2], json[2];
    for (int k = 0; k < 2; ++k) {
      c.workers = k == 0 ? 1 : 8;
      c.out_dir = scratch(std::string(to_string(kind)) + std::to_string(k)).string();
      const auto out = run(c);
      csv[k] = slurp(out.files.at(0));
      json[k] = slurp(out.files.at(1));
      EXPECT_TRUE(fs::exists(out.timing));
    }
    EXPECT_EQ(csv[0], csv[1]) << to_string(kind);
    EXPECT_EQ(json[0], json[1]) << to_string(kind);
  }
}

TEST(Report, SeedChangesOutputs) {
  auto c = small(ExperimentKind::holder);
  const auto a = format_csv(run_experiment(c));
  c.seed += 1;
  EXPECT_NE(a, format_csv(run_experiment(c)));
}

TEST(SolveOnce, FreeWaveWithZeroDataIsZero) {
  auto c = default_config(ExperimentKind::solve_once);
  c.F = Nonlinearity::zero();
  c.data = {};
  c.out_dir = scratch("solve_zero").string();
  validate(c);
  const auto out = solve_once(c);
  EXPECT_EQ(out.report.result.details.at("max_abs_v").get<double>(), 0.0);
  std::istringstream in(slurp(out.files.at(0)));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,j,x1,x2,t,x,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.rfind(',') + 1), "0") << line;
  }
  EXPECT_EQ(rows, static_cast<std::size_t>(65 * 66 / 2));
}

TEST(SolveOnce, UnitFWithZeroDataReproducesZ) {
  auto c = default_config(ExperimentKind::solve_once);
  c.F = Nonlinearity::one();
  c.data = {};
  c.out_dir = scratch("solve_one").string();
  validate(c);
  const auto out = solve_once(c);
  EXPECT_EQ(out.report.result.details.at("max_abs_v_minus_z").get<double>(), 0.0);
  EXPECT_GT(out.report.result.details.at("max_abs_v").get<double>(), 0.0);
  EXPECT_EQ(slurp(out.files.at(0)), slurp(out.files.at(1)));
}

TEST(SolveOnce, RepeatableAndNamesSeeds) {
  auto c = default_config(ExperimentKind::solve_once);
  c.path_index = 3;
  std::string first[4];
  for (int k = 0; k < 2; ++k) {
    c.out_dir = scratch("solve_rep" + std::to_string(k)).string();
    const auto out = run(c);
    ASSERT_EQ(out.files.size(), 4u);
    for (int f = 0; f < 4; ++f) {
      if (k == 0) first[f] = slurp(out.files[f]);
      else EXPECT_EQ(first[f], slurp(out.files[f])) << out.files[f];
    }
    const auto& d = out.report.result.details;
    EXPECT_EQ(d.at("master_seed"), c.seed);
    EXPECT_EQ(d.at("path"), 3);
  }
}

TEST(App, OutputDirectoryFallsBackToEnvironment) {
  auto c = default_config(ExperimentKind::holder);
  c.out_dir.clear();
  ::setenv("NULLWAVE_OUT", "/tmp/nullwave_env_out", 1);
  EXPECT_EQ(resolve_out_dir(c), std::string("/tmp/nullwave_env_out"));
  ::unsetenv("NULLWAVE_OUT");
  EXPECT_EQ(resolve_out_dir(c), std::string("nullwave-out"));
  c.out_dir = "given";
  EXPECT_EQ(resolve_out_dir(c), std::string("given"));
}

TEST(App, UnwritableDirectoryIsReported) {
  EXPECT_THROW(write_text("/proc/nullwave/forbidden.txt", "x"), std::runtime_error);
}
