#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nullwave/config.hpp"
#include "nullwave/experiments.hpp"
#include "nullwave/noise.hpp"
#include "nullwave/solver.hpp"

using namespace nullwave;

namespace {

bool has_warning(const ExperimentReport& r, const std::string& needle) {
  for (const auto& w : r.warnings)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

std::string failures(const ExperimentReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    if (!c.pass) out += c.name + " = " + std::to_string(c.value) + "; ";
  for (const auto& s : r.slopes)
    if (!s.pass) out += s.observable + " slope " + std::to_string(s.slope) + "; ";
  return out;
}

const Check* find_check(const ExperimentReport& r, const std::string& prefix) {
  for (const auto& c : r.checks)
    if (c.name.rfind(prefix, 0) == 0) return &c;
  return nullptr;
}

// Number of cells the difference touches and the coefficient carried by each,
// found by feeding unit impulses through solve_linear.
std::pair<long long, bool> impulse_count(int n, const Stencil& st, Index2 base) {
  const GridSpec g{{0.0, 0.0}, n, 1.0};
  long long touched = 0;
  bool all_half = true;
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(j) * n + i] = 1.0;
      const double c = apply_stencil(solve_linear(NoiseField::from_values(g, w)), st, base);
      w[static_cast<std::size_t>(j) * n + i] = 0.0;
      if (c != 0.0) {
        ++touched;
        all_half = all_half && std::abs(c) == 0.5;
      }
    }
  return {touched, all_half};
}

}  // namespace

TEST(ExactCounts, MatchImpulseResponse) {
  const int n = 32;
  const Index2 base{10, 20};
  const int m = base.j - base.i;
  for (int r : {1, 2, 5, 9}) {
    const auto [c2, half2] = impulse_count(n, Stencil::forward2(r), base);
    EXPECT_EQ(c2, delta2_cells(m, r)) << r;
    EXPECT_TRUE(half2);
    const auto [c1, half1] = impulse_count(n, Stencil::forward1(r), base);
    EXPECT_EQ(c1, delta1_cells(m, r)) << r;
    EXPECT_TRUE(half1);
    // Mixed differences see exactly an r x r block.
    EXPECT_EQ(impulse_count(n, Stencil::mixed(r, r), base).first, r * r);
    EXPECT_EQ(impulse_count(n, Stencil::mixed(-r, r), base).first, r * r);
  }
}

TEST(Experiments, VarianceOfMixedDifference) {
  auto c = default_config(ExperimentKind::variance_z);
  c.paths = 20000;
  c.grid_request.h = 0.025;
  validate(c);
  const auto r = experiment_variance_Z(c);
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.rows.size(), 6u);
  // The squared norm sits near eps^2 / 4 for eps = 0.1.
  for (const auto& row : r.rows) {
    if (row.epsilon == 0.1) EXPECT_NEAR(row.norm * row.norm, 0.0025, 0.0025 * 0.05);
    EXPECT_LE(row.ci_lo, row.norm);
    EXPECT_GE(row.ci_hi, row.norm);
    EXPECT_EQ(row.n_paths, 20000u);
  }
  const auto* mism = find_check(r, "rectangle reconstruction");
  ASSERT_NE(mism, nullptr);
  EXPECT_EQ(mism->value, 0.0);
  for (const auto& s : r.slopes) EXPECT_NEAR(s.slope, 2.0, 0.05);
}

TEST(Experiments, ConstantFIsDegenerate) {
  for (auto kind : {ExperimentKind::remainder_scaling, ExperimentKind::original_coords,
                    ExperimentKind::one_param_failure}) {
    auto c = default_config(kind);
    c.paths = 30;
    c.grid_request.h = 1.0 / 256;
    c.epsilons = {0.125, 0.0625, 0.03125};
    c.F = Nonlinearity::one();
    validate(c);
    const auto r = run_experiment(c);
    EXPECT_TRUE(r.degenerate) << r.experiment;
    EXPECT_TRUE(r.pass) << r.experiment << ": " << failures(r);
    EXPECT_TRUE(has_warning(r, "degenerate")) << r.experiment;
    for (const auto& row : r.rows) {
      if (row.observable.find("remainder") != std::string::npos) EXPECT_LE(row.norm, 1e-12);
    }
  }
}

TEST(Experiments, TanhWithZeroDataIsDegenerate) {
  auto c = default_config(ExperimentKind::remainder_scaling);
  c.paths = 30;
  c.grid_request.h = 1.0 / 256;
  c.epsilons = {0.125, 0.0625, 0.03125};
  c.data = {};
  validate(c);
  const auto r = run_experiment(c);
  EXPECT_TRUE(r.degenerate);
  EXPECT_TRUE(r.pass);
}

TEST(Experiments, RemainderSmallRun) {
  auto c = default_config(ExperimentKind::remainder_scaling);
  c.paths = 60;
  c.grid_request.h = 1.0 / 256;
  c.epsilons = {0.125, 0.0625, 0.03125};
  validate(c);
  const auto r = run_experiment(c);
  EXPECT_FALSE(r.degenerate);
  EXPECT_EQ(r.rows.size(), 3u * 2u * 2u);
  EXPECT_EQ(r.slopes.size(), 4u);
  const auto* cell = find_check(r, "max |R+| at epsilon = h");
  ASSERT_NE(cell, nullptr);
  EXPECT_TRUE(cell->pass);
  for (const auto& s : r.slopes) EXPECT_GT(s.slope, 0.8);
}

TEST(Experiments, OriginalCoordinatesMatchNullPlanePathByPath) {
  auto c = default_config(ExperimentKind::original_coords);
  c.paths = 40;
  c.grid_request.h = 1.0 / 256;
  c.epsilons = {0.125, 0.0625, 0.03125};
  validate(c);
  const auto r = run_experiment(c);
  const auto* x = find_check(r, "max |original - null remainder|");
  ASSERT_NE(x, nullptr);
  EXPECT_LE(x->value, 1e-12);
  // Rows are labelled with the space-time size e'/sqrt2.
  EXPECT_NEAR(r.rows.front().epsilon, 0.125 / std::numbers::sqrt2, 1e-15);
  EXPECT_EQ(r.rows.front().observable, "Delta1_remainder");
}

TEST(Experiments, OneParameterRatios) {
  auto c = default_config(ExperimentKind::one_param_failure);
  c.paths = 200;
  c.grid_request.h = 1.0 / 256;
  c.epsilons = {0.125, 0.0625, 0.03125};
  validate(c);
  const auto r = run_experiment(c);
  ASSERT_TRUE(r.details.contains("ratios"));
  EXPECT_EQ(r.details["ratios"].size(), 3u);
  for (const auto& ch : r.checks) {
    if (ch.name.rfind("E|d1 Z|^2 exact", 0) == 0) EXPECT_TRUE(ch.pass) << ch.name << " " << ch.value;
  }
}

TEST(Experiments, HolderExactControl) {
  auto c = default_config(ExperimentKind::holder);
  c.paths = 400;
  c.grid_request.h = 1.0 / 256;
  c.epsilons = {0.125, 0.0625, 0.03125};
  for (int axis : {1, 2}) {
    c.holder_axis = axis;
    validate(c);
    const auto r = run_experiment(c);
    int exact = 0;
    for (const auto& ch : r.checks) {
      if (ch.name.rfind("E|dZ|^2 exact", 0) == 0) {
        ++exact;
        EXPECT_TRUE(ch.pass) << ch.name << " " << ch.value << " vs " << ch.expected;
      }
    }
    EXPECT_EQ(exact, 3);
  }
}

TEST(Experiments, ZeroOffsetIncrementVanishes) {
  const auto w = NoiseField::sample({{0.0, 0.0}, 16, 1.0 / 16}, 1);
  const auto v = solve_marching(w, {}, Nonlinearity::sine());
  EXPECT_EQ(apply_stencil(v, Stencil::forward2(0), {3, 9}), 0.0);
  EXPECT_EQ(apply_stencil(v, Stencil::forward1(0), {3, 9}), 0.0);
}

TEST(DecayProbe, GaussianTailNumbers) {
  // M = 1, kappa = 1/2, eps = 0.01
  EXPECT_NEAR(std::erf(std::sqrt(2.0) * 0.1), 0.1585, 5e-5);
  EXPECT_NEAR(std::sqrt(8.0 / std::numbers::pi) * 0.1, 0.1596, 5e-5);
}

TEST(DecayProbe, SmallRunIsConsistent) {
  auto c = default_config(ExperimentKind::decay_probe);
  c.paths = 20000;
  validate(c);
  const auto r = run_experiment(c);
  const auto& levels = r.details.at("levels");
  ASSERT_EQ(levels.size(), 8u);
  for (const auto& lv : levels) {
    const double eps = lv.at("epsilon");
    EXPECT_EQ(eps, lv.at("steps").get<int>() * c.grid.h);
    const double exact = std::erf(std::sqrt(2.0) * std::sqrt(eps));
    EXPECT_NEAR(lv.at("exact").get<double>(), exact, 1e-15);
    // 4 SE per level keeps the chance of a false alarm over 8 levels below 1e-3.
    EXPECT_NEAR(lv.at("empirical").get<double>(), exact, 4 * std::sqrt(exact * (1 - exact) / 20000.0));
    EXPECT_LE(exact, lv.at("bound").get<double>());
  }
  EXPECT_GE(r.details.at("growing_fraction").get<double>(), 0.9);
  // kappa = 0 has no drift, so growth is much less common.
  EXPECT_LT(r.details.at("control_kappa0_growing_fraction").get<double>(), 0.75);
}
