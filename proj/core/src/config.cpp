#include "nullwave/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nullwave/detail/text.hpp"
#include "nullwave/errors.hpp"
#include "nullwave/stencil.hpp"

namespace nullwave {

namespace {

namespace pt = boost::property_tree;

constexpr const char* kExperimentNames[] = {
    "variance_z", "remainder_scaling", "original_coords", "one_param_failure",
    "holder",     "decay_probe",       "solve_once",
};

struct SectionKeys {
  const char* section;
  std::vector<const char*> keys;
};

const std::vector<SectionKeys>& known_keys() {
  static const std::vector<SectionKeys> table = {
      {"run", {"paths", "seed", "workers", "out", "bootstrap", "path"}},
      {"grid", {"h", "n", "origin"}},
      {"data", {"u0", "u1"}},
      {"model", {"F"}},
      {"probe", {"base", "epsilons", "eps_geometric", "p", "signs"}},
      {"holder", {"axis"}},
      {"decay_probe", {"kappa", "M", "n_max"}},
      {"verdict",
       {"se_tolerance", "exact_se_tolerance", "variance_slope_tolerance", "slope_min",
        "slope_max", "ratio_floor", "slope_agreement", "holder_min", "holder_max",
        "tail_confidence", "bound_se", "divergence_fraction"}},
      {"limits", {"max_n", "max_paths"}},
  };
  return table;
}

std::string join_names(const std::vector<const char*>& names) {
  std::string out;
  for (const char* n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

// Accepts decimals and powers of two written as 2^k.
std::optional<double> parse_number(std::string_view text) {
  text = detail::trim(text);
  if (text.starts_with("2^")) {
    const auto k = detail::parse_integer<int>(text.substr(2));
    if (!k) return std::nullopt;
    return std::ldexp(1.0, *k);
  }
  return detail::parse_double(text);
}

std::optional<std::vector<double>> parse_numbers(std::string_view text) {
  std::vector<double> out;
  for (auto piece : detail::split(text, ',')) {
    const auto v = parse_number(piece);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

class Collector {
 public:
  void error(const std::string& key, const std::string& message) {
    messages_.push_back(key + ": " + message);
  }
  bool empty() const noexcept { return messages_.empty(); }
  void raise() {
    if (!messages_.empty()) throw ConfigError(std::move(messages_));
  }

 private:
  std::vector<std::string> messages_;
};

// One probe pattern evaluated at the base point, in lattice steps.
struct Footprint {
  std::string label;
  std::vector<StencilTap> taps;
};

std::vector<Footprint> footprints(const ExperimentConfig& c, const std::vector<int>& steps) {
  std::vector<Footprint> out;
  auto add = [&](const std::string& label, const Stencil& s) {
    out.push_back({label, std::vector<StencilTap>(s.taps().begin(), s.taps().end())});
  };
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const int r = steps[k];
    const std::string eps = "epsilon " + detail::format_double(c.epsilons[k]);
    switch (c.experiment) {
      case ExperimentKind::variance_z:
      case ExperimentKind::remainder_scaling:
      case ExperimentKind::original_coords:
        for (Sign s : c.signs) add(eps + " sign " + to_string(s), Stencil::mixed(to_int(s) * r, r));
        break;
      case ExperimentKind::one_param_failure:
        add(eps, Stencil::forward1(r));
        break;
      case ExperimentKind::holder:
        add(eps, c.holder_axis == 1 ? Stencil::forward1(r) : Stencil::forward2(r));
        break;
      case ExperimentKind::decay_probe:
      case ExperimentKind::solve_once:
        break;
    }
  }
  return out;
}

bool uses_epsilons(ExperimentKind k) {
  return k != ExperimentKind::decay_probe && k != ExperimentKind::solve_once;
}

bool is_scaling(ExperimentKind k) {
  return k == ExperimentKind::remainder_scaling || k == ExperimentKind::original_coords ||
         k == ExperimentKind::one_param_failure || k == ExperimentKind::holder;
}

// Position of `value` on the lattice through `origin`, or nullopt when misaligned.
std::optional<int> lattice_index(double value, double origin, double h) {
  try {
    return grid_steps(value - origin, h);
  } catch (const ConfigError&) {
    return std::nullopt;
  }
}

void resolve_grid(ExperimentConfig& c, const std::vector<int>& steps, Collector& errors) {
  const GridRequest& req = c.grid_request;
  const double h = req.h;

  if (c.experiment == ExperimentKind::solve_once) {
    const double a = req.origin.value_or(0.0);
    c.grid = GridSpec{{a, a}, req.n.value_or(64), h};
    return;
  }

  if (c.experiment == ExperimentKind::decay_probe) {
    // No field is built; the grid records the lattice spacing and the largest square.
    const int largest = steps.empty() ? 1 : steps.front();
    const double a = req.origin.value_or(c.base.x1);
    c.grid = GridSpec{{a, a}, req.n.value_or(std::max(2, largest)), h};
    return;
  }

  const auto prints = footprints(c, steps);
  int min_d1 = 0, max_d2 = 0;
  for (const auto& fp : prints) {
    for (const auto& t : fp.taps) {
      min_d1 = std::min(min_d1, t.d1);
      max_d2 = std::max(max_d2, t.d2);
      // Every tap must stay in the closed region t >= 0 (x1 <= x2).
      const double x1 = c.base.x1 + t.d1 * h;
      const double x2 = c.base.x2 + t.d2 * h;
      if (x1 > x2 + 1e-12 * h) {
        errors.error("probe.epsilons",
                     fp.label + " reaches below t = 0 from the base point; use a smaller "
                                "epsilon or a base point with larger x2 - x1");
        return;
      }
    }
  }

  const double a = req.origin ? *req.origin : c.base.x1 + min_d1 * h;
  const auto ib = lattice_index(c.base.x1, a, h);
  const auto jb = lattice_index(c.base.x2, a, h);
  if (!ib || !jb) {
    errors.error("probe.base", "base point (" + detail::format_double(c.base.x1) + ", " +
                                   detail::format_double(c.base.x2) +
                                   ") is not a lattice point of the grid; move it onto "
                                   "origin + k h or change grid.h");
    return;
  }
  const int n = req.n ? *req.n : *jb + max_d2;
  c.grid = GridSpec{{a, a}, std::max(n, 2), h};

  for (const auto& fp : prints) {
    for (const auto& t : fp.taps) {
      const int i = *ib + t.d1, j = *jb + t.d2;
      if (i < 0 || j < 0 || i > c.grid.n || j > c.grid.n) {
        errors.error("probe.epsilons", fp.label + " needs lattice point (" + std::to_string(i) +
                                           ", " + std::to_string(j) +
                                           ") outside the grid; enlarge grid.n or remove "
                                           "grid.n/grid.origin to size the grid automatically");
        return;
      }
    }
  }
}

void set_defaults(ExperimentConfig& c) {
  const std::vector<double> dyadic{0x1.0p-3, 0x1.0p-4, 0x1.0p-5, 0x1.0p-6};
  switch (c.experiment) {
    case ExperimentKind::variance_z:
      c.grid_request = GridRequest{0.0125, std::nullopt, std::nullopt};
      c.epsilons = {0.05, 0.1, 0.2};
      c.paths = 100'000;
      c.p_values = {2.0};
      break;
    case ExperimentKind::remainder_scaling:
    case ExperimentKind::original_coords:
      c.grid_request = GridRequest{0x1.0p-10, std::nullopt, std::nullopt};
      c.epsilons = dyadic;
      c.paths = 2000;
      c.p_values = {2.0, 4.0};
      break;
    case ExperimentKind::one_param_failure:
      c.grid_request = GridRequest{0x1.0p-10, std::nullopt, std::nullopt};
      c.epsilons = dyadic;
      c.paths = 2000;
      c.p_values = {2.0};
      c.signs = {Sign::plus};
      break;
    case ExperimentKind::holder:
      c.grid_request = GridRequest{0x1.0p-10, std::nullopt, std::nullopt};
      c.epsilons = dyadic;
      c.paths = 2000;
      c.p_values = {2.0};
      c.signs = {Sign::plus};
      break;
    case ExperimentKind::decay_probe:
      c.grid_request = GridRequest{0x1.0p-12, std::nullopt, std::nullopt};
      c.epsilons.clear();
      c.paths = 100'000;
      c.p_values = {2.0};
      c.signs = {Sign::plus};
      break;
    case ExperimentKind::solve_once:
      c.grid_request = GridRequest{1.0 / 64.0, 64, 0.0};
      c.epsilons.clear();
      c.paths = 1;
      c.p_values = {2.0};
      c.signs = {Sign::plus};
      break;
  }
}

void apply_entry(ExperimentConfig& c, const std::string& section, const std::string& key,
                 const std::string& value, Collector& errors) {
  const std::string path = section + "." + key;
  auto number = [&]() -> std::optional<double> {
    auto v = parse_number(value);
    if (!v || !std::isfinite(*v)) errors.error(path, "expected a finite number, got '" + value + "'");
    return v;
  };
  auto integer = [&]<class Int>(Int& target) {
    const auto v = detail::parse_integer<Int>(value);
    if (!v) {
      errors.error(path, "expected a non-negative integer, got '" + value + "'");
      return;
    }
    target = *v;
  };
  auto real = [&](double& target) {
    if (auto v = number()) target = *v;
  };

  try {
    if (section == "run") {
      if (key == "paths") integer(c.paths);
      else if (key == "seed") integer(c.seed);
      else if (key == "workers") integer(c.workers);
      else if (key == "out") c.out_dir = value;
      else if (key == "bootstrap") integer(c.bootstrap);
      else if (key == "path") integer(c.path_index);
    } else if (section == "grid") {
      if (key == "h") {
        real(c.grid_request.h);
      } else if (key == "n") {
        int n = 0;
        integer(n);
        c.grid_request.n = n;
      } else if (key == "origin") {
        const auto v = parse_numbers(value);
        if (!v || v->empty() || v->size() > 2) {
          errors.error(path, "expected 'a' or 'a, a', got '" + value + "'");
        } else if (v->size() == 2 && (*v)[0] != (*v)[1]) {
          errors.error(path, "origin must lie on the diagonal (a, a); got '" + value + "'");
        } else {
          c.grid_request.origin = v->front();
        }
      }
    } else if (section == "data") {
      (key == "u0" ? c.data.u0 : c.data.u1) = ScalarPreset::parse(value);
    } else if (section == "model") {
      c.F = Nonlinearity::parse(value);
    } else if (section == "probe") {
      if (key == "base") {
        const auto v = parse_numbers(value);
        if (!v || v->size() != 2) errors.error(path, "expected 'x1, x2', got '" + value + "'");
        else c.base = {(*v)[0], (*v)[1]};
      } else if (key == "epsilons") {
        const auto v = parse_numbers(value);
        if (!v) errors.error(path, "expected a comma-separated list of numbers");
        else c.epsilons = *v;
      } else if (key == "eps_geometric") {
        const auto v = parse_numbers(value);
        if (!v || v->size() != 2 || !((*v)[1] >= 1) || (*v)[1] != std::floor((*v)[1])) {
          errors.error(path, "expected 'largest, count' with an integer count >= 1");
        } else {
          c.epsilons.clear();
          for (int k = 0; k < static_cast<int>((*v)[1]); ++k) {
            c.epsilons.push_back(std::ldexp((*v)[0], -k));
          }
        }
      } else if (key == "p") {
        const auto v = parse_numbers(value);
        if (!v) errors.error(path, "expected a comma-separated list of numbers");
        else c.p_values = *v;
      } else if (key == "signs") {
        c.signs.clear();
        for (auto s : detail::split(value, ',')) {
          if (s == "+" || s == "plus") c.signs.push_back(Sign::plus);
          else if (s == "-" || s == "minus") c.signs.push_back(Sign::minus);
          else errors.error(path, "unknown sign '" + std::string(s) + "'; use + or -");
        }
      }
    } else if (section == "holder") {
      integer(c.holder_axis);
    } else if (section == "decay_probe") {
      if (key == "kappa") real(c.kappa);
      else if (key == "M") real(c.M);
      else if (key == "n_max") integer(c.n_max);
    } else if (section == "verdict") {
      auto& v = c.verdicts;
      if (key == "se_tolerance") real(v.se_tolerance);
      else if (key == "exact_se_tolerance") real(v.exact_se_tolerance);
      else if (key == "variance_slope_tolerance") real(v.variance_slope_tolerance);
      else if (key == "slope_min") real(v.slope_min);
      else if (key == "slope_max") real(v.slope_max);
      else if (key == "ratio_floor") real(v.ratio_floor);
      else if (key == "slope_agreement") real(v.slope_agreement);
      else if (key == "holder_min") real(v.holder_min);
      else if (key == "holder_max") real(v.holder_max);
      else if (key == "tail_confidence") real(v.tail_confidence);
      else if (key == "bound_se") real(v.bound_se);
      else if (key == "divergence_fraction") real(v.divergence_fraction);
    } else if (section == "limits") {
      if (key == "max_n") integer(c.limits.max_n);
      else if (key == "max_paths") integer(c.limits.max_paths);
    }
  } catch (const ConfigError& e) {
    errors.error(path, e.what());
  }
}

}  // namespace

const char* to_string(ExperimentKind kind) noexcept {
  return kExperimentNames[static_cast<int>(kind)];
}

std::optional<ExperimentKind> parse_experiment(std::string_view name) noexcept {
  for (int k = 0; k < static_cast<int>(std::size(kExperimentNames)); ++k) {
    if (name == kExperimentNames[k]) return static_cast<ExperimentKind>(k);
  }
  return std::nullopt;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.experiment = kind;
  set_defaults(c);
  validate(c);
  return c;
}

std::vector<int> decay_steps(const ExperimentConfig& c) {
  std::vector<int> out;
  for (int n = 1; n <= c.n_max; ++n) {
    const double r = std::round(std::exp(-n) / c.grid_request.h);
    out.push_back(static_cast<int>(std::max(1.0, r)));
  }
  return out;
}

void validate(ExperimentConfig& c) {
  Collector errors;
  c.warnings.clear();
  const auto& req = c.grid_request;
  const bool field_free = c.experiment == ExperimentKind::decay_probe;

  if (!(req.h > 0.0) || !std::isfinite(req.h)) errors.error("grid.h", "must be positive and finite");
  if (req.n && *req.n < 2) errors.error("grid.n", "must be at least 2");
  if (req.origin && !std::isfinite(*req.origin)) errors.error("grid.origin", "must be finite");
  if (!std::isfinite(c.base.x1) || !std::isfinite(c.base.x2)) {
    errors.error("probe.base", "coordinates must be finite");
  } else if (c.base.x2 < c.base.x1) {
    errors.error("probe.base", "requires x1 <= x2 (t >= 0); swap the coordinates");
  }

  if (c.experiment != ExperimentKind::solve_once) {
    if (c.paths < 30) errors.error("run.paths", "at least 30 paths are needed for any statistic");
    if (c.bootstrap < 1000) errors.error("run.bootstrap", "use at least 1000 resamples");
  }
  if (c.paths > c.limits.max_paths) {
    errors.error("run.paths", std::to_string(c.paths) + " exceeds the cap limits.max_paths = " +
                                  std::to_string(c.limits.max_paths) + "; lower run.paths");
  }
  for (double p : c.p_values) {
    if (!(p >= 2.0) || !std::isfinite(p)) {
      errors.error("probe.p", "each p must be finite and >= 2, got " + detail::format_double(p));
    }
  }
  if (c.p_values.empty()) errors.error("probe.p", "list at least one exponent");
  if (c.signs.empty()) errors.error("probe.signs", "list at least one sign");
  if (c.holder_axis != 1 && c.holder_axis != 2) errors.error("holder.axis", "must be 1 or 2");
  if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa)) errors.error("decay_probe.kappa", "must be >= 0");
  if (!(c.M > 0.0) || !std::isfinite(c.M)) errors.error("decay_probe.M", "must be positive");
  if (c.n_max < 2) errors.error("decay_probe.n_max", "must be at least 2");
  if (!(c.verdicts.tail_confidence > 0.0 && c.verdicts.tail_confidence < 1.0)) {
    errors.error("verdict.tail_confidence", "must lie in (0, 1)");
  }

  std::vector<int> steps;
  if (uses_epsilons(c.experiment)) {
    if (c.epsilons.size() < 3) {
      errors.error("probe.epsilons", "at least 3 distinct scales are needed for a slope fit");
    }
    std::set<int> seen;
    for (double eps : c.epsilons) {
      const std::string what = "probe.epsilons";
      if (!(eps > 0.0) || !std::isfinite(eps)) {
        errors.error(what, "each epsilon must be positive, got " + detail::format_double(eps));
        continue;
      }
      if (!errors.empty() && !(req.h > 0.0)) continue;
      try {
        const int r = grid_steps(eps, req.h, "epsilon");
        if (!seen.insert(r).second) {
          errors.error(what, "epsilon " + detail::format_double(eps) + " is listed twice");
        }
        steps.push_back(r);
      } catch (const ConfigError& e) {
        errors.error(what, e.what());
      }
    }
  } else if (c.experiment == ExperimentKind::decay_probe && req.h > 0.0 && c.n_max >= 2) {
    steps = decay_steps(c);
    if (std::exp(-c.n_max) < 0.5 * req.h) {
      c.warnings.push_back("decay_probe: e^-" + std::to_string(c.n_max) +
                           " is below h/2 and snaps to one lattice step");
    }
  }
  if (field_free && !c.epsilons.empty()) c.warnings.push_back("probe.epsilons is ignored by decay_probe");

  if (is_scaling(c.experiment)) {
    const double span = c.base.x2 - c.base.x1;
    for (double eps : c.epsilons) {
      if (eps < 8.0 * req.h) {
        c.warnings.push_back("epsilon " + detail::format_double(eps) +
                             " is below 8h; lattice effects may bias the slope");
      }
      if (eps > span / 4.0) {
        c.warnings.push_back("epsilon " + detail::format_double(eps) +
                             " exceeds (x2 - x1)/4; the base point is too close to t = 0");
      }
    }
  }

  if (errors.empty()) resolve_grid(c, steps, errors);
  if (errors.empty() && c.grid.n > c.limits.max_n) {
    errors.error("grid.n", "resolved n = " + std::to_string(c.grid.n) + " exceeds the cap limits.max_n = " +
                               std::to_string(c.limits.max_n) + "; use larger h or smaller epsilons");
  }
  errors.raise();
}

ExperimentConfig parse_config(std::string_view text, const ConfigOverrides& overrides) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }

  Collector errors;
  ExperimentConfig c;
  const auto name = tree.get_optional<std::string>("experiment");
  if (!name) {
    errors.error("experiment", std::string("missing; choose one of ") +
                                   join_names({std::begin(kExperimentNames), std::end(kExperimentNames)}));
    errors.raise();
  }
  const auto kind = parse_experiment(detail::trim(*name));
  if (!kind) {
    errors.error("experiment", "unknown experiment '" + *name + "'; choose one of " +
                                   join_names({std::begin(kExperimentNames), std::end(kExperimentNames)}));
    errors.raise();
  }
  c.experiment = *kind;
  set_defaults(c);

  for (const auto& [section, node] : tree) {
    if (section == "experiment") continue;
    const auto& table = known_keys();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const SectionKeys& s) { return section == s.section; });
    if (it == table.end()) {
      if (node.empty()) {
        errors.error(section, "unknown top-level key; only 'experiment' may appear before a section");
      } else {
        std::vector<const char*> names;
        for (const auto& s : table) names.push_back(s.section);
        errors.error("[" + section + "]", "unknown section; valid sections: " + join_names(names));
      }
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (std::find_if(it->keys.begin(), it->keys.end(),
                       [&](const char* k) { return key == k; }) == it->keys.end()) {
        errors.error(section + "." + key,
                     "unknown key; valid keys in [" + section + "]: " + join_names(it->keys));
        continue;
      }
      apply_entry(c, section, key, std::string(detail::trim(leaf.data())), errors);
    }
  }

  if (overrides.paths) c.paths = *overrides.paths;
  if (overrides.seed) c.seed = *overrides.seed;
  if (overrides.out_dir) c.out_dir = *overrides.out_dir;
  if (overrides.workers) c.workers = *overrides.workers;

  errors.raise();
  validate(c);
  return c;
}

nlohmann::json config_echo(const ExperimentConfig& c) {
  using nlohmann::json;
  json signs = json::array();
  for (Sign s : c.signs) signs.push_back(to_string(s));
  const auto& v = c.verdicts;
  json out = {
      {"experiment", to_string(c.experiment)},
      {"paths", c.paths},
      {"seed", c.seed},
      {"bootstrap", c.bootstrap},
      {"grid", {{"origin", c.grid.origin.x1}, {"n", c.grid.n}, {"h", c.grid.h}}},
      {"data", {{"u0", c.data.u0.name()}, {"u1", c.data.u1.name()}}},
      {"F", c.F.name()},
      {"base", {c.base.x1, c.base.x2}},
      {"epsilons", c.epsilons},
      {"p", c.p_values},
      {"signs", signs},
      {"verdict",
       {{"se_tolerance", v.se_tolerance},
        {"exact_se_tolerance", v.exact_se_tolerance},
        {"variance_slope_tolerance", v.variance_slope_tolerance},
        {"slope_min", v.slope_min},
        {"slope_max", v.slope_max},
        {"ratio_floor", v.ratio_floor},
        {"slope_agreement", v.slope_agreement},
        {"holder_min", v.holder_min},
        {"holder_max", v.holder_max},
        {"tail_confidence", v.tail_confidence},
        {"bound_se", v.bound_se},
        {"divergence_fraction", v.divergence_fraction}}},
      {"limits", {{"max_n", c.limits.max_n}, {"max_paths", c.limits.max_paths}}},
  };
  if (c.experiment == ExperimentKind::holder) out["holder_axis"] = c.holder_axis;
  if (c.experiment == ExperimentKind::decay_probe) {
    out["decay_probe"] = {{"kappa", c.kappa}, {"M", c.M}, {"n_max", c.n_max}};
  }
  if (c.experiment == ExperimentKind::solve_once) out["path"] = c.path_index;
  return out;
}

std::string resolve_out_dir(const ExperimentConfig& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("NULLWAVE_OUT"); env && *env) return env;
  return "nullwave-out";
}

}  // namespace nullwave
