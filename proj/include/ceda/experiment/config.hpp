#pragma once

/// Experiment description: problems, algorithm, run count, seeds and
/// parameter overrides, loaded from a JSON document.

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ceda::experiment {

enum class Algorithm { eda2, ceda2, dsts_demo };

inline std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::eda2: return "eda2";
    case Algorithm::ceda2: return "ceda2";
    case Algorithm::dsts_demo: return "dsts-demo";
  }
  return "unknown";
}

/// Raised for anything wrong with an experiment before a run starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Algorithm parse_algorithm(const std::string& s) {
  if (s == "eda2") return Algorithm::eda2;
  if (s == "ceda2") return Algorithm::ceda2;
  if (s == "dsts-demo" || s == "dsts_demo") return Algorithm::dsts_demo;
  throw ConfigError("unknown algorithm '" + s + "' (expected eda2, ceda2 or dsts-demo)");
}

inline const std::vector<double>& default_accuracy_levels() {
  static const std::vector<double> levels{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};
  return levels;
}

struct ExperimentConfig {
  std::vector<std::string> problems;
  Algorithm algorithm = Algorithm::ceda2;
  std::size_t runs = 1;
  /// Run r uses seed base_seed + r.
  std::uint64_t base_seed = 0;
  std::filesystem::path out = "results";
  std::size_t jobs = 1;

  /// Unset values fall back to the algorithm's defaults.
  std::optional<std::size_t> p;
  std::optional<std::size_t> l;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<std::size_t> init_count;
  std::optional<double> accuracy;
  std::optional<std::size_t> max_fes;
  std::vector<double> eps_levels = default_accuracy_levels();

  bool trace = false;
  /// Record wall time in the CSVs. Off by default so repeated runs are
  /// byte-identical.
  bool timing = false;

  std::vector<std::size_t> sweep_p{50, 80, 110, 140, 170, 200};
  std::vector<std::size_t> sweep_l{5, 10, 15, 20, 25, 30};

  std::uint64_t seed_for(std::size_t run) const { return base_seed + run; }

  void validate() const {
    if (problems.empty()) throw ConfigError("config: no problems given");
    if (runs == 0) throw ConfigError("config: runs must be >= 1");
    if (jobs == 0) throw ConfigError("config: jobs must be >= 1");
    if (eps_levels.empty()) throw ConfigError("config: eps_levels must not be empty");
    for (double e : eps_levels) {
      if (!(e > 0.0)) throw ConfigError("config: eps_levels must be positive");
    }
    if (p && *p < 2) throw ConfigError("config: p must be >= 2");
    if (tau && !(*tau > 0.0 && *tau < 1.0)) throw ConfigError("config: tau must lie in (0, 1)");
    if (alpha && !(*alpha > 0.0 && *alpha < 1.0)) throw ConfigError("config: alpha must lie in (0, 1)");
    if (accuracy && !(*accuracy >= 0.0)) throw ConfigError("config: accuracy must be >= 0");
    if (max_fes && *max_fes == 0) throw ConfigError("config: max_fes must be >= 1");
    if (init_count && *init_count < 2) throw ConfigError("config: init_count must be >= 2");
    if (sweep_p.empty() || sweep_l.empty()) throw ConfigError("config: sweep grids must not be empty");
  }
};

namespace detail {

template <class T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

template <class T>
void read_value(const nlohmann::json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  static const std::vector<std::string> known{"problem", "problems", "algorithm", "runs",     "seed",
                                              "out",     "jobs",     "p",         "l",        "tau",
                                              "alpha",   "init_count", "accuracy", "eps_levels", "max_fes",
                                              "trace",   "timing",   "sweep_p",   "sweep_l"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }

  ExperimentConfig c;
  try {
    if (auto it = j.find("problems"); it != j.end()) c.problems = it->get<std::vector<std::string>>();
    if (auto it = j.find("problem"); it != j.end()) c.problems.push_back(it->get<std::string>());
    if (auto it = j.find("algorithm"); it != j.end()) c.algorithm = parse_algorithm(it->get<std::string>());
    detail::read_value(j, "runs", c.runs);
    detail::read_value(j, "seed", c.base_seed);
    if (auto it = j.find("out"); it != j.end()) c.out = it->get<std::string>();
    detail::read_value(j, "jobs", c.jobs);
    detail::read_optional(j, "p", c.p);
    detail::read_optional(j, "l", c.l);
    detail::read_optional(j, "tau", c.tau);
    detail::read_optional(j, "alpha", c.alpha);
    detail::read_optional(j, "init_count", c.init_count);
    detail::read_optional(j, "accuracy", c.accuracy);
    detail::read_optional(j, "max_fes", c.max_fes);
    detail::read_value(j, "eps_levels", c.eps_levels);
    detail::read_value(j, "trace", c.trace);
    detail::read_value(j, "timing", c.timing);
    detail::read_value(j, "sweep_p", c.sweep_p);
    detail::read_value(j, "sweep_l", c.sweep_l);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["problems"] = c.problems;
  j["algorithm"] = to_string(c.algorithm);
  j["runs"] = c.runs;
  j["seed"] = c.base_seed;
  j["out"] = c.out.string();
  j["jobs"] = c.jobs;
  if (c.p) j["p"] = *c.p;
  if (c.l) j["l"] = *c.l;
  if (c.tau) j["tau"] = *c.tau;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.init_count) j["init_count"] = *c.init_count;
  if (c.accuracy) j["accuracy"] = *c.accuracy;
  if (c.max_fes) j["max_fes"] = *c.max_fes;
  j["eps_levels"] = c.eps_levels;
  j["trace"] = c.trace;
  j["timing"] = c.timing;
  j["sweep_p"] = c.sweep_p;
  j["sweep_l"] = c.sweep_l;
  return j;
}

}  // namespace ceda::experiment
