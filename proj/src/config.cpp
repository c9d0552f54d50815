#include "pmc/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

#include <fmt/core.h>
#include <json.hpp>

namespace pmc {

const char* to_string(RunMode m) {
  return m == RunMode::history ? "history" : "event";
}

RunMode run_mode_from_string(const std::string& s) {
  if (s == "history") return RunMode::history;
  if (s == "event") return RunMode::event_based;
  throw std::invalid_argument(
      fmt::format("unknown mode '{}' (expected history|event)", s));
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument(fmt::format("run config: {}", what));
  };
  if (problem.empty()) fail("field 'problem' is empty");
  if (particles < 100) {
    fail(fmt::format("field 'particles' must be >= 100, got {}", particles));
  }
  if (inactive < 1) fail(fmt::format("field 'inactive' must be >= 1, got {}", inactive));
  if (batches <= inactive) {
    fail(fmt::format("field 'batches' ({}) must exceed 'inactive' ({})", batches,
                     inactive));
  }
  if (active_batches() < 2) {
    fail(fmt::format("need >= 2 active batches for statistics, got {}",
                     active_batches()));
  }
  if (workers < 1) fail(fmt::format("field 'workers' must be >= 1, got {}", workers));
  if (!(cutoffs.energy > 0.0f)) fail("field 'energy_cutoff' must be > 0");
  if (cutoffs.flights < 1) fail("field 'flight_cutoff' must be >= 1");
  if (output.empty()) fail("field 'output' is empty");
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(fmt::format("cannot open config file '{}'", path));
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(
        fmt::format("config file '{}' is not valid JSON: {}", path, e.what()));
  }

  static const std::set<std::string> known = {
      "problem", "library", "particles", "batches", "inactive",
      "seed",    "mode",    "sort",      "workers", "energy_cutoff",
      "flight_cutoff", "output"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument(
          fmt::format("config file '{}': unknown field '{}'", path, key));
    }
  }

  RunConfig c;
  c.problem = j.value("problem", c.problem);
  c.library = j.value("library", c.library);
  c.particles = j.value("particles", c.particles);
  c.batches = j.value("batches", c.batches);
  c.inactive = j.value("inactive", c.inactive);
  c.seed = j.value("seed", c.seed);
  if (j.contains("mode")) c.mode = run_mode_from_string(j.at("mode").get<std::string>());
  if (j.contains("sort")) {
    c.sort = sort_strategy_from_string(j.at("sort").get<std::string>());
  }
  c.workers = j.value("workers", c.workers);
  c.cutoffs.energy = j.value("energy_cutoff", c.cutoffs.energy);
  c.cutoffs.flights = j.value("flight_cutoff", c.cutoffs.flights);
  c.output = j.value("output", c.output);
  c.validate();
  return c;
}

}  // namespace pmc
