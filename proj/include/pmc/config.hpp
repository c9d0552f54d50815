#pragma once

#include <cstdint>
#include <string>

#include "pmc/sorting.hpp"

namespace pmc {

enum class RunMode : std::uint8_t { history, event_based };

const char* to_string(RunMode m);
RunMode run_mode_from_string(const std::string& s);

// History termination guards. Thermal scattering is off and target-at-rest
// kinematics only downscatters, so without these a history could random-walk
// in energy forever. Activations are counted and reported, never silent.
struct Cutoffs {
  float energy = 1.0e-4f;          // [eV]
  std::uint32_t flights = 100000;  // flight segments per history
};

struct RunConfig {
  std::string problem = "pincell-600K";  // built-in name or problem file path
  std::string library;                   // nuclide library override, optional
  std::uint64_t particles = 10000;       // per batch
  int batches = 120;
  int inactive = 20;
  std::uint64_t seed = 1;
  RunMode mode = RunMode::history;
  SortStrategy sort = SortStrategy::none;
  int workers = 1;
  Cutoffs cutoffs;
  std::string output = "pincellmc-results";

  int active_batches() const { return batches - inactive; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Reads a run configuration file (JSON). Unknown fields are errors naming
// the field; values omitted keep their defaults. Flag overrides are applied
// by the CLI after parsing.
RunConfig parse_config_file(const std::string& path);

}  // namespace pmc
