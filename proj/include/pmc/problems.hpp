#pragma once

#include <string>
#include <vector>

#include "pmc/geometry.hpp"
#include "pmc/nucleardata.hpp"

namespace pmc {

// A runnable problem: geometry, materials, and the nuclide data they
// reference. Immutable once assembled; shared freely across workers.
struct Problem {
  std::string name;
  Pincell geometry;
  std::vector<Material> materials;
  NuclideLibrary library;

  // Fissile region used for batch-0 source sampling (innermost region).
  int fuel_material() const { return geometry.region_material(0); }
  float fuel_temperature() const;

  // Tightest energy span valid for every nuclide used by the problem.
  float energy_min() const;
  float energy_max() const;

  void validate() const;
};

// Default nuclide library location baked in at configure time; the CLI and
// problem files may override it.
std::string default_library_path();

std::vector<std::string> builtin_problem_names();

// Builds a built-in problem; loads the nuclide library from library_path
// when the problem needs the shipped data (empty means the default path).
// Unknown names throw, listing the built-ins.
Problem make_builtin_problem(const std::string& name,
                             const std::string& library_path = {});

// Problem configuration file (JSON), schema documented in the README.
Problem load_problem_file(const std::string& path,
                          const std::string& library_path = {});

// Resolves a --problem value: built-in name first, then a file path.
Problem resolve_problem(const std::string& name_or_path,
                        const std::string& library_path = {});

}  // namespace pmc
