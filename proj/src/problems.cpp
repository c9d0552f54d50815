#include "pmc/problems.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/core.h>
#include <fmt/ranges.h>
#include <json.hpp>

namespace pmc {

namespace {

using nlohmann::json;

#ifndef PMC_DATA_DIR
#define PMC_DATA_DIR "data"
#endif

// VERA-style pincell dimensions [cm]; configurable through problem files.
constexpr float kFuelRadius = 0.4096f;
constexpr float kGapRadius = 0.418f;
constexpr float kCladRadius = 0.475f;
constexpr float kPitch = 1.26f;

// Number densities [atoms/(b*cm)].
constexpr float kFuelU235 = 6.0e-4f;
constexpr float kFuelU238 = 2.21e-2f;
constexpr float kFuelO16 = 4.58e-2f;
constexpr float kGapO16 = 2.7e-5f;
constexpr float kCladO16 = 4.3e-2f;
constexpr float kModH1 = 1.4e-2f;
constexpr float kModO16 = 0.7e-2f;

Problem make_pincell(const std::string& name, float fuel_temperature,
                     const std::string& library_path) {
  NuclideLibrary lib = NuclideLibrary::load(
      library_path.empty() ? default_library_path() : library_path);
  const int u235 = lib.index_of("U235");
  const int u238 = lib.index_of("U238");
  const int o16 = lib.index_of("O16");
  const int h1 = lib.index_of("H1");
  if (u235 < 0 || u238 < 0 || o16 < 0 || h1 < 0) {
    throw std::runtime_error("nuclide library is missing H1/O16/U235/U238");
  }
  Problem p{name,
            Pincell(kPitch, {kFuelRadius, kGapRadius, kCladRadius}, {0, 1, 2, 3}),
            {
                Material{0,
                         {{u235, kFuelU235}, {u238, kFuelU238}, {o16, kFuelO16}},
                         fuel_temperature},
                Material{1, {{o16, kGapO16}}, 600.0f},
                Material{2, {{o16, kCladO16}}, 600.0f},
                Material{3, {{h1, kModH1}, {o16, kModO16}}, 600.0f},
            },
            std::move(lib)};
  p.validate();
  return p;
}

// Dense-grid copy of a nuclide's smooth background. Resonances are dropped:
// the benchmark problem measures lookup locality, and big tables are what
// make energy order matter.
Nuclide densify(const Nuclide& base, std::size_t n_points) {
  Nuclide out;
  out.name = base.name;
  out.A = base.A;
  out.nu_const = base.nu_const;
  out.grid.reserve(n_points);
  const double lo = std::log(static_cast<double>(base.grid.front()));
  const double hi = std::log(static_cast<double>(base.grid.back()));
  for (std::size_t i = 0; i < n_points; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n_points - 1);
    float e = static_cast<float>(std::exp(lo + f * (hi - lo)));
    e = std::clamp(e, base.grid.front(), base.grid.back());
    if (!out.grid.empty() && e <= out.grid.back()) continue;
    out.grid.push_back(e);
  }
  for (float e : out.grid) {
    const PointwiseXS xs = sigma_pointwise(base, e);
    out.sigma_s0.push_back(xs.sigma_s);
    out.sigma_g0.push_back(xs.sigma_g);
    out.sigma_f0.push_back(xs.sigma_f);
    if (!base.nu_table.empty()) out.nu_table.push_back(xs.nu);
  }
  return out;
}

Problem make_bench_pincell(const std::string& library_path) {
  NuclideLibrary base = NuclideLibrary::load(
      library_path.empty() ? default_library_path() : library_path);
  constexpr std::size_t kDensePoints = 1u << 17;
  std::vector<Nuclide> dense;
  for (const char* name : {"H1", "O16", "U235", "U238"}) {
    dense.push_back(densify(base.by_name(name), kDensePoints));
  }
  NuclideLibrary lib(std::move(dense));
  const int h1 = lib.index_of("H1");
  const int o16 = lib.index_of("O16");
  const int u235 = lib.index_of("U235");
  const int u238 = lib.index_of("U238");
  Problem p{"pincell-bench",
            Pincell(kPitch, {kFuelRadius}, {0, 1}),
            {
                Material{0,
                         {{u235, 9.0e-4f},
                          {u238, 2.21e-2f},
                          {o16, 4.58e-2f},
                          {h1, 4.0e-3f}},
                         600.0f},
                Material{1, {{h1, kModH1}, {o16, kModO16}}, 600.0f},
            },
            std::move(lib)};
  p.validate();
  return p;
}

// Homogeneous one-nuclide cell with flat cross sections and
// nu*sigma_f/sigma_a = 1.25; its k is known in closed form.
Problem make_infinite_k125() {
  Nuclide n;
  n.name = "flat125";
  n.A = 200.0;
  n.grid = {1.0e-5f, 3.0e7f};
  n.sigma_s0 = {2.0f, 2.0f};
  n.sigma_g0 = {1.0f, 1.0f};
  n.sigma_f0 = {1.0f, 1.0f};
  n.nu_const = 2.5f;
  Problem p{"infinite-k125",
            Pincell(kPitch, {}, {0}),
            {Material{0, {{0, 0.5f}}, 600.0f}},
            NuclideLibrary({n})};
  p.validate();
  return p;
}

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(fmt::format("cannot open {} '{}'", what, path));
  }
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw std::runtime_error(
        fmt::format("{} '{}' is not valid JSON: {}", what, path, e.what()));
  }
}

}  // namespace

float Problem::fuel_temperature() const {
  return materials[static_cast<std::size_t>(fuel_material())].temperature;
}

float Problem::energy_min() const {
  float lo = 0.0f;
  for (const Material& m : materials) {
    for (const auto& [id, density] : m.densities) {
      lo = std::max(lo, library.at(id).emin());
    }
  }
  return lo;
}

float Problem::energy_max() const {
  float hi = std::numeric_limits<float>::max();
  for (const Material& m : materials) {
    for (const auto& [id, density] : m.densities) {
      hi = std::min(hi, library.at(id).emax());
    }
  }
  return hi;
}

void Problem::validate() const {
  if (materials.empty()) {
    throw std::invalid_argument(fmt::format("problem '{}': no materials", name));
  }
  for (std::size_t i = 0; i < materials.size(); ++i) {
    if (materials[i].id != static_cast<int>(i)) {
      throw std::invalid_argument(
          fmt::format("problem '{}': material ids must be contiguous 0..{} "
                      "(index {} has id {})",
                      name, materials.size() - 1, i, materials[i].id));
    }
    validate_material(materials[i], library.size());
  }
  for (int r = 0; r < geometry.n_regions(); ++r) {
    const int m = geometry.region_material(r);
    if (m < 0 || static_cast<std::size_t>(m) >= materials.size()) {
      throw std::invalid_argument(fmt::format(
          "problem '{}': region {} references unknown material {}", name, r, m));
    }
  }
  if (!(energy_min() < energy_max())) {
    throw std::invalid_argument(fmt::format(
        "problem '{}': constituent nuclide grids have empty intersection", name));
  }
}

std::string default_library_path() {
  return std::string(PMC_DATA_DIR) + "/nuclides.json";
}

std::vector<std::string> builtin_problem_names() {
  return {"pincell-600K", "pincell-900K", "pincell-1200K", "pincell-bench",
          "infinite-k125"};
}

Problem make_builtin_problem(const std::string& name, const std::string& library_path) {
  if (name == "pincell-600K") return make_pincell(name, 600.0f, library_path);
  if (name == "pincell-900K") return make_pincell(name, 900.0f, library_path);
  if (name == "pincell-1200K") return make_pincell(name, 1200.0f, library_path);
  if (name == "pincell-bench") return make_bench_pincell(library_path);
  if (name == "infinite-k125") return make_infinite_k125();
  throw std::invalid_argument(
      fmt::format("unknown problem '{}'; built-ins: {}", name,
                  fmt::join(builtin_problem_names(), ", ")));
}

Problem load_problem_file(const std::string& path, const std::string& library_path) {
  const json j = load_json_file(path, "problem file");
  if (j.value("format", std::string{}) != "pincellmc-problem") {
    throw std::runtime_error(
        fmt::format("'{}' is not a problem file (bad 'format' field)", path));
  }
  if (j.value("version", 0) != 1) {
    throw std::runtime_error(fmt::format("problem file '{}': unsupported version {}",
                                         path, j.value("version", 0)));
  }
  std::string lib_path = library_path;
  if (lib_path.empty()) lib_path = j.value("library", std::string{});
  if (lib_path.empty()) lib_path = default_library_path();
  NuclideLibrary lib = NuclideLibrary::load(lib_path);

  const json& gj = j.at("geometry");
  std::vector<float> radii;
  for (const auto& r : gj.value("radii", json::array())) radii.push_back(r.get<float>());
  std::vector<int> region_materials;
  for (const auto& m : gj.at("region_materials")) {
    region_materials.push_back(m.get<int>());
  }
  Pincell geometry(gj.at("pitch").get<float>(), std::move(radii),
                   std::move(region_materials));

  std::vector<Material> materials;
  for (const auto& mj : j.at("materials")) {
    Material m;
    m.id = static_cast<int>(materials.size());
    m.temperature = mj.at("temperature").get<float>();
    for (const auto& [nuclide_name, density] : mj.at("densities").items()) {
      const int id = lib.index_of(nuclide_name);
      if (id < 0) {
        throw std::runtime_error(
            fmt::format("problem file '{}': nuclide '{}' not in library '{}'", path,
                        nuclide_name, lib_path));
      }
      m.densities.emplace_back(id, density.get<float>());
    }
    // JSON object order is not authoritative; fix the constituent order.
    std::sort(m.densities.begin(), m.densities.end());
    materials.push_back(std::move(m));
  }

  Problem p{j.value("name", path), std::move(geometry), std::move(materials),
            std::move(lib)};
  p.validate();
  return p;
}

Problem resolve_problem(const std::string& name_or_path,
                        const std::string& library_path) {
  const auto builtins = builtin_problem_names();
  if (std::find(builtins.begin(), builtins.end(), name_or_path) != builtins.end()) {
    return make_builtin_problem(name_or_path, library_path);
  }
  if (std::ifstream probe(name_or_path); probe.good()) {
    return load_problem_file(name_or_path, library_path);
  }
  throw std::invalid_argument(
      fmt::format("problem '{}' is neither a built-in ({}) nor a readable file",
                  name_or_path, fmt::join(builtins, ", ")));
}

}  // namespace pmc
