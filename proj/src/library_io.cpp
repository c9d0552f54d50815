#include <fstream>
#include <stdexcept>

#include <fmt/core.h>
#include <json.hpp>

#include "pmc/nucleardata.hpp"

namespace pmc {

namespace {

using nlohmann::json;

constexpr const char* kLibraryFormat = "pincellmc-nuclide-library";
constexpr int kLibraryVersion = 1;

std::vector<float> float_table(const json& j, const std::string& field,
                               const std::string& name) {
  if (!j.contains(field) || !j.at(field).is_array()) {
    throw std::invalid_argument(
        fmt::format("nuclide '{}': missing array field '{}'", name, field));
  }
  std::vector<float> out;
  out.reserve(j.at(field).size());
  for (const auto& v : j.at(field)) out.push_back(v.get<float>());
  return out;
}

Nuclide parse_nuclide(const json& j) {
  Nuclide n;
  n.name = j.value("name", std::string{});
  n.A = j.value("A", 0.0);
  n.grid = float_table(j, "grid", n.name);
  n.sigma_s0 = float_table(j, "sigma_s", n.name);
  n.sigma_g0 = float_table(j, "sigma_g", n.name);
  n.sigma_f0 = float_table(j, "sigma_f", n.name);
  if (j.contains("nu") && j.at("nu").is_array()) {
    n.nu_table = float_table(j, "nu", n.name);
  } else {
    n.nu_const = j.value("nu", 0.0f);
  }
  for (const auto& rj : j.value("resonances", json::array())) {
    Resonance r;
    r.E0 = rj.at("E0").get<double>();
    r.gamma_n = rj.at("gamma_n").get<double>();
    r.gamma_g = rj.value("gamma_g", 0.0);
    r.gamma_f = rj.value("gamma_f", 0.0);
    r.g = rj.value("g", 1.0);
    n.resonances.push_back(r);
  }
  return n;
}

json dump_nuclide(const Nuclide& n) {
  json j;
  j["name"] = n.name;
  j["A"] = n.A;
  j["grid"] = n.grid;
  j["sigma_s"] = n.sigma_s0;
  j["sigma_g"] = n.sigma_g0;
  j["sigma_f"] = n.sigma_f0;
  if (!n.nu_table.empty()) {
    j["nu"] = n.nu_table;
  } else {
    j["nu"] = n.nu_const;
  }
  json rs = json::array();
  for (const Resonance& r : n.resonances) {
    rs.push_back({{"E0", r.E0},
                  {"gamma_n", r.gamma_n},
                  {"gamma_g", r.gamma_g},
                  {"gamma_f", r.gamma_f},
                  {"g", r.g}});
  }
  j["resonances"] = rs;
  return j;
}

}  // namespace

NuclideLibrary NuclideLibrary::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error(fmt::format("cannot open nuclide library '{}'", path));
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(
        fmt::format("nuclide library '{}' is not valid JSON: {}", path, e.what()));
  }
  if (j.value("format", std::string{}) != kLibraryFormat) {
    throw std::runtime_error(
        fmt::format("'{}' is not a nuclide library file (bad 'format' field)", path));
  }
  if (j.value("version", 0) != kLibraryVersion) {
    throw std::runtime_error(fmt::format("nuclide library '{}': unsupported version {}",
                                         path, j.value("version", 0)));
  }
  std::vector<Nuclide> nuclides;
  for (const auto& nj : j.value("nuclides", json::array())) {
    nuclides.push_back(parse_nuclide(nj));
  }
  return NuclideLibrary(std::move(nuclides));
}

void NuclideLibrary::save(const std::string& path) const {
  json j;
  j["format"] = kLibraryFormat;
  j["version"] = kLibraryVersion;
  json ns = json::array();
  for (const Nuclide& n : nuclides_) ns.push_back(dump_nuclide(n));
  j["nuclides"] = ns;
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error(fmt::format("cannot write nuclide library '{}'", path));
  }
  out << j.dump(1) << "\n";
}

}  // namespace pmc
