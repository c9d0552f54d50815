#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pmc {

// Single-level Breit-Wigner resonance, capture/fission channels only.
// Elastic scattering stays in the smooth background (resonance scattering
// is out of scope), so no interference term appears anywhere.
struct Resonance {
  double E0 = 0.0;       // resonance energy [eV]
  double gamma_n = 0.0;  // neutron width [eV]
  double gamma_g = 0.0;  // capture width [eV]
  double gamma_f = 0.0;  // fission width [eV]
  double g = 1.0;        // spin statistical factor

  double total_width() const { return gamma_n + gamma_g + gamma_f; }
};

// Point-wise 0 K data plus resonance parameters for one nuclide. The grid
// holds the smooth background; resonances are reconstructed analytically at
// any temperature. Transport-time lookups are single precision.
struct Nuclide {
  std::string name;
  double A = 1.0;  // target-to-neutron mass ratio
  std::vector<float> grid;  // strictly increasing energies [eV]
  std::vector<float> sigma_s0;  // 0 K elastic background [barns]
  std::vector<float> sigma_g0;  // 0 K capture background [barns]
  std::vector<float> sigma_f0;  // 0 K fission background [barns]
  std::vector<float> nu_table;  // neutrons per fission; empty -> nu_const
  float nu_const = 0.0f;
  std::vector<Resonance> resonances;

  float emin() const { return grid.front(); }
  float emax() const { return grid.back(); }
};

// Mixture of nuclides at one temperature. Ids are dense 0..M-1 within a
// problem; the id doubles as the particle sort key.
struct Material {
  int id = 0;
  std::vector<std::pair<int, float>> densities;  // (nuclide id, atoms/(b*cm))
  float temperature = 293.6f;                    // [K]
};

struct PointwiseXS {
  float sigma_s;
  float sigma_g;
  float sigma_f;
  float nu;
};

struct MicroXS {
  float scatter;
  float capture;
  float fission;
  float nu;

  float total() const { return scatter + capture + fission; }
  float absorb() const { return capture + fission; }
};

struct MacroXS {
  float total;       // [1/cm]
  float scatter;
  float absorb;
  float fission;
  float nu_fission;
};

class NuclideLibrary {
 public:
  NuclideLibrary() = default;
  explicit NuclideLibrary(std::vector<Nuclide> nuclides);

  // Structured-text (JSON) library file, schema documented in the README.
  static NuclideLibrary load(const std::string& path);
  void save(const std::string& path) const;

  const Nuclide& at(int id) const;
  const Nuclide& by_name(const std::string& name) const;
  int index_of(const std::string& name) const;  // -1 when absent
  std::size_t size() const { return nuclides_.size(); }
  const std::vector<Nuclide>& nuclides() const { return nuclides_; }

 private:
  std::vector<Nuclide> nuclides_;
  std::map<std::string, int> index_;
};

// Throw std::invalid_argument naming the offending field on violation.
void validate_nuclide(const Nuclide& n);
void validate_material(const Material& m, std::size_t n_nuclides);

// 0 K background at E, lin-lin between bracketing grid points, exact at
// grid points. Out-of-span energies throw naming the nuclide and energy.
PointwiseXS sigma_pointwise(const Nuclide& n, float energy);

struct ResonantXS {
  float sigma_g;
  float sigma_f;
};

// Doppler-broadened capture and fission at temperature T: psi line shapes
// summed over resonances plus the interpolated smooth background.
ResonantXS sigma_resonant(const Nuclide& n, float energy, float temperature);

// Full per-nuclide lookup used by transport: smooth elastic background plus
// broadened capture/fission.
MicroXS micro_xs(const Nuclide& n, float energy, float temperature);

// Macroscopic cross sections of a material at its own temperature.
MacroXS macro_xs(const Material& m, const NuclideLibrary& lib, float energy);

}  // namespace pmc
