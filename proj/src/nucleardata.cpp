#include "pmc/nucleardata.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

#include "pmc/constants.hpp"
#include "pmc/faddeeva.hpp"

namespace pmc {

NuclideLibrary::NuclideLibrary(std::vector<Nuclide> nuclides)
    : nuclides_(std::move(nuclides)) {
  for (std::size_t i = 0; i < nuclides_.size(); ++i) {
    validate_nuclide(nuclides_[i]);
    auto [it, inserted] = index_.emplace(nuclides_[i].name, static_cast<int>(i));
    if (!inserted) {
      throw std::invalid_argument(
          fmt::format("duplicate nuclide name '{}' in library", nuclides_[i].name));
    }
  }
}

const Nuclide& NuclideLibrary::at(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nuclides_.size()) {
    throw std::out_of_range(fmt::format("nuclide id {} out of range", id));
  }
  return nuclides_[static_cast<std::size_t>(id)];
}

const Nuclide& NuclideLibrary::by_name(const std::string& name) const {
  const int id = index_of(name);
  if (id < 0) {
    throw std::out_of_range(fmt::format("nuclide '{}' not in library", name));
  }
  return nuclides_[static_cast<std::size_t>(id)];
}

int NuclideLibrary::index_of(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void validate_nuclide(const Nuclide& n) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(fmt::format("nuclide '{}': {}", n.name, what));
  };
  if (n.name.empty()) fail("empty name");
  if (!(n.A >= 0.9)) fail("mass ratio A must be >= 0.9");
  if (n.grid.size() < 2) fail("grid needs at least 2 points");
  for (std::size_t i = 0; i < n.grid.size(); ++i) {
    if (!(n.grid[i] > 0.0f)) fail(fmt::format("grid[{}] must be > 0", i));
    if (i > 0 && !(n.grid[i] > n.grid[i - 1])) {
      fail(fmt::format("grid not strictly increasing at index {}", i));
    }
  }
  auto check_table = [&](const std::vector<float>& v, const char* field) {
    if (v.size() != n.grid.size()) {
      fail(fmt::format("{} length {} != grid length {}", field, v.size(),
                       n.grid.size()));
    }
    for (float s : v) {
      if (!(s >= 0.0f)) fail(fmt::format("{} has a negative entry", field));
    }
  };
  check_table(n.sigma_s0, "sigma_s");
  check_table(n.sigma_g0, "sigma_g");
  check_table(n.sigma_f0, "sigma_f");
  if (!n.nu_table.empty()) check_table(n.nu_table, "nu");
  if (!(n.nu_const >= 0.0f)) fail("nu must be >= 0");
  for (std::size_t i = 0; i < n.resonances.size(); ++i) {
    const Resonance& r = n.resonances[i];
    auto rfail = [&](const std::string& what) {
      fail(fmt::format("resonance[{}]: {}", i, what));
    };
    if (!(r.E0 > 0.0)) rfail("E0 must be > 0");
    if (!(r.gamma_n > 0.0)) rfail("gamma_n must be > 0");
    if (!(r.gamma_g >= 0.0) || !(r.gamma_f >= 0.0)) rfail("widths must be >= 0");
    if (!(r.g > 0.0 && r.g <= 1.0)) rfail("g must be in (0, 1]");
    if (!(r.total_width() > 0.0)) rfail("total width must be > 0");
  }
}

void validate_material(const Material& m, std::size_t n_nuclides) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument(fmt::format("material {}: {}", m.id, what));
  };
  if (m.densities.empty()) fail("needs at least one constituent");
  if (!(m.temperature > 0.0f)) fail("temperature must be > 0");
  for (const auto& [id, density] : m.densities) {
    if (id < 0 || static_cast<std::size_t>(id) >= n_nuclides) {
      fail(fmt::format("nuclide id {} out of range", id));
    }
    if (!(density > 0.0f)) fail(fmt::format("density of nuclide {} must be > 0", id));
  }
}

namespace {

struct GridPos {
  std::size_t i;
  float f;  // fractional position within segment [grid[i], grid[i+1]]
};

GridPos locate_energy(const Nuclide& n, float energy) {
  if (!(energy >= n.grid.front()) || !(energy <= n.grid.back())) {
    throw std::out_of_range(
        fmt::format("energy {:g} eV outside grid span [{:g}, {:g}] of nuclide '{}'",
                    energy, n.grid.front(), n.grid.back(), n.name));
  }
  auto it = std::upper_bound(n.grid.begin(), n.grid.end(), energy);
  std::size_t i = static_cast<std::size_t>(it - n.grid.begin());
  i = std::min(std::max<std::size_t>(i, 1), n.grid.size() - 1) - 1;
  const float f = (energy - n.grid[i]) / (n.grid[i + 1] - n.grid[i]);
  return {i, f};
}

// Two-sided lerp: exact at both endpoints, monotone within the segment.
inline float lerp_at(const std::vector<float>& v, GridPos p) {
  return (1.0f - p.f) * v[p.i] + p.f * v[p.i + 1];
}

}  // namespace

PointwiseXS sigma_pointwise(const Nuclide& n, float energy) {
  const GridPos p = locate_energy(n, energy);
  const float nu =
      n.nu_table.empty() ? n.nu_const : lerp_at(n.nu_table, p);
  return {lerp_at(n.sigma_s0, p), lerp_at(n.sigma_g0, p), lerp_at(n.sigma_f0, p),
          nu};
}

namespace {

// Doppler-broadened line shape for one resonance at energy E. This is the
// psi function evaluated with the Doppler width at E, plus the first-order
// terms that align the Gaussian-in-energy reconstruction with the exact
// sqrt-energy Doppler kernel (sqrt-space curvature and the flux-weighting
// Jacobian). Without them the plain psi form misses the exact integral by
// up to a few percent on the shoulders of low-lying resonances at reactor
// temperatures. One Faddeeva evaluation supplies psi and its derivatives.
double broadened_line_shape(double xi, double x, double beta_over_s,
                            double beta_sq_over_width) {
  const std::complex<double> z(0.5 * xi * x, 0.5 * xi);
  const std::complex<double> w = faddeeva_w(z);
  const std::complex<double> w1 = -2.0 * z * w + std::complex<double>(0.0, 2.0 / kSqrtPi);
  const std::complex<double> w2 =
      (4.0 * z * z - 2.0) * w - std::complex<double>(0.0, 4.0 / kSqrtPi) * z;
  const std::complex<double> w3 = -4.0 * w1 - 2.0 * z * w2;
  const double psi = 0.5 * kSqrtPi * xi * w.real();
  const double psi_x = 0.25 * kSqrtPi * xi * xi * w1.real();
  const double psi_xxx = (1.0 / 16.0) * kSqrtPi * xi * xi * xi * xi * w3.real();
  const double a = 2.0 / xi;
  const double b = 2.0 * beta_sq_over_width;
  const double shape = psi + b * (0.5 * psi_x + 0.25 * a * a * psi_xxx) +
                       beta_over_s * 0.5 * a * psi_x;
  return std::max(shape, 0.0);
}

}  // namespace

MicroXS micro_xs(const Nuclide& n, float energy, float temperature) {
  if (!(temperature > 0.0f)) {
    throw std::invalid_argument(
        fmt::format("nuclide '{}': temperature must be > 0", n.name));
  }
  const PointwiseXS bg = sigma_pointwise(n, energy);
  double capture = bg.sigma_g;
  double fission = bg.sigma_f;
  const double energy_d = energy;
  const double beta = std::sqrt(kBoltzmann * temperature / n.A);
  const double sqrt_e = std::sqrt(energy_d);
  for (const Resonance& r : n.resonances) {
    const double width = r.total_width();
    const double xi = width / (2.0 * sqrt_e * beta);  // Gamma / Doppler width at E
    const double x = 2.0 * (energy_d - r.E0) / width;
    const double shape =
        broadened_line_shape(xi, x, beta / sqrt_e, beta * beta / width);
    const double sigma0 = kResonancePeak * r.g * (r.gamma_n / width) / r.E0;
    const double common = sigma0 * std::sqrt(r.E0 / energy_d) * shape / width;
    capture += common * r.gamma_g;
    fission += common * r.gamma_f;
  }
  return {bg.sigma_s, static_cast<float>(capture), static_cast<float>(fission),
          bg.nu};
}

ResonantXS sigma_resonant(const Nuclide& n, float energy, float temperature) {
  const MicroXS m = micro_xs(n, energy, temperature);
  return {m.capture, m.fission};
}

MacroXS macro_xs(const Material& m, const NuclideLibrary& lib, float energy) {
  double scatter = 0.0;
  double absorb = 0.0;
  double fission = 0.0;
  double nu_fission = 0.0;
  for (const auto& [id, density] : m.densities) {
    const MicroXS micro = micro_xs(lib.at(id), energy, m.temperature);
    const double d = density;
    scatter += d * micro.scatter;
    absorb += d * (static_cast<double>(micro.capture) + micro.fission);
    fission += d * micro.fission;
    nu_fission += d * static_cast<double>(micro.nu) * micro.fission;
  }
  const double total = scatter + absorb;
  return {static_cast<float>(total), static_cast<float>(scatter),
          static_cast<float>(absorb), static_cast<float>(fission),
          static_cast<float>(nu_fission)};
}

}  // namespace pmc
