#include "pmc/bank.hpp"

#include <stdexcept>

namespace pmc {

void ParticleBank::resize(std::size_t n) {
  x.resize(n);
  y.resize(n);
  z.resize(n);
  ux.resize(n);
  uy.resize(n);
  uz.resize(n);
  energy.resize(n);
  weight.resize(n);
  region.resize(n);
  material.resize(n);
  rng.resize(n);
  history.resize(n);
  slot.resize(n);
  flights.resize(n);
  status.resize(n);
  pending.resize(n);
  xs_total.resize(n);
  xs_nu_fission.resize(n);
}

namespace {

template <class T>
void gather(std::vector<T>& column, std::span<const std::uint32_t> perm) {
  std::vector<T> scratch(column.size());
  for (std::size_t i = 0; i < perm.size(); ++i) scratch[i] = column[perm[i]];
  column.swap(scratch);
}

}  // namespace

void ParticleBank::apply_permutation(std::span<const std::uint32_t> perm) {
  if (perm.size() != size()) {
    throw std::invalid_argument("bank permutation length mismatch");
  }
  gather(x, perm);
  gather(y, perm);
  gather(z, perm);
  gather(ux, perm);
  gather(uy, perm);
  gather(uz, perm);
  gather(energy, perm);
  gather(weight, perm);
  gather(region, perm);
  gather(material, perm);
  gather(rng, perm);
  gather(history, perm);
  gather(slot, perm);
  gather(flights, perm);
  gather(status, perm);
  gather(pending, perm);
  gather(xs_total, perm);
  gather(xs_nu_fission, perm);
}

}  // namespace pmc
