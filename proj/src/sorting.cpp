#include "pmc/sorting.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

namespace pmc {

const char* to_string(SortStrategy s) {
  switch (s) {
    case SortStrategy::none: return "none";
    case SortStrategy::material: return "material";
    case SortStrategy::energy: return "energy";
    case SortStrategy::material_energy: return "material-energy";
  }
  return "?";
}

SortStrategy sort_strategy_from_string(const std::string& s) {
  if (s == "none") return SortStrategy::none;
  if (s == "material") return SortStrategy::material;
  if (s == "energy") return SortStrategy::energy;
  if (s == "material-energy" || s == "material_energy") {
    return SortStrategy::material_energy;
  }
  throw std::invalid_argument(fmt::format(
      "unknown sort strategy '{}' (expected none|material|energy|material-energy)",
      s));
}

SortKey make_key(std::int32_t material, float energy, SortStrategy strategy) {
  SortKey key;
  if (strategy == SortStrategy::material || strategy == SortStrategy::material_energy) {
    key.material = static_cast<std::uint32_t>(material);
  }
  if (strategy == SortStrategy::energy || strategy == SortStrategy::material_energy) {
    key.energy_bits = std::bit_cast<std::uint32_t>(energy);
  }
  return key;
}

SortOutcome sort_bank(ParticleBank& bank, SortStrategy strategy) {
  const std::size_t n = bank.size();
  SortOutcome out;
  out.permutation.resize(n);
  std::iota(out.permutation.begin(), out.permutation.end(), 0u);

  std::vector<std::uint64_t> keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (bank.alive(i)) {
      ++out.alive_count;
      keys[i] = make_key(bank.material[i], bank.energy[i], strategy).composite();
    }
  }

  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     const bool dead_a = !bank.alive(a);
                     const bool dead_b = !bank.alive(b);
                     if (dead_a != dead_b) return dead_b;
                     if (dead_a) return false;
                     return keys[a] < keys[b];
                   });

  bool identity = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.permutation[i] != i) {
      identity = false;
      break;
    }
  }
  if (!identity) bank.apply_permutation(out.permutation);
  return out;
}

}  // namespace pmc
