#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmc/bank.hpp"

namespace pmc {

enum class SortStrategy : std::uint8_t { none, material, energy, material_energy };

const char* to_string(SortStrategy s);
SortStrategy sort_strategy_from_string(const std::string& s);

// Composite sort key: material major, energy minor. The energy component is
// the IEEE bit pattern of the (positive) energy, which is an order-preserving
// integer image, so banks sort on plain integer keys.
struct SortKey {
  std::uint32_t material = 0;
  std::uint32_t energy_bits = 0;

  std::uint64_t composite() const {
    return (static_cast<std::uint64_t>(material) << 32) | energy_bits;
  }
};

SortKey make_key(std::int32_t material, float energy, SortStrategy strategy);

struct SortOutcome {
  std::vector<std::uint32_t> permutation;
  std::size_t alive_count = 0;
};

// Stable sort of alive particles by composite key, dead particles compacted
// to the tail with their relative order preserved. The permutation is that
// of the sequential stable sort and is applied to all bank columns before
// returning. Strategy none only compacts.
SortOutcome sort_bank(ParticleBank& bank, SortStrategy strategy);

}  // namespace pmc
