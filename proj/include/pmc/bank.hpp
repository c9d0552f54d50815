#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pmc/rng.hpp"
#include "pmc/vec3.hpp"

namespace pmc {

// Stream with a draw counter so per-history budget overruns can be reported.
struct CountedRng {
  RngState state;
  std::uint32_t draws = 0;

  float next() {
    ++draws;
    return prn(state);
  }
};

enum class Status : std::uint8_t { alive, absorbed, cutoff };
enum class Event : std::uint8_t { cross_section, advance, collision, done };

struct FissionSite {
  Vec3 position;
  std::uint64_t history = 0;  // history of origin
};

// Structure-of-arrays particle collection. Permutations are applied to all
// columns at once; the slot column indexes the per-history tally arrays,
// which are never permuted.
struct ParticleBank {
  std::vector<float> x, y, z;
  std::vector<float> ux, uy, uz;
  std::vector<float> energy;
  std::vector<float> weight;
  std::vector<std::int32_t> region;
  std::vector<std::int32_t> material;
  std::vector<CountedRng> rng;
  std::vector<std::uint64_t> history;
  std::vector<std::uint32_t> slot;
  std::vector<std::uint32_t> flights;
  std::vector<Status> status;
  std::vector<Event> pending;
  // Stage-A cache, filled once per pipeline pass.
  std::vector<float> xs_total;
  std::vector<float> xs_nu_fission;

  std::size_t size() const { return x.size(); }
  void resize(std::size_t n);

  bool alive(std::size_t i) const { return status[i] == Status::alive; }
  Vec3 position(std::size_t i) const { return {x[i], y[i], z[i]}; }
  void set_position(std::size_t i, Vec3 p) { x[i] = p.x; y[i] = p.y; z[i] = p.z; }
  Vec3 direction(std::size_t i) const { return {ux[i], uy[i], uz[i]}; }
  void set_direction(std::size_t i, Vec3 d) { ux[i] = d.x; uy[i] = d.y; uz[i] = d.z; }

  // Gathers every column through perm (new[i] = old[perm[i]]).
  void apply_permutation(std::span<const std::uint32_t> perm);
};

}  // namespace pmc
