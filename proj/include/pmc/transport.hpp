#pragma once

#include <cstdint>
#include <vector>

#include "pmc/bank.hpp"
#include "pmc/config.hpp"
#include "pmc/problems.hpp"
#include "pmc/sorting.hpp"
#include "pmc/tally.hpp"
#include "pmc/worker_pool.hpp"

namespace pmc {

// ---------------------------------------------------------------------------
// Elementary samplers. All take explicit variates so tests can drive them.
// ---------------------------------------------------------------------------

// Exponential free flight: -ln(1 - xi) / sigma_total. Throws on
// sigma_total <= 0 (vacuum regions are not allowed).
float sample_flight(float sigma_total, float xi);

// Discrete inverse-CDF pick of the collided nuclide, weights
// density * sigma_total_nuclide, in the material's constituent order.
// sigma_total_macro is the cached stage-A total.
int sample_collision_nuclide(const Material& mat, const NuclideLibrary& lib,
                             float energy, float sigma_total_macro, float xi);

enum class Reaction : std::uint8_t { elastic, capture, fission };

// Channel pick in fixed order (elastic, capture, fission).
Reaction sample_reaction(const MicroXS& xs, float xi);

struct ScatterResult {
  float energy;
  Vec3 direction;
};

// Target-at-rest elastic scattering, isotropic in the center of mass:
// mu_cm = 2*xi1 - 1, E' = E (1 + A^2 + 2 A mu_cm)/(1 + A)^2, azimuth 2*pi*xi2.
ScatterResult elastic_scatter(float energy, Vec3 direction, double A, float xi1,
                              float xi2);

// Watt fission spectrum by Maxwellian shift; always four draws.
float sample_watt(float a, float b, CountedRng& rng);

Vec3 isotropic_direction(CountedRng& rng);

// ---------------------------------------------------------------------------
// Pipelines
// ---------------------------------------------------------------------------

enum class DeathKind : std::uint8_t { none, absorbed, cutoff_energy, cutoff_flights };

// Per-history accumulators, indexed by slot and never permuted. Each
// particle is owned by one worker at a time, so writes are race-free; the
// batch reduction walks slots in canonical order.
struct BatchTallies {
  std::vector<double> nu_fission_tracklength;
  std::vector<double> absorbed_weight;
  std::vector<double> cutoff_weight;
  std::vector<std::uint32_t> fission_sites;
  std::vector<Vec3> fission_position;
  std::vector<DeathKind> death;
  std::vector<std::uint32_t> draws;

  void reset(std::size_t n_slots);
};

// Physics engine bound to one problem. The three stages are the same code
// in both pipelines, which is what makes them bitwise-consistent.
class Transporter {
 public:
  Transporter(const Problem& problem, const Cutoffs& cutoffs);

  const Problem& problem() const { return *problem_; }
  BatchTallies& tallies() { return tallies_; }

  void begin_batch(std::size_t n_particles);

  // Stage A: cross-section lookup at (material, energy, temperature).
  void stage_xs(ParticleBank& bank, std::size_t i) const;
  // Stage B: flight sampling, boundary handling, track-length scoring.
  void stage_advance(ParticleBank& bank, std::size_t i);
  // Stage C: collision physics and fission-site emission.
  void stage_collision(ParticleBank& bank, std::size_t i);

  // One particle to completion (history-based unit of work).
  void transport_history(ParticleBank& bank, std::size_t i);

  void run_history_based(ParticleBank& bank, WorkerPool& pool, StageMetrics& metrics);
  void run_event_based(ParticleBank& bank, SortStrategy strategy, WorkerPool& pool,
                       StageMetrics& metrics);

 private:
  void kill(ParticleBank& bank, std::size_t i, DeathKind kind);

  const Problem* problem_;
  Cutoffs cutoffs_;
  BatchTallies tallies_;
};

// k-eigenvalue power iteration over batches; see README for the source and
// resampling conventions. Deterministic for fixed (config, problem) across
// modes, sorting strategies, and worker counts.
RunResult power_iteration(const Problem& problem, const RunConfig& config);

}  // namespace pmc
