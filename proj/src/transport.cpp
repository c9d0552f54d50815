#include "pmc/transport.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

#include "pmc/constants.hpp"

namespace pmc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Batch-level streams (source resampling) live far above any real history
// index so the two never collide.
constexpr std::uint64_t kBatchStreamBase = 1ull << 40;

constexpr float kWattA = 0.988e6f;   // [eV]
constexpr float kWattB = 2.249e-6f;  // [1/eV]

float positive(float xi) {
  return std::max(xi, std::numeric_limits<float>::min());
}

}  // namespace

float sample_flight(float sigma_total, float xi) {
  if (!(sigma_total > 0.0f)) {
    throw std::domain_error(
        fmt::format("sample_flight: non-positive total cross section {:g}; "
                    "vacuum regions are not allowed",
                    sigma_total));
  }
  return -std::log(1.0f - xi) / sigma_total;
}

int sample_collision_nuclide(const Material& mat, const NuclideLibrary& lib,
                             float energy, float sigma_total_macro, float xi) {
  const double target = static_cast<double>(xi) * sigma_total_macro;
  double cumulative = 0.0;
  const int last = static_cast<int>(mat.densities.size()) - 1;
  for (int c = 0; c <= last; ++c) {
    const auto& [id, density] = mat.densities[static_cast<std::size_t>(c)];
    const MicroXS micro = micro_xs(lib.at(id), energy, mat.temperature);
    cumulative += static_cast<double>(density) * micro.total();
    if (target < cumulative) return c;
  }
  return last;
}

Reaction sample_reaction(const MicroXS& xs, float xi) {
  const float total = xs.total();
  if (!(total > 0.0f)) {
    throw std::domain_error("sample_reaction: zero total microscopic cross section");
  }
  const float target = xi * total;
  if (target < xs.scatter) return Reaction::elastic;
  if (target < xs.scatter + xs.capture) return Reaction::capture;
  return Reaction::fission;
}

namespace {

// Rotates a unit vector by polar cosine mu about itself with azimuth phi.
Vec3 rotate_direction(Vec3 d, float mu, float phi) {
  const float sin_theta = std::sqrt(std::max(0.0f, 1.0f - mu * mu));
  const float cos_phi = std::cos(phi);
  const float sin_phi = std::sin(phi);
  const float a = std::sqrt(std::max(0.0f, 1.0f - d.z * d.z));
  Vec3 out;
  if (a > 1.0e-10f) {
    out.x = mu * d.x + sin_theta * (d.x * d.z * cos_phi - d.y * sin_phi) / a;
    out.y = mu * d.y + sin_theta * (d.y * d.z * cos_phi + d.x * sin_phi) / a;
    out.z = mu * d.z - sin_theta * a * cos_phi;
  } else {
    // Incident direction along +-z.
    out.x = sin_theta * cos_phi;
    out.y = sin_theta * sin_phi;
    out.z = d.z > 0.0f ? mu : -mu;
  }
  const float norm = out.norm();
  return {out.x / norm, out.y / norm, out.z / norm};
}

}  // namespace

ScatterResult elastic_scatter(float energy, Vec3 direction, double A, float xi1,
                              float xi2) {
  const double mu_cm = 2.0 * static_cast<double>(xi1) - 1.0;
  const double kinematic = 1.0 + A * A + 2.0 * A * mu_cm;
  const double one_plus_a = 1.0 + A;
  const float energy_out =
      static_cast<float>(energy * (kinematic / (one_plus_a * one_plus_a)));
  float mu_lab = 0.0f;
  if (kinematic > 0.0) {
    mu_lab = static_cast<float>((1.0 + A * mu_cm) / std::sqrt(kinematic));
    mu_lab = std::clamp(mu_lab, -1.0f, 1.0f);
  }
  const float phi = 2.0f * static_cast<float>(kPi) * xi2;
  return {energy_out, rotate_direction(direction, mu_lab, phi)};
}

float sample_watt(float a, float b, CountedRng& rng) {
  // Maxwellian at temperature a, then the exact spectrum shift.
  const double xi1 = positive(rng.next());
  const double xi2 = positive(rng.next());
  const double xi3 = rng.next();
  const double c = std::cos(0.5 * kPi * xi3);
  const double maxwell = -static_cast<double>(a) * (std::log(xi1) + std::log(xi2) * c * c);
  const double shift = 0.25 * static_cast<double>(a) * a * b;
  const double xi4 = rng.next();
  const double e =
      maxwell + shift + (2.0 * xi4 - 1.0) * std::sqrt(4.0 * shift * maxwell);
  return static_cast<float>(e);
}

Vec3 isotropic_direction(CountedRng& rng) {
  const float mu = 2.0f * rng.next() - 1.0f;
  const float phi = 2.0f * static_cast<float>(kPi) * rng.next();
  const float s = std::sqrt(std::max(0.0f, 1.0f - mu * mu));
  return {s * std::cos(phi), s * std::sin(phi), mu};
}

// ---------------------------------------------------------------------------
// Transporter
// ---------------------------------------------------------------------------

void BatchTallies::reset(std::size_t n_slots) {
  nu_fission_tracklength.assign(n_slots, 0.0);
  absorbed_weight.assign(n_slots, 0.0);
  cutoff_weight.assign(n_slots, 0.0);
  fission_sites.assign(n_slots, 0u);
  fission_position.assign(n_slots, Vec3{});
  death.assign(n_slots, DeathKind::none);
  draws.assign(n_slots, 0u);
}

Transporter::Transporter(const Problem& problem, const Cutoffs& cutoffs)
    : problem_(&problem), cutoffs_(cutoffs) {}

void Transporter::begin_batch(std::size_t n_particles) {
  tallies_.reset(n_particles);
}

void Transporter::kill(ParticleBank& bank, std::size_t i, DeathKind kind) {
  const std::uint32_t s = bank.slot[i];
  tallies_.death[s] = kind;
  if (kind == DeathKind::absorbed) {
    bank.status[i] = Status::absorbed;
    tallies_.absorbed_weight[s] += bank.weight[i];
  } else {
    bank.status[i] = Status::cutoff;
    tallies_.cutoff_weight[s] += bank.weight[i];
  }
  bank.pending[i] = Event::done;
}

void Transporter::stage_xs(ParticleBank& bank, std::size_t i) const {
  const Material& mat = problem_->materials[static_cast<std::size_t>(bank.material[i])];
  const MacroXS xs = macro_xs(mat, problem_->library, bank.energy[i]);
  bank.xs_total[i] = xs.total;
  bank.xs_nu_fission[i] = xs.nu_fission;
  bank.pending[i] = Event::advance;
}

void Transporter::stage_advance(ParticleBank& bank, std::size_t i) {
  const Pincell& geom = problem_->geometry;
  const float xi = bank.rng[i].next();
  const float flight = sample_flight(bank.xs_total[i], xi);
  const Vec3 dir = bank.direction(i);
  Vec3 pos = bank.position(i);
  const BoundaryHit hit = geom.distance_to_boundary(pos, dir);

  const bool collides = flight < hit.distance;
  const float traveled = collides ? flight : hit.distance;
  tallies_.nu_fission_tracklength[bank.slot[i]] +=
      static_cast<double>(bank.weight[i]) * static_cast<double>(traveled) *
      static_cast<double>(bank.xs_nu_fission[i]);
  ++bank.flights[i];
  pos = pos + dir * traveled;

  if (collides) {
    bank.set_position(i, pos);
    bank.pending[i] = Event::collision;
  } else {
    Vec3 new_dir = dir;
    if (hit.surface.is_face()) {
      // Park the reflected particle exactly on its face before nudging back
      // inside along the new direction.
      switch (hit.surface.kind) {
        case Surface::face_px: pos.x = geom.half_pitch(); break;
        case Surface::face_mx: pos.x = -geom.half_pitch(); break;
        case Surface::face_py: pos.y = geom.half_pitch(); break;
        case Surface::face_my: pos.y = -geom.half_pitch(); break;
        default: break;
      }
      new_dir = Pincell::reflect(dir, hit.surface);
      bank.set_direction(i, new_dir);
    }
    pos = pos + new_dir * Pincell::kSurfaceNudge;
    pos.x = std::clamp(pos.x, -geom.half_pitch(), geom.half_pitch());
    pos.y = std::clamp(pos.y, -geom.half_pitch(), geom.half_pitch());
    if (!hit.surface.is_face()) {
      const bool outward = pos.x * new_dir.x + pos.y * new_dir.y >= 0.0f;
      pos = geom.settle_after_crossing(pos, hit.surface.index, outward);
      bank.set_position(i, pos);
      const int region = geom.locate(pos);
      bank.region[i] = region;
      bank.material[i] = geom.region_material(region);
    } else {
      bank.set_position(i, pos);
    }
    bank.pending[i] = Event::cross_section;
  }

  if (bank.flights[i] > cutoffs_.flights) {
    kill(bank, i, DeathKind::cutoff_flights);
  }
}

void Transporter::stage_collision(ParticleBank& bank, std::size_t i) {
  const Material& mat = problem_->materials[static_cast<std::size_t>(bank.material[i])];
  const float energy = bank.energy[i];

  const float xi_nuclide = bank.rng[i].next();
  const int constituent = sample_collision_nuclide(mat, problem_->library, energy,
                                                   bank.xs_total[i], xi_nuclide);
  const auto& [nuclide_id, density] =
      mat.densities[static_cast<std::size_t>(constituent)];
  const Nuclide& nuclide = problem_->library.at(nuclide_id);
  const MicroXS micro = micro_xs(nuclide, energy, mat.temperature);

  const float xi_reaction = bank.rng[i].next();
  switch (sample_reaction(micro, xi_reaction)) {
    case Reaction::elastic: {
      const float xi1 = bank.rng[i].next();
      const float xi2 = bank.rng[i].next();
      const ScatterResult out =
          elastic_scatter(energy, bank.direction(i), nuclide.A, xi1, xi2);
      if (out.energy < cutoffs_.energy) {
        kill(bank, i, DeathKind::cutoff_energy);
        return;
      }
      bank.energy[i] = out.energy;
      bank.set_direction(i, out.direction);
      bank.pending[i] = Event::cross_section;
      return;
    }
    case Reaction::capture:
      kill(bank, i, DeathKind::absorbed);
      return;
    case Reaction::fission: {
      // n = floor(w*nu + xi) sites at the collision point; birth energies
      // are sampled at source time, not here.
      const float xi_sites = bank.rng[i].next();
      const float expected = bank.weight[i] * micro.nu;
      const auto n_sites = static_cast<std::uint32_t>(expected + xi_sites);
      const std::uint32_t s = bank.slot[i];
      tallies_.fission_sites[s] = n_sites;
      tallies_.fission_position[s] = bank.position(i);
      kill(bank, i, DeathKind::absorbed);
      return;
    }
  }
}

void Transporter::transport_history(ParticleBank& bank, std::size_t i) {
  try {
    while (bank.alive(i)) {
      stage_xs(bank, i);
      stage_advance(bank, i);
      if (bank.alive(i) && bank.pending[i] == Event::collision) {
        stage_collision(bank, i);
      }
    }
    tallies_.draws[bank.slot[i]] = bank.rng[i].draws;
  } catch (const std::exception& e) {
    throw std::runtime_error(fmt::format(
        "history {} failed: {} [position ({:g}, {:g}, {:g}), direction "
        "({:g}, {:g}, {:g}), energy {:g} eV, region {}, material {}, flights {}]",
        bank.history[i], e.what(), bank.x[i], bank.y[i], bank.z[i], bank.ux[i],
        bank.uy[i], bank.uz[i], bank.energy[i], bank.region[i], bank.material[i],
        bank.flights[i]));
  }
}

void Transporter::run_history_based(ParticleBank& bank, WorkerPool& pool,
                                    StageMetrics& metrics) {
  const auto t0 = Clock::now();
  pool.parallel_for(0, bank.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) transport_history(bank, i);
  });
  metrics.advance_s += seconds_since(t0);
  metrics.advance_events += bank.size();
}

void Transporter::run_event_based(ParticleBank& bank, SortStrategy strategy,
                                  WorkerPool& pool, StageMetrics& metrics) {
  std::size_t n_alive = bank.size();
  while (n_alive > 0) {
    auto t = Clock::now();
    const SortOutcome sorted = sort_bank(bank, strategy);
    metrics.sort_s += seconds_since(t);
    n_alive = sorted.alive_count;
    if (n_alive == 0) break;

    // Stage A: lookups for every alive particle awaiting one.
    t = Clock::now();
    pool.parallel_for(0, n_alive, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        if (bank.alive(i) && bank.pending[i] == Event::cross_section) {
          stage_xs(bank, i);
        }
      }
    });
    metrics.xs_s += seconds_since(t);
    metrics.xs_events += n_alive;

    // Stage B: advance every alive particle.
    t = Clock::now();
    pool.parallel_for(0, n_alive, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        if (bank.alive(i) && bank.pending[i] == Event::advance) {
          stage_advance(bank, i);
        }
      }
    });
    metrics.advance_s += seconds_since(t);
    metrics.advance_events += n_alive;

    // Stage C: collisions only.
    t = Clock::now();
    std::size_t n_colliding = 0;
    for (std::size_t i = 0; i < n_alive; ++i) {
      if (bank.alive(i) && bank.pending[i] == Event::collision) ++n_colliding;
    }
    pool.parallel_for(0, n_alive, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        if (bank.alive(i) && bank.pending[i] == Event::collision) {
          stage_collision(bank, i);
        }
      }
    });
    metrics.collision_s += seconds_since(t);
    metrics.collision_events += n_colliding;

    n_alive = 0;
    for (std::size_t i = 0; i < bank.size(); ++i) {
      if (bank.alive(i)) ++n_alive;
    }
  }
  // Final per-history draw counts, slot-indexed like every other tally.
  for (std::size_t i = 0; i < bank.size(); ++i) {
    tallies_.draws[bank.slot[i]] = bank.rng[i].draws;
  }
}

// ---------------------------------------------------------------------------
// Power iteration
// ---------------------------------------------------------------------------

namespace {

struct SourceSite {
  Vec3 position;
};

void sample_source_particle(ParticleBank& bank, std::size_t i, const Problem& problem,
                            std::uint64_t seed, std::uint64_t history,
                            std::uint32_t slot, const SourceSite* site,
                            float energy_lo, float energy_hi) {
  CountedRng rng{init_stream(seed, history)};
  Vec3 pos;
  if (site != nullptr) {
    pos = site->position;
  } else if (problem.geometry.radii().empty()) {
    // Homogeneous cell: uniform over the box.
    const float half = problem.geometry.half_pitch();
    pos.x = (2.0f * rng.next() - 1.0f) * half;
    pos.y = (2.0f * rng.next() - 1.0f) * half;
    pos.z = 0.0f;
  } else {
    // Uniform over the fuel disk.
    const float r = problem.geometry.radii().front() * std::sqrt(rng.next());
    const float theta = 2.0f * static_cast<float>(kPi) * rng.next();
    pos = {r * std::cos(theta), r * std::sin(theta), 0.0f};
  }
  const Vec3 dir = isotropic_direction(rng);
  const float energy =
      std::clamp(sample_watt(kWattA, kWattB, rng), energy_lo, energy_hi);

  bank.set_position(i, pos);
  bank.set_direction(i, dir);
  bank.energy[i] = energy;
  bank.weight[i] = 1.0f;
  const int region = problem.geometry.locate(pos);
  bank.region[i] = region;
  bank.material[i] = problem.geometry.region_material(region);
  bank.rng[i] = rng;
  bank.history[i] = history;
  bank.slot[i] = slot;
  bank.flights[i] = 0;
  bank.status[i] = Status::alive;
  bank.pending[i] = Event::cross_section;
}

// Exact-N renormalization of the fission bank: a uniform subset without
// replacement when the bank is long (order-preserving selection sampling),
// uniform draws with replacement when it is short. Both use the batch-level
// stream only.
std::vector<SourceSite> resample_sites(const std::vector<FissionSite>& sites,
                                       std::uint64_t n_target, CountedRng& rng) {
  std::vector<SourceSite> out;
  out.reserve(n_target);
  const std::uint64_t m = sites.size();
  if (m >= n_target) {
    std::uint64_t kept = 0;
    for (std::uint64_t j = 0; j < m && kept < n_target; ++j) {
      const std::uint64_t remaining = m - j;
      const std::uint64_t needed = n_target - kept;
      if (static_cast<double>(rng.next()) * static_cast<double>(remaining) <
          static_cast<double>(needed)) {
        out.push_back({sites[j].position});
        ++kept;
      }
    }
    // Selection sampling can only fall short by rounding at the very end.
    while (out.size() < n_target) out.push_back({sites.back().position});
  } else {
    for (std::uint64_t s = 0; s < n_target; ++s) {
      auto j = static_cast<std::uint64_t>(static_cast<double>(rng.next()) *
                                          static_cast<double>(m));
      j = std::min(j, m - 1);
      out.push_back({sites[j].position});
    }
  }
  return out;
}

}  // namespace

RunResult power_iteration(const Problem& problem, const RunConfig& config) {
  config.validate();
  problem.validate();

  const std::uint64_t n = config.particles;
  const float energy_lo = std::nextafter(problem.energy_min(), 1.0e30f);
  const float energy_hi = std::nextafter(problem.energy_max(), 0.0f);

  WorkerPool pool(config.workers);
  Transporter transporter(problem, config.cutoffs);
  ParticleBank bank;
  bank.resize(n);

  RunResult result;
  result.problem_name = problem.name;
  result.fuel_temperature = problem.fuel_temperature();
  result.config = config;

  StageMetrics metrics;
  const auto run_t0 = Clock::now();

  std::vector<SourceSite> next_source;
  for (int b = 0; b < config.batches; ++b) {
    // Global history index = batch * N + slot, the cross-mode contract.
    const std::uint64_t history_base = static_cast<std::uint64_t>(b) * n;
    pool.parallel_for(0, n, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const auto slot = static_cast<std::uint32_t>(i);
        sample_source_particle(bank, i, problem, config.seed, history_base + i, slot,
                               b == 0 ? nullptr : &next_source[i], energy_lo,
                               energy_hi);
      }
    });

    transporter.begin_batch(n);
    if (config.mode == RunMode::history) {
      transporter.run_history_based(bank, pool, metrics);
    } else {
      transporter.run_event_based(bank, config.sort, pool, metrics);
    }

    // All reductions walk slots in canonical history order.
    const BatchTallies& t = transporter.tallies();
    double tracklength = 0.0;
    double launched = static_cast<double>(n);
    std::vector<FissionSite> sites;
    for (std::uint64_t s = 0; s < n; ++s) {
      tracklength += t.nu_fission_tracklength[s];
      result.counters.absorbed_weight += t.absorbed_weight[s];
      result.counters.cutoff_weight += t.cutoff_weight[s];
      switch (t.death[s]) {
        case DeathKind::absorbed: ++result.counters.absorbed; break;
        case DeathKind::cutoff_energy: ++result.counters.cutoff_energy; break;
        case DeathKind::cutoff_flights: ++result.counters.cutoff_flights; break;
        case DeathKind::none: break;
      }
      if (t.draws[s] > kRngStride) ++result.counters.stream_overflows;
      for (std::uint32_t c = 0; c < t.fission_sites[s]; ++c) {
        sites.push_back({t.fission_position[s], history_base + s});
      }
    }
    result.counters.histories += n;
    result.counters.launched_weight += launched;

    BatchResult batch;
    batch.index = b;
    batch.active = b >= config.inactive;
    batch.launched_weight = launched;
    batch.nu_fission_tracklength = tracklength;
    batch.k = static_cast<float>(batch_keff(tracklength, launched));
    result.batches.push_back(batch);

    if (sites.empty()) {
      throw std::runtime_error(
          fmt::format("subcritical collapse: fission bank empty after batch {}", b));
    }
    if (b + 1 < config.batches) {
      CountedRng batch_rng{
          init_stream(config.seed, kBatchStreamBase + static_cast<std::uint64_t>(b))};
      next_source = resample_sites(sites, n, batch_rng);
    }
  }

  const double wall = seconds_since(run_t0);
  result.throughput.wall_s = wall;
  result.throughput.sort_s = metrics.sort_s;
  result.throughput.histories = result.counters.histories;
  result.throughput.particles_per_s =
      wall > 0.0 ? static_cast<double>(result.counters.histories) / wall : 0.0;
  const double wall_no_sort = wall - metrics.sort_s;
  result.throughput.particles_per_s_excl_sort =
      wall_no_sort > 0.0 ? static_cast<double>(result.counters.histories) / wall_no_sort
                         : 0.0;
  result.throughput.stages = metrics;

  const std::vector<float> active = result.active_k();
  const MeanStd stats = mean_std(active);
  result.mean_k = stats.mean;
  result.sigma_k = stats.sigma;
  return result;
}

}  // namespace pmc
