#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pmc/config.hpp"

namespace pmc {

struct BatchResult {
  int index = 0;
  bool active = false;
  float k = 0.0f;
  double launched_weight = 0.0;
  double nu_fission_tracklength = 0.0;
};

struct StageMetrics {
  double sort_s = 0.0;
  double xs_s = 0.0;
  double advance_s = 0.0;
  double collision_s = 0.0;
  std::uint64_t xs_events = 0;
  std::uint64_t advance_events = 0;
  std::uint64_t collision_events = 0;
};

struct Counters {
  std::uint64_t histories = 0;
  std::uint64_t absorbed = 0;
  std::uint64_t cutoff_energy = 0;
  std::uint64_t cutoff_flights = 0;
  std::uint64_t stream_overflows = 0;  // histories that used > kRngStride draws
  double launched_weight = 0.0;
  double absorbed_weight = 0.0;
  double cutoff_weight = 0.0;
};

struct ThroughputRecord {
  double wall_s = 0.0;
  double sort_s = 0.0;
  std::uint64_t histories = 0;
  double particles_per_s = 0.0;            // sort time included
  double particles_per_s_excl_sort = 0.0;  // sort time excluded
  StageMetrics stages;
};

struct RunResult {
  std::vector<BatchResult> batches;
  double mean_k = 0.0;
  double sigma_k = 0.0;
  float fuel_temperature = 0.0f;
  std::string problem_name;
  ThroughputRecord throughput;
  Counters counters;
  RunConfig config;

  std::vector<float> active_k() const;
};

// Track-length k estimate for one batch.
double batch_keff(double nu_fission_tracklength_sum, double launched_weight);

struct MeanStd {
  double mean = 0.0;
  double sigma = 0.0;  // standard deviation of the mean
};

// Sample mean and sigma of the mean over active batches; needs >= 2 values.
MeanStd mean_std(std::span<const float> k_values);

struct DopplerCoefficient {
  double alpha = 0.0;  // [pcm/K]
  double sigma = 0.0;  // [pcm/K]
};

// alpha = (1/k1 - 1/k2) * 1e5 / (T2 - T1) with first-order uncertainty
// propagation. Requires T1 < T2 and positive k.
DopplerCoefficient doppler_coefficient(double k1, double sigma1, double t1,
                                       double k2, double sigma2, double t2);

// "value (1-sigma-in-last-digits)" rendering, e.g. 1.17724 (13), and its
// inverse. format/parse round-trip to the same numbers at the printed
// precision.
std::string format_mean_sigma(double value, double sigma);
MeanStd parse_mean_sigma(const std::string& text);

}  // namespace pmc
