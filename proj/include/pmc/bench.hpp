#pragma once

#include <string>
#include <vector>

#include "pmc/tally.hpp"
#include "pmc/transport.hpp"

namespace pmc {

struct BenchRow {
  SortStrategy strategy = SortStrategy::none;
  double particles_per_s = 0.0;            // sort time included
  double particles_per_s_excl_sort = 0.0;  // sort time excluded
  double relative_excl_sort = 0.0;         // vs the no-sorting baseline
  double relative_incl_sort = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;  // none, material, energy, material-energy
};

// Throws if two runs differ in any per-batch k value (bitwise) or batch
// count. Correctness precedes performance: bench refuses to report timings
// for runs that disagree.
void require_equal_results(const RunResult& a, const RunResult& b);

// Runs the four sorting strategies on the event pipeline with an identical
// seed, asserts cross-strategy equality, and reports throughput normalized
// to the no-sorting baseline.
BenchResult run_bench(const Problem& problem, RunConfig base);

// CSV: strategy, particles/sec, relative (excl. sort), relative (incl. sort).
void write_bench_csv(const BenchResult& result, const std::string& path);

}  // namespace pmc
