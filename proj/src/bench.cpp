#include "pmc/bench.hpp"

#include <bit>
#include <fstream>
#include <stdexcept>

#include <fmt/core.h>

namespace pmc {

void require_equal_results(const RunResult& a, const RunResult& b) {
  if (a.batches.size() != b.batches.size()) {
    throw std::runtime_error(
        fmt::format("result mismatch between sort '{}' and sort '{}': {} vs {} batches",
                    to_string(a.config.sort), to_string(b.config.sort),
                    a.batches.size(), b.batches.size()));
  }
  for (std::size_t i = 0; i < a.batches.size(); ++i) {
    const auto ka = std::bit_cast<std::uint32_t>(a.batches[i].k);
    const auto kb = std::bit_cast<std::uint32_t>(b.batches[i].k);
    if (ka != kb) {
      throw std::runtime_error(fmt::format(
          "result mismatch between sort '{}' and sort '{}' at batch {}: "
          "k = {:.9g} vs {:.9g}",
          to_string(a.config.sort), to_string(b.config.sort), i, a.batches[i].k,
          b.batches[i].k));
    }
  }
}

BenchResult run_bench(const Problem& problem, RunConfig base) {
  base.mode = RunMode::event_based;

  BenchResult out;
  std::vector<RunResult> runs;
  for (SortStrategy strategy :
       {SortStrategy::none, SortStrategy::material, SortStrategy::energy,
        SortStrategy::material_energy}) {
    RunConfig config = base;
    config.sort = strategy;
    runs.push_back(power_iteration(problem, config));
  }
  for (std::size_t i = 1; i < runs.size(); ++i) {
    require_equal_results(runs[0], runs[i]);
  }

  const double base_excl = runs[0].throughput.particles_per_s_excl_sort;
  const double base_incl = runs[0].throughput.particles_per_s;
  for (const RunResult& r : runs) {
    BenchRow row;
    row.strategy = r.config.sort;
    row.particles_per_s = r.throughput.particles_per_s;
    row.particles_per_s_excl_sort = r.throughput.particles_per_s_excl_sort;
    row.relative_excl_sort =
        base_excl > 0.0 ? row.particles_per_s_excl_sort / base_excl : 0.0;
    row.relative_incl_sort = base_incl > 0.0 ? row.particles_per_s / base_incl : 0.0;
    out.rows.push_back(row);
  }
  return out;
}

void write_bench_csv(const BenchResult& result, const std::string& path) {
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  csv << "strategy,particles_per_s,relative_excl_sort,relative_incl_sort\n";
  for (const BenchRow& row : result.rows) {
    csv << fmt::format("{},{:.6g},{:.4f},{:.4f}\n", to_string(row.strategy),
                       row.particles_per_s, row.relative_excl_sort,
                       row.relative_incl_sort);
  }
}

}  // namespace pmc
