#include "pmc/results_io.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/core.h>
#include <json.hpp>

namespace pmc {

namespace {

using nlohmann::json;

}  // namespace

std::string batch_csv_path(const std::string& output_base) {
  return output_base + ".csv";
}

std::string summary_path(const std::string& output_base) {
  return output_base + ".summary.json";
}

void write_results(const RunResult& result, const std::string& output_base) {
  {
    const std::string path = batch_csv_path(output_base);
    std::ofstream csv(path);
    if (!csv) throw std::runtime_error(fmt::format("cannot write '{}'", path));
    csv << "batch,k,active\n";
    for (const BatchResult& b : result.batches) {
      csv << fmt::format("{},{:.9g},{}\n", b.index, b.k, b.active ? 1 : 0);
    }
  }

  json j;
  j["format"] = "pincellmc-summary";
  j["version"] = 1;
  j["problem"] = result.problem_name;
  j["config"] = {
      {"problem", result.config.problem},
      {"particles", result.config.particles},
      {"batches", result.config.batches},
      {"inactive", result.config.inactive},
      {"seed", result.config.seed},
      {"mode", to_string(result.config.mode)},
      {"sort", to_string(result.config.sort)},
      {"workers", result.config.workers},
      {"energy_cutoff", result.config.cutoffs.energy},
      {"flight_cutoff", result.config.cutoffs.flights},
  };
  j["results"] = {
      {"mean_k", result.mean_k},
      {"sigma_k", result.sigma_k},
      {"k_formatted", format_mean_sigma(result.mean_k, result.sigma_k)},
      {"active_batches", result.config.active_batches()},
      {"fuel_temperature", result.fuel_temperature},
  };
  j["counters"] = {
      {"histories", result.counters.histories},
      {"absorbed", result.counters.absorbed},
      {"cutoff_energy", result.counters.cutoff_energy},
      {"cutoff_flights", result.counters.cutoff_flights},
      {"stream_overflows", result.counters.stream_overflows},
      {"launched_weight", result.counters.launched_weight},
      {"absorbed_weight", result.counters.absorbed_weight},
      {"cutoff_weight", result.counters.cutoff_weight},
  };
  const StageMetrics& st = result.throughput.stages;
  j["throughput"] = {
      {"wall_s", result.throughput.wall_s},
      {"sort_s", result.throughput.sort_s},
      {"histories", result.throughput.histories},
      {"particles_per_s", result.throughput.particles_per_s},
      {"particles_per_s_excl_sort", result.throughput.particles_per_s_excl_sort},
      {"stages",
       {
           {"xs_s", st.xs_s},
           {"advance_s", st.advance_s},
           {"collision_s", st.collision_s},
           {"sort_s", st.sort_s},
           {"xs_events", st.xs_events},
           {"advance_events", st.advance_events},
           {"collision_events", st.collision_events},
       }},
  };
  // Non-deterministic fields live here and only here; comparisons of run
  // outputs must ignore this block. Power draw is hardware-specific and out
  // of scope for this artifact.
  j["metadata"] = {
      {"timestamp", fmt::format("{:%Y-%m-%dT%H:%M:%S}Z",
                                fmt::gmtime(std::chrono::system_clock::to_time_t(
                                    std::chrono::system_clock::now())))},
      {"power_measurement", "out of scope"},
  };

  const std::string path = summary_path(output_base);
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << j.dump(1) << "\n";
}

SummaryInfo read_summary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open summary '{}'", path));
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error(
        fmt::format("summary '{}' is not valid JSON: {}", path, e.what()));
  }
  if (j.value("format", std::string{}) != "pincellmc-summary") {
    throw std::runtime_error(
        fmt::format("'{}' is not a results summary (bad 'format' field)", path));
  }
  SummaryInfo info;
  info.problem = j.value("problem", std::string{});
  const json& r = j.at("results");
  info.mean_k = r.at("mean_k").get<double>();
  info.sigma_k = r.at("sigma_k").get<double>();
  info.fuel_temperature = r.at("fuel_temperature").get<double>();
  return info;
}

}  // namespace pmc
