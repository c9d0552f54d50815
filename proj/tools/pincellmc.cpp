#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "pmc/bench.hpp"
#include "pmc/config.hpp"
#include "pmc/nucleardata.hpp"
#include "pmc/problems.hpp"
#include "pmc/results_io.hpp"
#include "pmc/tally.hpp"
#include "pmc/transport.hpp"

namespace {

struct RunFlags {
  std::string config_file;
  std::string problem, library, output, mode, sort;
  std::uint64_t particles = 0, seed = 0;
  int batches = 0, inactive = -1, workers = 0;
  double energy_cutoff = 0.0;
  std::uint64_t flight_cutoff = 0;
};

// Flags override config-file values; untouched flags keep file/defaults.
void add_run_options(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--config", f.config_file, "run configuration file (JSON)");
  cmd->add_option("--problem", f.problem, "built-in problem name or problem file");
  cmd->add_option("--library", f.library, "nuclide library file override");
  cmd->add_option("--particles", f.particles, "particles per batch");
  cmd->add_option("--batches", f.batches, "total batches");
  cmd->add_option("--inactive", f.inactive, "inactive batches");
  cmd->add_option("--seed", f.seed, "master random seed");
  cmd->add_option("--mode", f.mode, "pipeline: history|event");
  cmd->add_option("--sort", f.sort, "sorting: none|material|energy|material-energy");
  cmd->add_option("--workers", f.workers, "data-parallel host workers");
  cmd->add_option("--energy-cutoff", f.energy_cutoff, "energy cutoff [eV]");
  cmd->add_option("--flight-cutoff", f.flight_cutoff, "flight segments per history");
  cmd->add_option("--output", f.output, "output base path");
}

pmc::RunConfig build_config(const CLI::App* cmd, const RunFlags& f) {
  pmc::RunConfig c;
  if (!f.config_file.empty()) c = pmc::parse_config_file(f.config_file);
  if (cmd->count("--problem")) c.problem = f.problem;
  if (cmd->count("--library")) c.library = f.library;
  if (cmd->count("--particles")) c.particles = f.particles;
  if (cmd->count("--batches")) c.batches = f.batches;
  if (cmd->count("--inactive")) c.inactive = f.inactive;
  if (cmd->count("--seed")) c.seed = f.seed;
  if (cmd->count("--mode")) c.mode = pmc::run_mode_from_string(f.mode);
  if (cmd->count("--sort")) c.sort = pmc::sort_strategy_from_string(f.sort);
  if (cmd->count("--workers")) c.workers = f.workers;
  if (cmd->count("--energy-cutoff")) c.cutoffs.energy = static_cast<float>(f.energy_cutoff);
  if (cmd->count("--flight-cutoff")) c.cutoffs.flights = static_cast<std::uint32_t>(f.flight_cutoff);
  if (cmd->count("--output")) c.output = f.output;
  c.validate();
  return c;
}

int cmd_run(const CLI::App* cmd, const RunFlags& flags) {
  const pmc::RunConfig config = build_config(cmd, flags);
  const pmc::Problem problem = pmc::resolve_problem(config.problem, config.library);
  const pmc::RunResult result = pmc::power_iteration(problem, config);
  pmc::write_results(result, config.output);
  fmt::print("k = {}  throughput = {:.0f} p/s (sort-excluded {:.0f} p/s)\n",
             pmc::format_mean_sigma(result.mean_k, result.sigma_k),
             result.throughput.particles_per_s,
             result.throughput.particles_per_s_excl_sort);
  fmt::print("wrote {} and {}\n", pmc::batch_csv_path(config.output),
             pmc::summary_path(config.output));
  return 0;
}

int cmd_bench(const CLI::App* cmd, const RunFlags& flags) {
  pmc::RunConfig config = build_config(cmd, flags);
  const pmc::Problem problem = pmc::resolve_problem(config.problem, config.library);
  const pmc::BenchResult bench = pmc::run_bench(problem, config);
  const std::string path = config.output + ".bench.csv";
  pmc::write_bench_csv(bench, path);
  fmt::print("strategy          p/s         rel(excl sort)  rel(incl sort)\n");
  for (const pmc::BenchRow& row : bench.rows) {
    fmt::print("{:<16}  {:>10.0f}  {:>14.3f}  {:>14.3f}\n", to_string(row.strategy),
               row.particles_per_s, row.relative_excl_sort, row.relative_incl_sort);
  }
  fmt::print("wrote {}\n", path);
  return 0;
}

int cmd_compare(const std::string& file1, const std::string& file2,
                const std::string& json_out) {
  const pmc::SummaryInfo a = pmc::read_summary(file1);
  const pmc::SummaryInfo b = pmc::read_summary(file2);
  const pmc::DopplerCoefficient dc =
      pmc::doppler_coefficient(a.mean_k, a.sigma_k, a.fuel_temperature, b.mean_k,
                               b.sigma_k, b.fuel_temperature);
  fmt::print("alpha({:g} K -> {:g} K) = {:.4f} +/- {:.4f} pcm/K\n",
             a.fuel_temperature, b.fuel_temperature, dc.alpha, dc.sigma);
  if (!json_out.empty()) {
    nlohmann::json j = {
        {"t1", a.fuel_temperature},   {"t2", b.fuel_temperature},
        {"k1", a.mean_k},             {"k2", b.mean_k},
        {"sigma1", a.sigma_k},        {"sigma2", b.sigma_k},
        {"alpha_pcm_per_k", dc.alpha}, {"sigma_alpha_pcm_per_k", dc.sigma},
    };
    std::ofstream out(json_out);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", json_out));
    out << j.dump(1) << "\n";
  }
  return 0;
}

int cmd_xs_dump(const std::string& library, const std::string& nuclide_name,
                double temperature, double emin, double emax, int points,
                const std::string& output) {
  const pmc::NuclideLibrary lib = pmc::NuclideLibrary::load(
      library.empty() ? pmc::default_library_path() : library);
  const pmc::Nuclide& nuclide = lib.by_name(nuclide_name);

  std::vector<float> energies;
  if (points > 0) {
    const double lo = std::log(emin > 0.0 ? emin : nuclide.emin());
    const double hi = std::log(emax > 0.0 ? emax : nuclide.emax());
    for (int i = 0; i < points; ++i) {
      const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
      energies.push_back(static_cast<float>(std::exp(lo + f * (hi - lo))));
    }
  } else {
    energies.assign(nuclide.grid.begin(), nuclide.grid.end());
  }

  std::ofstream csv(output);
  if (!csv) throw std::runtime_error(fmt::format("cannot write '{}'", output));
  csv << "energy_ev,sigma_s,sigma_g,sigma_f\n";
  for (float e : energies) {
    const pmc::MicroXS xs =
        pmc::micro_xs(nuclide, e, static_cast<float>(temperature));
    csv << fmt::format("{:.9g},{:.9g},{:.9g},{:.9g}\n", e, xs.scatter, xs.capture,
                       xs.fission);
  }
  fmt::print("wrote {} ({} points, {} at {:g} K)\n", output, energies.size(),
             nuclide_name, temperature);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pincell-mc: Monte Carlo k-eigenvalue pincell transport"};
  app.require_subcommand(1);

  RunFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "run one power iteration");
  add_run_options(run, run_flags);

  RunFlags bench_flags;
  CLI::App* bench = app.add_subcommand(
      "bench", "event-pipeline throughput across the four sorting strategies");
  add_run_options(bench, bench_flags);

  std::string cmp_a, cmp_b, cmp_json;
  CLI::App* compare =
      app.add_subcommand("compare", "Doppler coefficient from two results summaries");
  compare->add_option("first", cmp_a, "summary of the lower-temperature run")
      ->required();
  compare->add_option("second", cmp_b, "summary of the higher-temperature run")
      ->required();
  compare->add_option("--json", cmp_json, "also write a JSON record");

  std::string xs_library, xs_nuclide, xs_output = "xs.csv";
  double xs_temperature = 293.6, xs_emin = 0.0, xs_emax = 0.0;
  int xs_points = 0;
  CLI::App* xs = app.add_subcommand("xs-dump", "cross sections at a temperature, CSV");
  xs->add_option("--library", xs_library, "nuclide library file");
  xs->add_option("--nuclide", xs_nuclide, "nuclide name")->required();
  xs->add_option("--temperature", xs_temperature, "temperature [K]")->required();
  xs->add_option("--emin", xs_emin, "lowest energy [eV]");
  xs->add_option("--emax", xs_emax, "highest energy [eV]");
  xs->add_option("--points", xs_points, "log-spaced points (0 = library grid)");
  xs->add_option("--output", xs_output, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run, run_flags);
    if (bench->parsed()) return cmd_bench(bench, bench_flags);
    if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_json);
    if (xs->parsed()) {
      return cmd_xs_dump(xs_library, xs_nuclide, xs_temperature, xs_emin, xs_emax,
                         xs_points, xs_output);
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
