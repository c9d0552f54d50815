// Acceptance suite: every criterion prints one pass/fail line; the binary
// exits nonzero if any fail. Long-running criteria shell out to the CLI the
// way a user would.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "broaden_oracle.hpp"
#include "pmc/bench.hpp"
#include "pmc/config.hpp"
#include "pmc/constants.hpp"
#include "pmc/nucleardata.hpp"
#include "pmc/problems.hpp"
#include "pmc/results_io.hpp"
#include "pmc/rng.hpp"
#include "pmc/tally.hpp"
#include "pmc/transport.hpp"

using namespace pmc;
using pmc::testing::sigma1_broaden_at;

namespace {

std::filesystem::path g_outdir;
std::uint64_t g_observed_stream_overflows = 0;

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PMC_CLI_PATH) + " " + args + " >> " +
                          (g_outdir / "cli.log").string() + " 2>&1";
  return std::system(cmd.c_str());
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  require(in.good(), fmt::format("missing file {}", path.string()));
  nlohmann::json j;
  in >> j;
  return j;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return v;
}

// --------------------------------------------------------------------------
// 1. Doppler-broadening oracle agreement at 600/900/1200 K
// --------------------------------------------------------------------------
std::string criterion_broadening_agreement() {
  const NuclideLibrary lib = NuclideLibrary::load(default_library_path());
  const Nuclide& u238 = lib.by_name("U238");
  require(!u238.resonances.empty(), "U238 has no resonances");

  double worst = 0.0;
  std::size_t compared = 0;
  for (const Resonance& r : u238.resonances) {
    // Near-0 K table over a window wide enough that the kernel never sees
    // the table edge from any compared point.
    const std::vector<double> table_grid = linspace(r.E0 - 4.0, r.E0 + 4.0, 4001);
    std::vector<double> cold;
    cold.reserve(table_grid.size());
    for (double e : table_grid) {
      cold.push_back(sigma_resonant(u238, static_cast<float>(e), 1.0e-3f).sigma_g);
    }
    const std::vector<double> eval = linspace(r.E0 - 2.0, r.E0 + 2.0, 801);
    for (float t : {600.0f, 900.0f, 1200.0f}) {
      const std::vector<double> broadened =
          sigma1_broaden_at(table_grid, cold, eval, t, u238.A);
      for (std::size_t i = 0; i < eval.size(); ++i) {
        const double direct =
            sigma_resonant(u238, static_cast<float>(eval[i]), t).sigma_g;
        if (direct <= 1.0) continue;
        ++compared;
        worst = std::max(worst, std::abs(broadened[i] - direct) / direct);
      }
    }
  }
  require(compared > 300, fmt::format("only {} points above 1 barn", compared));
  require(worst <= 5.0e-3,
          fmt::format("worst relative deviation {:.3e} > 0.5%", worst));
  return fmt::format("{} points, worst deviation {:.2e}", compared, worst);
}

// --------------------------------------------------------------------------
// 2. 1/v and constant fixed points of the oracle
// --------------------------------------------------------------------------
std::string criterion_fixed_points() {
  double worst_const = 0.0;
  {
    const double c = 7.5;
    const std::vector<double> grid = linspace(1.0, 100.0, 800);
    const std::vector<double> table(grid.size(), c);
    const std::vector<double> eval = linspace(25.0, 75.0, 21);
    const std::vector<double> out = sigma1_broaden_at(grid, table, eval, 1200.0, 10.0);
    for (double v : out) worst_const = std::max(worst_const, std::abs(v - c) / c);
  }

  double worst_inv_v = 0.0;
  {
    std::vector<double> grid;
    for (std::size_t i = 0; i <= 1200; ++i) {
      grid.push_back(0.02 * std::pow(10.0, 4.0 * i / 1200.0));
    }
    std::vector<double> table;
    for (double e : grid) table.push_back(30.0 / std::sqrt(e));
    const double thermal = kBoltzmann * 900.0 / 30.0;
    const std::vector<double> eval = linspace(150.0 * thermal, 40.0, 25);
    const std::vector<double> out = sigma1_broaden_at(grid, table, eval, 900.0, 30.0);
    for (std::size_t i = 0; i < eval.size(); ++i) {
      const double want = 30.0 / std::sqrt(eval[i]);
      worst_inv_v = std::max(worst_inv_v, std::abs(out[i] - want) / want);
    }
  }
  require(worst_const <= 1.0e-3,
          fmt::format("constant fixed point off by {:.2e}", worst_const));
  require(worst_inv_v <= 1.0e-3,
          fmt::format("1/v fixed point off by {:.2e}", worst_inv_v));
  return fmt::format("constant {:.1e}, 1/v {:.1e}", worst_const, worst_inv_v);
}

// --------------------------------------------------------------------------
// 3. Analytic k-infinity of the flat one-nuclide medium
// --------------------------------------------------------------------------
std::string criterion_analytic_k() {
  // The track-length score of a history in this medium is an exponential
  // with unit relative deviation, so sigma <= 5e-4 demands ~1e7 active
  // histories; 1e5 particles x 100 active batches is the smallest matching
  // scale (see the ledger note on the stated 1e4).
  const Problem problem = make_builtin_problem("infinite-k125");
  RunConfig config;
  config.problem = problem.name;
  config.particles = 100000;
  config.batches = 120;
  config.inactive = 20;
  config.seed = 1;
  config.mode = RunMode::history;
  config.workers = 1;
  const RunResult r = power_iteration(problem, config);

  g_observed_stream_overflows += r.counters.stream_overflows;
  require(r.counters.cutoff_energy == 0 && r.counters.cutoff_flights == 0,
          "cutoffs activated in the analytic problem");
  require(r.sigma_k <= 5.0e-4, fmt::format("sigma {:.2e} > 5e-4", r.sigma_k));
  const double dev = std::abs(r.mean_k - 1.25);
  require(dev <= 3.0 * r.sigma_k,
          fmt::format("k = {} vs 1.25 ({:.1f} sigma)", r.mean_k, dev / r.sigma_k));
  return fmt::format("k = {} vs 1.25 ({:.2f} sigma)",
                     format_mean_sigma(r.mean_k, r.sigma_k), dev / r.sigma_k);
}

// --------------------------------------------------------------------------
// 4. Mode equivalence: 2 pipelines x 4 sorts x workers {1,4}
// --------------------------------------------------------------------------
std::string criterion_mode_equivalence() {
  const Problem problem = make_builtin_problem("pincell-600K");
  std::vector<float> reference;
  int combos = 0;
  for (RunMode mode : {RunMode::history, RunMode::event_based}) {
    for (SortStrategy sort : {SortStrategy::none, SortStrategy::material,
                              SortStrategy::energy, SortStrategy::material_energy}) {
      for (int workers : {1, 4}) {
        RunConfig config;
        config.problem = problem.name;
        config.particles = 10000;
        config.batches = 20;
        config.inactive = 5;
        config.seed = 77;
        config.mode = mode;
        config.sort = sort;
        config.workers = workers;
        const RunResult r = power_iteration(problem, config);
        g_observed_stream_overflows += r.counters.stream_overflows;
        std::vector<float> k;
        for (const BatchResult& b : r.batches) k.push_back(b.k);
        if (reference.empty()) {
          reference = k;
        } else {
          require(k.size() == reference.size(), "batch count mismatch");
          for (std::size_t i = 0; i < k.size(); ++i) {
            require(k[i] == reference[i],
                    fmt::format("k mismatch at batch {} for mode={} sort={} "
                                "workers={}: {:.9g} vs {:.9g}",
                                i, to_string(mode), to_string(sort), workers, k[i],
                                reference[i]));
          }
        }
        ++combos;
      }
    }
  }
  return fmt::format("{} combinations bitwise identical over {} batches", combos,
                     reference.size());
}

// --------------------------------------------------------------------------
// 5. Doppler-coefficient sign and protocol through the CLI
// --------------------------------------------------------------------------
std::string criterion_doppler_protocol() {
  for (int t : {600, 900, 1200}) {
    const std::string out = (g_outdir / fmt::format("dopp{}", t)).string();
    const int rc = run_cli(fmt::format(
        "run --problem pincell-{}K --particles 10000 --batches 220 --inactive 20 "
        "--seed 4242 --mode event --sort material-energy --workers 2 --output {}",
        t, out));
    require(rc == 0, fmt::format("CLI run failed for {} K", t));
    const nlohmann::json j = load_json(out + ".summary.json");
    g_observed_stream_overflows +=
        j.at("counters").at("stream_overflows").get<std::uint64_t>();
  }
  struct Leg {
    int t1, t2;
    double alpha, sigma;
  };
  std::vector<Leg> legs = {{600, 900, 0, 0}, {900, 1200, 0, 0}};
  for (Leg& leg : legs) {
    const std::string json_path =
        (g_outdir / fmt::format("alpha_{}_{}.json", leg.t1, leg.t2)).string();
    const int rc = run_cli(fmt::format(
        "compare {}/dopp{}.summary.json {}/dopp{}.summary.json --json {}",
        g_outdir.string(), leg.t1, g_outdir.string(), leg.t2, json_path));
    require(rc == 0, "CLI compare failed");
    const nlohmann::json j = load_json(json_path);
    leg.alpha = j.at("alpha_pcm_per_k").get<double>();
    leg.sigma = j.at("sigma_alpha_pcm_per_k").get<double>();
    require(leg.alpha < 0.0,
            fmt::format("alpha({}->{}) = {:.3f} not negative", leg.t1, leg.t2,
                        leg.alpha));
    require(std::abs(leg.alpha) >= 0.5 && std::abs(leg.alpha) <= 10.0,
            fmt::format("|alpha({}->{})| = {:.3f} outside [0.5, 10]", leg.t1,
                        leg.t2, std::abs(leg.alpha)));
  }
  return fmt::format("alpha(600->900) = {:.3f} +/- {:.3f}, alpha(900->1200) = "
                     "{:.3f} +/- {:.3f} pcm/K",
                     legs[0].alpha, legs[0].sigma, legs[1].alpha, legs[1].sigma);
}

// --------------------------------------------------------------------------
// 6. Eq.-of-definition arithmetic on the reference k values
// --------------------------------------------------------------------------
std::string criterion_doppler_arithmetic() {
  const DopplerCoefficient dc =
      doppler_coefficient(1.18256, 0.0, 600.0, 1.17245, 0.0, 900.0);
  require(std::abs(dc.alpha - (-2.430)) <= 1.0e-3,
          fmt::format("alpha = {:.6f}, expected -2.430 +/- 0.001", dc.alpha));
  return fmt::format("alpha = {:.4f} pcm/K", dc.alpha);
}

// --------------------------------------------------------------------------
// 7. Sorting benchmark harness on the 2-material pincell
// --------------------------------------------------------------------------
std::string criterion_bench() {
  const std::string out = (g_outdir / "bench").string();
  const int rc = run_cli(fmt::format(
      "bench --problem pincell-bench --particles 20000 --batches 12 --inactive 2 "
      "--seed 31 --workers 2 --output {}",
      out));
  require(rc == 0, "CLI bench failed (result mismatch or run error)");

  std::ifstream csv(out + ".bench.csv");
  require(csv.good(), "bench CSV missing");
  std::string header;
  std::getline(csv, header);
  require(header == "strategy,particles_per_s,relative_excl_sort,relative_incl_sort",
          "bench CSV schema changed: " + header);
  std::map<std::string, std::vector<double>> rows;
  std::string line;
  while (std::getline(csv, line)) {
    std::stringstream ss(line);
    std::string name, field;
    std::getline(ss, name, ',');
    std::vector<double> values;
    while (std::getline(ss, field, ',')) values.push_back(std::stod(field));
    rows[name] = values;
  }
  require(rows.size() == 4, fmt::format("expected 4 strategies, got {}", rows.size()));
  require(std::abs(rows.at("none")[1] - 1.0) < 1e-9, "baseline row is not 1.00");
  const double relative = rows.at("material-energy")[1];
  require(relative >= 1.0,
          fmt::format("material+energy sort-excluded throughput ratio {:.3f} < 1",
                      relative));
  return fmt::format("material-energy vs none: {:.3f}x (sort excluded), "
                     "{:.3f}x (included)",
                     relative, rows.at("material-energy")[2]);
}

// --------------------------------------------------------------------------
// 8. RNG contracts
// --------------------------------------------------------------------------
std::string criterion_rng() {
  RngState walk{991};
  const RngState origin = walk;
  for (std::uint64_t i = 0; i < 10000000ull; ++i) prn(walk);
  require(skip_ahead(origin, 10000000ull) == walk,
          "skip-ahead(1e7) != 1e7 sequential steps");
  require(g_observed_stream_overflows == 0,
          fmt::format("{} histories overran their stream windows",
                      g_observed_stream_overflows));
  return "skip-ahead exact at 1e7; zero stream overlaps across acceptance runs";
}

// --------------------------------------------------------------------------
// 9. Scattering kinematics property suite
// --------------------------------------------------------------------------
std::string criterion_kinematics() {
  CountedRng rng{init_stream(2024, 0)};
  const int n = 1000000;
  for (double a : {1.0, 16.0, 238.0}) {
    const double lo = ((a - 1.0) / (a + 1.0)) * ((a - 1.0) / (a + 1.0));
    for (int i = 0; i < n / 3; ++i) {
      const Vec3 d = isotropic_direction(rng);
      const ScatterResult r = elastic_scatter(1.0e6f, d, a, rng.next(), rng.next());
      const double ratio = r.energy / 1.0e6;
      require(ratio >= lo * (1.0 - 1e-6) && ratio <= 1.0 + 1e-6,
              fmt::format("E'/E = {} outside [{:.5f}, 1] for A = {}", ratio, lo, a));
      require(std::abs(r.direction.norm() - 1.0f) <= 1e-6,
              "direction norm drifted past 1e-6");
    }
  }

  const float a = 0.988e6f;
  const float b = 2.249e-6f;
  CountedRng wrng{init_stream(2025, 0)};
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += sample_watt(a, b, wrng);
  const double mean = sum / n;
  const double want = 1.5 * a + 0.25 * static_cast<double>(a) * a * b;
  require(std::abs(mean - want) / want <= 0.01,
          fmt::format("Watt mean {:.4e} vs {:.4e}", mean, want));
  return fmt::format("1e6 scatters in bounds; Watt mean within {:.2f}%",
                     100.0 * std::abs(mean - want) / want);
}

struct Criterion {
  int id;
  std::string title;
  std::function<std::string()> body;
};

}  // namespace

int main(int argc, char** argv) {
  g_outdir = std::filesystem::current_path() / "acceptance_out";
  std::filesystem::create_directories(g_outdir);
  std::filesystem::remove(g_outdir / "cli.log");

  std::vector<Criterion> criteria = {
      {1, "Doppler broadening agrees with the kernel-quadrature oracle",
       criterion_broadening_agreement},
      {2, "1/v and constant cross sections are oracle fixed points",
       criterion_fixed_points},
      {3, "analytic k-infinity = 1.25 within 3 sigma", criterion_analytic_k},
      {4, "history/event x 4 sorts x workers {1,4} bitwise identical",
       criterion_mode_equivalence},
      {5, "Doppler coefficients negative with sane magnitude via compare",
       criterion_doppler_protocol},
      {6, "coefficient arithmetic on reference k values", criterion_doppler_arithmetic},
      {7, "bench: 4-strategy table, equal results, sorted >= baseline",
       criterion_bench},
      {8, "RNG skip-ahead and stream-overlap contracts", criterion_rng},
      {9, "elastic kinematics bounds and Watt spectrum moments",
       criterion_kinematics},
  };

  // Subset selection by id, e.g. "acceptance 1 2 8".
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

  // Criterion 8 also audits the stream-overflow counters that 3-5 collect,
  // so the declaration order above is load-bearing.
  int failures = 0;
  std::vector<std::string> report;
  for (const Criterion& c : criteria) {
    if (!wanted.empty() &&
        std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::string line;
    try {
      const std::string detail = c.body();
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      line = fmt::format("[PASS] criterion {}: {} — {} ({:.1f} s)", c.id, c.title,
                         detail, secs);
    } catch (const std::exception& e) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      line = fmt::format("[FAIL] criterion {}: {} — {} ({:.1f} s)", c.id, c.title,
                         e.what(), secs);
      ++failures;
    }
    fmt::print("{}\n", line);
    std::fflush(stdout);
    report.push_back(line);
  }

  fmt::print("\n{} of {} criteria passed\n", report.size() - failures, report.size());
  return failures == 0 ? 0 : 1;
}
