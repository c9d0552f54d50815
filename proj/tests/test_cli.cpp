#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "pmc/results_io.hpp"

namespace {

std::string cli() { return PMC_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = cli() + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    const auto tick = std::chrono::steady_clock::now().time_since_epoch().count();
    path = std::filesystem::temp_directory_path() / ("pmc_cli_" + std::to_string(tick));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("run subcommand: smoke scale, determinism, mode equivalence") {
  TempDir dir;
  const std::string base = " run --problem pincell-600K --particles 1000 "
                           "--batches 12 --inactive 2 --seed 9 --workers 2 ";

  const auto t0 = std::chrono::steady_clock::now();
  REQUIRE(run_cli(base + "--output " + dir.file("a")) == 0);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 60.0);
  CHECK(std::filesystem::exists(dir.file("a.csv")));
  CHECK(std::filesystem::exists(dir.file("a.summary.json")));

  // identical config -> byte-identical per-batch k columns
  REQUIRE(run_cli(base + "--output " + dir.file("b")) == 0);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));

  // event pipeline, any sorting, same seed -> identical k columns
  REQUIRE(run_cli(base + "--mode event --sort material-energy --output " +
                  dir.file("c")) == 0);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("c.csv")));
}

TEST_CASE("run subcommand rejects bad configurations") {
  CHECK(run_cli("run --problem pincell-600K --batches 10 --inactive 10") != 0);
  CHECK(run_cli("run --problem no-such-problem") != 0);
}

TEST_CASE("compare subcommand computes the coefficient from summaries") {
  TempDir dir;
  // Hand-written summaries exercise the subcommand without a long run.
  auto fake_summary = [&](const std::string& name, double k, double temperature) {
    std::ofstream out(dir.file(name));
    out << R"({"format": "pincellmc-summary", "version": 1, "problem": "x",
               "results": {"mean_k": )"
        << k << R"(, "sigma_k": 4e-05, "fuel_temperature": )" << temperature
        << "}}";
  };
  fake_summary("t600.json", 1.18256, 600.0);
  fake_summary("t900.json", 1.17245, 900.0);

  const std::string out_json = dir.file("alpha.json");
  REQUIRE(run_cli("compare " + dir.file("t600.json") + " " + dir.file("t900.json") +
                  " --json " + out_json) == 0);
  const std::string text = slurp(out_json);
  CHECK(text.find("-2.43") != std::string::npos);

  // reversed temperature order is an error
  CHECK(run_cli("compare " + dir.file("t900.json") + " " + dir.file("t600.json")) !=
        0);
}

TEST_CASE("xs-dump emits the documented CSV") {
  TempDir dir;
  const std::string out = dir.file("u238.csv");
  REQUIRE(run_cli("xs-dump --nuclide U238 --temperature 600 --emin 1 --emax 100 "
                  "--points 50 --output " +
                  out) == 0);
  std::ifstream csv(out);
  std::string header;
  REQUIRE(std::getline(csv, header));
  CHECK(header == "energy_ev,sigma_s,sigma_g,sigma_f");
  int rows = 0;
  double prev_e = 0.0;
  std::string line;
  while (std::getline(csv, line)) {
    ++rows;
    const double e = std::stod(line.substr(0, line.find(',')));
    CHECK(e > prev_e);
    prev_e = e;
  }
  CHECK(rows == 50);

  CHECK(run_cli("xs-dump --nuclide Pu239 --temperature 600 --output " +
                dir.file("x.csv")) != 0);
}
