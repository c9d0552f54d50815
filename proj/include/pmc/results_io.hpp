#pragma once

#include <string>

#include "pmc/tally.hpp"

namespace pmc {

std::string batch_csv_path(const std::string& output_base);
std::string summary_path(const std::string& output_base);

// Writes <base>.csv (per-batch k, header row mandatory) and
// <base>.summary.json. Everything except the metadata block is a
// deterministic function of the run configuration.
void write_results(const RunResult& result, const std::string& output_base);

// Fields the compare subcommand needs back from a summary file.
struct SummaryInfo {
  std::string problem;
  double mean_k = 0.0;
  double sigma_k = 0.0;
  double fuel_temperature = 0.0;
};

SummaryInfo read_summary(const std::string& path);

}  // namespace pmc
