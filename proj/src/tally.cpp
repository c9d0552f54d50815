#include "pmc/tally.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include <fmt/core.h>

namespace pmc {

std::vector<float> RunResult::active_k() const {
  std::vector<float> out;
  for (const BatchResult& b : batches) {
    if (b.active) out.push_back(b.k);
  }
  return out;
}

double batch_keff(double nu_fission_tracklength_sum, double launched_weight) {
  if (!(launched_weight > 0.0)) {
    throw std::invalid_argument("batch_keff: launched weight must be > 0");
  }
  return nu_fission_tracklength_sum / launched_weight;
}

MeanStd mean_std(std::span<const float> k_values) {
  const std::size_t n = k_values.size();
  if (n < 2) {
    throw std::invalid_argument(
        fmt::format("mean_std: need at least 2 active batches, got {}", n));
  }
  double sum = 0.0;
  for (float k : k_values) sum += k;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (float k : k_values) {
    const double d = k - mean;
    ss += d * d;
  }
  const double sigma = std::sqrt(ss / (static_cast<double>(n) * (n - 1)));
  return {mean, sigma};
}

DopplerCoefficient doppler_coefficient(double k1, double sigma1, double t1,
                                       double k2, double sigma2, double t2) {
  if (!(t1 < t2)) {
    throw std::invalid_argument(
        fmt::format("doppler_coefficient: requires T1 < T2, got {} >= {}", t1, t2));
  }
  if (!(k1 > 0.0) || !(k2 > 0.0)) {
    throw std::invalid_argument("doppler_coefficient: k values must be > 0");
  }
  const double scale = 1.0e5 / (t2 - t1);
  const double alpha = (1.0 / k1 - 1.0 / k2) * scale;
  const double var = sigma1 * sigma1 / (k1 * k1 * k1 * k1) +
                     sigma2 * sigma2 / (k2 * k2 * k2 * k2);
  return {alpha, scale * std::sqrt(var)};
}

std::string format_mean_sigma(double value, double sigma) {
  int decimals = 6;
  long long digits = 0;
  if (sigma > 0.0) {
    // Two significant digits of sigma expressed in units of the last digit.
    decimals = static_cast<int>(std::floor(2.0 - std::log10(sigma)));
    decimals = std::clamp(decimals, 0, 12);
    digits = std::llround(sigma * std::pow(10.0, decimals));
    if (digits >= 100 && decimals > 0) {
      --decimals;
      digits = std::llround(sigma * std::pow(10.0, decimals));
    }
  }
  return fmt::format("{:.{}f} ({})", value, decimals, digits);
}

MeanStd parse_mean_sigma(const std::string& text) {
  const auto open = text.find('(');
  const auto close = text.find(')', open);
  if (open == std::string::npos || close == std::string::npos) {
    throw std::invalid_argument(
        fmt::format("cannot parse '{}' as 'value (sigma-digits)'", text));
  }
  const std::string value_part = text.substr(0, open);
  const std::string digit_part = text.substr(open + 1, close - open - 1);
  std::size_t pos = 0;
  const double value = std::stod(value_part, &pos);
  const long long digits = std::stoll(digit_part);
  const auto dot = value_part.find('.');
  int decimals = 0;
  if (dot != std::string::npos) {
    std::size_t end = value_part.find_last_not_of(" \t");
    decimals = static_cast<int>(end - dot);
  }
  return {value, static_cast<double>(digits) * std::pow(10.0, -decimals)};
}

}  // namespace pmc
