#include "pmc/faddeeva.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "pmc/constants.hpp"

namespace pmc {

namespace {

// Weideman's rational approximation on the upper half-plane. The number of
// terms is generous for the |z| < 6 region this path serves.
constexpr int kWeidemanTerms = 40;

struct WeidemanTable {
  double L;
  std::array<double, kWeidemanTerms> a;
};

WeidemanTable build_weideman_table() {
  WeidemanTable t;
  const int n_terms = kWeidemanTerms;
  const int m = 2 * n_terms;
  t.L = std::sqrt(n_terms / std::sqrt(2.0));
  // Cosine transform of f(theta) = exp(-u^2) (L^2 + u^2), u = L tan(theta/2),
  // sampled at theta = j*pi/m (f -> 0 as theta -> pi).
  for (int n = 1; n <= n_terms; ++n) {
    double sum = t.L * t.L;  // theta = 0 sample
    for (int j = 1; j < m; ++j) {
      const double theta = j * kPi / m;
      const double u = t.L * std::tan(0.5 * theta);
      const double f = std::exp(-u * u) * (t.L * t.L + u * u);
      sum += 2.0 * f * std::cos(n * theta);
    }
    t.a[n - 1] = sum / (2.0 * m);
  }
  return t;
}

std::complex<double> weideman_w(std::complex<double> z) {
  static const WeidemanTable table = build_weideman_table();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> lmiz = table.L - iz;
  const std::complex<double> big_z = (table.L + iz) / lmiz;
  std::complex<double> p = table.a[kWeidemanTerms - 1];
  for (int k = kWeidemanTerms - 2; k >= 0; --k) {
    p = p * big_z + table.a[k];
  }
  return 2.0 * p / (lmiz * lmiz) + (1.0 / kSqrtPi) / lmiz;
}

// Laplace continued fraction, evaluated backward with a fixed depth. Accurate
// away from the origin; depth shrinks as |z| grows.
std::complex<double> continued_fraction_w(std::complex<double> z, int depth) {
  std::complex<double> t(0.0, 0.0);
  for (int k = depth; k >= 1; --k) {
    t = (0.5 * k) / (z - t);
  }
  const std::complex<double> denom = z - t;
  return std::complex<double>(0.0, 1.0 / kSqrtPi) / denom;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  const double r2 = std::norm(z);
  if (r2 < 36.0) {
    return weideman_w(z);
  }
  int depth;
  if (r2 < 100.0) {
    depth = 24;
  } else if (r2 < 900.0) {
    depth = 14;
  } else if (r2 < 1.0e6) {
    depth = 8;
  } else {
    depth = 4;
  }
  return continued_fraction_w(z, depth);
}

PsiChi psi_chi(double xi, double x) {
  if (!(xi > 0.0)) {
    throw std::invalid_argument("psi_chi: xi must be positive");
  }
  const std::complex<double> z(0.5 * xi * x, 0.5 * xi);
  const std::complex<double> w = faddeeva_w(z);
  return {0.5 * xi * kSqrtPi * w.real(), xi * kSqrtPi * w.imag()};
}

}  // namespace pmc
