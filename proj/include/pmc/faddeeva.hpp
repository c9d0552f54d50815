#pragma once

#include <complex>

namespace pmc {

// Faddeeva function w(z) = exp(-z^2) * erfc(-i*z) for Im(z) >= 0.
// Relative error <= 1e-6 over |z| <= 1e4 (in practice much better); the
// asymptotic continued fraction takes over well before that bound.
std::complex<double> faddeeva_w(std::complex<double> z);

struct PsiChi {
  double psi;
  double chi;
};

// Doppler line-shape functions,
//   psi = (xi*sqrt(pi)/2) * Re w(z),  chi = xi*sqrt(pi) * Im w(z),
// with z = (x + i) * xi / 2. Requires xi > 0.
PsiChi psi_chi(double xi, double x);

}  // namespace pmc
