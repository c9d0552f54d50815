#pragma once

namespace pmc {

// Boltzmann constant in eV/K.
inline constexpr double kBoltzmann = 8.617333262e-5;

// Peak cross-section constant for s-wave neutron resonances:
// sigma_0 = kResonancePeak * g * (Gamma_n / Gamma) / E0  [barns, E0 in eV].
inline constexpr double kResonancePeak = 2.608e6;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtPi = 1.7724538509055160273;

}  // namespace pmc
