#!/usr/bin/env python3
"""Regenerates data/nuclides.json, the built-in 4-nuclide library.

Smooth backgrounds are simple closed forms sampled on a log grid: capture and
fission backgrounds are exactly 1/v (which Doppler broadening maps to itself),
elastic backgrounds are flat with a gentle high-energy rolloff. Resonance
parameters sit in the resonance list, not in the tables.
"""

import argparse
import json
import math

E_MIN = 1.0e-5   # eV
E_MAX = 3.0e7    # eV
POINTS_PER_DECADE = 32
E_THERMAL = 0.0253  # eV, reference point for 1/v magnitudes


def log_grid():
    decades = math.log10(E_MAX / E_MIN)
    n = int(round(decades * POINTS_PER_DECADE)) + 1
    return [E_MIN * 10.0 ** (i * decades / (n - 1)) for i in range(n)]


def one_over_v(sigma_thermal):
    return lambda e: sigma_thermal * math.sqrt(E_THERMAL / e)


def flat_with_rolloff(sigma0, e_roll):
    return lambda e: sigma0 / (1.0 + e / e_roll)


def make_nuclide(name, mass_ratio, sig_s, sig_g, sig_f, nu, resonances):
    grid = log_grid()
    return {
        "name": name,
        "A": mass_ratio,
        "nu": nu,
        "grid": [float(f"{e:.9g}") for e in grid],
        "sigma_s": [float(f"{sig_s(e):.9g}") for e in grid],
        "sigma_g": [float(f"{sig_g(e):.9g}") for e in grid],
        "sigma_f": [float(f"{sig_f(e):.9g}") for e in grid],
        "resonances": resonances,
    }


def build_library():
    zero = lambda e: 0.0
    # s-wave capture resonances of a U238-like absorber (g = 1).
    u238_resonances = [
        {"E0": 6.674, "gamma_n": 1.493e-3, "gamma_g": 0.023, "gamma_f": 0.0, "g": 1.0},
        {"E0": 20.872, "gamma_n": 1.026e-2, "gamma_g": 0.023, "gamma_f": 0.0, "g": 1.0},
        {"E0": 36.682, "gamma_n": 3.354e-2, "gamma_g": 0.023, "gamma_f": 0.0, "g": 1.0},
    ]
    nuclides = [
        make_nuclide("H1", 0.9992,
                     flat_with_rolloff(20.4, 4.0e5),
                     one_over_v(0.332), zero, 0.0, []),
        make_nuclide("O16", 15.858,
                     flat_with_rolloff(3.9, 8.0e6),
                     one_over_v(1.9e-4), zero, 0.0, []),
        make_nuclide("U235", 233.0248,
                     flat_with_rolloff(15.0, 1.0e7),
                     one_over_v(98.8), one_over_v(585.0), 2.43, []),
        make_nuclide("U238", 236.0058,
                     flat_with_rolloff(9.0, 1.0e7),
                     one_over_v(2.68), zero, 0.0, u238_resonances),
    ]
    return {
        "format": "pincellmc-nuclide-library",
        "version": 1,
        "nuclides": nuclides,
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output", default="data/nuclides.json")
    args = parser.parse_args()
    with open(args.output, "w") as f:
        json.dump(build_library(), f, indent=1)
        f.write("\n")
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
