#pragma once

#include <cmath>
#include <cstdint>

namespace pmc {

// 63-bit linear congruential generator. Every history owns a stream; a
// history's physics is a pure function of (seed, history index), which is
// what makes results identical across pipelines, sorting strategies and
// worker counts.
inline constexpr std::uint64_t kRngMult = 2806196910506780709ull;
inline constexpr std::uint64_t kRngInc = 1ull;
inline constexpr std::uint64_t kRngMask = 0x7fffffffffffffffull;  // mod 2^63

// Draws reserved per history stream. Exceeding it is counted, not fatal.
inline constexpr std::uint64_t kRngStride = 152917ull;

struct RngState {
  std::uint64_t state = 1;

  friend bool operator==(const RngState&, const RngState&) = default;
};

// Advances the state one step and returns a uniform variate in [0,1).
// The quotient state / 2^63 is formed in double and narrowed; the narrow
// is clamped below 1 so the half-open interval survives rounding.
inline float prn(RngState& s) {
  s.state = (kRngMult * s.state + kRngInc) & kRngMask;
  auto u = static_cast<float>(std::ldexp(static_cast<double>(s.state), -63));
  return u < 1.0f ? u : 0x1.fffffep-1f;
}

// Jumps n steps in O(log n) using the usual square-and-multiply recursion
// on the affine map x -> g*x + c. Exactly equal to n single steps.
inline RngState skip_ahead(RngState s, std::uint64_t n) {
  std::uint64_t g = kRngMult;
  std::uint64_t c = kRngInc;
  std::uint64_t g_acc = 1;
  std::uint64_t c_acc = 0;
  while (n > 0) {
    if (n & 1) {
      g_acc *= g;
      c_acc = c_acc * g + c;
    }
    c = (g + 1) * c;
    g *= g;
    n >>= 1;
  }
  s.state = (g_acc * s.state + c_acc) & kRngMask;
  return s;
}

// Stream for a global history index: the seed-derived origin advanced by
// history * kRngStride. Distinct histories get non-overlapping windows as
// long as each uses fewer than kRngStride draws.
inline RngState init_stream(std::uint64_t seed, std::uint64_t history) {
  RngState origin{seed & kRngMask};
  return skip_ahead(origin, history * kRngStride);
}

}  // namespace pmc
