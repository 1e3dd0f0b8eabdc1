#pragma once

namespace iv {

// Shared comparison tolerances. These are part of the library contract:
// membership tests, tie detection and mass validation all quantize at them.
inline constexpr double tau_cmp = 1e-9;     // CDF and quantile comparisons
inline constexpr double tau_mass = 1e-9;    // probability normalization slack
inline constexpr double tau_argmin = 1e-9;  // expected-score tie window
inline constexpr double tau_len = 1e-6;     // interval length comparisons

}  // namespace iv
