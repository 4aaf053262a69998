// Analyticity-strip estimate from the decay of Fourier coefficients.
#pragma once

#include "frontlab/spectral.hpp"

namespace frontlab::evolution {

struct StripWindow {
  double k_lo_fraction = 0.125;  // window [k_lo_fraction, k_hi_fraction]·k_max
  double k_hi_fraction = 0.5;
  double noise_floor = 1e-10;    // relative to max |φ̂|
  int min_modes = 16;
};

struct StripFit {
  double delta = 0.0;
  double power = 0.0;     // p in |φ̂| ≈ C k^{-p} e^{-δk}
  double log_c = 0.0;
  int modes_used = 0;
  bool flagged = false;   // too few usable modes, or no decay over the window
};

/// Least-squares fit of log|φ̂(k)| ≈ log C - p log k - δ k over the window,
/// skipping modes below the noise floor.
StripFit estimate_strip_width(const spectral::FrontState& state, const StripWindow& window = {});

/// δ ≤ 2·(2π/n): the strip has shrunk to the grid resolution.
bool strip_collapsed(double delta, const spectral::Grid& grid);

}  // namespace frontlab::evolution
