#include "frontlab/strip.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace frontlab::evolution {
namespace {

// Solves the 3×3 system m·x = r by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> r) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int i = c + 1; i < 3; ++i)
      if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
    std::swap(m[c], m[piv]);
    std::swap(r[c], r[piv]);
    if (m[c][c] == 0.0) throw std::runtime_error("strip fit: singular normal equations");
    for (int i = c + 1; i < 3; ++i) {
      const double f = m[i][c] / m[c][c];
      for (int j = c; j < 3; ++j) m[i][j] -= f * m[c][j];
      r[i] -= f * r[c];
    }
  }
  std::array<double, 3> x{};
  for (int i = 2; i >= 0; --i) {
    double s = r[i];
    for (int j = i + 1; j < 3; ++j) s -= m[i][j] * x[j];
    x[i] = s / m[i][i];
  }
  return x;
}

}  // namespace

StripFit estimate_strip_width(const spectral::FrontState& state, const StripWindow& window) {
  const auto& g = state.grid();
  const int kmax = g.k_max();
  double peak = 0.0;
  for (int k = 1; k < kmax; ++k) peak = std::max(peak, std::abs(state[k]));

  StripFit fit;
  if (peak == 0.0) {
    fit.flagged = true;
    return fit;
  }
  const int lo = std::max(1, static_cast<int>(std::ceil(window.k_lo_fraction * kmax)));
  const int hi = std::min(kmax - 1, static_cast<int>(std::floor(window.k_hi_fraction * kmax)));
  const double floor = window.noise_floor * peak;

  // Columns (1, -log k, -k), k scaled by hi for conditioning.
  std::array<std::array<double, 3>, 3> m{};
  std::array<double, 3> r{};
  for (int k = lo; k <= hi; ++k) {
    const double mag = std::abs(state[k]);
    if (!(mag > floor)) continue;
    const double kk = static_cast<double>(k) / hi;
    const std::array<double, 3> row{1.0, -std::log(kk), -kk};
    const double y = std::log(mag);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
      r[i] += row[i] * y;
    }
    ++fit.modes_used;
  }
  if (fit.modes_used < window.min_modes) {
    fit.flagged = true;
    return fit;
  }
  const auto x = solve3(m, r);
  fit.power = x[1];
  fit.delta = x[2] / hi;
  // A flat or rising tail is a roundoff plateau, not a decay rate.
  if (fit.delta <= 0.0) {
    fit.delta = 0.0;
    fit.flagged = true;
  }
  fit.log_c = x[0] + x[1] * std::log(static_cast<double>(hi));
  return fit;
}

bool strip_collapsed(double delta, const spectral::Grid& grid) {
  return delta <= 2.0 * (2.0 * std::numbers::pi / grid.size());
}

}  // namespace frontlab::evolution
