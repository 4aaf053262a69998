//==============================================================================
// spectral.hpp
// Periodic grid bookkeeping and Fourier-coefficient containers on [0, 2π).
//
// Coefficients use the convention  c(k) = (1/N) Σ_j f(x_j) e^{-i k x_j},
// stored in FFT order: index j holds k = j for j < N/2 and k = j - N otherwise.
// The Nyquist entry k = -N/2 is kept at zero in every FrontState so that ±k
// pairs are always both present.
//==============================================================================
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace frontlab::spectral {

using Complex = std::complex<double>;

class Grid {
 public:
  /// Throws std::invalid_argument unless n is a power of two and >= 4.
  explicit Grid(int n_modes);

  int size() const { return n_; }
  int k_max() const { return n_ / 2; }
  double spacing() const;
  double point(int j) const;
  std::vector<double> points() const;

  /// Wavenumber stored at FFT-order slot j.
  int wavenumber(int j) const { return j < n_ / 2 ? j : j - n_; }
  /// FFT-order slot of wavenumber k, k in [-n/2, n/2 - 1].
  int slot(int k) const { return k >= 0 ? k : k + n_; }
  bool contains(int k) const { return k >= -n_ / 2 && k < n_ / 2; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int n_;
};

/// Raw Fourier coefficients on a grid (no zero-mean or symmetry requirement).
class Spectrum {
 public:
  explicit Spectrum(Grid grid);
  Spectrum(Grid grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return c_; }
  std::span<Complex> coeffs() { return c_; }

  Complex operator[](int k) const { return c_[grid_.slot(k)]; }
  Complex& operator[](int k) { return c_[grid_.slot(k)]; }

 private:
  Grid grid_;
  std::vector<Complex> c_;
};

/// Fourier representation of a real, zero-mean front displacement.
class FrontState {
 public:
  explicit FrontState(Grid grid, double time = 0.0);

  /// Projects onto the invariant set: zero mean, zero Nyquist entry and exact
  /// Hermitian symmetry (the average of c(k) and conj c(-k) is kept).
  /// Throws std::invalid_argument on non-finite entries.
  static FrontState from_spectrum(const Spectrum& spectrum, double time = 0.0);
  /// Samples are transformed, then projected as in from_spectrum.
  static FrontState from_values(const Grid& grid, std::span<const double> values,
                                double time = 0.0);

  const Grid& grid() const { return spectrum_.grid(); }
  const Spectrum& spectrum() const { return spectrum_; }
  std::span<const Complex> coeffs() const { return spectrum_.coeffs(); }
  Complex operator[](int k) const { return spectrum_[k]; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  std::vector<double> values() const;
  bool is_zero() const;

 private:
  Spectrum spectrum_;
  double time_;
};

// ---- Transforms -------------------------------------------------------------

/// Throws std::invalid_argument if values.size() != grid.size() or any sample
/// is not finite.
Spectrum forward_transform(const Grid& grid, std::span<const double> values);
/// Real part of the synthesis Σ_k c(k) e^{ikx_j}.
std::vector<double> inverse_transform(const Spectrum& spectrum);

/// Coefficient-wise product with a real symbol given in FFT order.
/// Throws std::invalid_argument on a length mismatch.
FrontState apply_multiplier(const FrontState& state, std::span<const double> symbol);
Spectrum apply_multiplier(const Spectrum& spectrum, std::span<const double> symbol);

/// Symbol σ(k) sampled in FFT order on the grid.
template <class Fn>
std::vector<double> sample_symbol(const Grid& grid, Fn&& sigma) {
  std::vector<double> out(static_cast<std::size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) out[j] = sigma(grid.wavenumber(j));
  return out;
}

/// Fourier coefficients of p·q·r on the retained band, computed on a grid
/// zero-padded by a factor 2 so that cubic aliasing is exactly absent.
Spectrum dealiased_triple_product(const FrontState& p, const FrontState& q,
                                  const FrontState& r);

/// Zero-pads (or truncates) a spectrum onto a grid of different size.
Spectrum resample(const Spectrum& spectrum, const Grid& target);

/// ∂x in Fourier space (Nyquist entry dropped).
Spectrum derivative(const Spectrum& spectrum);

/// (1/2π)∫ f g dx for real fields given by their spectra: Σ_k f(k) conj g(k).
double mean_product(const Spectrum& f, const Spectrum& g);

/// Evaluates Σ_k c(k) e^{ik(x_j + shift)} at every collocation point.
std::vector<double> shifted_values(const Spectrum& spectrum, double shift);

}  // namespace frontlab::spectral
