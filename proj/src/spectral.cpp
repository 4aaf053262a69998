#include "frontlab/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frontlab/fft.hpp"

namespace frontlab::spectral {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

// Band-limited synthesis of the retained band on a grid of `target` points.
std::vector<Complex> synthesize(const Spectrum& s, int target) {
  Spectrum padded = resample(s, Grid(target));
  std::vector<Complex> out(static_cast<std::size_t>(target));
  fft::backward(padded.coeffs(), out);
  return out;
}

}  // namespace

// ---- Grid -------------------------------------------------------------------

Grid::Grid(int n_modes) : n_(n_modes) {
  if (n_modes < 4 || !is_power_of_two(n_modes))
    throw std::invalid_argument("grid: n_modes must be a power of two >= 4, got " +
                                std::to_string(n_modes));
}

double Grid::spacing() const { return 2.0 * std::numbers::pi / n_; }

double Grid::point(int j) const { return spacing() * j; }

std::vector<double> Grid::points() const {
  std::vector<double> x(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) x[j] = point(j);
  return x;
}

// ---- Spectrum / FrontState --------------------------------------------------

Spectrum::Spectrum(Grid grid) : grid_(grid), c_(static_cast<std::size_t>(grid.size())) {}

Spectrum::Spectrum(Grid grid, std::vector<Complex> coeffs)
    : grid_(grid), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != grid_.size())
    throw std::invalid_argument("spectrum: coefficient count does not match grid");
}

FrontState::FrontState(Grid grid, double time) : spectrum_(grid), time_(time) {}

FrontState FrontState::from_spectrum(const Spectrum& spectrum, double time) {
  const Grid& g = spectrum.grid();
  FrontState out(g, time);
  for (const Complex& c : spectrum.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw std::invalid_argument("front state: non-finite coefficient");
  for (int k = 1; k < g.k_max(); ++k) {
    const Complex avg = 0.5 * (spectrum[k] + std::conj(spectrum[-k]));
    out.spectrum_[k] = avg;
    out.spectrum_[-k] = std::conj(avg);
  }
  return out;
}

FrontState FrontState::from_values(const Grid& grid, std::span<const double> values,
                                   double time) {
  return from_spectrum(forward_transform(grid, values), time);
}

std::vector<double> FrontState::values() const { return inverse_transform(spectrum_); }

bool FrontState::is_zero() const {
  for (const Complex& c : coeffs())
    if (c != Complex{}) return false;
  return true;
}

// ---- Transforms -------------------------------------------------------------

Spectrum forward_transform(const Grid& grid, std::span<const double> values) {
  if (static_cast<int>(values.size()) != grid.size())
    throw std::invalid_argument("forward_transform: expected " +
                                std::to_string(grid.size()) + " samples, got " +
                                std::to_string(values.size()));
  std::vector<Complex> in(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]))
      throw std::invalid_argument("forward_transform: non-finite sample at index " +
                                  std::to_string(j));
    in[j] = values[j];
  }
  std::vector<Complex> out(values.size());
  fft::forward(in, out);
  const double scale = 1.0 / grid.size();
  for (Complex& c : out) c *= scale;
  return Spectrum(grid, std::move(out));
}

std::vector<double> inverse_transform(const Spectrum& spectrum) {
  std::vector<Complex> out(spectrum.coeffs().size());
  fft::backward(spectrum.coeffs(), out);
  std::vector<double> values(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) values[j] = out[j].real();
  return values;
}

Spectrum apply_multiplier(const Spectrum& spectrum, std::span<const double> symbol) {
  if (static_cast<int>(symbol.size()) != spectrum.grid().size())
    throw std::invalid_argument("apply_multiplier: symbol length " +
                                std::to_string(symbol.size()) + " does not match grid " +
                                std::to_string(spectrum.grid().size()));
  Spectrum out = spectrum;
  auto c = out.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) c[j] *= symbol[j];
  return out;
}

FrontState apply_multiplier(const FrontState& state, std::span<const double> symbol) {
  return FrontState::from_spectrum(apply_multiplier(state.spectrum(), symbol), state.time());
}

Spectrum resample(const Spectrum& spectrum, const Grid& target) {
  Spectrum out(target);
  const int band = std::min(spectrum.grid().k_max(), target.k_max());
  // Nyquist of the smaller grid has no partner, so only |k| < band is copied.
  for (int k = -band + 1; k < band; ++k) out[k] = spectrum[k];
  return out;
}

Spectrum dealiased_triple_product(const FrontState& p, const FrontState& q,
                                  const FrontState& r) {
  require_same_grid(p.grid(), q.grid(), "dealiased_triple_product");
  require_same_grid(p.grid(), r.grid(), "dealiased_triple_product");
  const Grid& g = p.grid();
  const int m = 2 * g.size();
  auto pv = synthesize(p.spectrum(), m);
  auto qv = synthesize(q.spectrum(), m);
  auto rv = synthesize(r.spectrum(), m);
  std::vector<Complex> prod(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) prod[j] = pv[j].real() * qv[j].real() * rv[j].real();
  std::vector<Complex> hat(static_cast<std::size_t>(m));
  fft::forward(prod, hat);
  for (Complex& c : hat) c /= m;
  return resample(Spectrum(Grid(m), std::move(hat)), g);
}

Spectrum derivative(const Spectrum& spectrum) {
  const Grid& g = spectrum.grid();
  Spectrum out(g);
  for (int k = -g.k_max() + 1; k < g.k_max(); ++k) out[k] = Complex(0.0, k) * spectrum[k];
  return out;
}

double mean_product(const Spectrum& f, const Spectrum& g) {
  require_same_grid(f.grid(), g.grid(), "mean_product");
  double sum = 0.0;
  auto a = f.coeffs();
  auto b = g.coeffs();
  for (std::size_t j = 0; j < a.size(); ++j) sum += (a[j] * std::conj(b[j])).real();
  return sum;
}

std::vector<double> shifted_values(const Spectrum& spectrum, double shift) {
  const Grid& g = spectrum.grid();
  Spectrum rotated(g);
  for (int k = -g.k_max() + 1; k < g.k_max(); ++k)
    rotated[k] = spectrum[k] * std::polar(1.0, k * shift);
  return inverse_transform(rotated);
}

}  // namespace frontlab::spectral
