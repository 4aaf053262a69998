#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "frontlab/spectral.hpp"

using namespace frontlab::spectral;
using std::numbers::pi;

namespace {

// Direct O(N²) discrete Fourier sum with the library's normalization.
std::vector<Complex> dft_oracle(const std::vector<double>& f) {
  const int n = static_cast<int>(f.size());
  std::vector<Complex> c(f.size());
  for (int m = 0; m < n; ++m) {
    const int k = m < n / 2 ? m : m - n;
    Complex s = 0.0;
    for (int j = 0; j < n; ++j) s += f[j] * std::polar(1.0, -k * 2.0 * pi * j / n);
    c[m] = s / static_cast<double>(n);
  }
  return c;
}

FrontState random_state(const Grid& g, std::mt19937_64& rng, int band) {
  std::normal_distribution<double> nd;
  Spectrum s(g);
  for (int k = 1; k <= band; ++k) {
    const Complex c(nd(rng), nd(rng));
    s[k] = c / (1.0 + k * k);
    s[-k] = std::conj(s[k]);
  }
  return FrontState::from_spectrum(s);
}

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid rejects sizes that are not powers of two") {
  CHECK_THROWS_AS(Grid(0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2), std::invalid_argument);
  CHECK_THROWS_AS(Grid(48), std::invalid_argument);
  const Grid g(16);
  CHECK(g.k_max() == 8);
  CHECK(g.wavenumber(9) == -7);
  CHECK(g.slot(-7) == 9);
}

TEST_CASE("forward transform matches the direct Fourier sum") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {16, 64, 128}) {
    std::vector<double> f(n);
    for (auto& v : f) v = u(rng);
    const Spectrum s = forward_transform(Grid(n), f);
    CHECK(max_diff(s.coeffs(), dft_oracle(f)) < 1e-14);
  }
}

TEST_CASE("round trip is the identity for sizes 2^4 to 2^16") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int p = 4; p <= 16; ++p) {
    const Grid g(1 << p);
    std::vector<double> f(g.size());
    for (auto& v : f) v = u(rng);
    const auto back = inverse_transform(forward_transform(g, f));
    double err = 0.0;
    for (int j = 0; j < g.size(); ++j) err = std::max(err, std::abs(back[j] - f[j]));
    CHECK(err < 1e-13);
  }
}

TEST_CASE("single harmonic and constant inputs") {
  const Grid g(32);
  std::vector<double> f(32), c(32, 3.0);
  for (int j = 0; j < 32; ++j) f[j] = std::cos(g.point(j));
  const Spectrum s = forward_transform(g, f);
  for (int k = -16; k < 16; ++k)
    CHECK(std::abs(s[k] - Complex(std::abs(k) == 1 ? 0.5 : 0.0)) < 1e-15);
  const Spectrum sc = forward_transform(g, c);
  CHECK(std::abs(sc[0] - 3.0) < 1e-15);
  const FrontState st = FrontState::from_values(g, c);
  CHECK(st.is_zero());
}

TEST_CASE("non-finite samples are rejected") {
  const Grid g(8);
  std::vector<double> f(8, 0.0);
  f[3] = std::nan("");
  CHECK_THROWS_AS(forward_transform(g, f), std::invalid_argument);
  CHECK_THROWS_AS(forward_transform(g, std::vector<double>(4, 0.0)), std::invalid_argument);
}

TEST_CASE("front state projection enforces zero mean, Nyquist and symmetry") {
  const Grid g(16);
  Spectrum s(g);
  s[0] = 1.0;
  s[-8] = 2.0;
  s[3] = Complex(1.0, 2.0);
  s[-3] = Complex(3.0, 0.0);
  const FrontState st = FrontState::from_spectrum(s);
  CHECK(st[0] == Complex(0.0));
  CHECK(st[-8] == Complex(0.0));
  CHECK(st[3] == std::conj(st[-3]));
  CHECK(std::abs(st[3] - Complex(2.0, 1.0)) < 1e-15);
}

TEST_CASE("multiplier examples") {
  const Grid g(32);
  std::vector<double> f(32);
  for (int j = 0; j < 32; ++j) f[j] = std::cos(g.point(j));
  const FrontState st = FrontState::from_values(g, f);

  const auto one = sample_symbol(g, [](int) { return 1.0; });
  CHECK(max_diff(apply_multiplier(st, one).coeffs(), st.coeffs()) == 0.0);

  const auto half_abs = sample_symbol(g, [](int k) { return 0.5 * std::abs(k); });
  const auto out = apply_multiplier(st, half_abs).values();
  for (int j = 0; j < 32; ++j) CHECK(out[j] == doctest::Approx(0.5 * f[j]).epsilon(1e-14));

  std::mt19937_64 rng(3);
  const FrontState r = random_state(g, rng, 15);
  const auto abs_k = sample_symbol(g, [](int k) { return double(std::abs(k)); });
  const auto k2 = sample_symbol(g, [](int k) { return double(k) * k; });
  const FrontState twice = apply_multiplier(apply_multiplier(r, abs_k), abs_k);
  CHECK(max_diff(twice.coeffs(), apply_multiplier(r, k2).coeffs()) < 1e-14);
  for (int k = 1; k < 16; ++k) CHECK(twice[k] == std::conj(twice[-k]));

  CHECK_THROWS_AS(apply_multiplier(st, std::vector<double>(8, 1.0)), std::invalid_argument);
}

TEST_CASE("triple product of cos x") {
  const Grid g(16);
  std::vector<double> f(16);
  for (int j = 0; j < 16; ++j) f[j] = std::cos(g.point(j));
  const FrontState c = FrontState::from_values(g, f);
  const Spectrum p = dealiased_triple_product(c, c, c);
  for (int k = -8; k < 8; ++k) {
    const double expect = std::abs(k) == 1 ? 3.0 / 8.0 : std::abs(k) == 3 ? 1.0 / 8.0 : 0.0;
    CHECK(std::abs(p[k] - expect) < 1e-14);
  }
  const Spectrum z = dealiased_triple_product(c, FrontState(g), c);
  for (auto v : z.coeffs()) CHECK(v == Complex(0.0));
}

TEST_CASE("triple product matches the exact convolution up to n = 64") {
  std::mt19937_64 rng(5);
  for (int n : {8, 16, 32, 64}) {
    const Grid g(n);
    const FrontState p = random_state(g, rng, n / 2 - 1);
    const FrontState q = random_state(g, rng, n / 2 - 1);
    const FrontState r = random_state(g, rng, n / 2 - 1);
    const int km = n / 2;
    Spectrum oracle(g);
    for (int k1 = -km + 1; k1 < km; ++k1)
      for (int k2 = -km + 1; k2 < km; ++k2)
        for (int k3 = -km + 1; k3 < km; ++k3) {
          const int k = k1 + k2 + k3;
          if (k > -km && k < km) oracle[k] += p[k1] * q[k2] * r[k3];  // Nyquist stays zero
        }
    const Spectrum out = dealiased_triple_product(p, q, r);
    CHECK(max_diff(out.coeffs(), oracle.coeffs()) < 1e-12);
  }
}

TEST_CASE("grid mismatch is rejected") {
  const FrontState a(Grid(8)), b(Grid(16));
  CHECK_THROWS_AS(dealiased_triple_product(a, b, a), std::invalid_argument);
}

TEST_CASE("derivative, resample, shift and mean product") {
  const Grid g(32);
  std::vector<double> f(32);
  for (int j = 0; j < 32; ++j) f[j] = std::sin(2.0 * g.point(j));
  const FrontState s = FrontState::from_values(g, f);
  const auto d = inverse_transform(derivative(s.spectrum()));
  for (int j = 0; j < 32; ++j) CHECK(d[j] == doctest::Approx(2.0 * std::cos(2.0 * g.point(j))));

  const Spectrum up = resample(s.spectrum(), Grid(64));
  CHECK(std::abs(up[2] - s[2]) == 0.0);
  CHECK(std::abs(up[-2] - s[-2]) == 0.0);

  const auto shifted = shifted_values(s.spectrum(), 0.3);
  for (int j = 0; j < 32; ++j)
    CHECK(shifted[j] == doctest::Approx(std::sin(2.0 * (g.point(j) + 0.3))).epsilon(1e-13));

  // (1/2π)∫ sin² 2x dx = 1/2
  CHECK(mean_product(s.spectrum(), s.spectrum()) == doctest::Approx(0.5).epsilon(1e-14));
}
