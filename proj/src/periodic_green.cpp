#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "frontlab/model.hpp"
#include "frontlab/special.hpp"

namespace frontlab::model {
namespace {

using Cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_period(double x) {
  double r = std::remainder(x, kTwoPi);  // [-π, π]
  if (r == -kPi) r = kPi;
  return r;
}

bool singular(double x, double y) { return y == 0.0 && reduce_period(x) == 0.0; }

// binom(-β/2, j) for j = 0..m
std::vector<double> binomial_row(double beta, int m) {
  std::vector<double> c(static_cast<std::size_t>(m + 1));
  c[0] = 1.0;
  const double e = -0.5 * beta;
  for (int j = 1; j <= m; ++j) c[j] = c[j - 1] * (e - (j - 1)) / j;
  return c;
}

// D_m(z) = Σ_{j+l=m} C_j C_l z^j conj(z)^l, real by symmetry.
double pair_coefficient(const std::vector<double>& c, const std::vector<Cplx>& zp, int m) {
  Cplx s{};
  for (int j = 0; j <= m; ++j) s += c[j] * c[m - j] * zp[j] * std::conj(zp[m - j]);
  return s.real();
}

double tail_exponent(const AlphaFamily& a, int m) {
  return a.regime() == Regime::Euler ? m : (2.0 - a.alpha()) + m;
}

}  // namespace

CylinderGreen::CylinderGreen(AlphaFamily a, int n_sum, double tolerance, int max_tail_terms)
    : family_(a), n_sum_(n_sum), tolerance_(tolerance), max_terms_(max_tail_terms) {
  if (n_sum < 1) throw std::invalid_argument("CylinderGreen: n_sum must be >= 1");
  if (max_tail_terms < 2) throw std::invalid_argument("CylinderGreen: need >= 2 tail terms");
  tail_.assign(static_cast<std::size_t>(max_terms_ + 1), 0.0);
  for (int m = 2; m <= max_terms_; m += 2) {
    const double s = tail_exponent(family_, m);
    tail_[m] = std::pow(kTwoPi, -s) * special::zeta_tail(s, n_sum_ + 1);
  }
}

// Σ_{n>N} pair(n) with pair(n) = G(|z+2πn|) + G(|z-2πn|) - 2G(2πn).
double CylinderGreen::pair_tail(double x, double y) const {
  const Cplx z(x, y);
  std::vector<Cplx> zp(static_cast<std::size_t>(max_terms_ + 1));
  zp[0] = 1.0;
  for (int j = 1; j <= max_terms_; ++j) zp[j] = zp[j - 1] * z;
  double sum = 0.0;
  if (family_.regime() == Regime::Euler) {
    for (int m = 2; m <= max_terms_; m += 2) {
      const double term = zp[m].real() / (m / 2) * tail_[m] / kTwoPi;
      sum += term;
      if (std::abs(term) < tolerance_ * (1.0 + std::abs(sum))) break;
    }
    return sum;
  }
  const auto c = binomial_row(2.0 - family_.alpha(), max_terms_);
  for (int m = 2; m <= max_terms_; m += 2) {
    const double term = 2.0 * pair_coefficient(c, zp, m) * tail_[m];
    sum += term;
    if (std::abs(term) < tolerance_ * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double CylinderGreen::pair_tail_drop(double x, double y) const {
  const Cplx z(x, y);
  std::vector<Cplx> zp(static_cast<std::size_t>(max_terms_ + 1));
  std::vector<double> xp(static_cast<std::size_t>(max_terms_ + 1));
  zp[0] = 1.0;
  xp[0] = 1.0;
  for (int j = 1; j <= max_terms_; ++j) {
    zp[j] = zp[j - 1] * z;
    xp[j] = xp[j - 1] * x;
  }
  double sum = 0.0;
  if (family_.regime() == Regime::Euler) {
    for (int m = 2; m <= max_terms_; m += 2) {
      const double term = (xp[m] - zp[m].real()) / (m / 2) * tail_[m] / kTwoPi;
      sum += term;
      if (std::abs(term) < tolerance_ * (1.0 + std::abs(sum))) break;
    }
    return sum;
  }
  const auto c = binomial_row(2.0 - family_.alpha(), max_terms_);
  for (int m = 2; m <= max_terms_; m += 2) {
    double cx = 0.0;
    for (int j = 0; j <= m; ++j) cx += c[j] * c[m - j];
    const double term = 2.0 * (cx * xp[m] - pair_coefficient(c, zp, m)) * tail_[m];
    sum += term;
    if (std::abs(term) < tolerance_ * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

double CylinderGreen::value(double x, double y) const {
  if (singular(x, y))
    throw std::domain_error("CylinderGreen: singular point (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  const double xr = reduce_period(x);
  if (std::hypot(xr, y) >= 0.5 * kTwoPi * (n_sum_ + 1))
    throw std::domain_error("CylinderGreen: |y| = " + std::to_string(y) +
                            " exceeds the convergence range of the tail expansion");
  const double r = std::hypot(xr, y);
  double sum = 0.0;
  if (family_.regime() == Regime::Euler) {
    const Cplx z2 = Cplx(xr, y) * Cplx(xr, y);
    sum = -std::log(r) / kTwoPi;
    for (int n = 1; n <= n_sum_; ++n) {
      const double rn = kTwoPi * n;
      sum -= std::log(std::abs(1.0 - z2 / (rn * rn))) / kTwoPi;
    }
  } else {
    const double beta = 2.0 - family_.alpha();
    sum = std::pow(r, -beta);
    for (int n = 1; n <= n_sum_; ++n) {
      const double rn = kTwoPi * n;
      sum += std::pow(std::hypot(xr + rn, y), -beta) + std::pow(std::hypot(xr - rn, y), -beta) -
             2.0 * std::pow(rn, -beta);
    }
  }
  return sum + pair_tail(xr, y);
}

double CylinderGreen::drop(double x, double y) const {
  const double xr = reduce_period(x);
  if (xr == 0.0) throw std::domain_error("CylinderGreen::drop: x ≡ 0 (mod 2π)");
  if (std::hypot(xr, y) >= 0.5 * kTwoPi * (n_sum_ + 1))
    throw std::domain_error("CylinderGreen::drop: |y| = " + std::to_string(y) +
                            " exceeds the convergence range of the tail expansion");
  const double y2 = y * y;
  double sum = 0.0;
  if (family_.regime() == Regime::Euler) {
    for (int n = -n_sum_; n <= n_sum_; ++n) {
      const double xn = xr + kTwoPi * n;
      sum += std::log1p(y2 / (xn * xn));
    }
    sum /= 2.0 * kTwoPi;
  } else {
    const double beta = 2.0 - family_.alpha();
    for (int n = -n_sum_; n <= n_sum_; ++n) {
      const double xn = xr + kTwoPi * n;
      sum -= std::pow(std::abs(xn), -beta) * std::expm1(-0.5 * beta * std::log1p(y2 / (xn * xn)));
    }
  }
  return sum + pair_tail_drop(xr, y);
}

double periodic_green_Gp(double x, double y, const AlphaFamily& a) {
  if (singular(x, y))
    throw std::domain_error("periodic_green_Gp: singular point (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  if (a.regime() != Regime::Euler) {
    const double ay = std::abs(y);
    // Enough explicit pairs that the tail expansion ratio stays below ~0.1.
    const int n_sum = std::max(8, static_cast<int>(std::ceil((kPi + ay) / (0.2 * kPi))));
    return CylinderGreen(a, n_sum).value(x, y);
  }
  const double s = std::sin(0.5 * x);
  const double ay = std::abs(y);
  if (ay < 30.0) {
    const double sh = std::sinh(0.5 * y);
    return -std::log(s * s + sh * sh) / (4.0 * kPi);
  }
  // sinh²(y/2) = e^{|y|}(1 - e^{-|y|})²/4
  const double log_sh2 = ay + 2.0 * std::log1p(-std::exp(-ay)) - 2.0 * std::numbers::ln2;
  return -(log_sh2 + std::log1p(s * s * std::exp(-log_sh2))) / (4.0 * kPi);
}

double euler_periodic_drop(double x, double y) {
  const double s = std::sin(0.5 * x);
  if (s == 0.0) throw std::domain_error("euler_periodic_drop: x ≡ 0 (mod 2π)");
  const double sh = std::sinh(0.5 * y);
  return std::log1p((sh / s) * (sh / s)) / (4.0 * kPi);
}

}  // namespace frontlab::model
