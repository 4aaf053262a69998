#include "frontlab/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace frontlab::special {
namespace {

// B_{2j} / (2j)!, j = 1..10
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
};

}  // namespace

double zeta_tail(double s, long a, long direct, int corrections) {
  if (!(s > 1.0)) throw std::domain_error("zeta_tail: requires s > 1");
  if (a < 1) throw std::domain_error("zeta_tail: requires a >= 1");
  if (corrections < 0 || corrections > static_cast<int>(kBernoulliOverFactorial.size()))
    throw std::domain_error("zeta_tail: unsupported correction count");
  const long cut = a + direct;
  double sum = 0.0;
  for (long n = cut - 1; n >= a; --n) sum += std::pow(static_cast<double>(n), -s);
  const double kk = static_cast<double>(cut);
  double rem = std::pow(kk, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(kk, -s);
  // rising factorial (s)_{2j-1} times K^{-s-2j+1}
  double rising = s;
  double power = std::pow(kk, -s - 1.0);
  for (int j = 0; j < corrections; ++j) {
    rem += kBernoulliOverFactorial[j] * rising * power;
    rising *= (s + 2 * j + 1) * (s + 2 * j + 2);
    power /= kk * kk;
  }
  return sum + rem;
}

double riemann_zeta(double s) { return zeta_tail(s, 1, 10000, 10); }

}  // namespace frontlab::special
