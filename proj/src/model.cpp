#include "frontlab/model.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace frontlab::model {
namespace {

constexpr double kPi = std::numbers::pi;

void require_nonzero(double x, const char* what) {
  if (x == 0.0) throw std::domain_error(std::string(what) + ": x = 0 is outside the domain");
}

// ∫₀^u g(t) dt for odd-extended integrands, adaptive Gauss–Kronrod.
template <class Fn>
double integrate_from_zero(Fn&& g, double u) {
  if (u == 0.0) return 0.0;
  const double sign = u < 0.0 ? -1.0 : 1.0;
  double err = 0.0;
  const double val = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      g, 0.0, std::abs(u), 12, 1e-13, &err);
  return sign * val;
}

// atan(u) - u, accurate for small u
double atan_minus_identity(double u) {
  if (std::abs(u) > 0.1) return std::atan(u) - u;
  const double u2 = u * u;
  double term = u * u2;
  double sum = 0.0;
  for (int n = 1; n < 12; ++n) {
    sum += (n % 2 == 1 ? -1.0 : 1.0) * term / (2 * n + 1);
    term *= u2;
  }
  return sum;
}

// u - asinh(u), accurate for small u
double identity_minus_asinh(double u) {
  if (std::abs(u) > 0.1) return u - std::asinh(u);
  // asinh u = Σ (-1)^n (2n)! / (4^n (n!)² (2n+1)) u^{2n+1}
  const double u2 = u * u;
  double coeff = 1.0;  // (2n)!/(4^n (n!)^2)
  double power = u;
  double sum = 0.0;
  for (int n = 1; n < 12; ++n) {
    coeff *= (2.0 * n - 1.0) / (2.0 * n);
    power *= u2;
    sum -= (n % 2 == 1 ? -1.0 : 1.0) * coeff * power / (2 * n + 1);
  }
  return sum;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Euler: return "euler";
    case Regime::Sqg: return "sqg";
    case Regime::Gsqg: return "gsqg";
  }
  return "unknown";
}

AlphaFamily AlphaFamily::from_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::domain_error("alpha must lie in (0, 2], got " + std::to_string(alpha));
  if (alpha == 2.0) return AlphaFamily(Regime::Euler, alpha, 0.0, 0.0);
  if (alpha == 1.0) return AlphaFamily(Regime::Sqg, alpha, 0.0, 0.0);
  return AlphaFamily(Regime::Gsqg, alpha, constant_b_alpha(alpha), constant_c_alpha(alpha));
}

// ---- Green's function and contour kernels -----------------------------------

double green_G(double x, const AlphaFamily& a) {
  require_nonzero(x, "green_G");
  if (a.regime() == Regime::Euler) return -std::log(std::abs(x)) / (2.0 * kPi);
  return std::pow(std::abs(x), a.alpha() - 2.0);
}

double kernel_F(double x, double y, const AlphaFamily& a) {
  require_nonzero(x, "kernel_F");
  const double ax = std::abs(x);
  switch (a.regime()) {
    case Regime::Euler:
      return -(y * 0.5 * std::log(x * x + y * y) + x * std::atan(y / x) - y) / (2.0 * kPi);
    case Regime::Sqg:
      return std::asinh(y / ax);
    case Regime::Gsqg: {
      // F = |x|^{α-1} ∫₀^{y/|x|} (1+t²)^{(α-2)/2} dt
      const double e = 0.5 * (a.alpha() - 2.0);
      auto g = [e](double t) { return std::pow(1.0 + t * t, e); };
      return std::pow(ax, a.alpha() - 1.0) * integrate_from_zero(g, y / ax);
    }
  }
  return 0.0;
}

double kernel_K(double x, double y, const AlphaFamily& a) {
  require_nonzero(x, "kernel_K");
  const double ax = std::abs(x);
  const double u = y / ax;
  switch (a.regime()) {
    case Regime::Euler:
      // (1/2π){ y log(√(x²+y²)/|x|) + x atan(y/x) - y }
      return (0.5 * y * std::log1p(u * u) + ax * atan_minus_identity(u)) / (2.0 * kPi);
    case Regime::Sqg:
      return identity_minus_asinh(u);
    case Regime::Gsqg: {
      // K = |x|^{α-1} ∫₀^{u} [1 - (1+t²)^{(α-2)/2}] dt
      const double e = 0.5 * (a.alpha() - 2.0);
      auto g = [e](double t) { return -std::expm1(e * std::log1p(t * t)); };
      return std::pow(ax, a.alpha() - 1.0) * integrate_from_zero(g, u);
    }
  }
  return 0.0;
}

// ---- Constants ----------------------------------------------------------------

namespace {

void require_gsqg_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0)
    throw std::domain_error(std::string(what) + ": alpha must lie in (0,1)∪(1,2), got " +
                            std::to_string(alpha));
}

}  // namespace

double constant_b_alpha(double alpha) {
  require_gsqg_alpha(alpha, "constant_b_alpha");
  return 2.0 * std::sin(0.5 * kPi * alpha) * std::tgamma(alpha - 1.0);
}

double c_alpha_closed_form(double alpha) {
  require_gsqg_alpha(alpha, "c_alpha_closed_form");
  return 2.0 * (2.0 - alpha) * std::sin(0.5 * kPi * alpha) * std::tgamma(alpha - 3.0);
}

double c_alpha_quadrature(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::domain_error("c_alpha_quadrature: alpha must lie in (0,1), got " +
                            std::to_string(alpha));
  // [0,1]: 1 - η²/2 - cos η = -Σ_{n≥2} (-1)^n η^{2n}/(2n)!, integrated termwise.
  double head = 0.0;
  double fact = 24.0;  // (2n)! for n = 2
  for (int n = 2; n < 30; ++n) {
    const double term = (n % 2 == 0 ? -1.0 : 1.0) / (fact * (2.0 * n + alpha - 3.0));
    head += term;
    if (std::abs(term) < 1e-20) break;
    fact *= (2.0 * n + 1.0) * (2.0 * n + 2.0);
  }
  // [1,∞): algebraic part in closed form.
  const double algebraic = 1.0 / (3.0 - alpha) - 0.5 / (1.0 - alpha);
  // ∫₁^∞ cos η η^{-p} dη, p = 4-α, after two integrations by parts:
  //   -sin 1 + p cos 1 - p(p+1) ∫₁^∞ cos η η^{-(p+2)} dη
  const double p = 4.0 - alpha;
  const double q = p + 2.0;
  auto f = [q](double eta) { return std::cos(eta) * std::pow(eta, -q); };
  using boost::math::quadrature::gauss;
  double osc = gauss<double, 30>::integrate(f, 1.0, 0.5 * kPi);
  // Half-periods between zeros of cos form an alternating series.
  for (int j = 0; j < 200000; ++j) {
    const double lo = 0.5 * kPi + j * kPi;
    const double piece = gauss<double, 30>::integrate(f, lo, lo + kPi);
    osc += piece;
    if (std::abs(piece) < 1e-19) break;
  }
  const double cos_tail = -std::sin(1.0) + p * std::cos(1.0) - p * (p + 1.0) * osc;
  return 2.0 * (2.0 - alpha) * (head + algebraic - cos_tail);
}

double constant_c_alpha(double alpha) {
  require_gsqg_alpha(alpha, "constant_c_alpha");
  if (alpha > 1.0) return constant_b_alpha(alpha) / (3.0 - alpha);
  const double quad = c_alpha_quadrature(alpha);
  const double closed = c_alpha_closed_form(alpha);
  if (std::abs(quad - closed) > 1e-8)
    throw std::runtime_error("constant_c_alpha: quadrature " + std::to_string(quad) +
                             " disagrees with Gamma continuation " + std::to_string(closed));
  return quad;
}

// ---- Symbols ------------------------------------------------------------------

double symbol_b(double k, const AlphaFamily& a) {
  if (k == 0.0) throw std::domain_error("symbol_b: k = 0 is outside the domain");
  const double ak = std::abs(k);
  switch (a.regime()) {
    case Regime::Euler: return 0.5 / ak;
    case Regime::Sqg: return -2.0 * std::log(ak);
    case Regime::Gsqg: return a.b_alpha() * std::pow(ak, 1.0 - a.alpha());
  }
  return 0.0;
}

double symbol_a(double k, const AlphaFamily& a) {
  if (k == 0.0) return 0.0;
  const double ak = std::abs(k);
  switch (a.regime()) {
    case Regime::Euler: return 0.5 * ak;
    case Regime::Sqg: return -k * k * std::log(ak);
    case Regime::Gsqg: return a.c_alpha() * std::pow(ak, 3.0 - a.alpha());
  }
  return 0.0;
}

double kernel_T(double k2, double k3, double k4, const AlphaFamily& a) {
  return symbol_a(k2, a) + symbol_a(k3, a) + symbol_a(k4, a) + symbol_a(k2 + k3 + k4, a) -
         symbol_a(k2 + k3, a) - symbol_a(k2 + k4, a) - symbol_a(k3 + k4, a);
}

double kernel_S(const KernelQuery& q, const AlphaFamily& a) {
  const auto& k = q.k;
  double singles = 0.0;
  double pairs = 0.0;
  for (int i = 0; i < 4; ++i) {
    singles += symbol_a(k[i], a);
    for (int j = i + 1; j < 4; ++j) pairs += symbol_a(k[i] + k[j], a);
  }
  return singles - 0.5 * pairs;
}

}  // namespace frontlab::model
