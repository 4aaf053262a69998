#include "frontlab/analysis.hpp"

#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "frontlab/special.hpp"

namespace frontlab::analysis {

using model::Regime;

double shear_profile(double y, const model::AlphaFamily& a, double theta0) {
  const double ay = std::abs(y);
  if (a.regime() == Regime::Euler) return theta0 * ay;
  if (ay == 0.0 && a.alpha() <= 1.0)
    throw std::domain_error("shear_profile: singular at y = 0 for alpha <= 1");
  if (a.regime() == Regime::Sqg) return theta0 * std::log(ay);
  return theta0 * std::pow(ay, a.alpha() - 1.0);
}

double dispersion_omega0(double k, const model::AlphaFamily& a) {
  if (k == 0.0) throw std::domain_error("dispersion_omega0: k = 0");
  return k * model::symbol_b(k, a);
}

StokesResult stokes_expansion(int k, std::complex<double> psi1, const model::AlphaFamily& a) {
  if (k < 1) throw std::domain_error("stokes_expansion: k must be >= 1");
  StokesResult r;
  const auto A = [&](double q) { return model::symbol_a(q, a); };
  r.omega0 = dispersion_omega0(k, a);
  r.sigma2 = 0.5 * k * (4.0 * A(k) - A(2.0 * k));
  r.omega2 = r.sigma2 * std::norm(psi1);
  const double b1 = model::symbol_b(k, a);
  const double b3 = model::symbol_b(3.0 * k, a);
  const double denom = b1 - b3;
  if (std::abs(denom) <= 1e-14 * std::max(std::abs(b1), std::abs(b3)) || denom == 0.0)
    throw ResonanceError("stokes_expansion: b(k) = b(3k) at k = " + std::to_string(k));
  r.psi3_ratio = 0.5 * (A(k) - A(2.0 * k) + A(3.0 * k) / 3.0) / denom;
  return r;
}

NlsResult nls_coefficients(double k, const model::AlphaFamily& a, double fd_step) {
  if (a.regime() == Regime::Euler)
    throw std::domain_error("nls_coefficients: Euler fronts are nondispersive");
  if (!(k > 0.0)) throw std::domain_error("nls_coefficients: k must be > 0");
  NlsResult r;
  if (a.regime() == Regime::Sqg) {
    r.omega0_pp = -2.0 / k;
  } else {
    const double al = a.alpha();
    r.omega0_pp = a.b_alpha() * (2.0 - al) * (1.0 - al) * std::pow(k, -al);
  }
  const double h = fd_step * std::max(1.0, k);
  r.omega0_pp_fd = (dispersion_omega0(k + h, a) - 2.0 * dispersion_omega0(k, a) +
                    dispersion_omega0(k - h, a)) / (h * h);
  r.sigma2 = 0.5 * k * (4.0 * model::symbol_a(k, a) - model::symbol_a(2.0 * k, a));
  r.focusing = r.omega0_pp * r.sigma2 < 0.0;
  return r;
}

double c0_constant(double s) {
  if (!(s > 0.0)) throw std::domain_error("c0_constant: s must be > 0");
  return std::pow(3.0, s + 1.0) - std::pow(3.0, 1.0 - s);
}

double s0_root(double tol) {
  auto g = [](double s) { return c0_constant(s) - 2.0 * (2.0 * s + 1.0); };
  double lo = 1e-6, hi = 1.0;  // g(lo) < 0 < g(hi)
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double zeta_Z(double s) {
  if (!(s > 0.5)) throw std::domain_error("zeta_Z: s must be > 1/2, got " + std::to_string(s));
  return std::sqrt(2.0 * special::riemann_zeta(2.0 * s));
}

double C3_constant(double s) {
  if (!(s > 2.5)) throw std::domain_error("C3_constant: s must be > 5/2, got " + std::to_string(s));
  return c0_constant(s) * 5.0 * zeta_Z(s - 1.0) * zeta_Z(s - 2.0);
}

C4Result C4_infimum() {
  // Coarse scan in log(s - 5/2), then golden section on the bracketing cell.
  const double lo = 2.5, hi = 60.0;
  const int n = 400;
  auto at = [&](int i) { return lo + std::exp(std::log(1e-6) + (std::log(hi - lo) - std::log(1e-6)) * i / n); };
  int best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double v = C3_constant(at(i));
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  double a = at(std::max(0, best - 1));
  double b = at(std::min(n, best + 1));
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = C3_constant(c), fd = C3_constant(d);
  while (b - a > 1e-10) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = C3_constant(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = C3_constant(d);
    }
  }
  const double s = 0.5 * (a + b);
  return {C3_constant(s), s};
}

TauResult tau_existence(double tau0, double E0, double M, double horizon, double tol) {
  if (!(tau0 > 2.5)) throw std::domain_error("tau_existence: tau0 must be > 5/2");
  if (!(E0 >= 0.0) || !(M > 1.0))
    throw std::domain_error("tau_existence: need E0 >= 0 and M > 1");
  const double stop = 2.5 + 1e-6;
  TauResult r;
  r.curve.emplace_back(0.0, tau0);
  const double rate = M * E0;
  if (rate == 0.0 || tau0 <= stop) {
    r.t_star = tau0 <= stop ? 0.0 : std::numeric_limits<double>::infinity();
    r.beyond_horizon = rate == 0.0;
    return r;
  }

  using State = std::array<double, 1>;
  namespace ode = boost::numeric::odeint;
  auto rhs = [](const State& x, State& dx, double) {
    dx[0] = -C3_constant(std::max(x[0], 2.5 + 1e-12));
  };
  auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
  State x{tau0};
  // Initial step from the local slope.
  stepper.initialize(x, 0.0, std::min(1e-3, 0.01 * (tau0 - stop) / C3_constant(tau0)));

  double s_star = 0.0;
  while (true) {
    if (stepper.current_time() / rate > horizon) {
      r.beyond_horizon = true;
      r.t_star = std::numeric_limits<double>::infinity();
      return r;
    }
    const State before = stepper.current_state();
    stepper.do_step(rhs);
    const State after = stepper.current_state();
    if (after[0] > stop) {
      if (after[0] > before[0]) throw std::logic_error("tau_existence: tau increased");
      r.curve.emplace_back(stepper.current_time() / rate, after[0]);
      continue;
    }
    // Event inside the last step: bisection on the dense output.
    double a = stepper.previous_time(), b = stepper.current_time();
    State probe{};
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, b); ++it) {
      const double m = 0.5 * (a + b);
      stepper.calc_state(m, probe);
      (probe[0] > stop ? a : b) = m;
    }
    s_star = 0.5 * (a + b);
    break;
  }
  r.t_star = s_star / rate;
  r.curve.emplace_back(r.t_star, stop);
  r.beyond_horizon = r.t_star > horizon;
  return r;
}

}  // namespace frontlab::analysis
