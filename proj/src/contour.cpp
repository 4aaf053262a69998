#include "frontlab/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "frontlab/evolution.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab::contour {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double l2(const Spectrum& s) {
  double sum = 0.0;
  for (const auto& c : s.coeffs()) sum += std::norm(c);
  return std::sqrt(sum);
}

}  // namespace

std::string to_string(QuadratureSpec::Rule r) {
  return r == QuadratureSpec::Rule::Trapezoid ? "trapezoid" : "graded";
}

int QuadratureSpec::offsets(const Grid& grid) const {
  if (n_eta > 0) return n_eta;
  return rule == Rule::Trapezoid ? grid.size() : 4 * grid.size();
}

void QuadratureSpec::validate(const Grid& grid) const {
  if (n_eta < 0) throw std::invalid_argument("quadrature.n_eta must be nonnegative");
  if (rule == Rule::Trapezoid && offsets(grid) % grid.size() != 0)
    throw std::invalid_argument("quadrature.n_eta must be a multiple of n_modes for the "
                                "trapezoid rule");
  if (rule == Rule::Graded && (grading < 1 || grading > 20))
    throw std::invalid_argument("quadrature.grading must lie in [1, 20]");
  if (offsets(grid) < 4) throw std::invalid_argument("quadrature: too few offsets");
  if (!(gp_tolerance > 0.0)) throw std::invalid_argument("quadrature.gp_tolerance must be > 0");
  if (tail_terms < 2) throw std::invalid_argument("quadrature.tail_terms must be >= 2");
}

EtaRule eta_rule(const Grid& grid, const QuadratureSpec& quad) {
  quad.validate(grid);
  const int m = quad.offsets(grid);
  EtaRule r;
  const double h = 1.0 / m;
  for (int i = 1; i < m; ++i) {
    const double t = i * h;
    // Nodes past π are stored as η - 2π so offsets near 2π stay exact.
    const bool upper = 2 * i > m;
    if (quad.rule == QuadratureSpec::Rule::Trapezoid) {
      r.eta.push_back(upper ? -kTwoPi * (1.0 - t) : kTwoPi * t);
      r.weight.push_back(kTwoPi * h);
      continue;
    }
    const double p = quad.grading;
    const double a = std::pow(t, p);
    const double b = std::pow(1.0 - t, p);
    const double dv = p * std::pow(t, p - 1.0) * std::pow(1.0 - t, p - 1.0) / ((a + b) * (a + b));
    r.eta.push_back(upper ? -kTwoPi * b / (a + b) : kTwoPi * a / (a + b));
    r.weight.push_back(kTwoPi * h * dv);
  }
  return r;
}

Spectrum nonlinear_full_periodic(const FrontState& state, const model::AlphaFamily& alpha,
                                 const QuadratureSpec& quad) {
  const Grid& g = state.grid();
  const int n = g.size();
  const EtaRule rule = eta_rule(g, quad);
  const std::size_t m = rule.eta.size();

  const Spectrum dphi = spectral::derivative(state.spectrum());
  double swing = 0.0;
  for (double v : state.values()) swing = std::max(swing, std::abs(v));
  swing *= 2.0;

  // f(x) - f(x+η) at every offset, from the multiplier 1 - e^{ikη} =
  // -2i sin(kη/2) e^{ikη/2}, which keeps relative accuracy as η → 0.
  auto differences = [&](const Spectrum& s, double eta) {
    Spectrum d(g);
    for (int k = -g.k_max() + 1; k < g.k_max(); ++k)
      d[k] = s[k] * spectral::Complex(0.0, -2.0 * std::sin(0.5 * k * eta)) *
             std::polar(1.0, 0.5 * k * eta);
    return spectral::inverse_transform(d);
  };
  std::vector<std::vector<double>> delta(m), delta_x(m);
  for (std::size_t i = 0; i < m; ++i) {
    delta[i] = differences(state.spectrum(), rule.eta[i]);
    delta_x[i] = differences(dphi, rule.eta[i]);
  }

  const bool euler = alpha.regime() == model::Regime::Euler;
  const int n_sum = std::max(8, static_cast<int>(std::ceil((std::numbers::pi + swing) /
                                                           (0.2 * std::numbers::pi))));
  const model::CylinderGreen green(alpha, n_sum, quad.gp_tolerance, quad.tail_terms);

  std::vector<double> integral(static_cast<std::size_t>(n), 0.0);
  parallel::parallel_for(static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t j = lo; j < hi; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double dy = delta[i][j];
        const double dx = delta_x[i][j];
        const double eta = rule.eta[i];
        const double drop = euler ? model::euler_periodic_drop(eta, dy) : green.drop(eta, dy);
        if (!std::isfinite(drop)) {
          std::ostringstream msg;
          msg << "nonlinear_full_periodic: non-finite G_p at x = " << g.point(static_cast<int>(j))
              << ", eta = " << eta << ", dphi = " << dy;
          throw std::runtime_error(msg.str());
        }
        sum += rule.weight[i] * dx * drop;
      }
      integral[j] = -sum;
    }
  });
  Spectrum out = spectral::forward_transform(g, integral);
  out[0] = 0.0;
  out[-g.k_max()] = 0.0;
  return out;
}

Spectrum rhs_full_periodic(const FrontState& state, const model::AlphaFamily& alpha,
                           const QuadratureSpec& quad) {
  Spectrum out = nonlinear_full_periodic(state, alpha, quad);
  const Grid& g = state.grid();
  for (int k = 1; k < g.k_max(); ++k) {
    const double kb = k * model::symbol_b(k, alpha);
    out[k] += spectral::Complex(0.0, -kb) * state[k];
    out[-k] += spectral::Complex(0.0, kb) * state[-k];
  }
  return out;
}

ConsistencyReport consistency_report(const FrontState& shape, std::span<const double> amplitudes,
                                     const model::AlphaFamily& alpha,
                                     const QuadratureSpec& quad) {
  const Grid& g = shape.grid();
  const auto symbols = evolution::SymbolTable::build(g, alpha);
  ConsistencyReport report;
  for (double eps : amplitudes) {
    if (!(eps > 0.0) || !std::isfinite(eps)) continue;
    Spectrum scaled = shape.spectrum();
    for (auto& c : scaled.coeffs()) c *= eps;
    const FrontState s = FrontState::from_spectrum(scaled);
    const Spectrum approx = evolution::nonlinear_approx(s, symbols);
    const Spectrum full = nonlinear_full_periodic(s, alpha, quad);
    Spectrum diff(g);
    for (int j = 0; j < g.size(); ++j) diff.coeffs()[j] = full.coeffs()[j] - approx.coeffs()[j];
    ConsistencyRow row{eps, l2(diff), l2(approx), 0.0};
    if (row.nonlinear_norm == 0.0) continue;
    row.ratio = row.discrepancy / row.nonlinear_norm;
    report.rows.push_back(row);
  }
  if (report.rows.size() < 4)
    throw std::invalid_argument("consistency_report: need at least 4 nonzero amplitudes, got " +
                                std::to_string(report.rows.size()));
  const auto [lo, hi] = std::minmax_element(
      report.rows.begin(), report.rows.end(),
      [](const ConsistencyRow& a, const ConsistencyRow& b) { return a.amplitude < b.amplitude; });
  if (std::log10(hi->amplitude / lo->amplitude) < 1.5)
    throw std::invalid_argument("consistency_report: amplitudes must span at least 1.5 decades");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& r : report.rows) {
    if (!(r.ratio > 0.0))
      throw std::invalid_argument("consistency_report: zero discrepancy, slope undefined");
    const double x = std::log(r.amplitude);
    const double y = std::log(r.ratio);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double cnt = static_cast<double>(report.rows.size());
  report.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  report.intercept = (sy - report.slope * sx) / cnt;
  report.passed = report.slope >= report.slope_lo && report.slope <= report.slope_hi;
  return report;
}

}  // namespace frontlab::contour
