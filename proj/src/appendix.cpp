#include "frontlab/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace frontlab::appendix {
namespace {

struct Corner {
  double x, y;
};
constexpr Corner kA{1.0 / 3.0, 1.0 / 3.0};
constexpr Corner kB{1.0, 0.0};
constexpr Corner kC{1.0, 1.0};
constexpr Corner kD{2.0 / 3.0, 2.0 / 3.0};  // on the edge AC, so the image is the triangle ABC

// Bilinear map of the unit square onto R.
Corner bilinear(double u, double v) {
  const double w0 = (1 - u) * (1 - v), w1 = u * (1 - v), w2 = u * v, w3 = (1 - u) * v;
  return {w0 * kA.x + w1 * kB.x + w2 * kC.x + w3 * kD.x,
          w0 * kA.y + w1 * kB.y + w2 * kC.y + w3 * kD.y};
}

struct Candidate {
  double value;
  double u, v;
};

void keep_best(std::vector<Candidate>& best, Candidate c, std::size_t cap) {
  if (best.size() < cap) {
    best.push_back(c);
  } else if (c.value > best.back().value) {
    best.back() = c;
  } else {
    return;
  }
  std::sort(best.begin(), best.end(),
            [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[i] = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
  return out;
}

}  // namespace

bool in_region(double x, double y, double slack) {
  return y >= -slack && y <= x + slack && x <= 1.0 + slack && x + 2 * y >= 1.0 - slack;
}

// ---- Ordered quadruples -------------------------------------------------------

OrderedQuadruple::OrderedQuadruple(std::array<long, 4> k) : k_(k), m_{} {
  if (k[0] + k[1] + k[2] + k[3] != 0)
    throw std::invalid_argument("OrderedQuadruple: entries must sum to zero");
  for (long v : k)
    if (v == 0) throw std::invalid_argument("OrderedQuadruple: entries must be nonzero");
  // Among the magnitude orderings (ties allow several), take one whose
  // (x, y) lands in R.
  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    bool ordered = true;
    for (int i = 0; i < 3; ++i)
      if (std::labs(k[perm[i]]) < std::labs(k[perm[i + 1]])) ordered = false;
    if (!ordered) continue;
    const double m1 = static_cast<double>(k[perm[0]]);
    const double x = -k[perm[1]] / m1;
    const double y = -k[perm[2]] / m1;
    if (in_region(x, y)) {
      for (int i = 0; i < 4; ++i) m_[i] = k[perm[i]];
      return;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw std::logic_error("OrderedQuadruple: no magnitude ordering maps into R");
}

FeasiblePoint OrderedQuadruple::point() const {
  const double m1 = static_cast<double>(m_[0]);
  FeasiblePoint p{-m_[1] / m1, -m_[2] / m1, 0.0};
  if (p.y > 0.0) p.eta = (1.0 - p.x) / p.y;
  return p;
}

// ---- f bound ----------------------------------------------------------------------

double f_value(double x, double y, double s) {
  const double t = x + y - 1.0;
  const double num = 1.0 - std::pow(x, 2 * s + 1) - std::pow(y, 2 * s + 1) +
                     t * std::pow(std::abs(t), 2 * s);
  return num / (std::pow(x, s) * y);
}

double f_chart(double eta, double y, double s) {
  const double x = 1.0 - eta * y;
  const double t = (1.0 - eta) * y;
  const double one_minus_xp = -std::expm1((2 * s + 1) * std::log1p(-eta * y));
  const double num = one_minus_xp - std::pow(y, 2 * s + 1) + t * std::pow(std::abs(t), 2 * s);
  return num / (std::pow(x, s) * y);
}

FBoundReport verify_f_bound(double s, int grid) {
  if (!(s > 0.0)) throw std::domain_error("verify_f_bound: s must be > 0");
  if (grid < 10) throw std::invalid_argument("verify_f_bound: grid too coarse");
  FBoundReport r;
  r.s = s;
  r.c0 = std::pow(3.0, s + 1.0) - std::pow(3.0, 1.0 - s);
  r.boundary_limit = 2.0 * (2.0 * s + 1.0);

  auto eval = [&](double u, double v) {
    const Corner p = bilinear(u, v);
    if (p.y < 1e-12) return -1.0;
    return std::abs(f_value(p.x, p.y, s));
  };

  std::vector<Candidate> best;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const double u = static_cast<double>(i) / grid, v = static_cast<double>(j) / grid;
      keep_best(best, {eval(u, v), u, v}, 10);
    }

  // Zoom grids around each candidate cell.
  Candidate top = best.front();
  for (Candidate c : best) {
    double half = 2.0 / grid;
    for (int level = 0; level < 14; ++level) {
      Candidate local = c;
      const int m = 20;
      for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) {
          const double u = std::clamp(c.u - half + 2 * half * i / m, 0.0, 1.0);
          const double v = std::clamp(c.v - half + 2 * half * j / m, 0.0, 1.0);
          const double val = eval(u, v);
          if (val > local.value) local = {val, u, v};
        }
      c = local;
      half /= 5.0;
    }
    if (c.value > top.value) top = c;
  }
  const Corner p = bilinear(top.u, top.v);
  r.sup = top.value;
  r.argmax_x = p.x;
  r.argmax_y = p.y;

  // Boundary layer near (1, 0).
  const auto ys = logspace(1e-8, 1e-2, 61);
  for (std::size_t iy = 0; iy < ys.size(); ++iy) {
    const double y = ys[iy];
    double layer = 0.0;
    for (int i = 0; i <= 2000; ++i) {
      const double eta = 2.0 * i / 2000;
      const double val = std::abs(f_chart(eta, y, s));
      layer = std::max(layer, val);
      if (val > r.sup) {
        r.sup = val;
        r.argmax_x = 1.0 - eta * y;
        r.argmax_y = y;
      }
    }
    if (iy == 0) r.boundary_sup = layer;
  }

  r.within_c0 = r.sup <= r.c0 * (1.0 + 1e-12);
  r.argmax_at_corner = std::hypot(r.argmax_x - kA.x, r.argmax_y - kA.y) <= 1e-4;
  return r;
}

// ---- h bound ----------------------------------------------------------------------

double h_value(double x, double y, const model::AlphaFamily& a) {
  const auto A = [&](double q) { return model::symbol_a(q, a); };
  return A(1.0) + A(x) - A(1.0 - y) - A(x + y);
}

HBoundReport verify_h_bound(const model::AlphaFamily& a, int grid) {
  if (grid < 10) throw std::invalid_argument("verify_h_bound: grid too coarse");
  auto sweep = [&](int g) {
    double worst = 0.0;
    for (int i = 0; i <= g; ++i)
      for (int j = 0; j <= g; ++j) {
        const Corner p = bilinear(static_cast<double>(i) / g, static_cast<double>(j) / g);
        const double t = std::abs(p.x + p.y - 1.0);
        if (p.y < 1e-12 || t < 1e-9) continue;
        worst = std::max(worst, std::abs(h_value(p.x, p.y, a)) / (t * p.y));
      }
    // Chart samples toward the corner (1, 0).
    for (double y : logspace(1e-5, 1e-2, 31))
      for (int i = 0; i <= 200; ++i) {
        const double eta = 2.0 * i / 200;
        const double t = std::abs(1.0 - eta) * y;
        if (t < 1e-12) continue;
        worst = std::max(worst, std::abs(h_value(1.0 - eta * y, y, a)) / (t * y));
      }
    return worst;
  };
  HBoundReport r;
  r.c_coarse = sweep(grid);
  r.c_fine = sweep(2 * grid);
  r.relative_change = std::abs(r.c_fine - r.c_coarse) / r.c_fine;
  r.passed = std::isfinite(r.c_fine) && r.relative_change <= 0.01;
  return r;
}

// ---- Kernel bounds ------------------------------------------------------------------

namespace {

struct Sweep {
  double worst = 0.0;
  double corollary = 0.0;
  std::array<long, 4> arg{};
};

Sweep kernel_sweep(const model::AlphaFamily& a, long n_trials, long k_max, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-k_max, k_max - 1);
  auto draw = [&] {
    long v = pick(rng);
    return v >= 0 ? v + 1 : v;  // nonzero in [-k_max, k_max]
  };
  const bool sqg = a.regime() == model::Regime::Sqg;
  Sweep out;
  long done = 0;
  while (done < n_trials) {
    const long k1 = draw(), k2 = draw(), k3 = draw();
    const long k4 = -(k1 + k2 + k3);
    if (k4 == 0 || std::labs(k4) > k_max) continue;
    ++done;
    const OrderedQuadruple q({k1, k2, k3, k4});
    const auto& m = q.m();
    if (m[0] + m[1] + m[2] + m[3] != 0)
      throw std::logic_error("kernel_sweep: generated quadruple violates the constraint");
    const double S = std::abs(model::kernel_S(
        {{static_cast<double>(k1), static_cast<double>(k2), static_cast<double>(k3),
          static_cast<double>(k4)}},
        a));
    const double m1 = std::labs(m[0]), m2 = std::labs(m[1]), m3 = std::labs(m[2]),
                 m4 = std::labs(m[3]);
    double ratio;
    if (sqg) {
      ratio = S / (m3 * m4 * std::log1p(m2 / m3));
      const double cor = S / (m3 * m4 * std::sqrt(std::log1p(m1) * std::log1p(m2)));
      out.corollary = std::max(out.corollary, cor);
    } else {
      ratio = S / (std::pow(m3, 2.0 - a.alpha()) * m4);
    }
    if (ratio > out.worst) {
      out.worst = ratio;
      out.arg = {k1, k2, k3, k4};
    }
  }
  return out;
}

}  // namespace

KernelBoundReport verify_kernel_bounds(const model::AlphaFamily& a, long n_trials, long k_max,
                                       std::uint64_t seed) {
  if (n_trials < 1 || k_max < 2)
    throw std::invalid_argument("verify_kernel_bounds: need n_trials >= 1 and k_max >= 2");
  const bool sqg = a.regime() == model::Regime::Sqg;
  if (!sqg && !(a.alpha() > 1.0))
    throw std::domain_error("verify_kernel_bounds: the gSQG bound needs 1 < alpha <= 2");
  KernelBoundReport r;
  r.trials = n_trials;
  r.k_max = k_max;
  r.seed = seed;
  const Sweep base = kernel_sweep(a, n_trials, k_max, seed);
  r.worst_ratio = base.worst;
  r.worst = base.arg;
  if (sqg) {
    r.constant = 5.0;
    r.corollary_worst_ratio = base.corollary;
    r.passed = base.worst <= r.constant && base.corollary <= r.constant;
  } else {
    const Sweep refined = kernel_sweep(a, n_trials, 2 * k_max, seed + 1);
    r.refined_ratio = refined.worst;
    r.constant = std::max(base.worst, refined.worst);
    r.passed = std::isfinite(r.constant) &&
               std::abs(refined.worst - base.worst) <= 0.1 * r.constant;
  }
  return r;
}

double shell_ratio(double k, double a, double b) {
  const auto sqg = model::AlphaFamily::sqg();
  const double S = model::kernel_S({{k + a, -(k + b), -a, b}}, sqg);
  return S / (-2.0 * a * b * std::log(k));
}

}  // namespace frontlab::appendix
