//==============================================================================
// model.hpp
// Closed-form ingredients of the gSQG front equations: Green's functions, the
// kernels F and K, the periodic (cylinder) Green's function, the dispersive
// symbol b(k), the nonlinear symbol a(k), their constants b_α and c_α, and the
// four-wavenumber interaction kernels T and S.
//
// Regimes: α = 2 (Euler), α = 1 (SQG), otherwise gSQG with α in (0,1)∪(1,2).
// The SQG dispersive symbol is taken in the frame where the constant v₁ has
// been absorbed, so b(k) = -2 log|k|.
//==============================================================================
#pragma once

#include <array>
#include <string>
#include <vector>

namespace frontlab::model {

enum class Regime { Euler, Sqg, Gsqg };

std::string to_string(Regime r);

class AlphaFamily {
 public:
  /// Picks the regime from α; throws std::domain_error unless α ∈ (0, 2].
  static AlphaFamily from_alpha(double alpha);
  static AlphaFamily euler() { return from_alpha(2.0); }
  static AlphaFamily sqg() { return from_alpha(1.0); }

  Regime regime() const { return regime_; }
  double alpha() const { return alpha_; }
  /// b_α and c_α (gSQG only; zero otherwise). c_α is computed once here.
  double b_alpha() const { return b_alpha_; }
  double c_alpha() const { return c_alpha_; }

 private:
  AlphaFamily(Regime r, double alpha, double b, double c)
      : regime_(r), alpha_(alpha), b_alpha_(b), c_alpha_(c) {}
  Regime regime_;
  double alpha_;
  double b_alpha_;
  double c_alpha_;
};

// ---- Green's function and contour kernels -----------------------------------

/// G(x) = -(1/2π) log|x| (Euler) or |x|^{-(2-α)}. Throws on x = 0.
double green_G(double x, const AlphaFamily& a);

/// F(x,y) = ∫₀^y G(√(x²+s²)) ds. Closed forms for Euler and SQG, adaptive
/// Gauss–Kronrod (abs. tol 1e-12) for gSQG. Throws on x = 0.
double kernel_F(double x, double y, const AlphaFamily& a);

/// K(x,y) = G(x) y - F(x,y), evaluated without the cancellation of the two
/// terms for |y| << |x|. Throws on x = 0.
double kernel_K(double x, double y, const AlphaFamily& a);

// ---- Symbols and constants --------------------------------------------------

/// b_α = 2 sin(πα/2) Γ(α-1); α ∈ (0,1)∪(1,2).
double constant_b_alpha(double alpha);

/// c_α. For 1<α<2 this is b_α/(3-α). For 0<α<1 it is the regularized
/// integral 2(2-α)∫₀^∞ (1 - η²/2 - cos η) η^{α-4} dη, which must agree with
/// the analytic continuation of 2(2-α) sin(πα/2) Γ(α-3) to 1e-8 (throws
/// std::runtime_error otherwise).
double constant_c_alpha(double alpha);
/// Quadrature route for 0<α<1 (series on [0,1], oscillatory tail on [1,∞)).
double c_alpha_quadrature(double alpha);
/// Γ-function route 2(2-α) sin(πα/2) Γ(α-3), valid on (0,1)∪(1,2).
double c_alpha_closed_form(double alpha);

/// Dispersive symbol b(k). Throws on k = 0.
double symbol_b(double k, const AlphaFamily& a);
/// Nonlinear symbol a(k), with a(0) = 0 in every regime.
double symbol_a(double k, const AlphaFamily& a);

/// T(k2,k3,k4) = a(k2)+a(k3)+a(k4)+a(k2+k3+k4) - a(k2+k3) - a(k2+k4) - a(k3+k4).
double kernel_T(double k2, double k3, double k4, const AlphaFamily& a);

struct KernelQuery {
  std::array<double, 4> k;
};

/// Symmetric kernel S(k1,k2,k3,k4) = Σ a(k_j) - ½ Σ_{i<j} a(k_i + k_j).
double kernel_S(const KernelQuery& q, const AlphaFamily& a);

// ---- Periodic Green's function on the cylinder T × R -------------------------

/// Image-sum evaluation of
///   G_p(x,y) = G(|z|) + Σ_{n≠0} [G(|z + 2πn|) - G(2π|n|)],   z = x + iy,
/// with symmetric ±n pairing. x is first reduced to (-π, π]; the first
/// `n_sum` pairs are summed explicitly and the remaining pairs through their
/// convergent expansion in powers of z/(2πn), whose coefficients use
/// precomputed ζ-tails Σ_{n>N} n^{-s}.
class CylinderGreen {
 public:
  explicit CylinderGreen(AlphaFamily a, int n_sum = 8, double tolerance = 1e-14,
                         int max_tail_terms = 60);

  const AlphaFamily& family() const { return family_; }
  int n_sum() const { return n_sum_; }

  /// Series value of G_p. For Euler this equals the closed form minus (1/2π) log 2.
  double value(double x, double y) const;
  /// G_p(x,0) - G_p(x,y) without cancellation; x must not be ≡ 0 (mod 2π).
  double drop(double x, double y) const;

 private:
  double pair_tail(double x, double y) const;
  double pair_tail_drop(double x, double y) const;

  AlphaFamily family_;
  int n_sum_;
  double tolerance_;
  int max_terms_;
  std::vector<double> tail_;  // tail_[m] = (2π)^{-s_m} Σ_{n>N} n^{-s_m}
};

/// G_p(x,y). Euler: -(1/4π) log[sin²(x/2) + sinh²(y/2)]; other regimes: the
/// CylinderGreen series. Throws std::domain_error at (0,0) mod 2π.
double periodic_green_Gp(double x, double y, const AlphaFamily& a);

/// G_p(x,0) - G_p(x,y) for Euler from the closed form, stable for small y.
double euler_periodic_drop(double x, double y);

}  // namespace frontlab::model
