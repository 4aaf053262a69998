//==============================================================================
// analysis.hpp
// Closed-form and semi-analytic results for the approximate front equation:
// shear profiles, linear dispersion, the Stokes expansion of periodic
// traveling waves, NLS modulation coefficients, the well-posedness constants
// C₀, s₀, Z, C₃, C₄, and the existence-time ODE for the Sobolev index τ(t).
//==============================================================================
#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "frontlab/model.hpp"

namespace frontlab::analysis {

/// Raised when b(k) = b(3k), where the third-harmonic coefficient is undefined.
class ResonanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// θ₀|y| (Euler), θ₀|y|^{α-1} (gSQG), θ₀ log|y| (SQG). The dimensionless
/// prefactor is taken as 1. Throws std::domain_error at y = 0 for α ≤ 1.
double shear_profile(double y, const model::AlphaFamily& a, double theta0 = 1.0);

/// ω₀(k) = k b(k). Throws at k = 0.
double dispersion_omega0(double k, const model::AlphaFamily& a);

struct StokesResult {
  double omega0 = 0.0;
  double sigma2 = 0.0;
  double omega2 = 0.0;  // σ₂|ψ₁|²
  std::complex<double> psi3_ratio;  // ψ₃/ψ₁³
};

/// σ₂ = ½k[4a(k) - a(2k)], ψ₃/ψ₁³ = ½[a(k) - a(2k) + ⅓a(3k)]/[b(k) - b(3k)].
StokesResult stokes_expansion(int k, std::complex<double> psi1, const model::AlphaFamily& a);

struct NlsResult {
  double omega0_pp = 0.0;      // closed form
  double omega0_pp_fd = 0.0;   // central difference of dispersion_omega0
  double sigma2 = 0.0;
  bool focusing = false;       // ω₀″ σ₂ < 0
};

/// ω₀″ = b_α(2-α)(1-α)k^{-α} (gSQG) or -2/k (SQG). Throws std::domain_error
/// for Euler (nondispersive) or k ≤ 0.
NlsResult nls_coefficients(double k, const model::AlphaFamily& a, double fd_step = 1e-4);

/// C₀(s) = 3^{s+1} - 3^{1-s}.
double c0_constant(double s);
/// Positive root of 3^{s+1} - 3^{1-s} = 2(2s+1), by bisection.
double s0_root(double tol = 1e-12);

/// Z(s) = √(2ζ(2s)), s > 1/2.
double zeta_Z(double s);
/// C₃(s) = C₀(s) C₂ Z(s-1) Z(s-2) with C₂ = 5, s > 5/2.
double C3_constant(double s);

struct C4Result {
  double value = 0.0;
  double argmin = 0.0;
};
/// Infimum of C₃ over (5/2, 60]: log-spaced scan, then golden section.
C4Result C4_infimum();

struct TauResult {
  double t_star = 0.0;         // +∞ when M·E₀ = 0
  bool beyond_horizon = false;
  std::vector<std::pair<double, double>> curve;  // (t, τ), τ decreasing
};

/// Solves τ' = -M E₀ C₃(τ), τ(0) = τ₀ > 5/2, up to τ = 5/2 + 1e-6. The ODE is
/// integrated in the rescaled time s = M E₀ t with an adaptive Dormand–Prince
/// scheme and dense-output event location.
TauResult tau_existence(double tau0, double E0, double M, double horizon = 1e12,
                        double tol = 1e-12);

}  // namespace frontlab::analysis
