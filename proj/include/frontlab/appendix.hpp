//==============================================================================
// appendix.hpp
// Numerical verification of the kernel inequalities on the feasible region
//
//   R = {(x,y) : 0 ≤ y ≤ x ≤ 1, x + 2y ≥ 1},
//
// where (x, y) = (-m₂/m₁, -m₃/m₁) for a zero-sum quadruple ordered by
// magnitude. R is the triangle with vertices (1/3,1/3), (1,0) and (1,1); the
// only delicate point is the corner (1,0), which is resolved in the chart
// x = 1 - ηy, 0 ≤ η ≤ 2, y ≤ 1/(1+η).
//==============================================================================
#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "frontlab/model.hpp"

namespace frontlab::appendix {

struct FeasiblePoint {
  double x = 0.0;
  double y = 0.0;
  double eta = 0.0;  // (1 - x)/y when y > 0
};

/// True if (x,y) ∈ R up to an absolute slack.
bool in_region(double x, double y, double slack = 1e-12);

/// Zero-sum quadruple with its magnitude-ordered permutation m.
class OrderedQuadruple {
 public:
  /// Throws std::invalid_argument unless the entries are nonzero and sum to 0.
  explicit OrderedQuadruple(std::array<long, 4> k);

  const std::array<long, 4>& k() const { return k_; }
  const std::array<long, 4>& m() const { return m_; }
  /// (x, y) from m; always lies in R.
  FeasiblePoint point() const;

 private:
  std::array<long, 4> k_;
  std::array<long, 4> m_;
};

/// f(x,y) = [1 - x^{2s+1} - y^{2s+1} + (x+y-1)|x+y-1|^{2s}] / (x^s y).
double f_value(double x, double y, double s);
/// f(1 - ηy, y) evaluated without cancellation for small y.
double f_chart(double eta, double y, double s);

struct FBoundReport {
  double s = 0.0;
  double sup = 0.0;
  double argmax_x = 0.0;
  double argmax_y = 0.0;
  double c0 = 0.0;                 // 3^{s+1} - 3^{1-s}
  double boundary_sup = 0.0;       // sup_η |f(1-ηy, y)| at the smallest sampled y
  double boundary_limit = 0.0;     // 2(2s+1)
  bool within_c0 = false;          // sup ≤ C₀(s)
  bool argmax_at_corner = false;   // |argmax - (1/3,1/3)| ≤ 1e-4
};

/// Dense grid over R (grid × grid points in bilinear coordinates), zoomed
/// refinement around the best cells, and a log-spaced boundary-layer scan
/// y ∈ [1e-8, 1e-2] in the (η, y) chart.
FBoundReport verify_f_bound(double s, int grid = 2000);

/// h(x,y) = a(1) + a(x) - a(1-y) - a(x+y).
double h_value(double x, double y, const model::AlphaFamily& a);

struct HBoundReport {
  double c_coarse = 0.0;  // max |h|/(|x+y-1| y) at grid
  double c_fine = 0.0;    // same at 2·grid
  double relative_change = 0.0;
  bool passed = false;    // finite and stable to 1%
};

HBoundReport verify_h_bound(const model::AlphaFamily& a, int grid = 1000);

struct KernelBoundReport {
  long trials = 0;
  long k_max = 0;
  std::uint64_t seed = 0;
  double constant = 0.0;           // C₂ = 5 (SQG) or fitted C₁(α) (gSQG)
  double worst_ratio = 0.0;        // max |S| / bound-without-constant
  std::array<long, 4> worst{};     // quadruple attaining worst_ratio
  double corollary_worst_ratio = 0.0;  // SQG integer corollary
  double refined_ratio = 0.0;      // gSQG: worst ratio at 2·k_max
  bool passed = false;
};

/// SQG: |S| ≤ 5|m₃||m₄| log(1+|m₂/m₃|) and the integer corollary with
/// √(log(1+|m₁|) log(1+|m₂|)). gSQG with 1 < α ≤ 2: fits
/// C₁ = max |S|/(|m₃|^{2-α}|m₄|) and requires it to be finite and stable
/// (within 10%) when k_max is doubled.
KernelBoundReport verify_kernel_bounds(const model::AlphaFamily& a, long n_trials, long k_max,
                                       std::uint64_t seed = 20240601);

/// S(k+a, -(k+b), -a, b) / (-2ab log k) for the shell configuration.
double shell_ratio(double k, double a = 1.0, double b = 2.0);

}  // namespace frontlab::appendix
