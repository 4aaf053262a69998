// Special-function helpers shared by the kernel and analysis modules.
#pragma once

namespace frontlab::special {

/// Σ_{n=a}^{∞} n^{-s} for s > 1 and integer a >= 1: `direct` explicit terms
/// followed by an Euler–Maclaurin remainder with `corrections` Bernoulli terms.
double zeta_tail(double s, long a, long direct = 16, int corrections = 8);

/// Riemann ζ(s) for s > 1 (10⁴ direct terms, 10 Euler–Maclaurin corrections).
double riemann_zeta(double s);

}  // namespace frontlab::special
