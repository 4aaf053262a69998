//==============================================================================
// fft.hpp
// Thin wrapper around FFTW complex-to-complex transforms. Plans are created
// once per length with FFTW_ESTIMATE (deterministic), cached process-wide, and
// executed through the new-array interface so concurrent callers only share
// read-only plan objects.
//==============================================================================
#pragma once

#include <complex>
#include <span>

namespace frontlab::fft {

using Complex = std::complex<double>;

/// out[k] = Σ_j in[j] e^{-2πi jk/n}, unscaled. in and out must not alias.
void forward(std::span<const Complex> in, std::span<Complex> out);
/// out[j] = Σ_k in[k] e^{+2πi jk/n}, unscaled. in and out must not alias.
void backward(std::span<const Complex> in, std::span<Complex> out);

}  // namespace frontlab::fft
