//==============================================================================
// evolution.hpp
// Pseudo-spectral time integration of the cubic approximate front equation
//
//   φ_t + ½ ∂x{ φ² Aφ - φ A(φ²) + ⅓ A(φ³) } + L φ_x = 0
//
// on the 2π-periodic grid, with A and L the Fourier multipliers a(k), b(k).
// Products are formed on a grid padded by a factor 2, which removes cubic
// aliasing exactly. Time stepping is integrating-factor RK4 with the linear
// phase e^{-ik b(k) t} integrated exactly.
//==============================================================================
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "frontlab/model.hpp"
#include "frontlab/spectral.hpp"
#include "frontlab/strip.hpp"

namespace frontlab::evolution {

using spectral::Complex;
using spectral::FrontState;
using spectral::Grid;
using spectral::Spectrum;

/// a(k) and k·b(k) sampled once for a grid.
struct SymbolTable {
  static SymbolTable build(const Grid& grid, const model::AlphaFamily& family);

  Grid grid;
  model::AlphaFamily family;
  std::vector<double> a;         // a(k), FFT order on the grid
  std::vector<double> a_padded;  // a(k), FFT order on the 2n-point grid
  std::vector<double> b;         // b(k), zero at k = 0 and at the Nyquist slot
  std::vector<double> kb;        // k·b(k), same convention
  double max_abs_kb = 0.0;
};

struct ViscositySpec {
  enum class Kind { None, ExpFilter, SpectralViscosity };

  Kind kind = Kind::None;
  int order = 36;
  double strength = 0.0;
  double cutoff_fraction = 0.5;

  static ViscositySpec none() { return {}; }
  /// φ̂(k) ← exp[-strength (|k|/k_max)^order] φ̂(k) once per step.
  static ViscositySpec exp_filter(double strength = 36.0, int order = 36) {
    return {Kind::ExpFilter, order, strength, 0.5};
  }
  /// φ̂(k) ← exp(-strength k² dt) φ̂(k) for |k| > cutoff_fraction·k_max.
  static ViscositySpec spectral_viscosity(double strength, double cutoff_fraction) {
    return {Kind::SpectralViscosity, 2, strength, cutoff_fraction};
  }

  /// Throws std::invalid_argument if the fields are inconsistent.
  void validate() const;
  /// Per-slot damping factors for one step of size dt.
  std::vector<double> factors(const Grid& grid, double dt) const;
};

std::string to_string(ViscositySpec::Kind k);

struct InitialData {
  enum class Kind { TwoCosine, SechSquared, SingleMode, FourierList };

  Kind kind = Kind::TwoCosine;
  /// single_mode: {k, Re ψ, Im ψ}; fourier_list: repeated {k, Re c, Im c}.
  /// The front is Σ c e^{ikx} + c.c. Empty for the other kinds.
  std::vector<double> parameters;

  /// Throws std::invalid_argument on malformed parameters.
  void validate() const;
  FrontState sample(const Grid& grid) const;
};

std::string to_string(InitialData::Kind k);

// ---- Right-hand side ----------------------------------------------------------

/// Reusable workspace for the dealiased cubic flux on one grid.
class ApproxRhs {
 public:
  explicit ApproxRhs(SymbolTable symbols);

  const SymbolTable& symbols() const { return symbols_; }

  /// -½ ik F̂(k) with F the cubic flux, for coefficients u in FFT order.
  void nonlinear(std::span<const Complex> u, std::span<Complex> out);
  /// Nonlinear part plus -ik b(k) û(k).
  void full(std::span<const Complex> u, std::span<Complex> out);

 private:
  SymbolTable symbols_;
  std::vector<Complex> pad_, phys_, aux_, hat_, work_;
};

/// φ_t for the approximate equation; real and zero-mean.
Spectrum rhs_approx(const FrontState& state, const SymbolTable& symbols);
/// The cubic part of φ_t only (no dispersive term).
Spectrum nonlinear_approx(const FrontState& state, const SymbolTable& symbols);

// ---- Integrator -----------------------------------------------------------------

class Integrator {
 public:
  /// dt may be negative (backward integration); zero or non-finite throws.
  /// With `nonlinear` false only the exact linear phase is applied.
  Integrator(SymbolTable symbols, ViscositySpec viscosity, double dt, bool nonlinear = true);

  double dt() const { return dt_; }
  const SymbolTable& symbols() const { return rhs_.symbols(); }

  /// One IFRK4 step followed by the viscosity factor. Throws
  /// std::runtime_error if the result is not finite.
  FrontState step(const FrontState& state);

 private:
  void eval(std::span<const Complex> u, std::span<Complex> out);

  ApproxRhs rhs_;
  ViscositySpec viscosity_;
  double dt_;
  bool nonlinear_;
  std::vector<Complex> e_full_, e_half_;
  std::vector<double> damping_;
  std::vector<Complex> u_, ka_, kb_, kc_, kd_, tmp_;
};

FrontState step(const FrontState& state, double dt, const SymbolTable& symbols,
                const ViscositySpec& viscosity);

// ---- Diagnostics ------------------------------------------------------------------

struct DiagnosticsRecord {
  double time = 0.0;
  double hamiltonian = 0.0;
  double momentum = 0.0;
  std::vector<std::pair<double, double>> sobolev_norms;  // (s, ‖φ‖_{Ḣˢ})
  double strip_width = 0.0;
  bool strip_flagged = false;
  double max_slope = 0.0;
  double max_slope_x = 0.0;
  double singular_x = 0.0;  // argmax of |φ_x| restricted to |k| ≥ k_lo of the strip window
};

/// H = ∫[⅙ φ A(φ³) - ⅛ φ² A(φ²)] dx + ½ ∫ φ L φ dx over one period.
double hamiltonian(const FrontState& state, const SymbolTable& symbols);
/// P = ½ ∫ φ² dx.
double momentum(const FrontState& state);
/// (Σ_{k≠0} |k|^{2s} |φ̂(k)|²)^{1/2}.
double sobolev_norm(const FrontState& state, double s);

DiagnosticsRecord diagnostics(const FrontState& state, const SymbolTable& symbols,
                              std::span<const double> s_list, const StripWindow& window = {});

struct ConservationReport {
  double dt = 0.0;
  double t_end = 0.0;
  double drift_h = 0.0;       // max_t |H(t) - H(0)| / |H(0)| at dt
  double drift_p = 0.0;       // max_t |P(t) - P(0)| / P(0) at dt
  double drift_h_half = 0.0;  // same at dt/2
  double drift_p_half = 0.0;
  double order_h = 0.0;       // log2 of the drift ratio
  double order_p = 0.0;
  bool passed = false;        // tolerances met, order_h in [3.8, 4.2], order_p >= 3.8
};

/// Inviscid runs at dt and dt/2 from the same initial state.
ConservationReport conservation_check(const FrontState& initial, const SymbolTable& symbols,
                                      double dt, double t_end, double h_tol = 1e-8,
                                      double p_tol = 1e-10);

// ---- Runs ---------------------------------------------------------------------------

struct SimulationConfig {
  Grid grid{256};
  model::AlphaFamily alpha = model::AlphaFamily::sqg();
  std::optional<double> dt;  // default 0.5 / max|k b(k)|
  double t_end = 0.1;
  InitialData initial_data;
  ViscositySpec viscosity;
  int output_every = 100;
  int diagnostics_every = 0;  // 0: same as output_every
  std::string output_dir = "out";
  std::vector<double> sobolev = {1.0, 2.0};
  StripWindow strip;
  bool stop_at_singularity = true;

  void validate() const;
  double time_step() const;
};

enum class StopReason { Completed, Singularity, NumericalAbort };

std::string to_string(StopReason r);

struct RunSummary {
  StopReason stop_reason = StopReason::Completed;
  std::string abort_message;
  double final_time = 0.0;
  long steps = 0;
  double dt = 0.0;
  double stability_proxy = 0.0;  // dt · max|k b(k)|
  std::optional<double> singularity_time;
  std::optional<double> singularity_x;
  std::vector<DiagnosticsRecord> history;
  std::vector<std::string> artifacts;
};

/// Integrates to t_end (or the first detected singularity) and writes the
/// snapshot, spectrum and diagnostics CSVs plus a manifest into output_dir.
/// Numerical failure does not throw: the last good state is written and the
/// summary carries StopReason::NumericalAbort.
RunSummary run(const SimulationConfig& config);

}  // namespace frontlab::evolution
