#include "frontlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>

#include "frontlab/config.hpp"
#include "frontlab/fft.hpp"
#include "frontlab/io.hpp"

namespace frontlab::evolution {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

bool all_finite(std::span<const Complex> v) {
  for (const Complex& c : v)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Zero mean and Nyquist; the pipeline keeps ±k pairs conjugate already.
void project(std::span<Complex> u, const Grid& g) {
  u[0] = 0.0;
  u[g.slot(-g.k_max())] = 0.0;
}

// φ on the 2n-point grid from its retained band.
std::vector<double> padded_values(const FrontState& state) {
  const Grid big(2 * state.grid().size());
  const Spectrum p = spectral::resample(state.spectrum(), big);
  std::vector<Complex> out(static_cast<std::size_t>(big.size()));
  fft::backward(p.coeffs(), out);
  std::vector<double> v(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) v[j] = out[j].real();
  return v;
}

std::string step_label(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%08ld", step);
  return buf;
}

}  // namespace

// ---- Tables and specs -----------------------------------------------------------

SymbolTable SymbolTable::build(const Grid& grid, const model::AlphaFamily& family) {
  const Grid big(2 * grid.size());
  SymbolTable t{grid, family, {}, {}, {}, {}, 0.0};
  t.a = spectral::sample_symbol(grid, [&](int k) { return model::symbol_a(k, family); });
  t.a_padded = spectral::sample_symbol(big, [&](int k) { return model::symbol_a(k, family); });
  t.a[grid.slot(-grid.k_max())] = 0.0;
  t.a_padded[big.slot(-big.k_max())] = 0.0;
  t.b.assign(static_cast<std::size_t>(grid.size()), 0.0);
  t.kb.assign(static_cast<std::size_t>(grid.size()), 0.0);
  for (int k = 1; k < grid.k_max(); ++k) {
    const double b = model::symbol_b(k, family);
    t.b[grid.slot(k)] = t.b[grid.slot(-k)] = b;
    t.kb[grid.slot(k)] = k * b;
    t.kb[grid.slot(-k)] = -k * b;
    t.max_abs_kb = std::max(t.max_abs_kb, std::abs(k * b));
  }
  return t;
}

std::string to_string(ViscositySpec::Kind k) {
  switch (k) {
    case ViscositySpec::Kind::None: return "none";
    case ViscositySpec::Kind::ExpFilter: return "exp_filter";
    case ViscositySpec::Kind::SpectralViscosity: return "spectral_viscosity";
  }
  return "unknown";
}

void ViscositySpec::validate() const {
  if (!(strength >= 0.0) || !std::isfinite(strength))
    throw std::invalid_argument("viscosity.strength must be a finite nonnegative number");
  if ((kind == Kind::None) != (strength == 0.0))
    throw std::invalid_argument("viscosity.strength must be 0 exactly when kind is none");
  if (kind == Kind::ExpFilter && (order <= 0 || order % 2 != 0))
    throw std::invalid_argument("viscosity.order must be a positive even integer");
  if (!(cutoff_fraction > 0.0 && cutoff_fraction < 1.0))
    throw std::invalid_argument("viscosity.cutoff_fraction must lie in (0,1)");
}

std::vector<double> ViscositySpec::factors(const Grid& grid, double dt) const {
  std::vector<double> f(static_cast<std::size_t>(grid.size()), 1.0);
  const double kmax = grid.k_max();
  for (int j = 0; j < grid.size(); ++j) {
    const double k = std::abs(grid.wavenumber(j));
    switch (kind) {
      case Kind::None: break;
      case Kind::ExpFilter: f[j] = std::exp(-strength * std::pow(k / kmax, order)); break;
      case Kind::SpectralViscosity:
        if (k > cutoff_fraction * kmax) f[j] = std::exp(-strength * k * k * std::abs(dt));
        break;
    }
  }
  return f;
}

std::string to_string(InitialData::Kind k) {
  switch (k) {
    case InitialData::Kind::TwoCosine: return "two_cosine";
    case InitialData::Kind::SechSquared: return "sech_squared";
    case InitialData::Kind::SingleMode: return "single_mode";
    case InitialData::Kind::FourierList: return "fourier_list";
  }
  return "unknown";
}

void InitialData::validate() const {
  switch (kind) {
    case Kind::TwoCosine:
    case Kind::SechSquared:
      if (!parameters.empty())
        throw std::invalid_argument("initial_data." + to_string(kind) + " takes no parameters");
      return;
    case Kind::SingleMode:
      if (parameters.size() != 3)
        throw std::invalid_argument("initial_data.single_mode expects [k, re, im]");
      break;
    case Kind::FourierList:
      if (parameters.empty() || parameters.size() % 3 != 0)
        throw std::invalid_argument("initial_data.fourier_list expects triples [k, re, im, ...]");
      break;
  }
  for (std::size_t i = 0; i < parameters.size(); i += 3) {
    const double k = parameters[i];
    if (k < 1.0 || k != std::floor(k))
      throw std::invalid_argument("initial_data: wavenumber " + std::to_string(k) +
                                  " must be a positive integer");
  }
  for (double p : parameters)
    if (!std::isfinite(p)) throw std::invalid_argument("initial_data: non-finite parameter");
}

FrontState InitialData::sample(const Grid& grid) const {
  validate();
  if (kind == Kind::TwoCosine || kind == Kind::SechSquared) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int j = 0; j < grid.size(); ++j) {
      const double x = grid.point(j);
      if (kind == Kind::TwoCosine) {
        v[j] = std::cos(x + kPi) + 0.5 * std::cos(2.0 * (x + kPi + 2.0 * kPi * kPi));
      } else {
        const double c = std::cosh(2.5 * (x - kPi));
        v[j] = 1.0 / (c * c);
      }
    }
    return FrontState::from_values(grid, v);
  }
  Spectrum s(grid);
  for (std::size_t i = 0; i < parameters.size(); i += 3) {
    const int k = static_cast<int>(parameters[i]);
    if (k >= grid.k_max())
      throw std::invalid_argument("initial_data: wavenumber " + std::to_string(k) +
                                  " is not resolved on a grid of " + std::to_string(grid.size()));
    const Complex c(parameters[i + 1], parameters[i + 2]);
    s[k] += c;
    s[-k] += std::conj(c);
  }
  return FrontState::from_spectrum(s);
}

// ---- Right-hand side ----------------------------------------------------------

ApproxRhs::ApproxRhs(SymbolTable symbols)
    : symbols_(std::move(symbols)),
      pad_(static_cast<std::size_t>(2 * symbols_.grid.size())),
      phys_(pad_.size()),
      aux_(pad_.size()),
      hat_(pad_.size()),
      work_(pad_.size()) {}

void ApproxRhs::nonlinear(std::span<const Complex> u, std::span<Complex> out) {
  const Grid& g = symbols_.grid;
  const int n = g.size();
  const int m = 2 * n;
  const int h = g.k_max();
  if (static_cast<int>(u.size()) != n || static_cast<int>(out.size()) != n)
    throw std::invalid_argument("ApproxRhs: coefficient length does not match grid");
  const auto& ap = symbols_.a_padded;
  auto padded_slot = [m](int k) { return k >= 0 ? k : k + m; };

  // Each field gets its own transform. Packing two real fields into one
  // complex FFT leaks ε·|Aφ| into φ, which A then amplifies again: an
  // ε a(k)² error that destabilizes the top modes on fine grids.
  auto synthesize = [&](auto coeff, std::vector<Complex>& dst) {
    std::fill(pad_.begin(), pad_.end(), Complex{});
    for (int k = -h + 1; k < h; ++k) pad_[padded_slot(k)] = coeff(k);
    fft::backward(pad_, dst);
  };
  synthesize([&](int k) { return u[g.slot(k)]; }, phys_);
  synthesize([&](int k) { return ap[padded_slot(k)] * u[g.slot(k)]; }, aux_);

  const double inv_m = 1.0 / m;
  for (int j = 0; j < m; ++j) {
    const double phi = phys_[j].real();
    work_[j] = phi * phi;
  }
  fft::forward(work_, hat_);
  for (int j = 0; j < m; ++j) hat_[j] *= ap[j] * inv_m;
  fft::backward(hat_, work_);  // A(φ²)

  for (int j = 0; j < m; ++j) {
    const double phi = phys_[j].real();
    const double a_phi = aux_[j].real();
    const double a_phi2 = work_[j].real();
    work_[j] = phi * phi * a_phi - phi * a_phi2;
    pad_[j] = phi * phi * phi;
  }
  fft::forward(work_, hat_);  // flux
  fft::forward(pad_, aux_);   // φ³

  // Truncate and assemble -½ik{flux + ⅓ A φ³}.
  for (int k = -h + 1; k < h; ++k) {
    const int s = padded_slot(k);
    const Complex f = (hat_[s] + (symbols_.a[g.slot(k)] / 3.0) * aux_[s]) * inv_m;
    out[g.slot(k)] = Complex(0.0, -0.5 * k) * f;
  }
  out[g.slot(-h)] = 0.0;
  out[0] = 0.0;
}

void ApproxRhs::full(std::span<const Complex> u, std::span<Complex> out) {
  nonlinear(u, out);
  const auto& kb = symbols_.kb;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += Complex(0.0, -kb[j]) * u[j];
}

Spectrum rhs_approx(const FrontState& state, const SymbolTable& symbols) {
  if (!(state.grid() == symbols.grid))
    throw std::invalid_argument("rhs_approx: state grid does not match symbol table");
  ApproxRhs rhs(symbols);
  Spectrum out(state.grid());
  rhs.full(state.coeffs(), out.coeffs());
  return out;
}

Spectrum nonlinear_approx(const FrontState& state, const SymbolTable& symbols) {
  if (!(state.grid() == symbols.grid))
    throw std::invalid_argument("nonlinear_approx: state grid does not match symbol table");
  ApproxRhs rhs(symbols);
  Spectrum out(state.grid());
  rhs.nonlinear(state.coeffs(), out.coeffs());
  return out;
}

// ---- Integrator -----------------------------------------------------------------

Integrator::Integrator(SymbolTable symbols, ViscositySpec viscosity, double dt, bool nonlinear)
    : rhs_(std::move(symbols)), viscosity_(viscosity), dt_(dt), nonlinear_(nonlinear) {
  if (!(std::isfinite(dt)) || dt == 0.0)
    throw std::invalid_argument("integrator: dt must be finite and nonzero");
  viscosity_.validate();
  const auto& kb = rhs_.symbols().kb;
  const std::size_t n = kb.size();
  e_full_.resize(n);
  e_half_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    e_full_[j] = std::polar(1.0, -kb[j] * dt);
    e_half_[j] = std::polar(1.0, -0.5 * kb[j] * dt);
  }
  damping_ = viscosity_.factors(rhs_.symbols().grid, dt);
  for (auto* v : {&u_, &ka_, &kb_, &kc_, &kd_, &tmp_}) v->resize(n);
}

void Integrator::eval(std::span<const Complex> u, std::span<Complex> out) {
  if (nonlinear_) {
    rhs_.nonlinear(u, out);
  } else {
    std::fill(out.begin(), out.end(), Complex{});
  }
}

FrontState Integrator::step(const FrontState& state) {
  const Grid& g = rhs_.symbols().grid;
  if (!(state.grid() == g)) throw std::invalid_argument("integrator: grid mismatch");
  const std::size_t n = u_.size();
  const double h = dt_;
  std::copy(state.coeffs().begin(), state.coeffs().end(), u_.begin());

  eval(u_, ka_);
  for (std::size_t j = 0; j < n; ++j) tmp_[j] = e_half_[j] * (u_[j] + 0.5 * h * ka_[j]);
  eval(tmp_, kb_);
  for (std::size_t j = 0; j < n; ++j) tmp_[j] = e_half_[j] * u_[j] + 0.5 * h * kb_[j];
  eval(tmp_, kc_);
  for (std::size_t j = 0; j < n; ++j) tmp_[j] = e_full_[j] * u_[j] + h * e_half_[j] * kc_[j];
  eval(tmp_, kd_);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex incr = e_full_[j] * ka_[j] + 2.0 * e_half_[j] * (kb_[j] + kc_[j]) + kd_[j];
    tmp_[j] = damping_[j] * (e_full_[j] * u_[j] + (h / 6.0) * incr);
  }
  if (!all_finite(tmp_))
    throw std::runtime_error("integrator: non-finite coefficients after step at t = " +
                             std::to_string(state.time()));
  project(tmp_, g);
  return FrontState::from_spectrum(Spectrum(g, tmp_), state.time() + h);
}

FrontState step(const FrontState& state, double dt, const SymbolTable& symbols,
                const ViscositySpec& viscosity) {
  return Integrator(symbols, viscosity, dt).step(state);
}

// ---- Diagnostics ------------------------------------------------------------------

double hamiltonian(const FrontState& state, const SymbolTable& symbols) {
  const Grid& g = state.grid();
  if (!(g == symbols.grid)) throw std::invalid_argument("hamiltonian: grid mismatch");
  const int m = 2 * g.size();
  const auto phi = padded_values(state);
  std::vector<Complex> z(static_cast<std::size_t>(m)), hat(z.size());
  for (int j = 0; j < m; ++j) z[j] = Complex(phi[j] * phi[j], phi[j] * phi[j] * phi[j]);
  fft::forward(z, hat);
  auto padded_slot = [m](int k) { return k >= 0 ? k : k + m; };
  double cubic = 0.0;   // Σ a(k) C(k) conj φ̂(k)
  double square = 0.0;  // Σ a(k) |Q(k)|²
  double quadratic = 0.0;
  for (int k = -m / 2 + 1; k < m / 2; ++k) {
    const Complex zp = hat[padded_slot(k)] / static_cast<double>(m);
    const Complex zm = std::conj(hat[padded_slot(-k)] / static_cast<double>(m));
    const Complex q = 0.5 * (zp + zm);
    square += symbols.a_padded[padded_slot(k)] * std::norm(q);
    if (k > -g.k_max() && k < g.k_max()) {
      const Complex c = -0.5 * kI * (zp - zm);
      cubic += symbols.a[g.slot(k)] * (c * std::conj(state[k])).real();
      quadratic += symbols.b[g.slot(k)] * std::norm(state[k]);
    }
  }
  return 2.0 * kPi * (cubic / 6.0 - square / 8.0) + kPi * quadratic;
}

double momentum(const FrontState& state) {
  double sum = 0.0;
  for (const Complex& c : state.coeffs()) sum += std::norm(c);
  return kPi * sum;
}

double sobolev_norm(const FrontState& state, double s) {
  const Grid& g = state.grid();
  double sum = 0.0;
  for (int k = 1; k < g.k_max(); ++k)
    sum += 2.0 * std::pow(static_cast<double>(k), 2.0 * s) * std::norm(state[k]);
  return std::sqrt(sum);
}

DiagnosticsRecord diagnostics(const FrontState& state, const SymbolTable& symbols,
                              std::span<const double> s_list, const StripWindow& window) {
  DiagnosticsRecord rec;
  rec.time = state.time();
  rec.hamiltonian = hamiltonian(state, symbols);
  rec.momentum = momentum(state);
  for (double s : s_list) rec.sobolev_norms.emplace_back(s, sobolev_norm(state, s));
  const StripFit fit = estimate_strip_width(state, window);
  rec.strip_width = fit.delta;
  rec.strip_flagged = fit.flagged;
  const Grid& g = state.grid();
  Spectrum dphi = spectral::derivative(state.spectrum());
  const auto slope = spectral::inverse_transform(dphi);
  for (std::size_t j = 0; j < slope.size(); ++j) {
    if (std::abs(slope[j]) > rec.max_slope) {
      rec.max_slope = std::abs(slope[j]);
      rec.max_slope_x = g.point(static_cast<int>(j));
    }
  }
  // The large-scale slope maximum says nothing about where the tail comes
  // from; the band the strip fit reads does.
  const int k_lo = std::max(1, static_cast<int>(std::ceil(window.k_lo_fraction * g.k_max())));
  for (int k = 0; k < k_lo; ++k) dphi[k] = dphi[-k] = 0.0;
  const auto tail = spectral::inverse_transform(dphi);
  double peak = -1.0;
  for (std::size_t j = 0; j < tail.size(); ++j) {
    if (std::abs(tail[j]) > peak) {
      peak = std::abs(tail[j]);
      rec.singular_x = g.point(static_cast<int>(j));
    }
  }
  return rec;
}

ConservationReport conservation_check(const FrontState& initial, const SymbolTable& symbols,
                                      double dt, double t_end, double h_tol, double p_tol) {
  if (!(dt > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument("conservation_check: dt and t_end must be positive");
  const double h0 = hamiltonian(initial, symbols);
  const double p0 = momentum(initial);
  if (h0 == 0.0 || p0 == 0.0)
    throw std::invalid_argument("conservation_check: initial H and P must be nonzero");
  auto drifts = [&](double step_dt) {
    Integrator integ(symbols, ViscositySpec::none(), step_dt);
    const long steps = std::lround(t_end / step_dt);
    FrontState s = initial;
    double dh = 0.0, dp = 0.0;
    for (long i = 0; i < steps; ++i) {
      s = integ.step(s);
      dh = std::max(dh, std::abs(hamiltonian(s, symbols) - h0) / std::abs(h0));
      dp = std::max(dp, std::abs(momentum(s) - p0) / p0);
    }
    return std::pair{dh, dp};
  };
  ConservationReport r;
  r.dt = dt;
  r.t_end = t_end;
  std::tie(r.drift_h, r.drift_p) = drifts(dt);
  std::tie(r.drift_h_half, r.drift_p_half) = drifts(0.5 * dt);
  r.order_h = std::log2(r.drift_h / r.drift_h_half);
  r.order_p = std::log2(r.drift_p / r.drift_p_half);
  // P is quadratic, so its drift starts one order higher (|R(iθ)|² - 1 = O(θ⁶)).
  r.passed = r.drift_h <= h_tol && r.drift_p <= p_tol && std::abs(r.order_h - 4.0) <= 0.2 &&
             r.order_p >= 3.8;
  return r;
}

// ---- Runs ---------------------------------------------------------------------------

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::Completed: return "completed";
    case StopReason::Singularity: return "singularity";
    case StopReason::NumericalAbort: return "numerical_abort";
  }
  return "unknown";
}

void SimulationConfig::validate() const {
  if (dt && !(*dt > 0.0 && std::isfinite(*dt)))
    throw std::invalid_argument("dt must be a positive number");
  if (!(t_end > 0.0 && std::isfinite(t_end)))
    throw std::invalid_argument("t_end must be a positive number");
  if (output_every < 1) throw std::invalid_argument("output_every must be a positive integer");
  if (diagnostics_every < 0)
    throw std::invalid_argument("diagnostics_every must be a nonnegative integer");
  if (output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
  initial_data.validate();
  viscosity.validate();
}

double SimulationConfig::time_step() const {
  if (dt) return *dt;
  const auto table = SymbolTable::build(grid, alpha);
  return table.max_abs_kb > 0.0 ? 0.5 / table.max_abs_kb : 1e-3;
}

RunSummary run(const SimulationConfig& config) {
  namespace fs = std::filesystem;
  config.validate();
  RunSummary summary;
  summary.dt = config.time_step();
  const SymbolTable symbols = SymbolTable::build(config.grid, config.alpha);
  summary.stability_proxy = summary.dt * symbols.max_abs_kb;

  const fs::path dir(config.output_dir);
  fs::create_directories(dir / "snapshots");
  fs::create_directories(dir / "spectra");
  const int diag_every = config.diagnostics_every > 0 ? config.diagnostics_every
                                                      : config.output_every;
  io::DiagnosticsWriter writer(dir / "diagnostics.csv", config.sobolev);
  summary.artifacts.push_back("diagnostics.csv");

  auto write_output = [&](const FrontState& s, long step) {
    const std::string snap = "snapshots/snapshot_" + step_label(step) + ".csv";
    const std::string spec = "spectra/spectrum_" + step_label(step) + ".csv";
    io::write_snapshot(dir / snap, s);
    io::write_spectrum(dir / spec, s);
    summary.artifacts.push_back(snap);
    summary.artifacts.push_back(spec);
  };
  auto record = [&](const FrontState& s) {
    auto rec = diagnostics(s, symbols, config.sobolev, config.strip);
    writer.append(rec);
    summary.history.push_back(rec);
    return rec;
  };

  const long total = std::max(1L, static_cast<long>(std::ceil(config.t_end / summary.dt - 1e-9)));
  Integrator integ(symbols, config.viscosity, summary.dt);
  FrontState state = config.initial_data.sample(config.grid);
  record(state);
  write_output(state, 0);

  long step = 0;
  try {
    while (step < total) {
      const double remaining = config.t_end - state.time();
      if (step + 1 == total && std::abs(remaining - summary.dt) > 1e-12 * summary.dt) {
        Integrator last(symbols, config.viscosity, remaining);
        state = last.step(state);
      } else {
        state = integ.step(state);
        state.set_time((step + 1) * summary.dt);
      }
      ++step;
      const bool out_now = step % config.output_every == 0 || step == total;
      if (step % diag_every == 0 || step == total) {
        const auto rec = record(state);
        if (!summary.singularity_time && !rec.strip_flagged &&
            strip_collapsed(rec.strip_width, config.grid)) {
          summary.singularity_time = rec.time;
          summary.singularity_x = rec.singular_x;
          if (config.stop_at_singularity) {
            summary.stop_reason = StopReason::Singularity;
            write_output(state, step);
            break;
          }
        }
      }
      if (out_now) write_output(state, step);
    }
  } catch (const std::runtime_error& e) {
    summary.stop_reason = StopReason::NumericalAbort;
    summary.abort_message = e.what();
    write_output(state, step);
  }
  summary.steps = step;
  summary.final_time = state.time();

  auto manifest = config::manifest_skeleton("simulate", config::to_json(config));
  manifest["outcome"] = config::summary_to_json(summary);
  io::write_json_atomic(dir / "manifest.json", manifest);
  return summary;
}

}  // namespace frontlab::evolution
