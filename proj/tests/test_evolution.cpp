#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>

#include "frontlab/evolution.hpp"

using namespace frontlab;
using namespace frontlab::evolution;
using std::numbers::pi;

namespace {

FrontState random_state(const Grid& g, std::uint64_t seed, double amp, int band) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  spectral::Spectrum s(g);
  for (int k = 1; k <= band; ++k) {
    const Complex c = amp * Complex(nd(rng), nd(rng)) / std::pow(1.0 + k, 2.0);
    s[k] = c;
    s[-k] = std::conj(c);
  }
  return FrontState::from_spectrum(s);
}

// φ̂_t(k) = -(i k/6) Σ_{q2+q3+q4=k} S(k,-q2,-q3,-q4) φ̂(q2)φ̂(q3)φ̂(q4) - i k b(k) φ̂(k)
Spectrum spectral_sum_oracle(const FrontState& st, const model::AlphaFamily& f) {
  const Grid& g = st.grid();
  const int km = g.k_max();
  Spectrum out(g);
  for (int k = -km + 1; k < km; ++k) {
    if (k == 0) continue;
    Complex sum = 0.0;
    for (int q2 = -km + 1; q2 < km; ++q2) {
      if (q2 == 0) continue;
      for (int q3 = -km + 1; q3 < km; ++q3) {
        const int q4 = k - q2 - q3;
        if (q3 == 0 || q4 == 0 || q4 <= -km || q4 >= km) continue;
        const double s = model::kernel_S({{double(k), double(-q2), double(-q3), double(-q4)}}, f);
        sum += s * st[q2] * st[q3] * st[q4];
      }
    }
    out[k] = -Complex(0.0, k / 6.0) * sum - Complex(0.0, k * model::symbol_b(k, f)) * st[k];
  }
  return out;
}

// H = 2π[(1/24) Σ_{k1+..+k4=0} S φ̂1φ̂2φ̂3φ̂4 + ½ Σ b(k)|φ̂(k)|²]
double hamiltonian_oracle(const FrontState& st, const model::AlphaFamily& f) {
  const int km = st.grid().k_max();
  double quartic = 0.0, quadratic = 0.0;
  for (int k1 = -km + 1; k1 < km; ++k1) {
    if (k1 == 0) continue;
    quadratic += model::symbol_b(k1, f) * std::norm(st[k1]);
    for (int k2 = -km + 1; k2 < km; ++k2)
      for (int k3 = -km + 1; k3 < km; ++k3) {
        const int k4 = -(k1 + k2 + k3);
        if (k2 == 0 || k3 == 0 || k4 == 0 || k4 <= -km || k4 >= km) continue;
        const double s = model::kernel_S({{double(k1), double(k2), double(k3), double(k4)}}, f);
        quartic += s * (st[k1] * st[k2] * st[k3] * st[k4]).real();
      }
  }
  return 2.0 * pi * (quartic / 24.0 + 0.5 * quadratic);
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l2_diff(const FrontState& a, const FrontState& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) s += std::norm(a.coeffs()[i] - b.coeffs()[i]);
  return std::sqrt(s);
}

FrontState integrate(FrontState s, const SymbolTable& t, double dt, int steps) {
  Integrator integ(t, ViscositySpec::none(), dt);
  for (int i = 0; i < steps; ++i) s = integ.step(s);
  return s;
}

FrontState cos_state(const Grid& g) {
  spectral::Spectrum s(g);
  s[1] = 0.5;
  s[-1] = 0.5;
  return FrontState::from_spectrum(s);
}

}  // namespace

TEST_CASE("symbol table conventions") {
  for (double al : {0.5, 1.0, 1.5, 2.0}) {
    const Grid g(32);
    const auto t = SymbolTable::build(g, model::AlphaFamily::from_alpha(al));
    CHECK(t.a[0] == 0.0);
    CHECK(t.b[0] == 0.0);
    CHECK(t.kb[g.slot(-16)] == 0.0);
    for (int k = 1; k < 16; ++k) {
      CHECK(t.a[g.slot(k)] == t.a[g.slot(-k)]);
      CHECK(t.b[g.slot(k)] == t.b[g.slot(-k)]);
    }
    CHECK(t.a_padded.size() == 64u);
  }
}

TEST_CASE("rhs_approx matches the spectral sum with kernel S") {
  for (double al : {0.5, 1.0, 1.5, 2.0}) {
    const auto f = model::AlphaFamily::from_alpha(al);
    const Grid g(32);
    const auto t = SymbolTable::build(g, f);
    const FrontState st = random_state(g, 41 + static_cast<int>(al * 4), 1.0, 15);
    const Spectrum fast = rhs_approx(st, t);
    const Spectrum slow = spectral_sum_oracle(st, f);
    CHECK(max_abs_diff(fast.coeffs(), slow.coeffs()) < 1e-10);
    CHECK(fast[0] == Complex(0.0));
    double peak = 0.0;
    for (auto c : fast.coeffs()) peak = std::max(peak, std::abs(c));
    for (int k = 1; k < 16; ++k) CHECK(std::abs(fast[k] - std::conj(fast[-k])) < 1e-14 * peak);
  }
}

TEST_CASE("rhs of zero and of a small single mode") {
  const Grid g(32);
  const auto t = SymbolTable::build(g, model::AlphaFamily::sqg());
  const Spectrum zero_rhs = rhs_approx(FrontState(g), t);
  for (auto c : zero_rhs.coeffs()) CHECK(c == Complex(0.0));

  auto mode = [&](double eps) {
    spectral::Spectrum s(g);
    s[3] = 0.5 * eps;
    s[-3] = 0.5 * eps;
    return FrontState::from_spectrum(s);
  };
  const Spectrum n1 = nonlinear_approx(mode(1e-2), t), n2 = nonlinear_approx(mode(2e-2), t);
  CHECK(std::abs(n2[3]) / std::abs(n1[3]) == doctest::Approx(8.0).epsilon(1e-12));
  const Spectrum full = rhs_approx(mode(1e-2), t);
  const Complex linear = full[3] - n1[3];
  CHECK(std::abs(linear - Complex(0.0, -3.0 * model::symbol_b(3.0, t.family)) * 0.5e-2) < 1e-16);
}

TEST_CASE("linear integrating factor is exact") {
  const Grid g(64);
  const auto t = SymbolTable::build(g, model::AlphaFamily::from_alpha(1.5));
  const FrontState st = random_state(g, 3, 1.0, 31);
  const double dt = 0.37;
  Integrator lin(t, ViscositySpec::none(), dt, false);
  const FrontState out = lin.step(st);
  double err = 0.0;
  for (int k = -31; k < 32; ++k) {
    const Complex expect = st[k] * std::polar(1.0, -k * (k ? model::symbol_b(k, t.family) : 0.0) * dt);
    err = std::max(err, std::abs(out[k] - expect));
  }
  CHECK(err < 1e-14);
  CHECK(out.time() == doctest::Approx(dt));
}

TEST_CASE("integrator basics") {
  const Grid g(16);
  const auto t = SymbolTable::build(g, model::AlphaFamily::sqg());
  CHECK(integrate(FrontState(g), t, 1e-2, 10).is_zero());
  CHECK_THROWS_AS(Integrator(t, ViscositySpec::none(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Integrator(t, ViscositySpec::none(), std::nan("")), std::invalid_argument);
  Integrator integ(t, ViscositySpec::none(), 0.1);
  CHECK_THROWS_AS(integ.step(FrontState(Grid(32))), std::invalid_argument);
}

TEST_CASE("step is fourth order on smooth data") {
  const Grid g(64);
  const auto t = SymbolTable::build(g, model::AlphaFamily::sqg());
  const FrontState st = random_state(g, 9, 0.15, 8);
  const double T = 0.4;
  const FrontState ref = integrate(st, t, T / 640, 640);
  double err[3];
  for (int i = 0; i < 3; ++i) {
    const int n = 10 << i;
    err[i] = l2_diff(integrate(st, t, T / n, n), ref);
  }
  CHECK(std::log2(err[0] / err[1]) == doctest::Approx(4.0).epsilon(0.05));
  CHECK(std::log2(err[1] / err[2]) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("forward then backward returns the initial state") {
  for (double al : {1.0, 2.0}) {
    const Grid g(64);
    const auto t = SymbolTable::build(g, model::AlphaFamily::from_alpha(al));
    const FrontState st = random_state(g, 13, 0.25, 10);
    const FrontState fwd = integrate(st, t, 1e-3, 500);
    const FrontState back = integrate(fwd, t, -1e-3, 500);
    CHECK(l2_diff(back, st) < 1e-8);
    CHECK(std::abs(back.time()) < 1e-12);
  }
}

TEST_CASE("viscosity factors") {
  const Grid g(32);
  CHECK_THROWS_AS(ViscositySpec({ViscositySpec::Kind::None, 2, 1.0, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ViscositySpec({ViscositySpec::Kind::ExpFilter, 3, 36.0, 0.5}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(ViscositySpec::spectral_viscosity(1.0, 1.5).validate(), std::invalid_argument);
  const auto filt = ViscositySpec::exp_filter().factors(g, 0.1);
  CHECK(filt[g.slot(16)] == doctest::Approx(std::exp(-36.0)));
  CHECK(filt[g.slot(1)] == doctest::Approx(1.0).epsilon(1e-15));
  const auto sv = ViscositySpec::spectral_viscosity(2.0, 0.5).factors(g, 0.1);
  CHECK(sv[g.slot(8)] == 1.0);
  CHECK(sv[g.slot(-10)] == doctest::Approx(std::exp(-2.0 * 100.0 * 0.1)));
  for (auto f : ViscositySpec::none().factors(g, 0.1)) CHECK(f == 1.0);
}

TEST_CASE("initial data") {
  const Grid g(64);
  const FrontState tc = InitialData{InitialData::Kind::TwoCosine, {}}.sample(g);
  const auto v = tc.values();
  for (int j = 0; j < 64; ++j) {
    const double x = g.point(j);
    CHECK(v[j] == doctest::Approx(std::cos(x + pi) + 0.5 * std::cos(2.0 * (x + pi + 2.0 * pi * pi))).epsilon(1e-13));
  }
  const FrontState sm = InitialData{InitialData::Kind::SingleMode, {2, 0.1, -0.2}}.sample(g);
  CHECK(std::abs(sm[2] - Complex(0.1, -0.2)) < 1e-16);
  CHECK(std::abs(sm[-2] - Complex(0.1, 0.2)) < 1e-16);
  const FrontState sech = InitialData{InitialData::Kind::SechSquared, {}}.sample(Grid(256));
  CHECK(sech[0] == Complex(0.0));
  CHECK(std::abs(sech[1].imag()) < 1e-15);  // even about x = π

  CHECK_THROWS_AS((InitialData{InitialData::Kind::SingleMode, {1, 0.1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((InitialData{InitialData::Kind::FourierList, {0, 1, 0}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((InitialData{InitialData::Kind::TwoCosine, {1}}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((InitialData{InitialData::Kind::SingleMode, {40, 1, 0}}.sample(g)), std::invalid_argument);
}

TEST_CASE("diagnostics of zero and of cos x") {
  const Grid g(32);
  const auto euler = SymbolTable::build(g, model::AlphaFamily::euler());
  const std::vector<double> s_list = {1.0, 2.0};
  const auto zero = diagnostics(FrontState(g), euler, s_list);
  CHECK(zero.hamiltonian == 0.0);
  CHECK(zero.momentum == 0.0);
  for (auto [s, v] : zero.sobolev_norms) CHECK(v == 0.0);

  const FrontState c = cos_state(g);
  CHECK(momentum(c) == doctest::Approx(pi / 2.0).epsilon(1e-15));
  CHECK(hamiltonian(c, euler) == doctest::Approx(9.0 * pi / 32.0).epsilon(1e-14));
  CHECK(sobolev_norm(c, 2.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  const auto rec = diagnostics(c, euler, s_list);
  CHECK(rec.max_slope == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rec.momentum >= 0.0);
}

TEST_CASE("Hamiltonian matches the quartic spectral sum") {
  for (double al : {0.5, 1.0, 1.5, 2.0}) {
    const auto f = model::AlphaFamily::from_alpha(al);
    const Grid g(32);
    const auto t = SymbolTable::build(g, f);
    const FrontState st = random_state(g, 77, 2.0, 15);
    const double h = hamiltonian(st, t), oracle = hamiltonian_oracle(st, f);
    CHECK(std::abs(h - oracle) <= 1e-9 * std::abs(oracle));
  }
}

TEST_CASE("strip width on synthetic spectra") {
  const Grid g(256);
  auto synth = [&](auto amp) {
    spectral::Spectrum s(g);
    for (int k = 1; k < 128; ++k) {
      s[k] = amp(double(k));
      s[-k] = s[k];
    }
    return FrontState::from_spectrum(s);
  };
  const StripWindow w{0.125, 0.5, 1e-14, 16};
  const StripFit e = estimate_strip_width(synth([](double k) { return std::exp(-0.1 * k); }), w);
  CHECK(e.delta == doctest::Approx(0.1).epsilon(0.01));
  CHECK_FALSE(e.flagged);
  const StripFit e1 = estimate_strip_width(synth([](double k) { return std::exp(-k); }), {0.125, 0.5, 1e-300, 16});
  CHECK(e1.delta == doctest::Approx(1.0).epsilon(0.01));
  const StripFit p = estimate_strip_width(synth([](double k) { return std::pow(k, -4.0); }), w);
  CHECK(std::abs(p.delta) <= 0.01);
  CHECK(p.power == doctest::Approx(4.0).epsilon(1e-6));

  spectral::Spectrum band(g);
  band[1] = 1.0;
  band[-1] = 1.0;
  CHECK(estimate_strip_width(FrontState::from_spectrum(band), w).flagged);

  CHECK(strip_collapsed(2.0 * 2.0 * pi / 256, g));
  CHECK_FALSE(strip_collapsed(3.0 * 2.0 * pi / 256, g));
}

TEST_CASE("conservation check on single-mode data") {
  const Grid g(512);
  const auto t = SymbolTable::build(g, model::AlphaFamily::sqg());
  const FrontState st = InitialData{InitialData::Kind::SingleMode, {1, 0.42, 0}}.sample(g);
  const auto r = conservation_check(st, t, 1e-3, 1.0);
  CHECK(r.drift_h <= 1e-8);
  CHECK(r.drift_p <= 1e-10);
  CHECK(r.order_h == doctest::Approx(4.0).epsilon(0.05));
  CHECK(r.order_p >= 3.8);
  CHECK(r.passed);
}

TEST_CASE("run writes artifacts and stops on numerical failure") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "frontlab_test_run";
  fs::remove_all(dir);
  SimulationConfig c;
  c.grid = Grid(64);
  c.alpha = model::AlphaFamily::euler();
  c.dt = 1e-2;
  c.t_end = 0.105;
  c.initial_data = {InitialData::Kind::SingleMode, {1, 0.1, 0}};
  c.output_every = 5;
  c.output_dir = dir.string();
  c.stop_at_singularity = false;
  const RunSummary s = run(c);
  CHECK(s.stop_reason == StopReason::Completed);
  CHECK(s.steps == 11);
  CHECK(s.final_time == doctest::Approx(0.105).epsilon(1e-12));
  CHECK(fs::exists(dir / "manifest.json"));
  CHECK(fs::exists(dir / "snapshots" / "snapshot_00000005.csv"));
  CHECK(fs::exists(dir / "spectra" / "spectrum_00000011.csv"));
  std::ifstream diag(dir / "diagnostics.csv");
  std::string header;
  std::getline(diag, header);
  CHECK(header == "t,H,P,strip_width,max_slope,Hs_1,Hs_2,max_slope_x,singular_x");

  c.alpha = model::AlphaFamily::sqg();
  c.initial_data = {InitialData::Kind::SingleMode, {20, 40.0, 0}};
  c.dt = 0.5;
  c.t_end = 50.0;
  const RunSummary bad = run(c);
  CHECK(bad.stop_reason == StopReason::NumericalAbort);
  CHECK_FALSE(bad.abort_message.empty());
  CHECK(fs::exists(dir / "manifest.json"));
  fs::remove_all(dir);
}

TEST_CASE("invalid simulation configs are rejected") {
  SimulationConfig c;
  c.t_end = -1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.t_end = 1.0;
  c.dt = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c.dt.reset();
  c.output_every = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
