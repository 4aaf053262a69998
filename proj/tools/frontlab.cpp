// frontlab: command-line entry point for simulations, consistency sweeps,
// analysis tables and verification suites.
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 numerical abort,
// 3 verification failure.

#include <cmath>
#include <complex>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "frontlab/analysis.hpp"
#include "frontlab/appendix.hpp"
#include "frontlab/config.hpp"
#include "frontlab/contour.hpp"
#include "frontlab/evolution.hpp"
#include "frontlab/io.hpp"

namespace fs = std::filesystem;
using namespace frontlab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kAbort = 2;
constexpr int kVerifyFailed = 3;

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void print_row(const std::string& name, double v) {
  std::printf("%-16s %s\n", name.c_str(), g12(v == 0.0 ? 0.0 : v).c_str());
}

// ---- simulate -------------------------------------------------------------------

int cmd_simulate(const std::string& path, bool dry_run) {
  const auto cfg = config::parse_simulation(config::load_json_file(path));
  if (dry_run) {
    fs::create_directories(cfg.output_dir);
    json m = config::manifest_skeleton("simulate", config::to_json(cfg));
    m["outcome"] = {{"stop_reason", "dry_run"},
                    {"dt", cfg.time_step()},
                    {"stability_proxy", cfg.time_step() * evolution::SymbolTable::build(
                                                              cfg.grid, cfg.alpha).max_abs_kb}};
    io::write_json_atomic(fs::path(cfg.output_dir) / "manifest.json", m);
    std::printf("dry run: manifest written to %s\n",
                (fs::path(cfg.output_dir) / "manifest.json").c_str());
    return kOk;
  }
  const auto s = evolution::run(cfg);
  std::printf("stop_reason      %s\n", evolution::to_string(s.stop_reason).c_str());
  print_row("final_time", s.final_time);
  std::printf("steps            %ld\n", s.steps);
  print_row("dt", s.dt);
  print_row("stability_proxy", s.stability_proxy);
  if (s.singularity_time) {
    print_row("singularity_t", *s.singularity_time);
    print_row("singularity_x", *s.singularity_x);
  }
  if (s.stop_reason == evolution::StopReason::NumericalAbort) {
    std::fprintf(stderr, "numerical abort: %s\n", s.abort_message.c_str());
    return kAbort;
  }
  return kOk;
}

// ---- consistency -------------------------------------------------------------------

int cmd_consistency(const std::string& path) {
  const auto cfg = config::parse_consistency(config::load_json_file(path));
  const auto shape = cfg.shape.sample(cfg.grid);
  const auto report = contour::consistency_report(shape, cfg.amplitudes, cfg.alpha, cfg.quadrature);

  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  std::vector<std::vector<double>> rows;
  for (const auto& r : report.rows) rows.push_back({r.amplitude, r.discrepancy, r.nonlinear_norm, r.ratio});
  io::write_csv(dir / "consistency.csv", {"amplitude", "discrepancy", "nonlinear_norm", "ratio"}, rows);

  json m = config::manifest_skeleton("consistency", config::to_json(cfg));
  m["outcome"] = {{"slope", report.slope},
                  {"intercept", report.intercept},
                  {"slope_band", {report.slope_lo, report.slope_hi}},
                  {"passed", report.passed}};
  io::write_json_atomic(dir / "manifest.json", m);

  std::printf("%-14s %-22s %-22s\n", "amplitude", "discrepancy", "ratio");
  for (const auto& r : report.rows)
    std::printf("%-14s %-22s %-22s\n", g12(r.amplitude).c_str(), g12(r.discrepancy).c_str(),
                g12(r.ratio).c_str());
  print_row("slope", report.slope);
  std::printf("passed           %s\n", report.passed ? "true" : "false");
  return report.passed ? kOk : kVerifyFailed;
}

// ---- analyze -------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string quantity;
  double alpha = 1.0;
  double k = 1.0;
  double s = 1.0;
  double psi1_re = 0.1;
  double psi1_im = 0.0;
  double tau0 = 3.0;
  double E0 = 1.0;
  double M = 2.0;
  std::string csv;
};

int cmd_analyze(const AnalyzeArgs& a) {
  std::vector<std::pair<std::string, double>> out;
  std::vector<std::vector<double>> curve;
  if (a.quantity == "dispersion") {
    const auto fam = model::AlphaFamily::from_alpha(a.alpha);
    out = {{"k", a.k}, {"b", model::symbol_b(a.k, fam)}, {"omega0", analysis::dispersion_omega0(a.k, fam)}};
  } else if (a.quantity == "stokes") {
    if (a.k != std::floor(a.k)) throw std::domain_error("--k must be an integer for stokes");
    const auto fam = model::AlphaFamily::from_alpha(a.alpha);
    const auto r = analysis::stokes_expansion(static_cast<int>(a.k), {a.psi1_re, a.psi1_im}, fam);
    const std::complex<double> psi1(a.psi1_re, a.psi1_im);
    const auto psi3 = r.psi3_ratio * psi1 * psi1 * psi1;
    out = {{"omega0", r.omega0},
           {"sigma2", r.sigma2},
           {"omega2", r.omega2},
           {"psi3_ratio_re", r.psi3_ratio.real()},
           {"psi3_ratio_im", r.psi3_ratio.imag()},
           {"psi3_re", psi3.real()},
           {"psi3_im", psi3.imag()}};
  } else if (a.quantity == "nls") {
    const auto fam = model::AlphaFamily::from_alpha(a.alpha);
    const auto r = analysis::nls_coefficients(a.k, fam);
    out = {{"omega0_pp", r.omega0_pp},
           {"omega0_pp_fd", r.omega0_pp_fd},
           {"sigma2", r.sigma2},
           {"focusing", r.focusing ? 1.0 : 0.0}};
  } else if (a.quantity == "constants") {
    const auto c4 = analysis::C4_infimum();
    out = {{"s0", analysis::s0_root()}, {"s", a.s}, {"C0", analysis::c0_constant(a.s)}};
    if (a.s > 0.5) out.emplace_back("Z", analysis::zeta_Z(a.s));
    if (a.s > 2.5) out.emplace_back("C3", analysis::C3_constant(a.s));
    out.emplace_back("C4", c4.value);
    out.emplace_back("C4_argmin", c4.argmin);
  } else {
    const auto r = analysis::tau_existence(a.tau0, a.E0, a.M);
    out = {{"t_star", r.t_star}, {"beyond_horizon", r.beyond_horizon ? 1.0 : 0.0}};
    for (const auto& [t, tau] : r.curve) curve.push_back({t, tau});
  }

  for (const auto& [name, v] : out) {
    if (name == "focusing" || name == "beyond_horizon")
      std::printf("%-16s %s\n", name.c_str(), v != 0.0 ? "true" : "false");
    else
      print_row(name, v);
  }
  if (!a.csv.empty()) {
    if (!curve.empty()) {
      io::write_csv(a.csv, {"t", "tau"}, curve);
    } else {
      std::vector<std::string> header;
      std::vector<double> row;
      for (const auto& [name, v] : out) {
        header.push_back(name);
        row.push_back(v);
      }
      io::write_csv(a.csv, header, {row});
    }
  }
  return kOk;
}

// ---- verify ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  double s = 1.0;
  double alpha = 1.0;
  long kmax = 10000;
  long trials = 1000000;
  unsigned long long seed = 20240601;
  std::string config;
  std::string out;
};

evolution::SimulationConfig conservation_defaults() {
  evolution::SimulationConfig c;
  c.grid = spectral::Grid(512);
  c.alpha = model::AlphaFamily::sqg();
  c.dt = 1e-3;
  c.t_end = 1.0;
  c.initial_data.kind = evolution::InitialData::Kind::SingleMode;
  c.initial_data.parameters = {1, 0.42, 0.0};
  return c;
}

int cmd_verify(const VerifyArgs& v) {
  const fs::path dir = v.out.empty() ? fs::path("out") / ("verify_" + v.suite) : fs::path(v.out);
  json echo = {{"suite", v.suite}};
  json outcome;
  std::vector<unsigned long long> seeds;
  bool passed = false;
  std::string counterexample;
  fs::create_directories(dir);

  if (v.suite == "appendix") {
    echo["s"] = v.s;
    const auto f = appendix::verify_f_bound(v.s);
    passed = f.within_c0 && f.argmax_at_corner;
    outcome = {{"sup", f.sup},          {"argmax", {f.argmax_x, f.argmax_y}},
               {"c0", f.c0},            {"boundary_sup", f.boundary_sup},
               {"boundary_limit", f.boundary_limit}, {"within_c0", f.within_c0},
               {"argmax_at_corner", f.argmax_at_corner}};
    print_row("sup_f", f.sup);
    print_row("argmax_x", f.argmax_x);
    print_row("argmax_y", f.argmax_y);
    print_row("C0", f.c0);
    print_row("boundary_sup", f.boundary_sup);
    if (!passed)
      counterexample = "sup |f| = " + g12(f.sup) + " at (" + g12(f.argmax_x) + ", " +
                       g12(f.argmax_y) + ")";
    io::write_csv(dir / "appendix_report.csv",
                  {"s", "sup", "argmax_x", "argmax_y", "c0", "boundary_sup", "passed"},
                  {{v.s, f.sup, f.argmax_x, f.argmax_y, f.c0, f.boundary_sup, passed ? 1.0 : 0.0}});
  } else if (v.suite == "kernels") {
    echo.update({{"alpha", v.alpha}, {"kmax", v.kmax}, {"trials", v.trials}, {"seed", v.seed}});
    seeds.push_back(v.seed);
    const auto fam = model::AlphaFamily::from_alpha(v.alpha);
    const auto r = appendix::verify_kernel_bounds(fam, v.trials, v.kmax, v.seed);
    passed = r.passed;
    outcome = {{"constant", r.constant},
               {"worst_ratio", r.worst_ratio},
               {"worst", r.worst},
               {"corollary_worst_ratio", r.corollary_worst_ratio},
               {"refined_ratio", r.refined_ratio},
               {"passed", r.passed}};
    print_row("constant", r.constant);
    print_row("worst_ratio", r.worst_ratio);
    print_row("corollary_worst", r.corollary_worst_ratio);
    if (fam.regime() != model::Regime::Sqg) print_row("refined_ratio", r.refined_ratio);
    std::printf("worst            (%ld, %ld, %ld, %ld)\n", r.worst[0], r.worst[1], r.worst[2], r.worst[3]);
    if (!passed)
      counterexample = "ratio " + g12(r.worst_ratio) + " at (" + std::to_string(r.worst[0]) + ", " +
                       std::to_string(r.worst[1]) + ", " + std::to_string(r.worst[2]) + ", " +
                       std::to_string(r.worst[3]) + ")";
    io::write_csv(dir / "kernels_report.csv",
                  {"alpha", "trials", "kmax", "seed", "constant", "worst_ratio", "corollary_worst_ratio", "passed"},
                  {{v.alpha, static_cast<double>(v.trials), static_cast<double>(v.kmax),
                    static_cast<double>(v.seed), r.constant, r.worst_ratio, r.corollary_worst_ratio,
                    passed ? 1.0 : 0.0}});
  } else {
    auto cfg = v.config.empty() ? conservation_defaults()
                                : config::parse_simulation(config::load_json_file(v.config));
    echo["simulation"] = config::to_json(cfg);
    const auto symbols = evolution::SymbolTable::build(cfg.grid, cfg.alpha);
    const auto r = evolution::conservation_check(cfg.initial_data.sample(cfg.grid), symbols,
                                                 cfg.time_step(), cfg.t_end);
    passed = r.passed;
    outcome = {{"dt", r.dt},           {"t_end", r.t_end},
               {"drift_h", r.drift_h}, {"drift_p", r.drift_p},
               {"drift_h_half", r.drift_h_half}, {"drift_p_half", r.drift_p_half},
               {"order_h", r.order_h}, {"order_p", r.order_p}, {"passed", r.passed}};
    print_row("drift_H", r.drift_h);
    print_row("drift_P", r.drift_p);
    print_row("drift_H_half", r.drift_h_half);
    print_row("drift_P_half", r.drift_p_half);
    print_row("order_H", r.order_h);
    print_row("order_P", r.order_p);
    if (!passed)
      counterexample = "drift H " + g12(r.drift_h) + ", P " + g12(r.drift_p) + ", orders " +
                       g12(r.order_h) + ", " + g12(r.order_p);
    fs::create_directories(dir);
    io::write_csv(dir / "conservation_report.csv",
                  {"dt", "drift_h", "drift_p", "drift_h_half", "drift_p_half", "order_h", "order_p", "passed"},
                  {{r.dt, r.drift_h, r.drift_p, r.drift_h_half, r.drift_p_half, r.order_h, r.order_p,
                    passed ? 1.0 : 0.0}});
  }

  json m = config::manifest_skeleton("verify", echo, seeds);
  outcome["passed"] = passed;
  m["outcome"] = outcome;
  io::write_json_atomic(dir / "manifest.json", m);
  std::printf("passed           %s\n", passed ? "true" : "false");
  if (!passed) {
    std::fprintf(stderr, "verification failed: %s\n", counterexample.c_str());
    return kVerifyFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sharp-front simulation and analysis toolkit"};
  app.set_version_flag("--version", std::string(FRONTLAB_VERSION));
  app.require_subcommand(1);

  std::string sim_path;
  bool dry_run = false;
  auto* sim = app.add_subcommand("simulate", "Run the approximate front equation from a JSON config");
  sim->add_option("config", sim_path, "Simulation config (JSON)")->required();
  sim->add_flag("--dry-run", dry_run, "Validate the config and write the manifest only");

  std::string cons_path;
  auto* cons = app.add_subcommand("consistency", "Compare the full contour equation with the cubic truncation");
  cons->add_option("config", cons_path, "Consistency config (JSON)")->required();

  AnalyzeArgs an;
  auto* ana = app.add_subcommand("analyze", "Dispersion, Stokes, NLS, constants and existence-time tables");
  ana->add_option("quantity", an.quantity)
      ->required()
      ->check(CLI::IsMember({"dispersion", "stokes", "nls", "constants", "tau"}));
  ana->add_option("--alpha", an.alpha, "Family parameter in (0, 2]");
  ana->add_option("--k", an.k, "Wavenumber");
  ana->add_option("--s", an.s, "Sobolev index");
  ana->add_option("--psi1", an.psi1_re, "Real part of the first-harmonic amplitude");
  ana->add_option("--psi1-im", an.psi1_im, "Imaginary part of the first-harmonic amplitude");
  ana->add_option("--tau0", an.tau0, "Initial Sobolev index (> 5/2)");
  ana->add_option("--E0", an.E0, "Initial energy");
  ana->add_option("--M", an.M, "Energy growth factor (> 1)");
  ana->add_option("--csv", an.csv, "Also write the table to this CSV file");

  VerifyArgs vf;
  auto* ver = app.add_subcommand("verify", "Run a verification suite");
  ver->add_option("suite", vf.suite)->required()->check(CLI::IsMember({"appendix", "kernels", "conservation"}));
  ver->add_option("--s", vf.s, "Sobolev index for the appendix suite");
  ver->add_option("--alpha", vf.alpha, "Family parameter for the kernel suite");
  ver->add_option("--kmax", vf.kmax, "Largest |k| sampled");
  ver->add_option("--trials", vf.trials, "Number of random quadruples");
  ver->add_option("--seed", vf.seed, "RNG seed");
  ver->add_option("--config", vf.config, "Simulation config for the conservation suite");
  ver->add_option("--out", vf.out, "Report directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return cmd_simulate(sim_path, dry_run);
    if (*cons) return cmd_consistency(cons_path);
    if (*ana) return cmd_analyze(an);
    if (*ver) return cmd_verify(vf);
  } catch (const config::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kAbort;
  }
  return kUsage;
}
