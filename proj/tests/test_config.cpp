#include "doctest.h"

#include <filesystem>
#include <string>

#include "frontlab/config.hpp"
#include "frontlab/io.hpp"

using namespace frontlab;
using namespace frontlab::config;

namespace {

json minimal() {
  return json::parse(R"({
    "n_modes": 64, "alpha": 1.0, "t_end": 0.1,
    "initial_data": {"kind": "two_cosine"},
    "output_every": 10, "output_dir": "out/x"
  })");
}

std::string field_of(const json& doc) {
  try {
    parse_simulation(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal simulation config and defaults") {
  const auto c = parse_simulation(minimal());
  CHECK(c.grid.size() == 64);
  CHECK(c.alpha.regime() == model::Regime::Sqg);
  CHECK_FALSE(c.dt.has_value());
  CHECK(c.viscosity.kind == evolution::ViscositySpec::Kind::None);
  CHECK(c.time_step() == doctest::Approx(0.5 / evolution::SymbolTable::build(c.grid, c.alpha).max_abs_kb));
}

TEST_CASE("errors name the offending field") {
  json j = minimal();
  j["bogus"] = 1;
  CHECK(field_of(j) == "bogus");
  j = minimal();
  j.erase("t_end");
  CHECK(field_of(j) == "t_end");
  j = minimal();
  j["n_modes"] = 48;
  CHECK(field_of(j) == "n_modes");
  j = minimal();
  j["alpha"] = 3.0;
  CHECK(field_of(j) == "alpha");
  j = minimal();
  j["dt"] = -1e-3;
  CHECK(field_of(j) == "dt");
  j = minimal();
  j["initial_data"]["kind"] = "triangle";
  CHECK(field_of(j) == "initial_data.kind");
  j = minimal();
  j["viscosity"] = {{"kind", "exp_filter"}, {"extra", 1}};
  CHECK(field_of(j) == "viscosity.extra");
  j = minimal();
  j["viscosity"] = {{"kind", "spectral_viscosity"}};
  CHECK(field_of(j) == "viscosity.strength");
  j = minimal();
  j["strip"] = {{"min_modes", 1}};
  CHECK(field_of(j) == "strip.min_modes");
  j = minimal();
  j["sobolev"] = {1.0, "two"};
  CHECK(field_of(j) == "sobolev[1]");
  j = minimal();
  j["stop_at_singularity"] = 1;
  CHECK(field_of(j) == "stop_at_singularity");
  CHECK_THROWS_AS(load_json_file("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config echo round-trips") {
  json j = minimal();
  j["dt"] = 1e-4;
  j["viscosity"] = {{"kind", "exp_filter"}, {"order", 36}, {"strength", 36.0}};
  j["strip"] = {{"noise_floor", 1e-8}};
  const auto c = parse_simulation(j);
  const json echo = to_json(c);
  const auto again = parse_simulation(echo);
  CHECK(to_json(again) == echo);
  CHECK(echo["strip"]["noise_floor"] == 1e-8);
}

TEST_CASE("shipped configs parse") {
  const std::filesystem::path dir = std::filesystem::path(FRONTLAB_SOURCE_DIR) / "configs";
  for (const char* name : {"two_cosine.json", "sech_squared.json", "conservation.json"})
    CHECK_NOTHROW(parse_simulation(load_json_file(dir / name)));
  for (const char* name : {"consistency_euler.json", "consistency_sqg.json"}) {
    const auto c = parse_consistency(load_json_file(dir / name));
    CHECK(c.amplitudes.size() >= 4);
  }
}

TEST_CASE("consistency config rejects a misaligned trapezoid rule") {
  json j = json::parse(R"({"n_modes": 32, "alpha": 2, "shape": {"kind": "single_mode", "parameters": [1, 0.5, 0]},
                           "amplitudes": [0.001, 0.01, 0.1, 0.05], "output_dir": "o",
                           "quadrature": {"rule": "trapezoid", "n_eta": 40}})");
  CHECK_THROWS_AS(parse_consistency(j), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300}) CHECK(std::stod(io::format_double(v)) == v);
  CHECK(io::short_label(1.5) == "1.5");
  CHECK(io::short_label(2.0) == "2");
}
