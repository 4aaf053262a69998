#include "frontlab/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

#include "frontlab/parallel.hpp"

namespace frontlab::config {
namespace {

void require_object(const json& j, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where.empty() ? "<root>" : where, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!keys.count(key))
      throw ConfigError(where.empty() ? key : where + "." + key, "unknown field");
}

std::string path_of(const std::string& where, const char* key) {
  return where.empty() ? key : where + "." + key;
}

const json& need(const json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw ConfigError(path_of(where, key), "required field missing");
  return j.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) throw ConfigError(field, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(field, "expected a finite number");
  return d;
}

int integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::string text(const json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

spectral::Grid grid_from(const json& v, const std::string& field) {
  try {
    return spectral::Grid(integer(v, field));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field, e.what());
  }
}

model::AlphaFamily alpha_from(const json& v, const std::string& field) {
  try {
    return model::AlphaFamily::from_alpha(number(v, field));
  } catch (const std::domain_error& e) {
    throw ConfigError(field, e.what());
  }
}

evolution::InitialData initial_from(const json& j, const std::string& where) {
  require_object(j, where, {"kind", "parameters"});
  evolution::InitialData d;
  const std::string kind = text(need(j, where, "kind"), path_of(where, "kind"));
  using K = evolution::InitialData::Kind;
  if (kind == "two_cosine") d.kind = K::TwoCosine;
  else if (kind == "sech_squared") d.kind = K::SechSquared;
  else if (kind == "single_mode") d.kind = K::SingleMode;
  else if (kind == "fourier_list") d.kind = K::FourierList;
  else throw ConfigError(path_of(where, "kind"), "unknown initial data kind '" + kind + "'");
  if (j.contains("parameters"))
    d.parameters = number_list(j.at("parameters"), path_of(where, "parameters"));
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  return d;
}

evolution::ViscositySpec viscosity_from(const json& j, const std::string& where) {
  require_object(j, where, {"kind", "order", "strength", "cutoff_fraction"});
  evolution::ViscositySpec v;
  const std::string kind = text(need(j, where, "kind"), path_of(where, "kind"));
  using K = evolution::ViscositySpec::Kind;
  if (kind == "none") v = evolution::ViscositySpec::none();
  else if (kind == "exp_filter") v = evolution::ViscositySpec::exp_filter();
  else if (kind == "spectral_viscosity") v = evolution::ViscositySpec::spectral_viscosity(0.0, 0.5);
  else throw ConfigError(path_of(where, "kind"), "unknown viscosity kind '" + kind + "'");
  if (j.contains("order")) v.order = integer(j.at("order"), path_of(where, "order"));
  if (j.contains("strength")) v.strength = number(j.at("strength"), path_of(where, "strength"));
  if (j.contains("cutoff_fraction"))
    v.cutoff_fraction = number(j.at("cutoff_fraction"), path_of(where, "cutoff_fraction"));
  if (v.kind == K::SpectralViscosity && !j.contains("strength"))
    throw ConfigError(path_of(where, "strength"), "required for spectral_viscosity");
  try {
    v.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  return v;
}

evolution::StripWindow strip_from(const json& j, const std::string& where) {
  require_object(j, where, {"k_lo_fraction", "k_hi_fraction", "noise_floor", "min_modes"});
  evolution::StripWindow w;
  if (j.contains("k_lo_fraction"))
    w.k_lo_fraction = number(j.at("k_lo_fraction"), path_of(where, "k_lo_fraction"));
  if (j.contains("k_hi_fraction"))
    w.k_hi_fraction = number(j.at("k_hi_fraction"), path_of(where, "k_hi_fraction"));
  if (j.contains("noise_floor"))
    w.noise_floor = number(j.at("noise_floor"), path_of(where, "noise_floor"));
  if (j.contains("min_modes")) w.min_modes = integer(j.at("min_modes"), path_of(where, "min_modes"));
  if (!(w.k_lo_fraction > 0.0 && w.k_lo_fraction < w.k_hi_fraction && w.k_hi_fraction <= 1.0))
    throw ConfigError(where, "need 0 < k_lo_fraction < k_hi_fraction <= 1");
  if (!(w.noise_floor > 0.0)) throw ConfigError(path_of(where, "noise_floor"), "must be > 0");
  if (w.min_modes < 3) throw ConfigError(path_of(where, "min_modes"), "must be >= 3");
  return w;
}

contour::QuadratureSpec quadrature_from(const json& j, const std::string& where) {
  require_object(j, where, {"rule", "n_eta", "grading", "gp_tolerance", "tail_terms"});
  contour::QuadratureSpec q;
  if (j.contains("rule")) {
    const std::string rule = text(j.at("rule"), path_of(where, "rule"));
    if (rule == "trapezoid") q.rule = contour::QuadratureSpec::Rule::Trapezoid;
    else if (rule == "graded") q.rule = contour::QuadratureSpec::Rule::Graded;
    else throw ConfigError(path_of(where, "rule"), "unknown rule '" + rule + "'");
  }
  if (j.contains("n_eta")) q.n_eta = integer(j.at("n_eta"), path_of(where, "n_eta"));
  if (j.contains("grading")) q.grading = integer(j.at("grading"), path_of(where, "grading"));
  if (j.contains("gp_tolerance"))
    q.gp_tolerance = number(j.at("gp_tolerance"), path_of(where, "gp_tolerance"));
  if (j.contains("tail_terms"))
    q.tail_terms = integer(j.at("tail_terms"), path_of(where, "tail_terms"));
  return q;
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

evolution::SimulationConfig parse_simulation(const json& doc) {
  require_object(doc, "",
                 {"n_modes", "alpha", "dt", "t_end", "initial_data", "viscosity", "output_every",
                  "diagnostics_every", "output_dir", "sobolev", "strip", "stop_at_singularity"});
  evolution::SimulationConfig c;
  c.grid = grid_from(need(doc, "", "n_modes"), "n_modes");
  c.alpha = alpha_from(need(doc, "", "alpha"), "alpha");
  if (doc.contains("dt")) {
    const double dt = number(doc.at("dt"), "dt");
    if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
    c.dt = dt;
  }
  c.t_end = number(need(doc, "", "t_end"), "t_end");
  if (!(c.t_end > 0.0)) throw ConfigError("t_end", "must be > 0");
  c.initial_data = initial_from(need(doc, "", "initial_data"), "initial_data");
  if (doc.contains("viscosity")) c.viscosity = viscosity_from(doc.at("viscosity"), "viscosity");
  c.output_every = integer(need(doc, "", "output_every"), "output_every");
  if (c.output_every < 1) throw ConfigError("output_every", "must be >= 1");
  if (doc.contains("diagnostics_every")) {
    c.diagnostics_every = integer(doc.at("diagnostics_every"), "diagnostics_every");
    if (c.diagnostics_every < 1) throw ConfigError("diagnostics_every", "must be >= 1");
  }
  c.output_dir = text(need(doc, "", "output_dir"), "output_dir");
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
  if (doc.contains("sobolev")) c.sobolev = number_list(doc.at("sobolev"), "sobolev");
  if (doc.contains("strip")) c.strip = strip_from(doc.at("strip"), "strip");
  if (doc.contains("stop_at_singularity")) {
    if (!doc.at("stop_at_singularity").is_boolean())
      throw ConfigError("stop_at_singularity", "expected a boolean");
    c.stop_at_singularity = doc.at("stop_at_singularity").get<bool>();
  }
  return c;
}

json to_json(const evolution::ViscositySpec& v) {
  return {{"kind", evolution::to_string(v.kind)},
          {"order", v.order},
          {"strength", v.strength},
          {"cutoff_fraction", v.cutoff_fraction}};
}

json to_json(const evolution::InitialData& d) {
  return {{"kind", evolution::to_string(d.kind)}, {"parameters", d.parameters}};
}

json to_json(const contour::QuadratureSpec& q) {
  return {{"rule", contour::to_string(q.rule)},
          {"n_eta", q.n_eta},
          {"grading", q.grading},
          {"gp_tolerance", q.gp_tolerance},
          {"tail_terms", q.tail_terms}};
}

json to_json(const evolution::SimulationConfig& c) {
  json j = {{"n_modes", c.grid.size()},
            {"alpha", c.alpha.alpha()},
            {"t_end", c.t_end},
            {"initial_data", to_json(c.initial_data)},
            {"viscosity", to_json(c.viscosity)},
            {"output_every", c.output_every},
            {"output_dir", c.output_dir},
            {"sobolev", c.sobolev},
            {"strip",
             {{"k_lo_fraction", c.strip.k_lo_fraction},
              {"k_hi_fraction", c.strip.k_hi_fraction},
              {"noise_floor", c.strip.noise_floor},
              {"min_modes", c.strip.min_modes}}},
            {"stop_at_singularity", c.stop_at_singularity}};
  if (c.dt) j["dt"] = *c.dt;
  if (c.diagnostics_every > 0) j["diagnostics_every"] = c.diagnostics_every;
  return j;
}

ConsistencyConfig parse_consistency(const json& doc) {
  require_object(doc, "", {"n_modes", "alpha", "shape", "amplitudes", "quadrature", "output_dir"});
  ConsistencyConfig c;
  c.grid = grid_from(need(doc, "", "n_modes"), "n_modes");
  c.alpha = alpha_from(need(doc, "", "alpha"), "alpha");
  c.shape = initial_from(need(doc, "", "shape"), "shape");
  c.amplitudes = number_list(need(doc, "", "amplitudes"), "amplitudes");
  if (doc.contains("quadrature")) c.quadrature = quadrature_from(doc.at("quadrature"), "quadrature");
  try {
    c.quadrature.validate(c.grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("quadrature", e.what());
  }
  c.output_dir = text(need(doc, "", "output_dir"), "output_dir");
  return c;
}

json to_json(const ConsistencyConfig& c) {
  return {{"n_modes", c.grid.size()},       {"alpha", c.alpha.alpha()},
          {"shape", to_json(c.shape)},       {"amplitudes", c.amplitudes},
          {"quadrature", to_json(c.quadrature)}, {"output_dir", c.output_dir}};
}

json summary_to_json(const evolution::RunSummary& s) {
  json j = {{"stop_reason", evolution::to_string(s.stop_reason)},
            {"final_time", s.final_time},
            {"steps", s.steps},
            {"dt", s.dt},
            {"stability_proxy", s.stability_proxy},
            {"artifacts", s.artifacts}};
  if (!s.abort_message.empty()) j["abort_message"] = s.abort_message;
  if (s.singularity_time) {
    j["singularity"] = {{"time", *s.singularity_time}, {"x", *s.singularity_x}};
  } else {
    j["singularity"] = nullptr;
  }
  return j;
}

json manifest_skeleton(const std::string& command, const json& config_echo,
                       const std::vector<unsigned long long>& seeds) {
  return {{"tool", "frontlab"},
          {"version", FRONTLAB_VERSION},
          {"command", command},
          {"config", config_echo},
          {"threads", parallel::thread_count()},
          {"rng_seeds", seeds}};
}

}  // namespace frontlab::config
