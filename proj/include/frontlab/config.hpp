// JSON configuration parsing and manifest assembly. Unknown fields are
// rejected; errors name the offending field.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "frontlab/contour.hpp"
#include "frontlab/evolution.hpp"

namespace frontlab::config {

using nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ConsistencyConfig {
  spectral::Grid grid{256};
  model::AlphaFamily alpha = model::AlphaFamily::sqg();
  evolution::InitialData shape;
  std::vector<double> amplitudes;
  contour::QuadratureSpec quadrature;
  std::string output_dir = "out";
};

/// Reads and parses a JSON file; throws ConfigError on I/O or syntax errors.
json load_json_file(const std::filesystem::path& path);

evolution::SimulationConfig parse_simulation(const json& doc);
json to_json(const evolution::SimulationConfig& c);

ConsistencyConfig parse_consistency(const json& doc);
json to_json(const ConsistencyConfig& c);

json to_json(const evolution::ViscositySpec& v);
json to_json(const evolution::InitialData& d);
json to_json(const contour::QuadratureSpec& q);
json summary_to_json(const evolution::RunSummary& s);

/// Common manifest fields: tool, version, command, config echo, thread
/// count and RNG seeds.
json manifest_skeleton(const std::string& command, const json& config_echo,
                       const std::vector<unsigned long long>& seeds = {});

}  // namespace frontlab::config
