#ifndef BIHARDY_CONFIG_HPP
#define BIHARDY_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bihardy/classify.hpp"
#include "bihardy/conditions.hpp"
#include "bihardy/witness.hpp"

namespace bihardy {

using Json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct WeightSpec {
  std::string form = "power";  // power | sinh_power | custom
  double exponent = 0.0;
  double scale = 1.0;
  std::string name;  // custom: registry entry
};

/// Parsed run configuration.  Unknown keys anywhere are rejected.
struct RunConfig {
  // geometry
  std::string geometry_kind = "homogeneous";  // homogeneous | hyperbolic | cartan_hadamard
  double dim = 2.0;
  double curvature_b = 0.0;
  double sphere_area = 1.0;
  // exponents
  double p1 = 2.0, p2 = 2.0, q = 2.0;
  // weights
  WeightSpec u, v1, v2;
  // quadrature
  QuadConfig quad;
  // witness
  WitnessSearchConfig witness;
  std::string trace_csv;
  // classify
  int classify_grid = 100;
  // calibrate
  double calib_p = 2.0;
  double calib_eps = 0.0;
  std::vector<double> calib_deltas = {0.1, 0.03, 0.01};
};

RunConfig parse_config(const Json& j);
RunConfig load_config_file(const std::string& path);

RadialGeometry make_geometry(const RunConfig& cfg);
RadialWeight make_weight(const WeightSpec& spec);
WeightTriple make_weights(const RunConfig& cfg);
ExponentSystem make_exponents(const RunConfig& cfg);

/// Named built-in custom weights usable from config files.
std::vector<std::string> custom_weight_names();

Json report_to_json(const ConditionReport& report);
Json verdict_to_json(const Verdict& verdict);
Json witness_to_json(const RatioWitness& witness, std::uint64_t seed);
std::string witness_trace_csv(const RatioWitness& witness);

}  // namespace bihardy

#endif
