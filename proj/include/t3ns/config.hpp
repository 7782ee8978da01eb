#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "t3ns/galerkin.hpp"

namespace t3ns {

struct InitialSpec {
  enum class Kind { Constant, GradientMode, RandomSmooth, File, Manufactured };
  Kind kind = Kind::Constant;
  std::array<double, 3> value{0.0, 0.0, 0.0};  // Constant
  std::array<int, 3> mode{1, 0, 0};            // GradientMode
  double amplitude = 1.0;
  double decay = 4.0;  // RandomSmooth spectral decay rate
  std::string file;
};

struct ForcingSpec {
  enum class Kind { Zero, Constant, Manufactured, File };
  Kind kind = Kind::Zero;
  std::array<double, 3> value{0.0, 0.0, 0.0};
  std::string file;
};

/// A fully validated experiment description: solver configuration, data
/// generators, output destination and the seed that fixes every random draw.
struct RunSpec {
  SolverConfig solver;
  InitialSpec initial;
  ForcingSpec forcing;
  std::string manufactured;  // case name when either generator references one
  std::uint64_t seed = 0;
  std::string out_dir = "out";
};

/// Parses and validates the flat JSON configuration document. Unknown keys
/// and out-of-range values are rejected with messages naming the field.
RunSpec parse_config(const std::string& text);
RunSpec parse_config_doc(const nlohmann::json& doc);

/// Canonical emission: every key materialized with its effective value,
/// keys alphabetically ordered. Re-parsing the emission reproduces the spec.
nlohmann::json canonical_config(const RunSpec& spec);

}  // namespace t3ns
