#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "beamgain/admm.hpp"
#include "beamgain/synthesis.hpp"

namespace beamgain {

/// Where the array comes from: a bundled fixture name or a CSV file.
struct GeometrySource {
  std::string fixture;  ///< "ula41" or "nonuniform41"
  std::string file;     ///< `position_lambda,efficiency` CSV
};

/// Optional element patterns: a CSV file or a synthetic cosine taper.
struct AepSource {
  std::string file;
  std::optional<double> synthetic_half_width_deg;
  bool present() const { return !file.empty() || synthetic_half_width_deg.has_value(); }
};

struct OutputOptions {
  std::string directory = ".";
  bool pattern = true;
  bool weights = true;
  bool history = true;
  bool summary = true;
};

/// Fully resolved run description. Every field has a default except the
/// geometry source.
struct RunConfig {
  GeometrySource geometry;
  AepSource aep;
  double beam_center_deg = 0.0;
  double beamwidth_deg = 20.0;
  double resolution_deg = 0.5;
  double guard_deg = 3.0;
  std::optional<double> dsll_db;
  AdmmConfig admm;
  OutputOptions output;
  std::uint64_t seed = 0;
};

/// JSON text to RunConfig. Unknown keys, wrong types and a missing geometry
/// raise ConfigError. Relative paths (input files and the output directory)
/// are resolved against `base_dir`.
RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir = "");

/// Reads and parses a config file; a missing file is a ConfigError.
RunConfig load_run_config(const std::string& path);

/// The resolved config as pretty JSON (defaults materialized).
std::string run_config_json(const RunConfig& cfg);

/// Loads the geometry (and patterns) and builds the synthesis problem.
SynthesisProblem build_problem(const RunConfig& cfg);

}  // namespace beamgain
