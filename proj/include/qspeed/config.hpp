#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qspeed/dynamics.hpp"
#include "qspeed/swapnet.hpp"

namespace qspeed {

// Run configuration shared by the CLI commands. Loadable from a flat TOML
// file (key = value lines; strings, numbers, booleans, number arrays) with
// JSON-string overrides applied on top.
struct ExperimentConfig {
  std::vector<double> p_grid;            // default 0, 0.1, ..., 1.0
  SpinAxis axis = SpinAxis::X;
  bool all_axes = false;                 // fig3: sweep x, y, z
  double tau = 0.5235987755982988;       // pi/6
  std::optional<std::int64_t> shots;     // nullopt = exact
  int mc_samples = 1000;
  std::uint64_t seed = 42;
  std::string output_dir = "out";
  double visibility = 1.0;
  ProjectorSource projector_source = ProjectorSource::Ideal;
  SamplingMode sampling = SamplingMode::Poisson;

  static ExperimentConfig defaults();
  static ExperimentConfig from_toml_file(const std::string& path);

  // Overrides from a JSON object string, e.g. '{"seed": 7, "shots": 100000}'.
  void apply_json_overrides(const std::string& json_text);

  NoiseModel noise_model() const;
  nlohmann::json to_json() const;  // fully resolved, embedded in every report
};

const char* projector_source_name(ProjectorSource s);
ProjectorSource projector_source_from_name(const std::string& name);
const char* sampling_mode_name(SamplingMode m);
SamplingMode sampling_mode_from_name(const std::string& name);

}  // namespace qspeed
