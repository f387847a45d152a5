#include "qspeed/config.hpp"

#include <fstream>

namespace qspeed {

const char* projector_source_name(ProjectorSource s) {
  switch (s) {
    case ProjectorSource::Ideal: return "ideal";
    case ProjectorSource::Fixture1: return "fixture1";
    case ProjectorSource::Fixture2: return "fixture2";
    case ProjectorSource::Custom: return "apparatus";
  }
  throw ValidationError("invalid ProjectorSource value");
}

ProjectorSource projector_source_from_name(const std::string& name) {
  if (name == "ideal") return ProjectorSource::Ideal;
  if (name == "fixture1") return ProjectorSource::Fixture1;
  if (name == "fixture2") return ProjectorSource::Fixture2;
  if (name == "apparatus") return ProjectorSource::Custom;
  throw ValidationError(
      "unknown projector source '" + name +
      "' (expected ideal|fixture1|fixture2|apparatus)");
}

const char* sampling_mode_name(SamplingMode m) {
  switch (m) {
    case SamplingMode::Poisson: return "poisson";
    case SamplingMode::Multinomial: return "multinomial";
  }
  throw ValidationError("invalid SamplingMode value");
}

SamplingMode sampling_mode_from_name(const std::string& name) {
  if (name == "poisson") return SamplingMode::Poisson;
  if (name == "multinomial") return SamplingMode::Multinomial;
  throw ValidationError("unknown sampling mode '" + name +
                        "' (expected poisson|multinomial)");
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  for (int i = 0; i <= 10; ++i) cfg.p_grid.push_back(i / 10.0);
  return cfg;
}

namespace {

void apply_fields(ExperimentConfig& cfg, const nlohmann::json& j,
                  const std::string& origin) {
  if (!j.is_object())
    throw ValidationError(origin + ": expected an object of settings");
  for (const auto& [key, val] : j.items()) {
    try {
      if (key == "p_grid") {
        cfg.p_grid = val.get<std::vector<double>>();
        if (cfg.p_grid.empty())
          throw ValidationError("p_grid must not be empty");
        for (double p : cfg.p_grid) {
          if (p < 0.0 || p > 1.0)
            throw ValidationError("p_grid entries must lie in [0, 1]");
        }
      } else if (key == "axis") {
        const auto name = val.get<std::string>();
        if (name == "all") {
          cfg.all_axes = true;
        } else {
          cfg.all_axes = false;
          cfg.axis = axis_from_name(name);
        }
      } else if (key == "tau") {
        cfg.tau = val.get<double>();
        if (cfg.tau <= 0.0) throw ValidationError("tau must be positive");
      } else if (key == "shots") {
        if (val.is_string()) {
          if (val.get<std::string>() != "exact")
            throw ValidationError("shots must be an integer or \"exact\"");
          cfg.shots.reset();
        } else {
          const auto n = val.get<std::int64_t>();
          if (n < 1) throw ValidationError("shots must be >= 1");
          cfg.shots = n;
        }
      } else if (key == "mc_samples") {
        cfg.mc_samples = val.get<int>();
        if (cfg.mc_samples < 1)
          throw ValidationError("mc_samples must be >= 1");
      } else if (key == "seed") {
        cfg.seed = val.get<std::uint64_t>();
      } else if (key == "output_dir") {
        cfg.output_dir = val.get<std::string>();
      } else if (key == "visibility") {
        cfg.visibility = val.get<double>();
        if (cfg.visibility < 0.0 || cfg.visibility > 1.0)
          throw ValidationError("visibility must lie in [0, 1]");
      } else if (key == "projectors") {
        cfg.projector_source =
            projector_source_from_name(val.get<std::string>());
      } else if (key == "sampling") {
        cfg.sampling = sampling_mode_from_name(val.get<std::string>());
      } else {
        throw ValidationError("unknown config key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(origin + ": bad value for '" + key +
                            "': " + e.what());
    }
  }
}

// Strips a # comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_string = !in_string;
    if (line[i] == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_toml_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path);

  // Flat TOML subset: `key = value` lines with strings, numbers, booleans and
  // numeric arrays; comments with #.
  nlohmann::json j = nlohmann::json::object();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": expected key = value");
    }
    try {
      // The supported value grammar coincides with JSON scalars/arrays.
      j[key] = nlohmann::json::parse(value);
    } catch (const nlohmann::json::exception&) {
      throw ValidationError(path + ":" + std::to_string(line_no) +
                            ": cannot parse value '" + value + "'");
    }
  }

  ExperimentConfig cfg = defaults();
  apply_fields(cfg, j, path);
  return cfg;
}

void ExperimentConfig::apply_json_overrides(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("override is not valid JSON: ") +
                          e.what());
  }
  apply_fields(*this, j, "override");
}

NoiseModel ExperimentConfig::noise_model() const {
  if (projector_source == ProjectorSource::Custom) {
    return NoiseModel::reconstructed_apparatus();
  }
  NoiseModel m;
  m.visibility = visibility;
  m.projector_source = projector_source;
  return m;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["p_grid"] = p_grid;
  j["axis"] = all_axes ? "all" : axis_name(axis);
  j["tau"] = tau;
  if (shots) {
    j["shots"] = *shots;
  } else {
    j["shots"] = "exact";
  }
  j["mc_samples"] = mc_samples;
  j["seed"] = seed;
  j["output_dir"] = output_dir;
  j["visibility"] = visibility;
  j["projectors"] = projector_source_name(projector_source);
  j["sampling"] = sampling_mode_name(sampling);
  return j;
}

}  // namespace qspeed
