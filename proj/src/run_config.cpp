#include "beamgain/run_config.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <set>

#include <json.hpp>

#include "beamgain/csv.hpp"
#include "beamgain/element_pattern.hpp"
#include "beamgain/errors.hpp"

namespace beamgain {

namespace {

using json = nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError("'" + where + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + where + "." + key + "'");
  }
}

template <typename T>
void read(const json& obj, const std::string& where, const char* key, T& into) {
  if (!obj.contains(key)) return;
  try {
    into = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("'" + where + "." + key + "' has the wrong type");
  }
}

double read_number(const json& obj, const std::string& where, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError("'" + where + "." + key + "' must be a number");
  return v.get<double>();
}

std::string resolve(const std::string& path, const std::string& base_dir) {
  if (path.empty() || base_dir.empty()) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root, "config", {"geometry", "aep", "problem", "admm", "output", "seed"});
  RunConfig cfg;

  if (!root.contains("geometry")) throw ConfigError("config needs a 'geometry' section");
  const json& g = root.at("geometry");
  reject_unknown(g, "geometry", {"fixture", "file"});
  read(g, "geometry", "fixture", cfg.geometry.fixture);
  read(g, "geometry", "file", cfg.geometry.file);
  if (cfg.geometry.fixture.empty() == cfg.geometry.file.empty()) {
    throw ConfigError("geometry needs exactly one of 'fixture' or 'file'");
  }
  if (!cfg.geometry.fixture.empty() && cfg.geometry.fixture != "ula41" &&
      cfg.geometry.fixture != "nonuniform41") {
    throw ConfigError("unknown geometry fixture '" + cfg.geometry.fixture + "'");
  }
  cfg.geometry.file = resolve(cfg.geometry.file, base_dir);

  if (root.contains("aep") && !root.at("aep").is_null()) {
    const json& a = root.at("aep");
    reject_unknown(a, "aep", {"file", "synthetic_half_width_deg"});
    read(a, "aep", "file", cfg.aep.file);
    if (a.contains("synthetic_half_width_deg")) {
      cfg.aep.synthetic_half_width_deg = read_number(a, "aep", "synthetic_half_width_deg", 0.0);
    }
    if (!cfg.aep.file.empty() && cfg.aep.synthetic_half_width_deg) {
      throw ConfigError("aep takes either 'file' or 'synthetic_half_width_deg', not both");
    }
    cfg.aep.file = resolve(cfg.aep.file, base_dir);
  }

  if (root.contains("problem")) {
    const json& p = root.at("problem");
    reject_unknown(p, "problem",
                   {"beam_center_deg", "beamwidth_deg", "resolution_deg", "guard_deg", "dsll_db"});
    cfg.beam_center_deg = read_number(p, "problem", "beam_center_deg", cfg.beam_center_deg);
    cfg.beamwidth_deg = read_number(p, "problem", "beamwidth_deg", cfg.beamwidth_deg);
    cfg.resolution_deg = read_number(p, "problem", "resolution_deg", cfg.resolution_deg);
    cfg.guard_deg = read_number(p, "problem", "guard_deg", cfg.guard_deg);
    if (p.contains("dsll_db") && !p.at("dsll_db").is_null()) {
      cfg.dsll_db = read_number(p, "problem", "dsll_db", 0.0);
    }
  }

  if (root.contains("admm")) {
    const json& a = root.at("admm");
    reject_unknown(a, "admm",
                   {"rho_init", "rho2_init", "rho_decay", "rho_floor", "iter_max", "residual_tol",
                    "secular_tol"});
    AdmmConfig& c = cfg.admm;
    c.rho_init = read_number(a, "admm", "rho_init", c.rho_init);
    // the sidelobe penalty follows the mainlobe one unless given
    c.rho2_init = read_number(a, "admm", "rho2_init", c.rho_init);
    c.rho_decay = read_number(a, "admm", "rho_decay", c.rho_decay);
    c.rho_floor = read_number(a, "admm", "rho_floor", c.rho_floor);
    if (a.contains("iter_max") && !a.at("iter_max").is_number_integer()) {
      throw ConfigError("'admm.iter_max' must be an integer");
    }
    read(a, "admm", "iter_max", c.iter_max);
    c.residual_tol = read_number(a, "admm", "residual_tol", c.residual_tol);
    c.secular_tol = read_number(a, "admm", "secular_tol", c.secular_tol);
  }

  if (root.contains("output")) {
    const json& o = root.at("output");
    reject_unknown(o, "output", {"directory", "pattern", "weights", "history", "summary"});
    read(o, "output", "directory", cfg.output.directory);
    read(o, "output", "pattern", cfg.output.pattern);
    read(o, "output", "weights", cfg.output.weights);
    read(o, "output", "history", cfg.output.history);
    read(o, "output", "summary", cfg.output.summary);
  }
  cfg.output.directory = resolve(cfg.output.directory, base_dir);
  if (root.contains("seed")) {
    if (!root.at("seed").is_number_unsigned()) throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = root.at("seed").get<std::uint64_t>();
  }

  try {
    cfg.admm.validate(cfg.dsll_db.has_value());
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(cfg.resolution_deg > 0.0)) throw ConfigError("'problem.resolution_deg' must be positive");
  if (!(cfg.guard_deg >= 0.0)) throw ConfigError("'problem.guard_deg' must be non-negative");
  if (cfg.dsll_db && !(*cfg.dsll_db < 0.0)) throw ConfigError("'problem.dsll_db' must be negative");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_run_config(text, std::filesystem::path(path).parent_path().string());
}

std::string run_config_json(const RunConfig& cfg) {
  json j;
  json geometry = json::object();
  if (!cfg.geometry.fixture.empty()) geometry["fixture"] = cfg.geometry.fixture;
  if (!cfg.geometry.file.empty()) geometry["file"] = cfg.geometry.file;
  j["geometry"] = geometry;
  if (cfg.aep.present()) {
    json aep = json::object();
    if (!cfg.aep.file.empty()) aep["file"] = cfg.aep.file;
    if (cfg.aep.synthetic_half_width_deg) {
      aep["synthetic_half_width_deg"] = *cfg.aep.synthetic_half_width_deg;
    }
    j["aep"] = aep;
  } else {
    j["aep"] = nullptr;
  }
  j["problem"] = {{"beam_center_deg", cfg.beam_center_deg},
                  {"beamwidth_deg", cfg.beamwidth_deg},
                  {"resolution_deg", cfg.resolution_deg},
                  {"guard_deg", cfg.guard_deg},
                  {"dsll_db", cfg.dsll_db ? json(*cfg.dsll_db) : json(nullptr)}};
  j["admm"] = {{"rho_init", cfg.admm.rho_init},         {"rho2_init", cfg.admm.rho2_init},
               {"rho_decay", cfg.admm.rho_decay},       {"rho_floor", cfg.admm.rho_floor},
               {"iter_max", cfg.admm.iter_max},         {"residual_tol", cfg.admm.residual_tol},
               {"secular_tol", cfg.admm.secular_tol}};
  j["output"] = {{"directory", cfg.output.directory}, {"pattern", cfg.output.pattern},
                 {"weights", cfg.output.weights},     {"history", cfg.output.history},
                 {"summary", cfg.output.summary}};
  j["seed"] = cfg.seed;
  return j.dump(2);
}

SynthesisProblem build_problem(const RunConfig& cfg) {
  ArrayGeometry geo = cfg.geometry.fixture == "ula41"          ? ula41()
                      : cfg.geometry.fixture == "nonuniform41" ? nonuniform41()
                                                               : load_geometry(cfg.geometry.file);
  if (!cfg.aep.file.empty()) {
    geo = geo.with_patterns(load_aep(cfg.aep.file, geo.size()));
  } else if (cfg.aep.synthetic_half_width_deg) {
    geo = geo.with_patterns(synth_aep(*cfg.aep.synthetic_half_width_deg, geo.size()));
  }
  SynthesisProblem p;
  p.geometry = std::make_shared<const ArrayGeometry>(std::move(geo));
  p.beam_center_deg = cfg.beam_center_deg;
  p.beamwidth_deg = cfg.beamwidth_deg;
  p.resolution_deg = cfg.resolution_deg;
  p.guard_deg = cfg.guard_deg;
  p.dsll_db = cfg.dsll_db;
  p.admm = cfg.admm;
  return p;
}

}  // namespace beamgain
