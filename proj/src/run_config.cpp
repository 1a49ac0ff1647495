#include "rbl/run_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rbl {

void validate(const RunConfig& cfg) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error("config-invalid", std::string(name) + " must be > 0");
    }
  };
  positive(cfg.tol_psi, "tol_psi");
  positive(cfg.tol_sigma, "tol_sigma");
  positive(cfg.resonance_tol, "resonance_tol");
  positive(cfg.stagnation_tol, "stagnation_tol");
  if (cfg.horizon_classify < 1) throw Error("config-invalid", "horizon_classify must be >= 1");
  if (cfg.horizon_invariance < 1) throw Error("config-invalid", "horizon_invariance must be >= 1");
  if (cfg.threads < 0) throw Error("config-invalid", "threads must be >= 0");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "pgm") {
    throw Error("config-invalid", "format must be json, csv, or pgm");
  }
  if (cfg.out_dir.empty()) throw Error("config-invalid", "output directory must be nonempty");
  validate(basin_of(cfg, 2));
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config-invalid", "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();

  json j;
  try {
    j = json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error("config-invalid", std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw Error("config-invalid", "config root must be an object");

  RunConfig cfg;
  auto as_double = [&](const json& v, const char* name) -> double {
    if (!v.is_number()) throw Error("config-invalid", std::string(name) + " must be a number");
    return v.get<double>();
  };
  auto as_long = [&](const json& v, const char* name) -> long {
    if (!v.is_number_integer()) throw Error("config-invalid", std::string(name) + " must be an integer");
    return v.get<long>();
  };
  auto as_string = [&](const json& v, const char* name) -> std::string {
    if (!v.is_string()) throw Error("config-invalid", std::string(name) + " must be a string");
    return v.get<std::string>();
  };

  for (const auto& [key, value] : j.items()) {
    if (key == "germ") cfg.germ_file = as_string(value, "germ");
    else if (key == "beta") cfg.beta = as_double(value, "beta");
    else if (key == "theta") cfg.theta = as_double(value, "theta");
    else if (key == "R") cfg.R = as_double(value, "R");
    else if (key == "tol_psi") cfg.tol_psi = as_double(value, "tol_psi");
    else if (key == "tol_sigma") cfg.tol_sigma = as_double(value, "tol_sigma");
    else if (key == "resonance_tol") cfg.resonance_tol = as_double(value, "resonance_tol");
    else if (key == "stagnation_tol") cfg.stagnation_tol = as_double(value, "stagnation_tol");
    else if (key == "horizon_classify") cfg.horizon_classify = as_long(value, "horizon_classify");
    else if (key == "horizon_invariance") cfg.horizon_invariance = as_long(value, "horizon_invariance");
    else if (key == "seed") {
      if (!value.is_number_integer()) throw Error("config-invalid", "seed must be an integer");
      cfg.seed = value.get<unsigned long long>();
    } else if (key == "threads") cfg.threads = static_cast<int>(as_long(value, "threads"));
    else if (key == "out") cfg.out_dir = as_string(value, "out");
    else if (key == "format") cfg.format = as_string(value, "format");
    else throw Error("config-invalid", "unknown config key: " + key);
  }
  validate(cfg);
  return cfg;
}

std::string canonical_text(const RunConfig& cfg) {
  // The germ is embedded by content, not by path, so editing the germ file
  // changes the hash even when the path stays the same.
  std::string germ_text = germ_config_text(resolve_germ(cfg));
  for (char& c : germ_text) {
    if (c == '\n') c = ';';
  }
  std::string out;
  out += "germ=" + germ_text;
  out += "|beta=" + fmt17(cfg.beta);
  out += "|theta=" + fmt17(cfg.theta);
  out += "|R=" + fmt17(cfg.R);
  out += "|tol_psi=" + fmt17(cfg.tol_psi);
  out += "|tol_sigma=" + fmt17(cfg.tol_sigma);
  out += "|resonance_tol=" + fmt17(cfg.resonance_tol);
  out += "|stagnation_tol=" + fmt17(cfg.stagnation_tol);
  out += "|horizon_classify=" + std::to_string(cfg.horizon_classify);
  out += "|horizon_invariance=" + std::to_string(cfg.horizon_invariance);
  out += "|format=" + cfg.format;
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  return hex64(fnv1a64(canonical_text(cfg)));
}

GermSpec resolve_germ(const RunConfig& cfg) {
  if (cfg.germ_file.empty()) return default_germ_k2();
  return load_germ_file(cfg.germ_file);
}

BasinParams basin_of(const RunConfig& cfg, int k) {
  BasinParams bp;
  bp.k = k;
  bp.beta = cfg.beta;
  bp.sector.R = cfg.R;
  bp.sector.theta = cfg.theta;
  return bp;
}

json report_header(const RunConfig& cfg) {
  json h;
  h["version"] = kVersionString;
  h["seed"] = cfg.seed;
  h["config_hash"] = config_hash(cfg);
  return h;
}

}  // namespace rbl
