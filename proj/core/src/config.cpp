#include "swave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "swave/integrators.hpp"
#include "swave/rng.hpp"

namespace swave {

namespace {

using nlohmann::json;

bool nearly_integer(double x, double tol = 1e-9) {
  return std::abs(x - std::round(x)) < tol * std::max(1.0, std::abs(x));
}

ExperimentConfig from_json(const json& j, ExperimentConfig cfg) {
  static const std::set<std::string> known = {
      "problem",         "s",          "seed",        "T",
      "M",               "k_list",     "n_cells_list", "schemes",
      "k_exact",         "n_cells_exact", "defect_substeps", "energy_record_dt",
      "sg_energy_k",     "sg_energy_T", "sg_energy_M", "sg_energy_n_cells",
      "threads",         "out"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw ConfigError(key, "unknown key");
  try {
    if (j.contains("problem")) cfg.problem = j["problem"].get<std::string>();
    if (j.contains("s")) cfg.s = j["s"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("T")) cfg.T = j["T"].get<double>();
    if (j.contains("M")) cfg.samples = j["M"].get<int>();
    if (j.contains("k_list")) cfg.k_list = j["k_list"].get<std::vector<double>>();
    if (j.contains("n_cells_list"))
      cfg.n_cells_list = j["n_cells_list"].get<std::vector<int>>();
    if (j.contains("schemes")) cfg.schemes = j["schemes"].get<std::vector<std::string>>();
    if (j.contains("k_exact")) cfg.k_exact = j["k_exact"].get<double>();
    if (j.contains("n_cells_exact")) cfg.n_cells_exact = j["n_cells_exact"].get<int>();
    if (j.contains("defect_substeps")) cfg.defect_substeps = j["defect_substeps"].get<int>();
    if (j.contains("energy_record_dt"))
      cfg.energy_record_dt = j["energy_record_dt"].get<double>();
    if (j.contains("sg_energy_k")) cfg.sg_energy_k = j["sg_energy_k"].get<double>();
    if (j.contains("sg_energy_T")) cfg.sg_energy_T = j["sg_energy_T"].get<double>();
    if (j.contains("sg_energy_M")) cfg.sg_energy_samples = j["sg_energy_M"].get<int>();
    if (j.contains("sg_energy_n_cells"))
      cfg.sg_energy_n_cells = j["sg_energy_n_cells"].get<int>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError("(type)", e.what());
  }
  return cfg;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text,
                                   const ConfigOverrides& overrides,
                                   ExperimentConfig defaults) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("(file)", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig cfg = from_json(j, std::move(defaults));
  if (overrides.seed) cfg.seed = *overrides.seed;
  if (overrides.samples) cfg.samples = *overrides.samples;
  if (overrides.T) cfg.T = *overrides.T;
  if (overrides.threads) cfg.threads = *overrides.threads;
  if (overrides.out_dir) cfg.out_dir = *overrides.out_dir;
  validate_config(cfg);
  return cfg;
}

ExperimentConfig parse_config(const std::string& path, const ConfigOverrides& overrides,
                              ExperimentConfig defaults) {
  std::ifstream in(path);
  if (!in) throw ConfigError("(file)", "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides, std::move(defaults));
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.problem != "linear" && cfg.problem != "sine-gordon")
    throw ConfigError("problem", "must be 'linear' or 'sine-gordon'");
  if (cfg.s < 0.0) throw ConfigError("s", "must be nonnegative");
  if (cfg.T <= 0.0) throw ConfigError("T", "must be positive");
  if (cfg.samples < 2) throw ConfigError("M", "need at least 2 samples");
  for (const auto& name : cfg.schemes) {
    try {
      scheme_from_name(name);
    } catch (const std::invalid_argument&) {
      throw ConfigError("schemes", "unknown scheme '" + name + "'");
    }
  }
  if (cfg.k_exact > 0.0) {
    if (!nearly_integer(cfg.T / cfg.k_exact))
      throw ConfigError("k_exact", "must divide T");
    for (double k : cfg.k_list) {
      if (k <= cfg.k_exact)
        throw ConfigError("k_list", "every k must be strictly coarser than k_exact");
      if (!nearly_integer(k / cfg.k_exact))
        throw ConfigError("k_list", "k = " + std::to_string(k) +
                                        " is not an integer multiple of k_exact");
      if (!nearly_integer(cfg.T / k)) throw ConfigError("k_list", "k must divide T");
    }
  }
  for (int n : cfg.n_cells_list)
    if (n < 2) throw ConfigError("n_cells_list", "need n_cells >= 2");
  if (cfg.n_cells_exact > 0)
    for (int n : cfg.n_cells_list)
      if (n >= cfg.n_cells_exact)
        throw ConfigError("n_cells_exact", "reference mesh must be strictly finer");
  if (cfg.defect_substeps < 2) throw ConfigError("defect_substeps", "need at least 2");
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["problem"] = cfg.problem;
  j["s"] = cfg.s;
  j["seed"] = cfg.seed;
  j["T"] = cfg.T;
  j["M"] = cfg.samples;
  j["k_list"] = cfg.k_list;
  j["n_cells_list"] = cfg.n_cells_list;
  j["schemes"] = cfg.schemes;
  j["k_exact"] = cfg.k_exact;
  j["n_cells_exact"] = cfg.n_cells_exact;
  j["defect_substeps"] = cfg.defect_substeps;
  j["energy_record_dt"] = cfg.energy_record_dt;
  j["sg_energy_k"] = cfg.sg_energy_k;
  j["sg_energy_T"] = cfg.sg_energy_T;
  j["sg_energy_M"] = cfg.sg_energy_samples;
  j["sg_energy_n_cells"] = cfg.sg_energy_n_cells;
  j["threads"] = cfg.threads;
  j["out"] = cfg.out_dir;
  return j.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  const std::string text = config_to_json(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const std::map<std::string, double>& timings) {
  json j;
  j["version"] = "swave 0.1.0";
  j["rng"] = rng::kAlgorithm;
  j["seed"] = cfg.seed;
  j["config"] = nlohmann::json::parse(config_to_json(cfg));
  j["config_hash"] = config_hash(cfg);
  j["timings_seconds"] = timings;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_manifest: cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace swave
