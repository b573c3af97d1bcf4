#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace swave {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct ExperimentConfig {
  std::string problem = "linear";  // linear | sine-gordon
  double s = 0.5;
  std::uint64_t seed = 20260823;
  double T = 1.0;
  int samples = 100;
  std::vector<double> k_list;
  std::vector<int> n_cells_list;
  std::vector<std::string> schemes{"stm"};
  double k_exact = 0.0;
  int n_cells_exact = 0;
  int defect_substeps = 64;
  double energy_record_dt = 1.0;
  // Sine-Gordon expected-energy study (run separately from the error table).
  double sg_energy_k = 0.1;
  double sg_energy_T = 50.0;
  int sg_energy_samples = 2000;
  int sg_energy_n_cells = 10;
  int threads = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";
};

/// CLI overrides that beat config-file values.
struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> T;
  std::optional<int> threads;
  std::optional<std::string> out_dir;
};

/// Parse a JSON config file; unknown keys and invalid combinations raise
/// ConfigError naming the offending key. Fields not present keep the
/// defaults passed in.
ExperimentConfig parse_config(const std::string& path, const ConfigOverrides& overrides,
                              ExperimentConfig defaults = {});
ExperimentConfig parse_config_text(const std::string& json_text, const ConfigOverrides& overrides,
                                   ExperimentConfig defaults = {});

/// Divisibility / ordering rules shared by the runners.
void validate_config(const ExperimentConfig& cfg);

/// Serialize the effective config back to JSON text (manifest echo).
std::string config_to_json(const ExperimentConfig& cfg);

/// FNV-1a hash of the serialized config.
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Write a run manifest (seed, RNG identifier, config echo and hash,
/// version, timings in seconds).
void write_manifest(const std::string& path, const ExperimentConfig& cfg,
                    const std::map<std::string, double>& timings);

}  // namespace swave
