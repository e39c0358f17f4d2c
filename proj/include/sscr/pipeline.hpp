#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sscr/modem.hpp"
#include "sscr/mpc.hpp"

namespace sscr {

/// Pipeline stages in canonical order; a run config selects a prefix.
enum class Stage { kLoad, kScatter, kMpc, kCtf, kAnalyze, kEmulate, kFer };

const char* to_string(Stage stage);

struct EmulationConfig {
  bool enabled = true;
  Real nu_max_hz = 0.0;
  int d_extra = 0;
  Real c1_bits = 32.0;  // bits per complex sample in the budget report
};

struct AnalysisConfig {
  int region_len = 0;  // 0 = whole block
  int taper_count_i = 3;
  int taper_count_j = 3;
  std::optional<Real> w_time;  // default (I+1)/(2R)
  std::optional<Real> w_freq;  // default (J+1)/(2Q)
};

/// Run configuration (JSON schema in docs/run_config_schema.md).
struct RunConfig {
  std::string scenario_path;
  std::string out_dir = "out";
  std::vector<Stage> stages;  // must be a prefix of the canonical order
  EnumerateOptions mpc;
  AnalysisConfig analysis;
  EmulationConfig emulation;
  ModemConfig modem;
  std::optional<std::uint64_t> seed_override;
};

RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir);

struct ManifestEntry {
  std::string name;
  std::string hash_hex;
  Stage stage;
};

struct Manifest {
  std::vector<ManifestEntry> files;
  bool failed = false;
  std::string failed_stage;
  std::string error;
};

/// Executes the configured stage prefix, writing every artifact (and the
/// manifest) under config.out_dir. Each stage consumes only persisted
/// upstream artifacts, so re-running a stage from disk reproduces identical
/// downstream files. On a stage failure the partial manifest is written with
/// a FAILED marker and the failing stage named, then the error is rethrown.
Manifest run_pipeline(const RunConfig& config);

/// Serialized manifest path helper (out_dir/manifest.json).
std::string manifest_path(const RunConfig& config);

}  // namespace sscr
