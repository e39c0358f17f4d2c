#include "sscr/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "sscr/analysis.hpp"
#include "sscr/channel.hpp"
#include "sscr/emulate.hpp"
#include "sscr/io.hpp"
#include "sscr/scenario_io.hpp"

namespace sscr {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr Stage kStageOrder[] = {Stage::kLoad,    Stage::kScatter, Stage::kMpc,
                                 Stage::kCtf,     Stage::kAnalyze, Stage::kEmulate,
                                 Stage::kFer};

Stage stage_from_string(const std::string& name) {
  for (Stage s : kStageOrder)
    if (name == to_string(s)) return s;
  throw ValidationError("unknown stage '" + name + "'");
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + where);
}

struct StageContext {
  const RunConfig& config;
  fs::path out;
  Manifest manifest;
  Scenario scenario;  // populated by the load stage (from the echo artifact)

  std::string artifact(const std::string& name) const { return (out / name).string(); }
  void record(const std::string& name, Stage stage) {
    manifest.files.push_back({name, file_hash_hex(artifact(name)), stage});
  }
};

Scenario effective_scenario(const RunConfig& config) {
  Scenario sc = load_scenario(config.scenario_path);
  if (config.seed_override) sc.seed = *config.seed_override;
  return sc;
}

void stage_load(StageContext& ctx) {
  const Scenario sc = effective_scenario(ctx.config);
  std::ofstream out(ctx.artifact("scenario_echo.json"));
  out << canonical_json(sc);
  out.close();
  ctx.record("scenario_echo.json", Stage::kLoad);
  // Downstream stages consume the persisted echo, never the original file.
  ctx.scenario = load_scenario(ctx.artifact("scenario_echo.json"));
}

void stage_scatter(StageContext& ctx) {
  // Placement is a pure function of the scenario; this stage validates it and
  // reports the count. The mpc stage re-derives the same set from the echo.
  const auto scatterers = place_scatterers(ctx.scenario);
  std::cout << "[scatter] placed " << scatterers.size() << " point scatterers\n";
}

std::vector<MpcSet> enumerate_block(const Scenario& sc, const EnumerateOptions& options) {
  const auto point_scatterers = place_scatterers(sc);
  std::vector<MpcSet> sets;
  sets.reserve(sc.grid.snapshots_m);
  for (int m = 0; m < sc.grid.snapshots_m; ++m)
    sets.push_back(enumerate_mpcs(sc, point_scatterers, m, options));
  return sets;
}

EnumerateOptions block_options(const RunConfig& config, const Scenario& sc) {
  EnumerateOptions opt = config.mpc;
  if (opt.mode == MpcMode::kPerRegion && opt.region_len <= 0)
    opt.region_len = sc.grid.snapshots_m;
  return opt;
}

void stage_mpc(StageContext& ctx) {
  const auto sets = enumerate_block(ctx.scenario, block_options(ctx.config, ctx.scenario));
  write_mpcs_csv(ctx.artifact("mpcs.csv"), sets);
  ctx.record("mpcs.csv", Stage::kMpc);
}

void stage_ctf(StageContext& ctx) {
  const CtfBlock block = ctf_block(ctx.scenario, block_options(ctx.config, ctx.scenario),
                                   AntennaPattern::isotropic(), AntennaPattern::isotropic(),
                                   FilterResponse::all_ones(ctx.scenario.grid.freq_samples_q));
  write_ctf(ctx.artifact("ctf.bin"), ctx.artifact("ctf.json"), block);
  ctx.record("ctf.bin", Stage::kCtf);
  ctx.record("ctf.json", Stage::kCtf);
}

int analysis_region_len(const AnalysisConfig& cfg, const SamplingGrid& grid) {
  const int r_len = cfg.region_len > 0 ? cfg.region_len : grid.snapshots_m;
  if (r_len % 2 != 0 || grid.snapshots_m % r_len != 0)
    throw ValidationError("analysis region_len must be even and divide M");
  return r_len;
}

void stage_analyze(StageContext& ctx) {
  const CtfBlock block = read_ctf(ctx.artifact("ctf.bin"), ctx.artifact("ctf.json"));
  const AnalysisConfig& cfg = ctx.config.analysis;
  const int r_len = analysis_region_len(cfg, block.grid);
  const int q_len = block.grid.freq_samples_q;
  const Real w_t = cfg.w_time.value_or((cfg.taper_count_i + 1) / (2.0 * r_len));
  const Real w_f = cfg.w_freq.value_or((cfg.taper_count_j + 1) / (2.0 * q_len));
  const TaperSet2D tapers =
      tapers_2d(r_len, q_len, cfg.taper_count_i, cfg.taper_count_j, w_t, w_f);

  std::vector<LsfEstimate> estimates;
  std::vector<std::pair<int, MarginalProfile>> pdps, dsds;
  std::vector<Real> delay_spreads;
  for (int s = 0; s * r_len < block.grid.snapshots_m; ++s) {
    const CxMat region = block.g.middleRows(s * r_len, r_len);
    LsfEstimate est = lsf(region, tapers, block.grid, s);
    pdps.emplace_back(s, pdp_of(est));
    dsds.emplace_back(s, dsd_of(est));
    delay_spreads.push_back(rms_spread(pdps.back().second));
    estimates.push_back(std::move(est));
  }
  write_lsf_csv(ctx.artifact("lsf.csv"), estimates);
  write_profile_csv(ctx.artifact("pdp.csv"), pdps);
  write_profile_csv(ctx.artifact("dsd.csv"), dsds);
  write_cdf_csv(ctx.artifact("cdf.csv"), spread_cdf(delay_spreads));
  ctx.record("lsf.csv", Stage::kAnalyze);
  ctx.record("pdp.csv", Stage::kAnalyze);
  ctx.record("dsd.csv", Stage::kAnalyze);
  ctx.record("cdf.csv", Stage::kAnalyze);
}

SubspaceBasis pipeline_basis(const RunConfig& config, const SamplingGrid& grid) {
  return subspace_basis(grid.snapshots_m, grid.t_snap_s, config.emulation.nu_max_hz,
                        config.emulation.d_extra);
}

/// Max-minus-min path delay over the persisted MPC sets, floored at one
/// delay sample so a single-path channel still budgets one tap.
Real measured_delay_support(const std::string& mpcs_csv, const SamplingGrid& grid) {
  std::ifstream in(mpcs_csv);
  if (!in) throw std::runtime_error("emulate stage needs mpcs.csv: " + mpcs_csv);
  std::string line;
  std::getline(in, line);  // header
  Real lo = 0, hi = 0;
  bool any = false;
  while (std::getline(in, line)) {
    std::size_t pos = 0;
    for (int comma = 0; comma < 3; ++comma) pos = line.find(',', pos) + 1;
    const Real delay = std::stod(line.substr(pos));
    lo = any ? std::min(lo, delay) : delay;
    hi = any ? std::max(hi, delay) : delay;
    any = true;
  }
  return std::max(hi - lo, grid.sample_period_s());
}

void stage_emulate(StageContext& ctx) {
  const CtfBlock block = read_ctf(ctx.artifact("ctf.bin"), ctx.artifact("ctf.json"));
  const SubspaceBasis basis = pipeline_basis(ctx.config, block.grid);
  const CtfBlock approx = project_and_reconstruct(block, basis);
  const Real nmse = emulation_nmse_db(block, approx);
  std::cout << "[emulate] D = " << basis.dim() << ", NMSE = " << nmse << " dB\n";

  const Real t_d = measured_delay_support(ctx.artifact("mpcs.csv"), block.grid);
  const EmulatorBudget budget = budget_report(block.grid, ctx.config.emulation.nu_max_hz,
                                              basis.dim(), ctx.config.emulation.c1_bits, t_d);
  write_budget_json(ctx.artifact("budget.json"), budget);
  ctx.record("budget.json", Stage::kEmulate);
}

void stage_fer(StageContext& ctx) {
  const CtfBlock exact = read_ctf(ctx.artifact("ctf.bin"), ctx.artifact("ctf.json"));
  const SubspaceBasis basis = pipeline_basis(ctx.config, exact.grid);
  const CtfBlock emulated = project_and_reconstruct(exact, basis);
  const auto [fer_exact, fer_emulated] =
      fer_experiment(exact, emulated, ctx.config.modem, ctx.scenario.seed);
  write_fer_csv(ctx.artifact("fer.csv"), fer_exact, fer_emulated);
  ctx.record("fer.csv", Stage::kFer);
}

void write_manifest(const StageContext& ctx) {
  json files = json::array();
  for (const ManifestEntry& entry : ctx.manifest.files)
    files.push_back({{"name", entry.name},
                     {"fnv1a64", entry.hash_hex},
                     {"stage", to_string(entry.stage)}});
  json root;
  root["status"] = ctx.manifest.failed ? "FAILED" : "OK";
  if (ctx.manifest.failed) {
    root["failed_stage"] = ctx.manifest.failed_stage;
    root["error"] = ctx.manifest.error;
  }
  root["files"] = files;
  std::ofstream out(ctx.out / "manifest.json");
  out << root.dump(2) << "\n";
}

}  // namespace

const char* to_string(Stage stage) {
  switch (stage) {
    case Stage::kLoad: return "load";
    case Stage::kScatter: return "scatter";
    case Stage::kMpc: return "mpc";
    case Stage::kCtf: return "ctf";
    case Stage::kAnalyze: return "analyze";
    case Stage::kEmulate: return "emulate";
    case Stage::kFer: return "fer";
  }
  return "?";
}

RunConfig parse_run_config(const std::string& json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("run config parse error: ") + e.what());
  }
  reject_unknown_keys(root, {"scenario", "out_dir", "stages", "mpc", "analysis",
                             "emulation", "modem"},
                      "run config");

  RunConfig cfg;
  if (!root.contains("scenario"))
    throw ValidationError("run config missing 'scenario'");
  fs::path scenario = root["scenario"].get<std::string>();
  if (scenario.is_relative() && !base_dir.empty()) scenario = fs::path(base_dir) / scenario;
  cfg.scenario_path = scenario.string();
  if (root.contains("out_dir")) cfg.out_dir = root["out_dir"].get<std::string>();

  if (!root.contains("stages") || !root["stages"].is_array() || root["stages"].empty())
    throw ValidationError("run config needs a non-empty 'stages' array");
  for (const auto& s : root["stages"])
    cfg.stages.push_back(stage_from_string(s.get<std::string>()));
  for (std::size_t i = 0; i < cfg.stages.size(); ++i)
    if (cfg.stages[i] != kStageOrder[i])
      throw ValidationError("stages must form a prefix of "
                            "load,scatter,mpc,ctf,analyze,emulate,fer");

  if (root.contains("mpc")) {
    const json& m = root["mpc"];
    reject_unknown_keys(m, {"mode", "region_len", "max_order", "prune_floor_db",
                            "t_start_s"},
                        "mpc");
    if (m.contains("mode")) {
      const std::string mode = m["mode"].get<std::string>();
      if (mode == "per_snapshot")
        cfg.mpc.mode = MpcMode::kPerSnapshot;
      else if (mode == "per_region")
        cfg.mpc.mode = MpcMode::kPerRegion;
      else
        throw ValidationError("mpc.mode must be 'per_snapshot' or 'per_region'");
    }
    if (m.contains("region_len")) cfg.mpc.region_len = m["region_len"].get<int>();
    if (m.contains("max_order")) cfg.mpc.max_order = m["max_order"].get<int>();
    if (m.contains("prune_floor_db"))
      cfg.mpc.prune_floor_db = m["prune_floor_db"].get<Real>();
    if (m.contains("t_start_s")) cfg.mpc.t_start_s = m["t_start_s"].get<Real>();
  }

  if (root.contains("analysis")) {
    const json& a = root["analysis"];
    reject_unknown_keys(a, {"region_len", "taper_i", "taper_j", "w_time", "w_freq"},
                        "analysis");
    if (a.contains("region_len")) cfg.analysis.region_len = a["region_len"].get<int>();
    if (a.contains("taper_i")) cfg.analysis.taper_count_i = a["taper_i"].get<int>();
    if (a.contains("taper_j")) cfg.analysis.taper_count_j = a["taper_j"].get<int>();
    if (a.contains("w_time")) cfg.analysis.w_time = a["w_time"].get<Real>();
    if (a.contains("w_freq")) cfg.analysis.w_freq = a["w_freq"].get<Real>();
  }

  if (root.contains("emulation")) {
    const json& e = root["emulation"];
    reject_unknown_keys(e, {"enabled", "nu_max_hz", "d_extra", "c1_bits"}, "emulation");
    if (e.contains("enabled")) cfg.emulation.enabled = e["enabled"].get<bool>();
    if (e.contains("nu_max_hz")) cfg.emulation.nu_max_hz = e["nu_max_hz"].get<Real>();
    if (e.contains("d_extra")) cfg.emulation.d_extra = e["d_extra"].get<int>();
    if (e.contains("c1_bits")) cfg.emulation.c1_bits = e["c1_bits"].get<Real>();
  }

  if (root.contains("modem")) {
    const json& m = root["modem"];
    reject_unknown_keys(m, {"constellation", "frames_per_position", "symbols_per_frame",
                            "snr_db", "noiseless"},
                        "modem");
    if (m.contains("constellation") && m["constellation"].get<std::string>() != "qpsk")
      throw ValidationError("modem.constellation must be 'qpsk'");
    if (m.contains("frames_per_position"))
      cfg.modem.frames_per_position = m["frames_per_position"].get<int>();
    if (m.contains("symbols_per_frame"))
      cfg.modem.symbols_per_frame = m["symbols_per_frame"].get<int>();
    if (m.contains("snr_db")) cfg.modem.snr_db = m["snr_db"].get<Real>();
    if (m.contains("noiseless")) cfg.modem.noiseless = m["noiseless"].get<bool>();
  }

  const bool has_emulate =
      std::find(cfg.stages.begin(), cfg.stages.end(), Stage::kEmulate) != cfg.stages.end();
  const bool has_fer =
      std::find(cfg.stages.begin(), cfg.stages.end(), Stage::kFer) != cfg.stages.end();
  if ((has_emulate || has_fer) && !cfg.emulation.enabled)
    throw ValidationError("emulation disabled but emulate/fer stage requested");
  if ((has_emulate || has_fer) && !(cfg.emulation.nu_max_hz > 0))
    throw ValidationError("emulation.nu_max_hz must be > 0 for emulate/fer stages");
  if (has_fer && cfg.modem.frames_per_position < 100)
    throw ValidationError("modem.frames_per_position must be >= 100 when fer is enabled");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open run config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), fs::path(path).parent_path().string());
}

std::string manifest_path(const RunConfig& config) {
  return (fs::path(config.out_dir) / "manifest.json").string();
}

Manifest run_pipeline(const RunConfig& config) {
  StageContext ctx{config, fs::path(config.out_dir), {}, {}};
  fs::create_directories(ctx.out);

  for (Stage stage : config.stages) {
    try {
      switch (stage) {
        case Stage::kLoad: stage_load(ctx); break;
        case Stage::kScatter: stage_scatter(ctx); break;
        case Stage::kMpc: stage_mpc(ctx); break;
        case Stage::kCtf: stage_ctf(ctx); break;
        case Stage::kAnalyze: stage_analyze(ctx); break;
        case Stage::kEmulate: stage_emulate(ctx); break;
        case Stage::kFer: stage_fer(ctx); break;
      }
    } catch (const std::exception& e) {
      ctx.manifest.failed = true;
      ctx.manifest.failed_stage = to_string(stage);
      ctx.manifest.error = e.what();
      write_manifest(ctx);
      throw;
    }
  }
  write_manifest(ctx);
  return ctx.manifest;
}

}  // namespace sscr
