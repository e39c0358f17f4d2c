#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "sscr/analysis.hpp"
#include "sscr/emulate.hpp"
#include "sscr/io.hpp"
#include "sscr/jcas.hpp"
#include "sscr/pipeline.hpp"
#include "sscr/scenario_io.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitStageFailure = 3;

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<std::string> out_dir) {
  sscr::RunConfig config = sscr::load_run_config(config_path);
  if (seed) config.seed_override = *seed;
  if (out_dir) config.out_dir = *out_dir;
  try {
    const sscr::Manifest manifest = sscr::run_pipeline(config);
    std::cout << "wrote " << manifest.files.size() + 1 << " artifacts to "
              << config.out_dir << " (manifest.json included)\n";
    return kExitOk;
  } catch (const sscr::ValidationError&) {
    throw;  // validation problems keep exit code 2
  } catch (const std::exception& e) {
    std::cerr << "stage failure: " << e.what() << "\n";
    return kExitStageFailure;
  }
}

int cmd_analyze(const std::string& ctf_path, const std::string& out_dir, int region_len,
                int taper_i, int taper_j) {
  const sscr::CtfBlock block = sscr::read_ctf(ctf_path);
  fs::create_directories(out_dir);
  const int r_len = region_len > 0 ? region_len : block.grid.snapshots_m;
  if (r_len % 2 != 0 || block.grid.snapshots_m % r_len != 0)
    throw sscr::ValidationError("region length must be even and divide M");
  const int q_len = block.grid.freq_samples_q;
  const auto tapers = sscr::tapers_2d(r_len, q_len, taper_i, taper_j,
                                      (taper_i + 1) / (2.0 * r_len),
                                      (taper_j + 1) / (2.0 * q_len));

  std::vector<sscr::LsfEstimate> estimates;
  std::vector<std::pair<int, sscr::MarginalProfile>> pdps, dsds;
  std::vector<sscr::Real> spreads;
  for (int s = 0; s * r_len < block.grid.snapshots_m; ++s) {
    sscr::LsfEstimate est =
        sscr::lsf(block.g.middleRows(s * r_len, r_len), tapers, block.grid, s);
    pdps.emplace_back(s, sscr::pdp_of(est));
    dsds.emplace_back(s, sscr::dsd_of(est));
    spreads.push_back(sscr::rms_spread(pdps.back().second));
    std::cout << "region " << s << ": path loss " << sscr::path_loss_db(est)
              << " dB, rms delay spread " << spreads.back() << " s\n";
    estimates.push_back(std::move(est));
  }
  const auto join = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
  sscr::write_lsf_csv(join("lsf.csv"), estimates);
  sscr::write_profile_csv(join("pdp.csv"), pdps);
  sscr::write_profile_csv(join("dsd.csv"), dsds);
  sscr::write_cdf_csv(join("cdf.csv"), sscr::spread_cdf(spreads));
  sscr::write_ctf_mag_csv(join("ctf_mag.csv"), block);
  std::cout << "wrote lsf/pdp/dsd/cdf/ctf_mag CSVs to " << out_dir << "\n";
  return kExitOk;
}

int cmd_emulate(const std::string& ctf_path, const std::string& out_dir, double nu_max,
                int d_extra, double c1_bits, std::optional<double> delay_support) {
  const sscr::CtfBlock block = sscr::read_ctf(ctf_path);
  fs::create_directories(out_dir);
  const sscr::SubspaceBasis basis =
      sscr::subspace_basis(block.grid.snapshots_m, block.grid.t_snap_s, nu_max, d_extra);
  const sscr::CtfBlock approx = sscr::project_and_reconstruct(block, basis);
  const double nmse = sscr::emulation_nmse_db(block, approx);

  const auto join = [&](const char* name) { return (fs::path(out_dir) / name).string(); };
  sscr::write_ctf(join("ctf_emulated.bin"), join("ctf_emulated.json"), approx);
  std::optional<sscr::Real> t_d;
  if (delay_support) t_d = *delay_support;
  sscr::write_budget_json(join("budget.json"),
                          sscr::budget_report(block.grid, nu_max, basis.dim(), c1_bits, t_d));
  std::cout << "subspace dimension D = " << basis.dim() << " of M = "
            << block.grid.snapshots_m << ", reconstruction NMSE = " << nmse << " dB\n"
            << "wrote ctf_emulated.bin/json and budget.json to " << out_dir << "\n";
  return kExitOk;
}

int cmd_jcas(double d1, double d2, double sigma, double f_hz,
             std::optional<double> pt_dbm, double gt_dbi, double gr_dbi) {
  const sscr::RadarTarget target{sigma, d1, d2};
  const double loss = sscr::backscatter_pathloss_db(target, f_hz);
  std::cout << "backscatter path loss: " << loss << " dB\n";
  if (pt_dbm)
    std::cout << "target return power: "
              << sscr::target_return_power_dbm(*pt_dbm, gt_dbi, gr_dbi, target, f_hz)
              << " dBm\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"site-specific radio channel simulator"};
  app.require_subcommand(1);

  std::string config_path, ctf_path, out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_override;
  int region_len = 0, taper_i = 3, taper_j = 3, d_extra = 0;
  double nu_max = 0, c1_bits = 32.0, d1 = 0, d2 = 0, sigma = 0, f_hz = 0;
  double gt_dbi = 0, gr_dbi = 0;
  std::optional<double> pt_dbm, delay_support;

  auto* run = app.add_subcommand("run", "execute the pipeline from a run config");
  run->add_option("config", config_path, "run config JSON")->required();
  run->add_option("--seed", seed, "override the scenario seed");
  run->add_option("--out", out_override, "override the output directory");

  auto* analyze = app.add_subcommand("analyze", "LSF/PDP/DSD/CDF analysis of a CTF block");
  analyze->add_option("ctf", ctf_path, "ctf.bin written by the pipeline")->required();
  analyze->add_option("--out", out_dir, "output directory");
  analyze->add_option("--region-len", region_len, "stationarity region length (0 = block)");
  analyze->add_option("--taper-i", taper_i, "time-domain taper count I");
  analyze->add_option("--taper-j", taper_j, "frequency-domain taper count J");

  auto* emulate = app.add_subcommand("emulate", "reduced-rank subspace emulation");
  emulate->add_option("ctf", ctf_path, "ctf.bin written by the pipeline")->required();
  emulate->add_option("--nu-max", nu_max, "maximum Doppler covered by the basis, Hz")
      ->required();
  emulate->add_option("--d-extra", d_extra, "extra basis dimensions beyond 2 ceil(nu M t)+1");
  emulate->add_option("--c1", c1_bits, "bits per complex sample in the budget");
  emulate->add_option("--t-d", delay_support, "delay support T_D in seconds (default Q/B)");
  emulate->add_option("--out", out_dir, "output directory");

  auto* jcas = app.add_subcommand("jcas", "backscatter link budget");
  jcas->add_option("--d1", d1, "TX-target distance, m")->required();
  jcas->add_option("--d2", d2, "target-RX distance, m")->required();
  jcas->add_option("--sigma", sigma, "radar cross-section, m^2")->required();
  jcas->add_option("--f", f_hz, "carrier frequency, Hz")->required();
  jcas->add_option("--pt", pt_dbm, "transmit power, dBm (enables return-power output)");
  jcas->add_option("--gt", gt_dbi, "TX antenna gain, dBi");
  jcas->add_option("--gr", gr_dbi, "RX antenna gain, dBi");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(config_path, seed, out_override);
    if (analyze->parsed())
      return cmd_analyze(ctf_path, out_dir, region_len, taper_i, taper_j);
    if (emulate->parsed())
      return cmd_emulate(ctf_path, out_dir, nu_max, d_extra, c1_bits, delay_support);
    if (jcas->parsed()) return cmd_jcas(d1, d2, sigma, f_hz, pt_dbm, gt_dbi, gr_dbi);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  } catch (const sscr::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStageFailure;
  }
  return kExitOk;
}
