#include "sscr/io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sscr/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "CTF binary format assumes a little-endian host");

namespace sscr {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path, std::ios::openmode mode = {}) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::string sidecar_path(const std::string& bin_path) {
  const auto dot = bin_path.find_last_of('.');
  return (dot == std::string::npos ? bin_path : bin_path.substr(0, dot)) + ".json";
}

json grid_json(const SamplingGrid& grid) {
  return {{"M", grid.snapshots_m},
          {"Q", grid.freq_samples_q},
          {"t_snap", grid.t_snap_s},
          {"bandwidth_B", grid.bandwidth_hz},
          {"carrier_fc", grid.carrier_hz}};
}

SamplingGrid grid_from_json(const json& j) {
  SamplingGrid grid;
  grid.snapshots_m = j.at("M").get<int>();
  grid.freq_samples_q = j.at("Q").get<int>();
  grid.t_snap_s = j.at("t_snap").get<Real>();
  grid.bandwidth_hz = j.at("bandwidth_B").get<Real>();
  grid.carrier_hz = j.at("carrier_fc").get<Real>();
  return grid;
}

}  // namespace

std::string format_real(Real value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_ctf(const std::string& bin_path, const std::string& json_path,
               const CtfBlock& block) {
  auto out = open_out(bin_path, std::ios::binary);
  for (long m = 0; m < block.g.rows(); ++m) {
    for (long q = 0; q < block.g.cols(); ++q) {
      const float re = static_cast<float>(block.g(m, q).real());
      const float im = static_cast<float>(block.g(m, q).imag());
      out.write(reinterpret_cast<const char*>(&re), sizeof re);
      out.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }
  out.close();

  json sidecar;
  sidecar["grid"] = grid_json(block.grid);
  sidecar["dtype"] = "complex64";
  sidecar["layout"] = "row-major M x Q";
  sidecar["subcarrier_index"] = "column j holds q = j - Q/2";
  auto jout = open_out(json_path);
  jout << sidecar.dump(2) << "\n";
}

CtfBlock read_ctf(const std::string& bin_path, const std::string& json_path) {
  const std::string sidecar = json_path.empty() ? sidecar_path(bin_path) : json_path;
  std::ifstream jin(sidecar);
  if (!jin) throw std::runtime_error("cannot open CTF sidecar: " + sidecar);
  json meta = json::parse(jin);
  CtfBlock block;
  block.grid = grid_from_json(meta.at("grid"));

  std::ifstream in(bin_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open CTF binary: " + bin_path);
  block.g.resize(block.grid.snapshots_m, block.grid.freq_samples_q);
  for (long m = 0; m < block.g.rows(); ++m) {
    for (long q = 0; q < block.g.cols(); ++q) {
      float re = 0, im = 0;
      in.read(reinterpret_cast<char*>(&re), sizeof re);
      in.read(reinterpret_cast<char*>(&im), sizeof im);
      block.g(m, q) = Complex(re, im);
    }
  }
  if (!in) throw std::runtime_error("CTF binary shorter than M x Q: " + bin_path);
  return block;
}

void write_mpcs_csv(const std::string& path, const std::vector<MpcSet>& sets) {
  auto out = open_out(path);
  out << "m,kind,order,delay_s,amp_re,amp_im,doppler_hz,"
         "dep_x,dep_y,dep_z,arr_x,arr_y,arr_z\n";
  for (const MpcSet& set : sets) {
    for (const Mpc& p : set.mpcs) {
      out << set.snapshot_index << ',' << to_string(p.kind) << ',' << p.order << ','
          << format_real(p.delay_s) << ',' << format_real(p.amplitude.real()) << ','
          << format_real(p.amplitude.imag()) << ',' << format_real(p.doppler_hz);
      for (const Vec3* v : {&p.departure_dir, &p.arrival_dir})
        out << ',' << format_real(v->x()) << ',' << format_real(v->y()) << ','
            << format_real(v->z());
      out << '\n';
    }
  }
}

void write_ctf_mag_csv(const std::string& path, const CtfBlock& block) {
  auto out = open_out(path);
  out << "m,q,mag_db_rel\n";
  const Real peak = block.g.cwiseAbs().maxCoeff();
  for (long m = 0; m < block.g.rows(); ++m)
    for (long j = 0; j < block.g.cols(); ++j) {
      const Real mag = std::abs(block.g(m, j)) / (peak > 0 ? peak : 1.0);
      out << m << ',' << j - block.g.cols() / 2 << ','
          << format_real(20.0 * std::log10(std::max(mag, 1e-300))) << '\n';
    }
}

void write_lsf_csv(const std::string& path, const std::vector<LsfEstimate>& estimates) {
  auto out = open_out(path);
  out << "region,n_delay,r_doppler,delay_s,doppler_hz,power_db_rel\n";
  for (const LsfEstimate& est : estimates) {
    const Real peak = est.power.maxCoeff();
    const long r_len = est.power.cols();
    for (long n = 0; n < est.power.rows(); ++n) {
      for (long j = 0; j < r_len; ++j) {
        const long r = j - r_len / 2;
        const Real rel = est.power(n, j) / (peak > 0 ? peak : 1.0);
        out << est.region_index << ',' << n << ',' << r << ','
            << format_real(n * est.delay_step_s) << ','
            << format_real(r * est.doppler_step_hz) << ','
            << format_real(power_to_db(std::max(rel, 1e-300))) << '\n';
      }
    }
  }
}

void write_profile_csv(const std::string& path,
                       const std::vector<std::pair<int, MarginalProfile>>& by_region) {
  auto out = open_out(path);
  const bool delay_axis =
      !by_region.empty() &&
      by_region.front().second.axis == MarginalProfile::Axis::kDelay;
  out << (delay_axis ? "region,n_delay,delay_s,power,power_db_rel\n"
                     : "region,r_doppler,doppler_hz,power,power_db_rel\n");
  for (const auto& [region, profile] : by_region) {
    const Real peak = profile.values.maxCoeff();
    const long len = profile.values.size();
    for (long i = 0; i < len; ++i) {
      const long idx = delay_axis ? i : i - len / 2;
      const Real rel = profile.values(i) / (peak > 0 ? peak : 1.0);
      out << region << ',' << idx << ',' << format_real(idx * profile.step) << ','
          << format_real(profile.values(i)) << ','
          << format_real(power_to_db(std::max(rel, 1e-300))) << '\n';
    }
  }
}

void write_cdf_csv(const std::string& path,
                   const std::vector<std::pair<Real, Real>>& cdf) {
  auto out = open_out(path);
  out << "rms_delay_spread_s,cumulative_probability\n";
  for (const auto& [value, prob] : cdf)
    out << format_real(value) << ',' << format_real(prob) << '\n';
}

void write_fer_csv(const std::string& path, const std::vector<FerResult>& exact,
                   const std::vector<FerResult>& emulated) {
  auto out = open_out(path);
  out << "position,trials,errors_exact,fer_exact,ci_low_exact,ci_high_exact,"
         "errors_emulated,fer_emulated,ci_low_emulated,ci_high_emulated,ci_overlap\n";
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const FerResult& a = exact[i];
    const FerResult& b = emulated[i];
    const bool overlap = a.ci_low <= b.ci_high && b.ci_low <= a.ci_high;
    out << a.position << ',' << a.trials << ',' << a.errors << ','
        << format_real(a.fer) << ',' << format_real(a.ci_low) << ','
        << format_real(a.ci_high) << ',' << b.errors << ',' << format_real(b.fer)
        << ',' << format_real(b.ci_low) << ',' << format_real(b.ci_high) << ','
        << (overlap ? 1 : 0) << '\n';
  }
}

void write_budget_json(const std::string& path, const EmulatorBudget& budget) {
  json j = {{"B_hz", budget.bandwidth_hz},
            {"T_D_s", budget.delay_support_s},
            {"c1_bits", budget.bits_per_sample},
            {"rate_dense_bps", budget.rate_dense_bps},
            {"rate_subspace_bps", budget.rate_subspace_bps},
            {"reduction", budget.reduction}};
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

std::string file_hash_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash missing file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return hex;
}

}  // namespace sscr
