#pragma once

#include <string>
#include <vector>

#include "sscr/analysis.hpp"
#include "sscr/channel.hpp"
#include "sscr/emulate.hpp"
#include "sscr/modem.hpp"
#include "sscr/mpc.hpp"

namespace sscr {

/// Writes g as little-endian complex64 (float32 re, float32 im), row-major
/// M x Q, plus a JSON sidecar carrying the sampling grid.
void write_ctf(const std::string& bin_path, const std::string& json_path,
               const CtfBlock& block);

/// Reads a block written by write_ctf. The sidecar path is derived from the
/// binary path when omitted (same name, .json extension).
CtfBlock read_ctf(const std::string& bin_path, const std::string& json_path = "");

/// CSV of the per-snapshot path sets:
/// m,kind,order,delay_s,amp_re,amp_im,doppler_hz,dep_x..dep_z,arr_x..arr_z
void write_mpcs_csv(const std::string& path, const std::vector<MpcSet>& sets);

/// CSV heatmap of |g| in dB relative to the block maximum.
void write_ctf_mag_csv(const std::string& path, const CtfBlock& block);

/// CSV heatmaps/profiles in dB relative to each block's own maximum.
void write_lsf_csv(const std::string& path, const std::vector<LsfEstimate>& estimates);
void write_profile_csv(const std::string& path,
                       const std::vector<std::pair<int, MarginalProfile>>& by_region);

void write_cdf_csv(const std::string& path,
                   const std::vector<std::pair<Real, Real>>& cdf);

void write_fer_csv(const std::string& path, const std::vector<FerResult>& exact,
                   const std::vector<FerResult>& emulated);

void write_budget_json(const std::string& path, const EmulatorBudget& budget);

/// Deterministic decimal formatting used by every CSV writer (%.17g).
std::string format_real(Real value);

/// FNV-1a 64-bit hash of a file's bytes, hex-encoded.
std::string file_hash_hex(const std::string& path);

}  // namespace sscr
