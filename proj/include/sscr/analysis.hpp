#pragma once

#include <utility>
#include <vector>

#include "sscr/channel.hpp"
#include "sscr/dpss.hpp"
#include "sscr/types.hpp"

namespace sscr {

/// Multitaper local scattering function estimate of one stationarity region:
/// a nonnegative delay-Doppler power surface. power(n, j) is delay bin n in
/// {0..Q-1} and Doppler bin r = j - R/2 in {-R/2..R/2-1} for a region of R
/// snapshots.
struct LsfEstimate {
  MatX power;  // Q x R
  int region_index = 0;
  int taper_count_i = 0;
  int taper_count_j = 0;
  Real w_time = 0.0;
  Real w_freq = 0.0;
  Real delay_step_s = 0.0;    // T_s
  Real doppler_step_hz = 0.0; // 1/(R t_snap)
};

/// LSF of the region rows g (R x Q):
///   C_{n,r} = (1/IJ) sum_w | sum_{m,q} g_{m,q} G_{w;m,q}
///                            e^{-j 2 pi (r m / R - n q / Q)} |^2
/// evaluated with FFTs of the tapered block. Centered vs zero-based index
/// conventions only change phases inside |.|, so bins line up with standard
/// DFT bins.
LsfEstimate lsf(const CxMat& g_region, const TaperSet2D& tapers,
                const SamplingGrid& grid, int region_index = 0);

struct MarginalProfile {
  enum class Axis { kDelay, kDoppler };
  VecX values;  // nonnegative
  Axis axis = Axis::kDelay;
  Real step = 0.0;  // seconds per delay bin or Hz per Doppler bin
};

/// Power delay profile: PDP(n) = sum_r C_{n,r}.
MarginalProfile pdp_of(const LsfEstimate& estimate);

/// Doppler spectral density: DSD(r) = sum_n C_{n,r}.
MarginalProfile dsd_of(const LsfEstimate& estimate);

/// Total region power, in dB.
Real path_loss_db(const LsfEstimate& estimate);

/// Root second central moment of the normalized profile over its axis.
/// Throws std::invalid_argument on an all-zero profile.
Real rms_spread(const MarginalProfile& profile);

/// Right-continuous empirical CDF with jumps of 1/len; duplicate values are
/// merged into a single step.
std::vector<std::pair<Real, Real>> spread_cdf(std::vector<Real> spreads);

}  // namespace sscr
