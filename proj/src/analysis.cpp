#include "sscr/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace sscr {
namespace {

/// Unnormalized 2-D transform of one tapered block: forward DFT along time
/// (Doppler), conjugate/inverse DFT along frequency (delay).
CxMat delay_doppler_transform(const CxMat& tapered) {
  const long rows = tapered.rows();  // R snapshots
  const long cols = tapered.cols();  // Q subcarriers
  Eigen::FFT<Real> fft;

  // Delay axis: y[n] = sum_q h[q] e^{+j 2 pi n q / Q} = unscaled inverse DFT.
  CxMat stage1(rows, cols);
  CxVec in(cols), out(cols);
  for (long m = 0; m < rows; ++m) {
    in = tapered.row(m).transpose();
    fft.inv(out, in);
    stage1.row(m) = out.transpose() * static_cast<Real>(cols);
  }

  // Doppler axis: z[r] = sum_m y[m] e^{-j 2 pi r m / R} = forward DFT.
  CxMat stage2(rows, cols);
  CxVec tin(rows), tout(rows);
  for (long n = 0; n < cols; ++n) {
    tin = stage1.col(n);
    fft.fwd(tout, tin);
    stage2.col(n) = tout;
  }
  return stage2;  // (m index holds Doppler bin, column n holds delay bin)
}

}  // namespace

LsfEstimate lsf(const CxMat& g_region, const TaperSet2D& tapers,
                const SamplingGrid& grid, int region_index) {
  const long r_len = g_region.rows();
  const long q_len = g_region.cols();
  if (tapers.tapers.empty()) throw std::invalid_argument("lsf: empty taper set");
  if (tapers.tapers.front().rows() != r_len || tapers.tapers.front().cols() != q_len)
    throw std::invalid_argument("lsf: taper dimensions do not match the region block");

  LsfEstimate est;
  est.region_index = region_index;
  est.taper_count_i = tapers.count_i;
  est.taper_count_j = tapers.count_j;
  est.w_time = tapers.w_time;
  est.w_freq = tapers.w_freq;
  est.delay_step_s = grid.sample_period_s();
  est.doppler_step_hz = 1.0 / (static_cast<Real>(r_len) * grid.t_snap_s);
  est.power = MatX::Zero(q_len, r_len);

  for (const MatX& taper : tapers.tapers) {
    const CxMat spectrum = delay_doppler_transform(g_region.cwiseProduct(taper));
    // spectrum(b, n): FFT Doppler bin b, delay bin n. Column j of the LSF is
    // Doppler index r = j - R/2, i.e. FFT bin (r + R) mod R.
    for (long j = 0; j < r_len; ++j) {
      const long b = (j - r_len / 2 + r_len) % r_len;
      for (long n = 0; n < q_len; ++n)
        est.power(n, j) += std::norm(spectrum(b, n));
    }
  }
  est.power /= static_cast<Real>(tapers.tapers.size());
  return est;
}

MarginalProfile pdp_of(const LsfEstimate& estimate) {
  MarginalProfile p;
  p.axis = MarginalProfile::Axis::kDelay;
  p.step = estimate.delay_step_s;
  p.values = estimate.power.rowwise().sum();
  return p;
}

MarginalProfile dsd_of(const LsfEstimate& estimate) {
  MarginalProfile p;
  p.axis = MarginalProfile::Axis::kDoppler;
  p.step = estimate.doppler_step_hz;
  p.values = estimate.power.colwise().sum().transpose();
  return p;
}

Real path_loss_db(const LsfEstimate& estimate) {
  return power_to_db(estimate.power.sum());
}

Real rms_spread(const MarginalProfile& profile) {
  const Real total = profile.values.sum();
  if (!(total > 0.0)) throw std::invalid_argument("rms_spread: all-zero profile");
  const long n = profile.values.size();
  Real mean = 0.0;
  for (long i = 0; i < n; ++i)
    mean += profile.values(i) / total * static_cast<Real>(i) * profile.step;
  Real var = 0.0;
  for (long i = 0; i < n; ++i) {
    const Real x = static_cast<Real>(i) * profile.step - mean;
    var += profile.values(i) / total * x * x;
  }
  return std::sqrt(var);
}

std::vector<std::pair<Real, Real>> spread_cdf(std::vector<Real> spreads) {
  if (spreads.empty()) throw std::invalid_argument("spread_cdf: empty series");
  std::sort(spreads.begin(), spreads.end());
  const Real n = static_cast<Real>(spreads.size());
  std::vector<std::pair<Real, Real>> cdf;
  for (std::size_t i = 0; i < spreads.size(); ++i) {
    const Real value = spreads[i];
    if (!cdf.empty() && cdf.back().first == value)
      cdf.back().second = static_cast<Real>(i + 1) / n;
    else
      cdf.emplace_back(value, static_cast<Real>(i + 1) / n);
  }
  return cdf;
}

}  // namespace sscr
