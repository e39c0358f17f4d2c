#include "sscr/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sscr {

AntennaPattern AntennaPattern::isotropic() { return AntennaPattern(); }

AntennaPattern AntennaPattern::tabulated(CxMat gains) {
  if (gains.rows() < 2 || gains.cols() < 2)
    throw std::invalid_argument("tabulated pattern needs at least a 2x2 grid");
  AntennaPattern p;
  p.isotropic_ = false;
  p.gains_ = std::move(gains);
  return p;
}

Complex AntennaPattern::gain(const Vec3& unit_dir) const {
  if (isotropic_) return {1.0, 0.0};
  const long n_az = gains_.rows();
  const long n_el = gains_.cols();
  const Real az = std::atan2(unit_dir.y(), unit_dir.x());              // [-pi, pi]
  const Real el = std::asin(std::clamp(unit_dir.z(), -1.0, 1.0));      // [-pi/2, pi/2]
  Real fi = (az + kPi) / (2.0 * kPi) * static_cast<Real>(n_az);        // wraps
  Real fj = (el + kPi / 2.0) / kPi * static_cast<Real>(n_el - 1);
  long i0 = static_cast<long>(std::floor(fi));
  long j0 = static_cast<long>(std::floor(fj));
  const Real wi = fi - static_cast<Real>(i0);
  Real wj = fj - static_cast<Real>(j0);
  i0 = ((i0 % n_az) + n_az) % n_az;
  const long i1 = (i0 + 1) % n_az;
  if (j0 >= n_el - 1) {  // exactly at the north pole
    j0 = n_el - 2;
    wj = 1.0;
  }
  const long j1 = j0 + 1;
  return (1 - wi) * (1 - wj) * gains_(i0, j0) + wi * (1 - wj) * gains_(i1, j0) +
         (1 - wi) * wj * gains_(i0, j1) + wi * wj * gains_(i1, j1);
}

FilterResponse FilterResponse::all_ones(int q) {
  return {CxVec::Ones(q)};
}

FilterResponse FilterResponse::raised_cosine(int q, Real rolloff) {
  if (!(rolloff > 0.0 && rolloff <= 1.0))
    throw std::invalid_argument("raised_cosine rolloff must be in (0, 1]");
  CxVec gamma(q);
  for (int j = 0; j < q; ++j) {
    const Real x = std::abs(static_cast<Real>(j - q / 2) / (q / 2.0));  // [0, 1]
    Real g = 1.0;
    if (x > 1.0 - rolloff)
      g = 0.5 * (1.0 + std::cos(kPi * (x - (1.0 - rolloff)) / rolloff));
    gamma(j) = g;
  }
  return {std::move(gamma)};
}

CxVec ctf_snapshot(const MpcSet& mpcs, const AntennaPattern& tx_pattern,
                   const AntennaPattern& rx_pattern, const FilterResponse& filter,
                   const SamplingGrid& grid) {
  const int q_count = grid.freq_samples_q;
  if (filter.gamma.size() != q_count)
    throw std::invalid_argument("filter length does not match Q");

  CxVec g = CxVec::Zero(q_count);
  for (std::size_t p = 0; p < mpcs.mpcs.size(); ++p) {
    const Mpc& mpc = mpcs.mpcs[p];
    const Real theta = mpc.delay_s * grid.bandwidth_hz / q_count;
    if (theta >= 1.0) {
      std::ostringstream msg;
      msg << "path " << p << " (" << to_string(mpc.kind) << ", delay " << mpc.delay_s
          << " s) exceeds the unambiguous delay window Q/B";
      throw std::invalid_argument(msg.str());
    }
    const Complex weight =
        mpc.amplitude * rx_pattern.gain(mpc.arrival_dir) * tx_pattern.gain(mpc.departure_dir);
    // e^{-j 2 pi theta q} accumulated by recurrence over q.
    const Complex step = std::polar(1.0, -2.0 * kPi * theta);
    Complex phasor = std::polar(1.0, -2.0 * kPi * theta * (-q_count / 2));
    for (int j = 0; j < q_count; ++j) {
      g(j) += weight * phasor;
      phasor *= step;
    }
  }
  return g.cwiseProduct(filter.gamma);
}

CtfBlock ctf_block(const Scenario& scenario, const EnumerateOptions& options,
                   const AntennaPattern& tx_pattern, const AntennaPattern& rx_pattern,
                   const FilterResponse& filter) {
  const SamplingGrid& grid = scenario.grid;
  const auto point_scatterers = place_scatterers(scenario);

  CtfBlock block;
  block.grid = grid;
  block.g.resize(grid.snapshots_m, grid.freq_samples_q);

  if (options.mode == MpcMode::kPerRegion) {
    if (options.region_len <= 0 || grid.snapshots_m % options.region_len != 0)
      throw std::invalid_argument("ctf_block: invalid region length (must divide M)");
    const int regions = grid.snapshots_m / options.region_len;
    for (int r = 0; r < regions; ++r) {
      const int center = r * options.region_len + options.region_len / 2;
      MpcSet center_set = enumerate_mpcs(scenario, point_scatterers, center, options);
      for (int m = r * options.region_len; m < (r + 1) * options.region_len; ++m) {
        MpcSet set;
        set.snapshot_index = m;
        set.mpcs.reserve(center_set.mpcs.size());
        const Real dt = (m - center) * grid.t_snap_s;
        for (const Mpc& c : center_set.mpcs)
          set.mpcs.push_back(evolve_mpc(c, dt, grid.carrier_hz));
        if (m != center)  // keep identical to enumerate_mpcs output
          std::sort(set.mpcs.begin(), set.mpcs.end(),
                    [](const Mpc& a, const Mpc& b) { return a.delay_s < b.delay_s; });
        block.g.row(m) = ctf_snapshot(set, tx_pattern, rx_pattern, filter, grid);
      }
    }
  } else {
    for (int m = 0; m < grid.snapshots_m; ++m) {
      const MpcSet set = enumerate_mpcs(scenario, point_scatterers, m, options);
      block.g.row(m) = ctf_snapshot(set, tx_pattern, rx_pattern, filter, grid);
    }
  }
  return block;
}

CxMat apply_channel(const CtfBlock& ctf, const CxMat& tx_symbols) {
  if (tx_symbols.rows() != ctf.g.rows() || tx_symbols.cols() != ctf.g.cols())
    throw std::invalid_argument("apply_channel: symbol matrix dimensions do not match CTF");
  return ctf.g.cwiseProduct(tx_symbols);
}

}  // namespace sscr
