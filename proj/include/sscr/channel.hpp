#pragma once

#include <vector>

#include "sscr/mpc.hpp"
#include "sscr/types.hpp"

namespace sscr {

/// Complex antenna gain over direction. Tabulated patterns live on a uniform
/// (azimuth, elevation) grid covering the full sphere: azimuth wraps over
/// [-pi, pi), elevation spans [-pi/2, pi/2] inclusive; lookups interpolate
/// bilinearly.
class AntennaPattern {
 public:
  static AntennaPattern isotropic();
  /// gains(i, j) is the gain at azimuth -pi + 2 pi i / n_az and elevation
  /// -pi/2 + pi j / (n_el - 1); n_az >= 2, n_el >= 2.
  static AntennaPattern tabulated(CxMat gains);

  Complex gain(const Vec3& unit_dir) const;
  bool is_isotropic() const { return isotropic_; }

 private:
  AntennaPattern() = default;
  bool isotropic_ = true;
  CxMat gains_;
};

/// Combined band-limited TX/RX hardware response over the Q subcarriers.
struct FilterResponse {
  CxVec gamma;

  static FilterResponse all_ones(int q);
  /// Raised-cosine band-edge taper with the given rolloff in (0, 1].
  static FilterResponse raised_cosine(int q, Real rolloff);
};

/// Time-variant channel transfer function g_{m,q}; column j holds subcarrier
/// q = j - Q/2.
struct CtfBlock {
  CxMat g;  // M x Q
  SamplingGrid grid;
};

/// One snapshot of the channel frequency response:
///   g_q = gamma_q sum_p eta_p xi_R(beta_p) xi_T(alpha_p) e^{-j 2 pi theta_p q}
/// with theta_p = tau_p B / Q and q in {-Q/2 .. Q/2-1}. Throws
/// std::invalid_argument when a path delay reaches the unambiguous window
/// (theta >= 1), naming the offending path.
CxVec ctf_snapshot(const MpcSet& mpcs, const AntennaPattern& tx_pattern,
                   const AntennaPattern& rx_pattern, const FilterResponse& filter,
                   const SamplingGrid& grid);

/// Stacks ctf_snapshot over the M snapshots of a block starting at trajectory
/// time options.t_start_s. Scatterers are placed once per scenario; in
/// per-region mode the geometry is evaluated once per region.
CtfBlock ctf_block(const Scenario& scenario, const EnumerateOptions& options,
                   const AntennaPattern& tx_pattern, const AntennaPattern& rx_pattern,
                   const FilterResponse& filter);

/// Per-snapshot multiplicative channel: y_{m,q} = g_{m,q} x_{m,q}.
CxMat apply_channel(const CtfBlock& ctf, const CxMat& tx_symbols);

}  // namespace sscr
