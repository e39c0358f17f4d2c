#pragma once

#include <optional>

#include "sscr/channel.hpp"
#include "sscr/dpss.hpp"
#include "sscr/types.hpp"

namespace sscr {

/// Orthonormal band-limited time basis for reduced-rank emulation: the first
/// D DPSS of length M with half-bandwidth W_e = nu_max * t_snap.
struct SubspaceBasis {
  MatX u;  // D x M, rows orthonormal
  Real nu_max_hz = 0.0;
  Real t_snap_s = 0.0;

  int dim() const { return static_cast<int>(u.rows()); }
  int block_len() const { return static_cast<int>(u.cols()); }
};

/// D = 2 ceil(nu_max M t_snap) + 1 + d_extra (Slepian dimension rule).
/// Requires 0 < nu_max t_snap < 0.5 and D <= M.
SubspaceBasis subspace_basis(int m, Real t_snap_s, Real nu_max_hz, int d_extra);

/// Rank-D reconstruction: every frequency column g_{., q} is replaced by
/// U^T (U g_{., q}). Coefficient storage is D*Q complex numbers per block.
CtfBlock project_and_reconstruct(const CtfBlock& exact, const SubspaceBasis& basis);

/// 10 log10(|exact - approx|_F^2 / |exact|_F^2), floored at -300 dB.
/// Throws std::invalid_argument on a zero-energy exact block.
Real emulation_nmse_db(const CtfBlock& exact, const CtfBlock& approx);

struct EmulatorBudget {
  Real bandwidth_hz = 0.0;
  Real delay_support_s = 0.0;   // T_D
  Real bits_per_sample = 0.0;   // c1
  Real rate_dense_bps = 0.0;    // c1 B^2 T_D (taps refreshed every sample)
  Real rate_subspace_bps = 0.0; // c1 D Q / (M t_snap)
  Real reduction = 0.0;         // dense / subspace
};

/// Link-budget comparison of the dense tap-streaming emulator against the
/// subspace emulator. delay_support_s defaults to the grid's unambiguous
/// window Q/B when no measured MPC delay span is supplied.
EmulatorBudget budget_report(const SamplingGrid& grid, Real nu_max_hz, int d,
                             Real c1_bits,
                             std::optional<Real> delay_support_s = std::nullopt);

/// Per-MPC emulation route: region geometry is enumerated once, each path's
/// per-snapshot complex coefficient sequence is projected onto the basis, and
/// the CTF is re-synthesized from the reconstructed coefficients with the
/// region-frozen delays. Equivalent to the per-column projection by linearity
/// when the block forms a single region.
CtfBlock emulate_ctf_per_mpc(const Scenario& scenario, const EnumerateOptions& options,
                             const SubspaceBasis& basis, const AntennaPattern& tx_pattern,
                             const AntennaPattern& rx_pattern, const FilterResponse& filter);

}  // namespace sscr
