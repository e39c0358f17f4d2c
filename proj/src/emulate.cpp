#include "sscr/emulate.hpp"

#include <cmath>
#include <stdexcept>

namespace sscr {

SubspaceBasis subspace_basis(int m, Real t_snap_s, Real nu_max_hz, int d_extra) {
  if (!(t_snap_s > 0)) throw std::invalid_argument("subspace_basis: t_snap must be > 0");
  const Real w = nu_max_hz * t_snap_s;
  if (!(w > 0.0))
    throw std::invalid_argument("subspace_basis: nu_max must be > 0");
  if (!(w < 0.5))
    throw std::invalid_argument(
        "subspace_basis: nu_max exceeds the Nyquist rate of the snapshot interval");
  const int d_base = 2 * static_cast<int>(std::ceil(nu_max_hz * m * t_snap_s)) + 1;
  const int d = d_base + d_extra;
  if (d < 1 || d > m)
    throw std::invalid_argument("subspace_basis: dimension D must satisfy 1 <= D <= M");

  SubspaceBasis basis;
  basis.nu_max_hz = nu_max_hz;
  basis.t_snap_s = t_snap_s;
  basis.u = dpss(m, w, d).sequences;
  return basis;
}

CtfBlock project_and_reconstruct(const CtfBlock& exact, const SubspaceBasis& basis) {
  if (basis.block_len() != exact.g.rows())
    throw std::invalid_argument("project_and_reconstruct: basis length does not match M");
  CtfBlock out;
  out.grid = exact.grid;
  // U^T (U G), done on real and imaginary parts to keep the products real.
  const MatX re = basis.u.transpose() * (basis.u * exact.g.real());
  const MatX im = basis.u.transpose() * (basis.u * exact.g.imag());
  out.g = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return out;
}

Real emulation_nmse_db(const CtfBlock& exact, const CtfBlock& approx) {
  if (exact.g.rows() != approx.g.rows() || exact.g.cols() != approx.g.cols())
    throw std::invalid_argument("emulation_nmse_db: block dimensions differ");
  const Real energy = exact.g.squaredNorm();
  if (!(energy > 0.0))
    throw std::invalid_argument("emulation_nmse_db: zero-energy exact block");
  const Real err = (exact.g - approx.g).squaredNorm();
  constexpr Real kFloorDb = -300.0;
  if (err <= energy * 1e-30) return kFloorDb;
  return std::max(kFloorDb, power_to_db(err / energy));
}

EmulatorBudget budget_report(const SamplingGrid& grid, Real nu_max_hz, int d,
                             Real c1_bits, std::optional<Real> delay_support_s) {
  if (d < 1) throw std::invalid_argument("budget_report: D must be >= 1");
  if (!(c1_bits > 0)) throw std::invalid_argument("budget_report: c1 must be > 0");
  (void)nu_max_hz;

  EmulatorBudget budget;
  budget.bandwidth_hz = grid.bandwidth_hz;
  budget.delay_support_s =
      delay_support_s.value_or(grid.freq_samples_q / grid.bandwidth_hz);
  budget.bits_per_sample = c1_bits;
  budget.rate_dense_bps =
      c1_bits * grid.bandwidth_hz * grid.bandwidth_hz * budget.delay_support_s;
  budget.rate_subspace_bps = c1_bits * static_cast<Real>(d) * grid.freq_samples_q /
                             (grid.snapshots_m * grid.t_snap_s);
  budget.reduction = budget.rate_dense_bps / budget.rate_subspace_bps;
  return budget;
}

CtfBlock emulate_ctf_per_mpc(const Scenario& scenario, const EnumerateOptions& options,
                             const SubspaceBasis& basis, const AntennaPattern& tx_pattern,
                             const AntennaPattern& rx_pattern, const FilterResponse& filter) {
  const SamplingGrid& grid = scenario.grid;
  if (basis.block_len() != grid.snapshots_m)
    throw std::invalid_argument("emulate_ctf_per_mpc: basis length does not match M");
  EnumerateOptions region_options = options;
  region_options.mode = MpcMode::kPerRegion;
  region_options.region_len = grid.snapshots_m;  // one region spanning the block

  const auto point_scatterers = place_scatterers(scenario);
  const int r_len = region_options.region_len;
  const int center = r_len / 2;
  const MpcSet center_set =
      enumerate_mpcs(scenario, point_scatterers, center, region_options);
  const int paths = center_set.path_count();

  CtfBlock block;
  block.grid = grid;
  block.g.resize(grid.snapshots_m, grid.freq_samples_q);

  // Per-path coefficient tracks over the block, projected onto the basis.
  CxMat coeff = CxMat::Zero(r_len, std::max(paths, 1));
  for (int m = 0; m < r_len; ++m) {
    const Real dt = (m - center) * grid.t_snap_s;
    for (int p = 0; p < paths; ++p)
      coeff(m, p) = center_set.mpcs[p].amplitude *
                    std::polar(1.0, 2.0 * kPi * center_set.mpcs[p].doppler_hz * dt);
  }
  const MatX coeff_re = basis.u.transpose() * (basis.u * coeff.real());
  const MatX coeff_im = basis.u.transpose() * (basis.u * coeff.imag());

  for (int m = 0; m < r_len; ++m) {
    MpcSet set;
    set.snapshot_index = m;
    set.mpcs.reserve(paths);
    const Real dt = (m - center) * grid.t_snap_s;
    for (int p = 0; p < paths; ++p) {
      Mpc mpc = center_set.mpcs[p];
      // Region-frozen delay drift as in evolve_mpc; the amplitude comes from
      // the reconstructed coefficient track.
      mpc.delay_s = mpc.delay_s - mpc.doppler_hz * dt / grid.carrier_hz;
      mpc.amplitude = Complex(coeff_re(m, p), coeff_im(m, p));
      set.mpcs.push_back(std::move(mpc));
    }
    block.g.row(m) = ctf_snapshot(set, tx_pattern, rx_pattern, filter, grid);
  }
  return block;
}

}  // namespace sscr
