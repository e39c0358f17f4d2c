#pragma once

#include <optional>
#include <vector>

#include "sscr/geometry.hpp"
#include "sscr/scatter.hpp"
#include "sscr/types.hpp"

namespace sscr {

enum class MpcKind { kLos = 0, kSpecular = 1, kDiffuse = 2, kDiscrete = 3 };

const char* to_string(MpcKind kind);

/// One resolvable propagation path.
struct Mpc {
  Complex amplitude;     // path weight, carrier phase included
  Real delay_s = 0.0;
  Vec3 departure_dir;    // unit vector at TX, pointing into the path
  Vec3 arrival_dir;      // unit vector at RX, pointing into the path
  Real doppler_hz = 0.0;
  MpcKind kind = MpcKind::kLos;
  int order = 0;                  // specular bounce count
  std::vector<int> facade_chain;  // specular: facade indices in bounce order
  int scatterer_id = -1;          // diffuse / discrete scatterer index
};

/// Canonical (delay-sorted) path set of one snapshot.
struct MpcSet {
  std::vector<Mpc> mpcs;
  int snapshot_index = 0;

  int path_count() const { return static_cast<int>(mpcs.size()); }
};

/// Geometric Doppler shift: nu = (f_c/c) * (v_tx . e_dep + v_rx . e_arr)
/// plus, for a scatterer bounce, the bistatic term
/// (f_c/c) * v_s . (e_s->tx + e_s->rx). Equals -f_c * dtau/dt.
Real doppler_of(const Vec3& departure_dir, const Vec3& arrival_dir,
                const Vec3& v_tx, const Vec3& v_rx, const Vec3& v_scatterer,
                Real carrier_hz);

/// Line-of-sight path, or nullopt when blocked. Free-space magnitude
/// lambda/(4 pi d), phase -2 pi f_c d/c.
std::optional<Mpc> los_mpc(const Pose& tx, const Pose& rx, const Scenario& scenario,
                           const SamplingGrid& grid);

/// Image-method specular reflections over ordered facade chains of length
/// 1..max_order (max_order <= 3). Magnitude lambda/(4 pi L) with the chain's
/// per-bounce losses; every unfolded segment must hit its rectangle interior
/// and every physical segment must be unobstructed.
std::vector<Mpc> specular_mpcs(const Pose& tx, const Pose& rx, const Scenario& scenario,
                               const SamplingGrid& grid, int max_order);

/// Single-bounce paths via point and discrete scatterers visible from both
/// ends. Point scatterer magnitude lambda/(4 pi) * |g_s|/(d1 d2); discrete
/// scatterer magnitude sqrt(sigma lambda^2/(4 pi)^3)/(d1 d2).
std::vector<Mpc> diffuse_mpcs(const Pose& tx, const Pose& rx,
                              const std::vector<PointScatterer>& point_scatterers,
                              const std::vector<DiscreteScatterer>& discrete_scatterers,
                              const Scenario& scenario, const SamplingGrid& grid);

enum class MpcMode { kPerSnapshot, kPerRegion };

struct EnumerateOptions {
  MpcMode mode = MpcMode::kPerSnapshot;
  int region_len = 0;          // per-region mode: must divide M
  int max_order = 2;           // specular reflection order cap
  Real prune_floor_db = 60.0;  // discard paths this far below the strongest
  Real t_start_s = 0.0;        // trajectory time of snapshot 0
};

/// Full path enumeration for snapshot m: LOS + specular + diffuse, pruned
/// against the strongest path and sorted by delay. In per-region mode the
/// geometry is evaluated once at the region's center snapshot; delays evolve
/// as tau_p(m) = tau_p(m_c) - nu_p (m - m_c) t_snap / f_c with constant
/// magnitudes and Doppler-rotated phases.
MpcSet enumerate_mpcs(const Scenario& scenario,
                      const std::vector<PointScatterer>& point_scatterers,
                      int snapshot_m, const EnumerateOptions& options);

/// Keeps paths within prune_floor_db of the strongest and sorts by delay
/// (ties broken by kind, order, chain, scatterer id for a canonical order).
void prune_and_sort(std::vector<Mpc>& mpcs, Real prune_floor_db);

/// Evolve a region-center path set to snapshot offset dt = (m - m_c) t_snap.
Mpc evolve_mpc(const Mpc& center, Real dt, Real carrier_hz);

}  // namespace sscr
