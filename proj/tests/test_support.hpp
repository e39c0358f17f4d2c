// Shared helpers for building small test scenarios in memory.
#pragma once

#include <string>

#include "sscr/geometry.hpp"
#include "sscr/rng.hpp"
#include "sscr/types.hpp"

namespace sscr::test {

inline Material plain_material(Real loss_db = 3.0) {
  return {"wall", loss_db, 1.0};
}

inline Trajectory fixed_point(const Vec3& p, Real t_end = 10.0) {
  return {{{0.0, p}, {t_end, p}}};
}

inline Trajectory line(const Vec3& from, const Vec3& to, Real t_end = 10.0) {
  return {{{0.0, from}, {t_end, to}}};
}

inline SamplingGrid small_grid(int m = 16, int q = 16) {
  SamplingGrid grid;
  grid.snapshots_m = m;
  grid.freq_samples_q = q;
  grid.t_snap_s = 1e-3;
  grid.bandwidth_hz = 1e7;
  grid.carrier_hz = 3e9;
  return grid;
}

/// Free-space scenario: no facades, no scatterers, fixed TX, straight RX.
inline Scenario free_space(int m = 16, int q = 16) {
  Scenario sc;
  sc.grid.snapshots_m = m;
  sc.grid.freq_samples_q = q;
  sc.grid.t_snap_s = 1e-3;
  sc.grid.bandwidth_hz = 1e7;
  sc.grid.carrier_hz = 3e9;
  sc.tx_trajectory = fixed_point({0, 0, 5});
  sc.rx_trajectory = line({100, 0, 1.5}, {110, 0, 1.5});
  sc.seed = 42;
  return sc;
}

/// Rectangular facade in the plane y = y0 spanning x in [x0, x1], z in [0, h].
inline Facade wall_y(Real y0, Real x0, Real x1, Real h, Real loss_db = 3.0) {
  Facade f;
  f.corner = {x0, y0, 0};
  f.edge_u = {x1 - x0, 0, 0};
  f.edge_v = {0, 0, h};
  f.material = plain_material(loss_db);
  return f;
}

/// Uniform random point in a box, from a named substream.
inline Vec3 random_point(SubstreamRng& rng, const Vec3& lo, const Vec3& hi) {
  return {rng.uniform(lo.x(), hi.x()), rng.uniform(lo.y(), hi.y()),
          rng.uniform(lo.z(), hi.z())};
}

}  // namespace sscr::test
