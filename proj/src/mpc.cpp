#include "sscr/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sscr {
namespace {

constexpr Real kMinLinkDistance = 1e-9;  // skip degenerate zero-length legs

struct PlaneHit {
  Vec3 point;
  bool ok = false;
};

/// Intersection of segment (a, b) with the facade plane, requiring the hit
/// strictly between the endpoints and strictly inside the rectangle.
PlaneHit interior_plane_hit(const Vec3& a, const Vec3& b, const Facade& f) {
  PlaneHit hit;
  const Vec3 n = f.normal();
  const Vec3 d = b - a;
  const Real denom = n.dot(d);
  if (denom == 0.0) return hit;
  const Real t = n.dot(f.corner - a) / denom;
  if (!(t > 0.0 && t < 1.0)) return hit;
  const Vec3 p = a + t * d;
  const Vec3 rel = p - f.corner;
  const Real uu = f.edge_u.squaredNorm();
  const Real vv = f.edge_v.squaredNorm();
  const Real uv = f.edge_u.dot(f.edge_v);
  const Real det = uu * vv - uv * uv;
  const Real pu = rel.dot(f.edge_u);
  const Real pv = rel.dot(f.edge_v);
  const Real u = (pu * vv - pv * uv) / det;
  const Real v = (pv * uu - pu * uv) / det;
  if (!(u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0)) return hit;
  hit.point = p;
  hit.ok = true;
  return hit;
}

Complex path_weight(Real magnitude, Real extra_phase, Real total_length,
                    Real carrier_hz) {
  const Real phase = extra_phase - 2.0 * kPi * carrier_hz * total_length / kSpeedOfLight;
  return std::polar(magnitude, phase);
}

}  // namespace

const char* to_string(MpcKind kind) {
  switch (kind) {
    case MpcKind::kLos: return "los";
    case MpcKind::kSpecular: return "specular";
    case MpcKind::kDiffuse: return "diffuse";
    case MpcKind::kDiscrete: return "discrete";
  }
  return "?";
}

Real doppler_of(const Vec3& departure_dir, const Vec3& arrival_dir,
                const Vec3& v_tx, const Vec3& v_rx, const Vec3& v_scatterer,
                Real carrier_hz) {
  const Real scale = carrier_hz / kSpeedOfLight;
  Real nu = scale * (v_tx.dot(departure_dir) + v_rx.dot(arrival_dir));
  // e_s->tx = -e_dep, e_s->rx = -e_arr for a single bounce.
  nu += scale * v_scatterer.dot(-departure_dir - arrival_dir);
  return nu;
}

std::optional<Mpc> los_mpc(const Pose& tx, const Pose& rx, const Scenario& scenario,
                           const SamplingGrid& grid) {
  if (tx.position == rx.position)
    throw std::invalid_argument("los_mpc: tx and rx positions coincide");
  if (!segment_visible(tx.position, rx.position, scenario)) return std::nullopt;

  const Vec3 d = rx.position - tx.position;
  const Real dist = d.norm();
  Mpc mpc;
  mpc.kind = MpcKind::kLos;
  mpc.delay_s = dist / kSpeedOfLight;
  mpc.departure_dir = d / dist;
  mpc.arrival_dir = -mpc.departure_dir;
  mpc.amplitude = path_weight(grid.wavelength_m() / (4.0 * kPi * dist), 0.0, dist,
                              grid.carrier_hz);
  mpc.doppler_hz = doppler_of(mpc.departure_dir, mpc.arrival_dir, tx.velocity,
                              rx.velocity, Vec3::Zero(), grid.carrier_hz);
  return mpc;
}

std::vector<Mpc> specular_mpcs(const Pose& tx, const Pose& rx, const Scenario& scenario,
                               const SamplingGrid& grid, int max_order) {
  if (max_order < 0 || max_order > 3)
    throw std::invalid_argument("specular_mpcs: max_order must be in [0, 3]");
  std::vector<Mpc> result;
  const int facade_count = static_cast<int>(scenario.facades.size());
  if (max_order == 0 || facade_count == 0) return result;

  std::vector<int> chain;
  std::vector<Vec3> images;

  // Depth-first enumeration of ordered facade chains without immediate
  // repeats; images of TX are extended incrementally along the chain.
  auto try_chain = [&]() {
    const int k = static_cast<int>(chain.size());
    std::vector<Vec3> points(k + 2);
    points[0] = tx.position;
    points[k + 1] = rx.position;
    // Walk backward: reflection point on facade chain[j] is where the
    // segment from image j+1 to the next recovered point crosses its plane.
    for (int j = k - 1; j >= 0; --j) {
      const PlaneHit hit =
          interior_plane_hit(images[j + 1], points[j + 2], scenario.facades[chain[j]]);
      if (!hit.ok) return;
      points[j + 1] = hit.point;
    }
    Real total_length = 0.0;
    for (int j = 0; j <= k; ++j) {
      const Vec3 seg = points[j + 1] - points[j];
      const Real len = seg.norm();
      if (len < kMinLinkDistance) return;
      total_length += len;
      int ignore[2];
      int n_ignore = 0;
      if (j > 0) ignore[n_ignore++] = chain[j - 1];
      if (j < k) ignore[n_ignore++] = chain[j];
      if (!segment_visible(points[j], points[j + 1], scenario, {ignore, ignore + n_ignore}))
        return;
    }

    Mpc mpc;
    mpc.kind = MpcKind::kSpecular;
    mpc.order = k;
    mpc.facade_chain = chain;
    mpc.delay_s = total_length / kSpeedOfLight;
    mpc.departure_dir = (points[1] - points[0]).normalized();
    mpc.arrival_dir = (points[k] - points[k + 1]).normalized();
    Real magnitude = grid.wavelength_m() / (4.0 * kPi * total_length);
    for (int f : chain)
      magnitude *= db_to_amplitude(-scenario.facades[f].material.reflection_loss_db);
    mpc.amplitude = path_weight(magnitude, 0.0, total_length, grid.carrier_hz);
    mpc.doppler_hz = doppler_of(mpc.departure_dir, mpc.arrival_dir, tx.velocity,
                                rx.velocity, Vec3::Zero(), grid.carrier_hz);
    result.push_back(std::move(mpc));
  };

  auto extend = [&](auto&& self) -> void {
    for (int f = 0; f < facade_count; ++f) {
      if (!chain.empty() && chain.back() == f) continue;
      chain.push_back(f);
      images.push_back(scenario.facades[f].mirror(images.back()));
      try_chain();
      if (static_cast<int>(chain.size()) < max_order) self(self);
      chain.pop_back();
      images.pop_back();
    }
  };
  images.push_back(tx.position);
  extend(extend);
  return result;
}

std::vector<Mpc> diffuse_mpcs(const Pose& tx, const Pose& rx,
                              const std::vector<PointScatterer>& point_scatterers,
                              const std::vector<DiscreteScatterer>& discrete_scatterers,
                              const Scenario& scenario, const SamplingGrid& grid) {
  std::vector<Mpc> result;
  const Real lambda = grid.wavelength_m();

  auto bounce = [&](const Vec3& pos, const Vec3& velocity, Real magnitude_num,
                    Real gain_phase, MpcKind kind, int id,
                    std::span<const int> ignore) -> void {
    const Vec3 leg1 = pos - tx.position;
    const Vec3 leg2 = pos - rx.position;
    const Real d1 = leg1.norm();
    const Real d2 = leg2.norm();
    if (d1 < kMinLinkDistance || d2 < kMinLinkDistance) return;
    if (!segment_visible(tx.position, pos, scenario, ignore)) return;
    if (!segment_visible(pos, rx.position, scenario, ignore)) return;

    Mpc mpc;
    mpc.kind = kind;
    mpc.scatterer_id = id;
    mpc.delay_s = (d1 + d2) / kSpeedOfLight;
    mpc.departure_dir = leg1 / d1;
    mpc.arrival_dir = leg2 / d2;
    mpc.amplitude = path_weight(magnitude_num / (d1 * d2), gain_phase, d1 + d2,
                                grid.carrier_hz);
    mpc.doppler_hz = doppler_of(mpc.departure_dir, mpc.arrival_dir, tx.velocity,
                                rx.velocity, velocity, grid.carrier_hz);
    result.push_back(std::move(mpc));
  };

  for (int i = 0; i < static_cast<int>(point_scatterers.size()); ++i) {
    const PointScatterer& s = point_scatterers[i];
    // The host facade never blocks its own scatterers.
    const int ignore[1] = {s.host_facade};
    bounce(s.position, s.velocity, lambda / (4.0 * kPi) * std::abs(s.complex_gain),
           std::arg(s.complex_gain), MpcKind::kDiffuse, i,
           {ignore, s.host_facade >= 0 ? 1u : 0u});
  }
  for (int i = 0; i < static_cast<int>(discrete_scatterers.size()); ++i) {
    const DiscreteScatterer& s = discrete_scatterers[i];
    const Real sigma_lin = db_to_power(s.gain_dbsm);
    const Real num = std::sqrt(sigma_lin * lambda * lambda /
                               ((4.0 * kPi) * (4.0 * kPi) * (4.0 * kPi)));
    bounce(s.position, s.velocity, num, 0.0, MpcKind::kDiscrete, i, {});
  }
  return result;
}

void prune_and_sort(std::vector<Mpc>& mpcs, Real prune_floor_db) {
  if (!mpcs.empty()) {
    Real max_mag = 0.0;
    for (const Mpc& m : mpcs) max_mag = std::max(max_mag, std::abs(m.amplitude));
    const Real floor = max_mag * db_to_amplitude(-prune_floor_db);
    std::erase_if(mpcs, [floor](const Mpc& m) { return std::abs(m.amplitude) < floor; });
  }
  std::sort(mpcs.begin(), mpcs.end(), [](const Mpc& a, const Mpc& b) {
    if (a.delay_s != b.delay_s) return a.delay_s < b.delay_s;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.order != b.order) return a.order < b.order;
    if (a.facade_chain != b.facade_chain) return a.facade_chain < b.facade_chain;
    return a.scatterer_id < b.scatterer_id;
  });
}

Mpc evolve_mpc(const Mpc& center, Real dt, Real carrier_hz) {
  Mpc m = center;
  m.delay_s = center.delay_s - center.doppler_hz * dt / carrier_hz;
  m.amplitude = center.amplitude * std::polar(1.0, 2.0 * kPi * center.doppler_hz * dt);
  return m;
}

MpcSet enumerate_mpcs(const Scenario& scenario,
                      const std::vector<PointScatterer>& point_scatterers,
                      int snapshot_m, const EnumerateOptions& options) {
  const int m_total = scenario.grid.snapshots_m;
  if (snapshot_m < 0 || snapshot_m >= m_total)
    throw std::out_of_range("enumerate_mpcs: snapshot outside block");

  int geometry_snapshot = snapshot_m;
  if (options.mode == MpcMode::kPerRegion) {
    if (options.region_len <= 0 || m_total % options.region_len != 0)
      throw std::invalid_argument("enumerate_mpcs: invalid region length (must divide M)");
    const int region = snapshot_m / options.region_len;
    geometry_snapshot = region * options.region_len + options.region_len / 2;
  }

  const Real t_geo = options.t_start_s + geometry_snapshot * scenario.grid.t_snap_s;
  const Pose tx = sample_trajectory(scenario.tx_trajectory, t_geo);
  const Pose rx = sample_trajectory(scenario.rx_trajectory, t_geo);

  std::vector<Mpc> mpcs;
  if (auto los = los_mpc(tx, rx, scenario, scenario.grid)) mpcs.push_back(*los);
  for (Mpc& m : specular_mpcs(tx, rx, scenario, scenario.grid, options.max_order))
    mpcs.push_back(std::move(m));
  for (Mpc& m : diffuse_mpcs(tx, rx, point_scatterers, scenario.discrete_scatterers,
                             scenario, scenario.grid))
    mpcs.push_back(std::move(m));

  prune_and_sort(mpcs, options.prune_floor_db);

  if (options.mode == MpcMode::kPerRegion && snapshot_m != geometry_snapshot) {
    const Real dt = (snapshot_m - geometry_snapshot) * scenario.grid.t_snap_s;
    for (Mpc& m : mpcs) m = evolve_mpc(m, dt, scenario.grid.carrier_hz);
    // Delay drift can reorder paths in principle; keep the set canonical.
    std::sort(mpcs.begin(), mpcs.end(),
              [](const Mpc& a, const Mpc& b) { return a.delay_s < b.delay_s; });
  }

  MpcSet set;
  set.mpcs = std::move(mpcs);
  set.snapshot_index = snapshot_m;
  return set;
}

}  // namespace sscr
