#include "sscr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sscr {
namespace {

bool finite(const Vec3& v) { return v.allFinite(); }

void require(bool ok, const std::string& invariant) {
  if (!ok) throw ValidationError(invariant);
}

}  // namespace

Vec3 Facade::mirror(const Vec3& p) const {
  const Vec3 n = normal().normalized();
  return p - 2.0 * n.dot(p - corner) * n;
}

std::vector<Facade> box_facades(const AxisAlignedBox& box) {
  const Vec3 d = box.max - box.min;
  const Vec3 ex(d.x(), 0, 0), ey(0, d.y(), 0), ez(0, 0, d.z());
  const Vec3& lo = box.min;
  std::vector<Facade> faces;
  faces.push_back({lo, ex, ey, box.material});                        // z = min
  faces.push_back({lo + ez, ex, ey, box.material});                   // z = max
  faces.push_back({lo, ex, ez, box.material});                        // y = min
  faces.push_back({lo + ey, ex, ez, box.material});                   // y = max
  faces.push_back({lo, ey, ez, box.material});                        // x = min
  faces.push_back({lo + ex, ey, ez, box.material});                   // x = max
  return faces;
}

void validate(const SamplingGrid& grid) {
  require(grid.snapshots_m >= 2, "grid M >= 2");
  require(grid.snapshots_m % 2 == 0, "grid M even");
  require(grid.freq_samples_q >= 2, "grid Q >= 2");
  require(grid.freq_samples_q % 2 == 0, "grid Q even");
  require(grid.t_snap_s > 0, "grid t_snap > 0");
  require(grid.bandwidth_hz > 0, "grid bandwidth_B > 0");
  require(grid.carrier_hz > grid.bandwidth_hz / 2, "grid carrier_fc > bandwidth_B/2");
}

void validate(const Scenario& scenario) {
  validate(scenario.grid);
  for (const auto& f : scenario.facades) {
    require(finite(f.corner) && finite(f.edge_u) && finite(f.edge_v),
            "facade coordinates finite");
    require(f.normal().squaredNorm() > 0, "facade edge_u x edge_v != 0");
    require(f.material.reflection_loss_db >= 0, "material reflection_loss_db >= 0");
    require(f.material.diffuse_gain_scale > 0, "material diffuse_gain_scale > 0");
  }
  for (const auto& s : scenario.discrete_scatterers) {
    require(finite(s.position) && finite(s.velocity), "scatterer coordinates finite");
    if (s.kind == ScattererKind::kStatic)
      require(s.velocity.isZero(0.0), "static scatterer velocity = 0");
  }
  for (const Trajectory* traj : {&scenario.tx_trajectory, &scenario.rx_trajectory}) {
    require(!traj->waypoints.empty(), "trajectory has >= 1 waypoint");
    for (std::size_t i = 0; i < traj->waypoints.size(); ++i) {
      require(std::isfinite(traj->waypoints[i].t) && finite(traj->waypoints[i].position),
              "waypoint finite");
      if (i > 0)
        require(traj->waypoints[i].t > traj->waypoints[i - 1].t,
                "waypoint times strictly increasing");
    }
  }
  require(scenario.scatter_config.density_per_m2 >= 0, "scatter density_per_m2 >= 0");
  require(scenario.scatter_config.gain_std_db >= 0, "scatter gain_std_db >= 0");
}

Pose sample_trajectory(const Trajectory& trajectory, Real t) {
  const auto& wp = trajectory.waypoints;
  if (wp.empty()) throw std::invalid_argument("trajectory has no waypoints");
  if (t < wp.front().t || t > wp.back().t)
    throw std::out_of_range("trajectory time out of range");
  if (wp.size() == 1) return {wp.front().position, Vec3::Zero()};

  // First waypoint with time strictly greater than t; at a shared waypoint
  // this selects the later segment.
  auto it = std::upper_bound(wp.begin(), wp.end(), t,
                             [](Real value, const Waypoint& w) { return value < w.t; });
  std::size_t k = static_cast<std::size_t>(it - wp.begin());
  k = (k == 0) ? 0 : k - 1;
  if (k >= wp.size() - 1) k = wp.size() - 2;  // t at the final waypoint

  const Waypoint& a = wp[k];
  const Waypoint& b = wp[k + 1];
  const Real span = b.t - a.t;
  const Vec3 slope = (b.position - a.position) / span;
  return {a.position + slope * (t - a.t), slope};
}

namespace {

/// Open-segment vs closed-rectangle intersection test.
bool segment_blocked_by(const Vec3& a, const Vec3& b, const Facade& f) {
  const Vec3 n = f.normal();
  const Vec3 d = b - a;
  const Real denom = n.dot(d);
  if (denom == 0.0) return false;  // parallel; in-plane grazing not counted
  const Real t = n.dot(f.corner - a) / denom;
  if (!(t > 0.0 && t < 1.0)) return false;  // endpoints excluded

  const Vec3 p = a + t * d - f.corner;
  const Real uu = f.edge_u.squaredNorm();
  const Real vv = f.edge_v.squaredNorm();
  const Real uv = f.edge_u.dot(f.edge_v);
  const Real det = uu * vv - uv * uv;
  const Real pu = p.dot(f.edge_u);
  const Real pv = p.dot(f.edge_v);
  const Real u = (pu * vv - pv * uv) / det;
  const Real v = (pv * uu - pu * uv) / det;
  return u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0;  // boundary blocks
}

}  // namespace

bool segment_visible(const Vec3& a, const Vec3& b, const Scenario& scenario,
                     std::span<const int> ignore) {
  for (int i = 0; i < static_cast<int>(scenario.facades.size()); ++i) {
    if (std::find(ignore.begin(), ignore.end(), i) != ignore.end()) continue;
    if (segment_blocked_by(a, b, scenario.facades[i])) return false;
  }
  return true;
}

}  // namespace sscr
