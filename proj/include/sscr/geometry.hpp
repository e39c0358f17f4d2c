#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sscr/scatter.hpp"
#include "sscr/types.hpp"

namespace sscr {

/// Electromagnetic surface behaviour reduced to a per-bounce specular loss
/// and a linear scale on diffuse scatterer amplitudes.
struct Material {
  std::string name;
  Real reflection_loss_db = 0.0;  // >= 0, applied per specular bounce
  Real diffuse_gain_scale = 1.0;  // > 0
};

/// Planar rectangle spanned by two edge vectors from a corner point.
struct Facade {
  Vec3 corner;
  Vec3 edge_u;
  Vec3 edge_v;
  Material material;

  Vec3 normal() const { return edge_u.cross(edge_v); }
  Real area() const { return normal().norm(); }
  Vec3 point_at(Real u, Real v) const { return corner + u * edge_u + v * edge_v; }
  /// Mirror a point across the facade's (infinite) plane.
  Vec3 mirror(const Vec3& p) const;
};

struct AxisAlignedBox {
  Vec3 min;
  Vec3 max;
  Material material;
};

/// The six rectangular faces of an axis-aligned box.
std::vector<Facade> box_facades(const AxisAlignedBox& box);

enum class ScattererKind { kStatic, kMobile };

/// Discrete object with an equivalent radar-style scattering gain in dBsm.
struct DiscreteScatterer {
  Vec3 position;
  Vec3 velocity = Vec3::Zero();
  Real gain_dbsm = 0.0;
  ScattererKind kind = ScattererKind::kStatic;
};

struct Waypoint {
  Real t = 0.0;
  Vec3 position;
};

/// Piecewise-linear trajectory; waypoint times strictly increasing.
struct Trajectory {
  std::vector<Waypoint> waypoints;

  Real start_time() const { return waypoints.front().t; }
  Real end_time() const { return waypoints.back().t; }
};

struct Pose {
  Vec3 position;
  Vec3 velocity;
};

/// Time/frequency sampling lattice of one channel block.
struct SamplingGrid {
  int snapshots_m = 0;      // M, even, >= 2
  int freq_samples_q = 0;   // Q, even, >= 2
  Real t_snap_s = 0.0;      // snapshot interval
  Real bandwidth_hz = 0.0;  // B; delay-domain sample period T_s = 1/B
  Real carrier_hz = 0.0;    // f_c > B/2

  Real sample_period_s() const { return 1.0 / bandwidth_hz; }
  Real wavelength_m() const { return kSpeedOfLight / carrier_hz; }
  Real block_duration_s() const { return snapshots_m * t_snap_s; }
};

/// Fully validated simulation environment. Boxes from the scenario file are
/// expanded into facades at load time, so only facades appear here.
struct Scenario {
  std::vector<Facade> facades;
  std::vector<DiscreteScatterer> discrete_scatterers;
  Trajectory tx_trajectory;
  Trajectory rx_trajectory;
  SamplingGrid grid;
  ScatterConfig scatter_config;
  std::uint64_t seed = 0;
};

/// Checks every documented invariant; throws ValidationError naming the first
/// violated one.
void validate(const SamplingGrid& grid);
void validate(const Scenario& scenario);

/// Linear interpolation of the trajectory at time t. The velocity is the
/// slope of the active segment; at a waypoint shared by two segments the
/// later segment wins. Throws std::out_of_range outside [first, last].
Pose sample_trajectory(const Trajectory& trajectory, Real t);

/// True iff the open segment (a, b) intersects no facade outside `ignore`.
/// A hit anywhere on a facade's closed rectangle, boundary included, counts
/// as blocked so visibility is deterministic under floating-point noise.
bool segment_visible(const Vec3& a, const Vec3& b, const Scenario& scenario,
                     std::span<const int> ignore = {});

}  // namespace sscr
