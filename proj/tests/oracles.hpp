// Independent brute-force oracles used by the unit and acceptance tests.
// These deliberately avoid the library's own code paths: visibility goes
// through segment/triangle intersection, specular paths mirror the RX side
// instead of the TX side, the LSF is a literal double sum, and DPSS
// concentrations come from an explicit sinc-kernel double loop.
#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "sscr/dpss.hpp"
#include "sscr/geometry.hpp"
#include "sscr/mpc.hpp"
#include "sscr/types.hpp"

namespace sscr::oracle {

/// Segment/triangle intersection (Moller-Trumbore), closed triangle, open
/// segment.
inline bool segment_hits_triangle(const Vec3& a, const Vec3& b, const Vec3& v0,
                                  const Vec3& v1, const Vec3& v2) {
  const Vec3 dir = b - a;
  const Vec3 e1 = v1 - v0;
  const Vec3 e2 = v2 - v0;
  const Vec3 pvec = dir.cross(e2);
  const Real det = e1.dot(pvec);
  if (det == 0.0) return false;
  const Real inv_det = 1.0 / det;
  const Vec3 tvec = a - v0;
  const Real u = tvec.dot(pvec) * inv_det;
  if (u < 0.0 || u > 1.0) return false;
  const Vec3 qvec = tvec.cross(e1);
  const Real v = dir.dot(qvec) * inv_det;
  if (v < 0.0 || u + v > 1.0) return false;
  const Real t = e2.dot(qvec) * inv_det;
  return t > 0.0 && t < 1.0;
}

/// Rectangle hit = union of its two triangles.
inline bool segment_hits_rectangle(const Vec3& a, const Vec3& b, const Facade& f) {
  const Vec3 c0 = f.corner;
  const Vec3 c1 = f.corner + f.edge_u;
  const Vec3 c2 = f.corner + f.edge_v;
  const Vec3 c3 = f.corner + f.edge_u + f.edge_v;
  return segment_hits_triangle(a, b, c0, c1, c2) ||
         segment_hits_triangle(a, b, c1, c3, c2);
}

inline bool visible(const Vec3& a, const Vec3& b, const Scenario& scenario,
                    std::span<const int> ignore = {}) {
  for (int i = 0; i < static_cast<int>(scenario.facades.size()); ++i) {
    bool skip = false;
    for (int ig : ignore) skip = skip || ig == i;
    if (skip) continue;
    if (segment_hits_rectangle(a, b, scenario.facades[i])) return false;
  }
  return true;
}

struct SpecularPath {
  std::vector<int> chain;
  Real length = 0.0;
  std::vector<Vec3> points;  // tx, bounces..., rx
};

/// Image-chain enumeration mirroring the RX backward through the chain and
/// recovering bounce points by a forward walk from the TX. Visibility uses
/// the triangle oracle.
inline std::vector<SpecularPath> specular_paths(const Vec3& tx, const Vec3& rx,
                                                const Scenario& scenario, int max_order) {
  std::vector<SpecularPath> found;
  const int nf = static_cast<int>(scenario.facades.size());
  std::vector<int> chain;

  auto in_open_rectangle = [](const Vec3& p, const Facade& f) {
    const Vec3 rel = p - f.corner;
    const Real uu = f.edge_u.squaredNorm(), vv = f.edge_v.squaredNorm();
    const Real uv = f.edge_u.dot(f.edge_v);
    const Real det = uu * vv - uv * uv;
    const Real u = (rel.dot(f.edge_u) * vv - rel.dot(f.edge_v) * uv) / det;
    const Real v = (rel.dot(f.edge_v) * uu - rel.dot(f.edge_u) * uv) / det;
    return u > 0.0 && u < 1.0 && v > 0.0 && v < 1.0;
  };

  auto attempt = [&]() {
    const int k = static_cast<int>(chain.size());
    // Mirror RX through the chain in reverse order.
    std::vector<Vec3> rx_images(k + 1);
    rx_images[0] = rx;
    for (int j = 0; j < k; ++j)
      rx_images[j + 1] = scenario.facades[chain[k - 1 - j]].mirror(rx_images[j]);
    // Forward walk from TX toward the deepest image.
    std::vector<Vec3> points(k + 2);
    points[0] = tx;
    points[k + 1] = rx;
    for (int j = 0; j < k; ++j) {
      const Facade& f = scenario.facades[chain[j]];
      const Vec3& target = rx_images[k - j];  // rx mirrored through chain[j..k-1]
      const Vec3 n = f.normal();
      const Vec3 d = target - points[j];
      const Real denom = n.dot(d);
      if (denom == 0.0) return;
      const Real t = n.dot(f.corner - points[j]) / denom;
      if (!(t > 0.0 && t < 1.0)) return;
      points[j + 1] = points[j] + t * d;
      if (!in_open_rectangle(points[j + 1], f)) return;
    }
    Real length = 0.0;
    for (int j = 0; j <= k; ++j) {
      length += (points[j + 1] - points[j]).norm();
      int ignore[2];
      int n_ignore = 0;
      if (j > 0) ignore[n_ignore++] = chain[j - 1];
      if (j < k) ignore[n_ignore++] = chain[j];
      if (!visible(points[j], points[j + 1], scenario, {ignore, ignore + n_ignore}))
        return;
    }
    found.push_back({chain, length, points});
  };

  auto extend = [&](auto&& self) -> void {
    for (int f = 0; f < nf; ++f) {
      if (!chain.empty() && chain.back() == f) continue;
      chain.push_back(f);
      attempt();
      if (static_cast<int>(chain.size()) < max_order) self(self);
      chain.pop_back();
    }
  };
  if (max_order > 0) extend(extend);
  return found;
}

/// Path delay when TX/RX (and any bounce scatterer) are displaced by their
/// velocities times dt; the specular facade chain is held fixed. Used for the
/// finite-difference Doppler check nu = -f_c (tau(+dt) - tau(-dt)) / (2 dt).
inline std::optional<Real> path_delay_at(const Mpc& mpc, const Pose& tx, const Pose& rx,
                                         const Scenario& scenario,
                                         const Vec3& scatter_pos, const Vec3& scatter_vel,
                                         Real dt) {
  const Vec3 tx_pos = tx.position + tx.velocity * dt;
  const Vec3 rx_pos = rx.position + rx.velocity * dt;
  switch (mpc.kind) {
    case MpcKind::kLos:
      return (rx_pos - tx_pos).norm() / kSpeedOfLight;
    case MpcKind::kDiffuse:
    case MpcKind::kDiscrete: {
      const Vec3 s = scatter_pos + scatter_vel * dt;
      return ((s - tx_pos).norm() + (rx_pos - s).norm()) / kSpeedOfLight;
    }
    case MpcKind::kSpecular: {
      // Unfolded length: |rx - mirrored tx| through the fixed chain.
      Vec3 image = tx_pos;
      for (int f : mpc.facade_chain) image = scenario.facades[f].mirror(image);
      return (rx_pos - image).norm() / kSpeedOfLight;
    }
  }
  return std::nullopt;
}

/// Forward ray walk for a specular path: reflect the departure direction at
/// each chain facade and check the walk ends at RX. Returns the terminal
/// distance from RX (meters).
inline Real forward_walk_miss(const Mpc& mpc, const Vec3& tx, const Vec3& rx,
                              const Scenario& scenario) {
  Vec3 origin = tx;
  Vec3 dir = mpc.departure_dir;
  for (int f : mpc.facade_chain) {
    const Facade& facade = scenario.facades[f];
    const Vec3 n = facade.normal();
    const Real denom = n.dot(dir);
    if (denom == 0.0) return std::numeric_limits<Real>::infinity();
    const Real t = n.dot(facade.corner - origin) / denom;
    if (t <= 0.0) return std::numeric_limits<Real>::infinity();
    origin += t * dir;
    const Vec3 unit_n = n.normalized();
    dir -= 2.0 * dir.dot(unit_n) * unit_n;
  }
  // Remaining straight flight to RX.
  const Real along = (rx - origin).dot(dir);
  return (rx - (origin + std::max(along, 0.0) * dir)).norm();
}

/// Literal double-sum evaluation of the multitaper LSF with centered time and
/// frequency indices.
inline MatX lsf_brute_force(const CxMat& g, const TaperSet2D& tapers) {
  const long m_len = g.rows();
  const long q_len = g.cols();
  MatX out = MatX::Zero(q_len, m_len);
  for (long n = 0; n < q_len; ++n) {
    for (long jr = 0; jr < m_len; ++jr) {
      const long r = jr - m_len / 2;
      Real acc = 0.0;
      for (const MatX& taper : tapers.tapers) {
        Complex sum = 0.0;
        for (long mi = 0; mi < m_len; ++mi) {
          const long m_prime = mi - m_len / 2;
          for (long qi = 0; qi < q_len; ++qi) {
            const long q = qi - q_len / 2;
            const Real phase =
                -2.0 * kPi * (static_cast<Real>(r * m_prime) / m_len -
                              static_cast<Real>(n * q) / q_len);
            sum += g(mi, qi) * taper(mi, qi) * Complex(std::cos(phase), std::sin(phase));
          }
        }
        acc += std::norm(sum);
      }
      out(n, jr) = acc / static_cast<Real>(tapers.tapers.size());
    }
  }
  return out;
}

/// Sinc-kernel quadratic form concentration, explicit double loop.
inline Real dpss_concentration(const VecX& u, Real w) {
  const long n = u.size();
  Real acc = 0.0;
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      const Real kernel = (i == j)
                              ? 2.0 * w
                              : std::sin(2.0 * kPi * w * static_cast<Real>(i - j)) /
                                    (kPi * static_cast<Real>(i - j));
      acc += u(i) * kernel * u(j);
    }
  }
  return acc;
}

/// Classical bistatic radar equation loss, 10 log10((4pi)^3 d1^2 d2^2 /
/// (sigma lambda^2)).
inline Real bistatic_radar_loss_db(Real d1, Real d2, Real sigma, Real f_hz) {
  const Real lambda = kSpeedOfLight / f_hz;
  const Real four_pi = 4.0 * kPi;
  return 10.0 * std::log10(four_pi * four_pi * four_pi * d1 * d1 * d2 * d2 /
                           (sigma * lambda * lambda));
}

}  // namespace sscr::oracle
