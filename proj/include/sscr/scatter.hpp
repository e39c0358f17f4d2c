#pragma once

#include <string>
#include <vector>

#include "sscr/types.hpp"

namespace sscr {

struct Scenario;

/// Parameters for the stochastic diffuse-scatterer layer. Amplitudes are
/// log-normal: amplitude = 10^(N(gain_mean_db, gain_std_db^2) / 20), scaled
/// by the host facade material's diffuse_gain_scale.
struct ScatterConfig {
  Real density_per_m2 = 0.0;
  Real gain_mean_db = 0.0;
  Real gain_std_db = 0.0;
  std::string rng_stream_label = "diffuse";
};

/// A diffuse point scatterer pinned to a facade surface.
struct PointScatterer {
  Vec3 position;
  Complex complex_gain;  // log-normal amplitude, uniform phase
  int host_facade = -1;  // index into Scenario::facades
  Vec3 velocity = Vec3::Zero();
};

/// Distributes point scatterers uniformly over every facade. Per facade f the
/// count is round(density * area) and all draws come from the substream
/// (scenario.seed, rng_stream_label, f), so the result is a pure function of
/// the scenario and facade order never matters across facades.
std::vector<PointScatterer> place_scatterers(const Scenario& scenario);

}  // namespace sscr
