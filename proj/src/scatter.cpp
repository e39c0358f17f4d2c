#include "sscr/scatter.hpp"

#include <cmath>

#include "sscr/geometry.hpp"
#include "sscr/rng.hpp"

namespace sscr {

std::vector<PointScatterer> place_scatterers(const Scenario& scenario) {
  const ScatterConfig& cfg = scenario.scatter_config;
  std::vector<PointScatterer> scatterers;
  if (cfg.density_per_m2 <= 0) return scatterers;

  for (int f = 0; f < static_cast<int>(scenario.facades.size()); ++f) {
    const Facade& facade = scenario.facades[f];
    const long long count = std::llround(cfg.density_per_m2 * facade.area());
    auto rng = SubstreamRng::substream(scenario.seed, cfg.rng_stream_label,
                                       static_cast<std::uint64_t>(f));
    for (long long i = 0; i < count; ++i) {
      const Real u = rng.uniform01();
      const Real v = rng.uniform01();
      const Real gain_db = cfg.gain_mean_db + cfg.gain_std_db * rng.normal();
      const Real amplitude = db_to_amplitude(gain_db) * facade.material.diffuse_gain_scale;
      const Real phase = rng.uniform(0.0, 2.0 * kPi);
      PointScatterer s;
      s.position = facade.point_at(u, v);
      s.complex_gain = std::polar(amplitude, phase);
      s.host_facade = f;
      scatterers.push_back(s);
    }
  }
  return scatterers;
}

}  // namespace sscr
