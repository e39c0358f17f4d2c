#include "sscr/jcas.hpp"

#include <cmath>
#include <stdexcept>

namespace sscr {

Real backscatter_pathloss_db(const RadarTarget& target, Real f_hz) {
  if (!(target.sigma_m2 > 0 && target.d1_m > 0 && target.d2_m > 0 && f_hz > 0))
    throw std::invalid_argument("backscatter_pathloss_db: inputs must be positive");
  const Real lambda = kSpeedOfLight / f_hz;
  const auto friis_db = [lambda](Real d) {
    return 20.0 * std::log10(4.0 * kPi * d / lambda);
  };
  return friis_db(target.d1_m) + friis_db(target.d2_m) +
         10.0 * std::log10(lambda * lambda / (4.0 * kPi)) -
         10.0 * std::log10(target.sigma_m2);
}

Real target_return_power_dbm(Real pt_dbm, Real gain_tx_dbi, Real gain_rx_dbi,
                             const RadarTarget& target, Real f_hz) {
  return pt_dbm + gain_tx_dbi + gain_rx_dbi - backscatter_pathloss_db(target, f_hz);
}

}  // namespace sscr
