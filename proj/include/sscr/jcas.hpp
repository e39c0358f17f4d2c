#pragma once

#include "sscr/types.hpp"

namespace sscr {

/// Sensing target for the mono-/bi-static backscatter link budget.
struct RadarTarget {
  Real sigma_m2 = 0.0;  // radar cross-section, linear m^2
  Real d1_m = 0.0;      // TX-target distance
  Real d2_m = 0.0;      // target-RX distance
};

/// Backscatter path loss in dB:
///   gamma(d1) + gamma(d2) + 10 log10(lambda^2 / 4 pi) - 10 log10(sigma)
/// with freespace gamma(d) = 20 log10(4 pi d / lambda). Algebraically equal
/// to the classical bistatic radar-equation loss
/// 10 log10((4 pi)^3 d1^2 d2^2 / (sigma lambda^2)).
Real backscatter_pathloss_db(const RadarTarget& target, Real f_hz);

/// Received target return: P_t + G_t + G_r - backscatter_pathloss_db.
Real target_return_power_dbm(Real pt_dbm, Real gain_tx_dbi, Real gain_rx_dbi,
                             const RadarTarget& target, Real f_hz);

}  // namespace sscr
