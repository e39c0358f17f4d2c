#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sscr/channel.hpp"
#include "sscr/types.hpp"

namespace sscr {

/// Uncoded QPSK with genie zero-forcing per subcarrier. A frame carries
/// symbols_per_frame QPSK symbols mapped round-robin over the Q subcarriers
/// of one snapshot; the frame is errored iff any symbol decision is wrong.
struct ModemConfig {
  int frames_per_position = 400;
  int symbols_per_frame = 0;  // 0 = one symbol per subcarrier (Q)
  Real snr_db = 10.0;         // relative to mean |g|^2 over the block
  bool noiseless = false;
};

struct FerResult {
  int position = 0;
  int trials = 0;
  int errors = 0;
  Real fer = 0.0;
  Real ci_low = 0.0;
  Real ci_high = 1.0;
};

/// Runs the same seeded symbol and noise streams through the exact and the
/// emulated channel block and reports the per-position (per-snapshot) FER
/// with 95% Clopper-Pearson confidence intervals. Throws on an all-zero
/// exact block.
std::pair<std::vector<FerResult>, std::vector<FerResult>> fer_experiment(
    const CtfBlock& exact, const CtfBlock& emulated, const ModemConfig& modem,
    std::uint64_t seed);

}  // namespace sscr
