#include "sscr/modem.hpp"

#include <cmath>
#include <stdexcept>

#include "sscr/rng.hpp"
#include "sscr/stats.hpp"

namespace sscr {
namespace {

constexpr Real kInvSqrt2 = 0.70710678118654752440;

Complex qpsk_symbol(std::uint64_t bits) {
  return {(bits & 1) ? kInvSqrt2 : -kInvSqrt2, (bits & 2) ? kInvSqrt2 : -kInvSqrt2};
}

/// Genie zero-forcing decision; a dead subcarrier (g = 0) cannot be
/// equalized and counts as a symbol error.
bool symbol_error(Complex g, Complex x, Complex noise) {
  if (g == Complex(0, 0)) return true;
  const Complex estimate = (g * x + noise) / g;
  return (estimate.real() > 0) != (x.real() > 0) ||
         (estimate.imag() > 0) != (x.imag() > 0);
}

}  // namespace

std::pair<std::vector<FerResult>, std::vector<FerResult>> fer_experiment(
    const CtfBlock& exact, const CtfBlock& emulated, const ModemConfig& modem,
    std::uint64_t seed) {
  if (exact.g.rows() != emulated.g.rows() || exact.g.cols() != emulated.g.cols())
    throw std::invalid_argument("fer_experiment: block dimensions differ");
  if (modem.frames_per_position < 1)
    throw std::invalid_argument("fer_experiment: frames_per_position must be >= 1");

  const int positions = static_cast<int>(exact.g.rows());
  const int q_count = static_cast<int>(exact.g.cols());
  const int symbols = modem.symbols_per_frame > 0 ? modem.symbols_per_frame : q_count;

  const Real mean_exact = exact.g.squaredNorm() / static_cast<Real>(exact.g.size());
  if (!(mean_exact > 0.0))
    throw std::invalid_argument("fer_experiment: degenerate all-zero exact block");
  const Real mean_emulated = emulated.g.squaredNorm() / static_cast<Real>(emulated.g.size());
  // SNR is defined against each block's own mean |g|^2.
  const Real sigma_exact =
      modem.noiseless ? 0.0 : std::sqrt(mean_exact * db_to_power(-modem.snr_db));
  const Real sigma_emulated =
      modem.noiseless ? 0.0 : std::sqrt(mean_emulated * db_to_power(-modem.snr_db));

  std::vector<FerResult> fer_exact(positions), fer_emulated(positions);
  for (int m = 0; m < positions; ++m) {
    int errors_exact = 0, errors_emulated = 0;
    for (int frame = 0; frame < modem.frames_per_position; ++frame) {
      auto rng = SubstreamRng::substream(seed, "fer", static_cast<std::uint64_t>(m),
                                         static_cast<std::uint64_t>(frame));
      bool bad_exact = false, bad_emulated = false;
      for (int s = 0; s < symbols; ++s) {
        const int q = s % q_count;
        const Complex x = qpsk_symbol(rng.next_u64());
        const Complex noise = rng.circular_normal();  // same draw for both channels
        if (!bad_exact &&
            symbol_error(exact.g(m, q), x, sigma_exact * noise))
          bad_exact = true;
        if (!bad_emulated &&
            symbol_error(emulated.g(m, q), x, sigma_emulated * noise))
          bad_emulated = true;
      }
      errors_exact += bad_exact;
      errors_emulated += bad_emulated;
    }
    auto fill = [&](FerResult& r, int errors) {
      r.position = m;
      r.trials = modem.frames_per_position;
      r.errors = errors;
      r.fer = static_cast<Real>(errors) / r.trials;
      const auto [lo, hi] = clopper_pearson(errors, r.trials);
      r.ci_low = lo;
      r.ci_high = hi;
    };
    fill(fer_exact[m], errors_exact);
    fill(fer_emulated[m], errors_emulated);
  }
  return {std::move(fer_exact), std::move(fer_emulated)};
}

}  // namespace sscr
