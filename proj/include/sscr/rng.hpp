#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace sscr {

/// FNV-1a 64-bit hash, used for labeling RNG substreams and for the
/// artifact manifest content hashes.
std::uint64_t fnv1a64(std::string_view data);

/// Counter-based substream RNG (xoshiro256** seeded through splitmix64).
///
/// Every consumer derives its own generator from (seed, label, indices), so
/// draws are a pure function of those keys and never depend on the order in
/// which independent work units execute. Uniform and normal variates are
/// built from raw 64-bit words, not std::*_distribution, so sequences are
/// identical across standard library implementations.
class SubstreamRng {
 public:
  /// Derive the substream keyed by (seed, label, i0, i1).
  static SubstreamRng substream(std::uint64_t seed, std::string_view label,
                                std::uint64_t i0 = 0, std::uint64_t i1 = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform01();
  double uniform(double a, double b);

  /// Standard normal via Box-Muller.
  double normal();

  /// Circularly symmetric complex normal with unit total variance.
  std::complex<double> circular_normal();

 private:
  explicit SubstreamRng(std::uint64_t key);
  std::uint64_t state_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace sscr
