#include "sscr/rng.hpp"

#include <cmath>

namespace sscr {
namespace {

std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SubstreamRng::SubstreamRng(std::uint64_t key) {
  std::uint64_t s = key;
  for (auto& word : state_) word = splitmix64(s);
}

SubstreamRng SubstreamRng::substream(std::uint64_t seed, std::string_view label,
                                     std::uint64_t i0, std::uint64_t i1) {
  std::uint64_t key = mix(mix(mix(seed, fnv1a64(label)), i0), i1);
  return SubstreamRng(key);
}

std::uint64_t SubstreamRng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SubstreamRng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SubstreamRng::uniform(double a, double b) {
  return a + (b - a) * uniform01();
}

double SubstreamRng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  // 1 - u is in (0, 1], so the log never sees zero.
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform01()));
  const double phi = 2.0 * 3.14159265358979323846 * uniform01();
  cached_normal_ = r * std::sin(phi);
  has_cached_normal_ = true;
  return r * std::cos(phi);
}

std::complex<double> SubstreamRng::circular_normal() {
  constexpr double kInvSqrt2 = 0.70710678118654752440;
  const double re = normal();
  const double im = normal();
  return {re * kInvSqrt2, im * kInvSqrt2};
}

}  // namespace sscr
