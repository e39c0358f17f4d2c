#include "sscr/dpss.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace sscr {
namespace {

/// Sinc kernel A_ij = sin(2 pi W (i-j)) / (pi (i-j)), A_ii = 2W. The DPSS are
/// its eigenvectors; the eigenvalues are the band concentrations.
MatX sinc_kernel(int n, Real w) {
  MatX a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0 * w;
    for (int j = 0; j < i; ++j) {
      const Real d = static_cast<Real>(i - j);
      const Real v = std::sin(2.0 * kPi * w * d) / (kPi * d);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

struct CacheKey {
  int n;
  std::uint64_t w_bits;
  bool operator<(const CacheKey& o) const {
    return n != o.n ? n < o.n : w_bits < o.w_bits;
  }
};

/// Complete (K = N) set for one (N, W); dpss() slices the leading rows.
std::shared_ptr<const DpssSet> compute_full_set(int n, Real w) {
  VecX diag(n);
  VecX sub(n - 1);
  const Real cos_w = std::cos(2.0 * kPi * w);
  for (int i = 0; i < n; ++i) {
    const Real half = (static_cast<Real>(n - 1 - 2 * i)) / 2.0;
    diag(i) = half * half * cos_w;
  }
  for (int i = 1; i < n; ++i)
    sub(i - 1) = static_cast<Real>(i) * static_cast<Real>(n - i) / 2.0;

  Eigen::SelfAdjointEigenSolver<MatX> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dpss: tridiagonal eigensolver failed");

  auto set = std::make_shared<DpssSet>();
  set->half_bandwidth_w = w;
  set->sequences.resize(n, n);
  // Eigenvalues come back ascending; the largest belongs to the most
  // concentrated sequence.
  for (int k = 0; k < n; ++k) {
    VecX u = solver.eigenvectors().col(n - 1 - k);
    const Real mean = u.sum();
    Real sign_ref = mean;
    if (std::abs(mean) < 1e-12) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(u(i)) > 1e-12) {
          sign_ref = u(i);
          break;
        }
      }
    }
    if (sign_ref < 0) u = -u;
    set->sequences.row(k) = u.transpose();
  }

  const MatX kernel = sinc_kernel(n, w);
  VecX lam = (set->sequences * kernel).cwiseProduct(set->sequences).rowwise().sum();
  const Real below_one = std::nextafter(1.0, 0.0);
  const Real above_zero = std::numeric_limits<Real>::min();
  for (int k = 0; k < n; ++k) {
    lam(k) = std::clamp(lam(k), above_zero, below_one);
    // Saturation guard: the tridiagonal spectrum fixes the order; clip
    // sub-eps inversions among saturated values.
    if (k > 0 && lam(k) > lam(k - 1)) lam(k) = lam(k - 1);
  }
  set->concentrations = lam;
  return set;
}

std::shared_ptr<const DpssSet> cached_full_set(int n, Real w) {
  static std::shared_mutex mutex;
  static std::map<CacheKey, std::shared_ptr<const DpssSet>> cache;

  CacheKey key{n, 0};
  std::memcpy(&key.w_bits, &w, sizeof w);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto set = compute_full_set(n, w);
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(set)).first->second;
}

}  // namespace

DpssSet dpss(int n, Real w, int k) {
  if (n < 2) throw std::invalid_argument("dpss: N must be >= 2");
  if (!(w > 0.0 && w < 0.5))
    throw std::invalid_argument("dpss: W must satisfy 0 < W < 0.5");
  if (k < 1 || k > n) throw std::invalid_argument("dpss: K must satisfy 1 <= K <= N");

  const auto full = cached_full_set(n, w);
  DpssSet set;
  set.half_bandwidth_w = w;
  set.sequences = full->sequences.topRows(k);
  set.concentrations = full->concentrations.head(k);
  return set;
}

TaperSet2D tapers_2d(int m, int q, int i, int j, Real w_t, Real w_f) {
  const int max_i = 2 * static_cast<int>(std::floor(m * w_t));
  const int max_j = 2 * static_cast<int>(std::floor(q * w_f));
  if (i < 1 || j < 1) throw std::invalid_argument("tapers_2d: I and J must be >= 1");
  if (i > max_i || j > max_j) {
    std::ostringstream msg;
    msg << "tapers_2d: concentration guard violated; at these bandwidths the "
           "maximum is I = " << max_i << ", J = " << max_j;
    throw std::invalid_argument(msg.str());
  }

  const DpssSet time_set = dpss(m, w_t, i);
  const DpssSet freq_set = dpss(q, w_f, j);

  TaperSet2D tapers;
  tapers.count_i = i;
  tapers.count_j = j;
  tapers.w_time = w_t;
  tapers.w_freq = w_f;
  tapers.tapers.reserve(static_cast<std::size_t>(i) * j);
  for (int a = 0; a < i; ++a)
    for (int b = 0; b < j; ++b)
      tapers.tapers.push_back(time_set.sequences.row(a).transpose() *
                              freq_set.sequences.row(b));
  return tapers;
}

TaperSet2D default_tapers(int m, int q) {
  const int i = 3, j = 3;
  return tapers_2d(m, q, i, j, (i + 1) / (2.0 * m), (j + 1) / (2.0 * q));
}

}  // namespace sscr
