#pragma once

#include <vector>

#include "sscr/types.hpp"

namespace sscr {

/// Discrete prolate spheroidal sequences: the K length-N sequences most
/// energy-concentrated in the band [-W, W] cycles/sample.
struct DpssSet {
  MatX sequences;       // K x N, rows orthonormal, ordered by concentration
  VecX concentrations;  // in (0, 1), non-increasing
  Real half_bandwidth_w = 0.0;
};

/// Computes the DPSS set as eigenvectors of the symmetric tridiagonal Slepian
/// matrix (diagonal ((N-1-2i)/2)^2 cos(2 pi W), off-diagonal i(N-i)/2),
/// ordered by concentration descending. Concentrations are evaluated a
/// posteriori from the sinc-kernel quadratic form. Sign convention: positive
/// mean, or positive first non-negligible element when the mean vanishes.
///
/// For large N*W the leading concentrations saturate at 1 within double
/// precision; values are clamped into (0, 1) and ordered by the tridiagonal
/// spectrum, so ties at the saturation level may appear.
///
/// Results are cached by (N, W); the cache is safe for concurrent use.
DpssSet dpss(int n, Real w, int k);

/// Separable 2-D tapers G_{(i,j)} = u_i (x) v_j with flat index w = i*J + j;
/// each taper has unit Frobenius norm.
struct TaperSet2D {
  std::vector<MatX> tapers;  // IJ matrices of size M x Q
  int count_i = 0;
  int count_j = 0;
  Real w_time = 0.0;
  Real w_freq = 0.0;

  int taper_count() const { return static_cast<int>(tapers.size()); }
};

/// Builds the I*J separable tapers from time-domain DPSS (M, W_t) and
/// frequency-domain DPSS (Q, W_f). Enforces the concentration guard
/// I <= 2 floor(M W_t), J <= 2 floor(Q W_f).
TaperSet2D tapers_2d(int m, int q, int i, int j, Real w_t, Real w_f);

/// Default taper parameterization used by the analysis pipeline:
/// I = J = 3, W_t = (I+1)/(2M), W_f = (J+1)/(2Q).
TaperSet2D default_tapers(int m, int q);

}  // namespace sscr
