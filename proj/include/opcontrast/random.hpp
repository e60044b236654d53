#pragma once

// Random matrix ensembles for property checks: Wishart Gram matrices,
// rotated diagonals with controlled spectra, near-singular and commuting
// families, and the 2x2 unitarily mixed form used in the max-subadditivity
// argument for 2x2 matrices.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "opcontrast/linalg.hpp"

namespace opcontrast {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(Rng& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline RectMatrix gaussian_rect(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> nd;
  std::vector<double> a(rows * cols);
  for (auto& v : a) v = nd(rng);
  return RectMatrix(rows, cols, std::move(a));
}

// Haar-ish orthogonal matrix from modified Gram-Schmidt on a Gaussian matrix.
inline RectMatrix random_orthogonal(std::size_t n, Rng& rng) {
  std::normal_distribution<double> nd;
  std::vector<std::vector<double>> cols(n, std::vector<double>(n));
  for (auto& c : cols)
    for (auto& v : c) v = nd(rng);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += cols[k][i] * cols[j][i];
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= d * cols[j][i];
    }
    double nrm = 0.0;
    for (double v : cols[k]) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : cols[k]) v /= nrm;
  }
  std::vector<double> q(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i * n + j] = cols[j][i];
  return RectMatrix(n, n, std::move(q));
}

// Q diag(d) Q^T.
inline HermitianMatrix rotate_diagonal(const RectMatrix& q, std::span<const double> d) {
  const std::size_t n = d.size();
  std::vector<double> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(i, k) * d[k] * q(j, k);
      a[i * n + j] = s;
      a[j * n + i] = s;
    }
  return HermitianMatrix::from_real(n, a);
}

inline HermitianMatrix rotated_diagonal(std::span<const double> d, Rng& rng) {
  return rotate_diagonal(random_orthogonal(d.size(), rng), d);
}

// G G^T with G an n x k Gaussian matrix; singular whenever k < n.
inline HermitianMatrix wishart(std::size_t n, std::size_t k, Rng& rng) {
  return gaussian_rect(n, k, rng).outer_gram();
}

// G G^* with complex Gaussian G (n x k).
inline HermitianMatrix complex_wishart(std::size_t n, std::size_t k, Rng& rng) {
  std::normal_distribution<double> nd;
  std::vector<Complex> g(n * k);
  for (auto& v : g) v = {nd(rng), nd(rng)};
  SquareMatrix s(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t t = 0; t < k; ++t) acc += g[i * k + t] * std::conj(g[j * k + t]);
      s(i, j) = acc;
    }
  return HermitianMatrix::hermitian_part(s);
}

// Spectrum log-uniform in [1, cond] times an overall log-uniform scale.
inline HermitianMatrix random_conditioned(std::size_t n, double cond, Rng& rng) {
  std::vector<double> d(n);
  const double scale = log_uniform(rng, 1e-3, 1e3);
  for (auto& v : d) v = scale * log_uniform(rng, 1.0, cond);
  return rotated_diagonal(d, rng);
}

// Invertible PSD drawn from a mix of Wishart (k >= n) and rotated-diagonal
// ensembles with condition numbers up to 1e4.
inline HermitianMatrix random_invertible_psd(std::size_t n, Rng& rng) {
  if (uniform_int(rng, 0, 1) == 0) return wishart(n, n + uniform_int(rng, 0, 3), rng);
  return random_conditioned(n, log_uniform(rng, 1.0 + 1e-6, 1e4), rng);
}

// Rotated diagonal with one eigenvalue `eps` times the rest.
inline HermitianMatrix near_singular(std::size_t n, double eps, Rng& rng) {
  std::vector<double> d(n);
  for (auto& v : d) v = uniform(rng, 0.5, 2.0);
  d[uniform_int(rng, 0, n - 1)] = eps;
  return rotated_diagonal(d, rng);
}

// PSD with an exact zero eigenvalue built in (lambda_min is 0 up to rounding).
inline HermitianMatrix random_singular_psd(std::size_t n, Rng& rng) {
  std::vector<double> d(n);
  for (auto& v : d) v = uniform(rng, 0.1, 10.0);
  d[uniform_int(rng, 0, n - 1)] = 0.0;
  return rotated_diagonal(d, rng);
}

// Two PSD matrices diagonal in the same random basis.
inline std::pair<HermitianMatrix, HermitianMatrix> commuting_pair(std::size_t n, Rng& rng) {
  const auto q = random_orthogonal(n, rng);
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = log_uniform(rng, 1e-2, 1e2);
  for (auto& v : b) v = log_uniform(rng, 1e-2, 1e2);
  return {rotate_diagonal(q, a), rotate_diagonal(q, b)};
}

// Mixed draw used by the generic property suites: invertible, near-singular,
// exactly singular and complex samples.
inline HermitianMatrix random_psd(std::size_t n, Rng& rng) {
  switch (uniform_int(rng, 0, 5)) {
    case 0:
      return wishart(n, uniform_int(rng, 1, n + 3), rng);
    case 1:
      return near_singular(n, log_uniform(rng, 1e-10, 1e-4), rng);
    case 2:
      return random_singular_psd(n, rng);
    case 3:
      return complex_wishart(n, n + uniform_int(rng, 0, 2), rng);
    default:
      return random_invertible_psd(n, rng);
  }
}

// The 2x2 positive matrix with eigenvalues alpha, beta mixed by a unitary
// parametrized by lambda in [0,1] and a unimodular phase delta:
//   [ beta + (alpha - beta) lambda            (alpha - beta) delta sqrt(lambda(1-lambda)) ]
//   [ (alpha - beta) conj(delta) sqrt(...)     alpha + (beta - alpha) lambda               ]
inline HermitianMatrix make_unitary_mixed_psd(double alpha, double beta, double lambda,
                                              Complex delta) {
  const double r = std::sqrt(lambda * (1.0 - lambda));
  const Complex off = (alpha - beta) * delta * r;
  const std::vector<Complex> a = {beta + (alpha - beta) * lambda, off, std::conj(off),
                                  alpha + (beta - alpha) * lambda};
  return HermitianMatrix::from_complex(2, a);
}

// Random real symmetric E with operator norm 1.
inline HermitianMatrix random_unit_symmetric(std::size_t n, Rng& rng) {
  std::vector<double> d(n);
  for (auto& v : d) v = uniform(rng, -1.0, 1.0);
  d[uniform_int(rng, 0, n - 1)] = uniform_int(rng, 0, 1) ? 1.0 : -1.0;
  return rotated_diagonal(d, rng);
}

}  // namespace opcontrast
