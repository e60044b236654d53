#pragma once

// Small dense linear algebra: Hermitian and rectangular value types, a cyclic
// Jacobi eigensolver and the spectral helpers built on it (bounds, norms,
// square root, inverse). Everything here is sized for desk-scale matrices
// (dim up to a few dozen) and favours accuracy over speed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "opcontrast/errors.hpp"

namespace opcontrast {

using Complex = std::complex<double>;

// Inputs closer than this (relative to the largest entry) to Hermitian are
// symmetrized; anything further away is rejected.
inline constexpr double kHermitianTol = 1e-12;
// lambda_min <= kSingularTol * lambda_max classifies a PSD matrix as singular.
inline constexpr double kSingularTol = 1e-12;
// Default tolerance for membership in the positive cone.
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kJacobiTol = 1e-12;
inline constexpr int kMaxJacobiSweeps = 100;

// Unstructured square matrix, row-major. Holds intermediate products such as
// x*y that are not Hermitian in general.
struct SquareMatrix {
  std::size_t n = 0;
  std::vector<Complex> a;

  explicit SquareMatrix(std::size_t dim = 0) : n(dim), a(dim * dim) {}

  Complex operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

inline SquareMatrix multiply(const SquareMatrix& x, const SquareMatrix& y) {
  if (x.n != y.n) {
    throw DimensionMismatch("multiply: dimensions " + std::to_string(x.n) + " and " +
                            std::to_string(y.n) + " differ");
  }
  const std::size_t n = x.n;
  SquareMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  }
  return r;
}

inline double frobenius_distance(const SquareMatrix& x, const SquareMatrix& y) {
  if (x.n != y.n) throw DimensionMismatch("frobenius_distance: dimensions differ");
  double s = 0.0;
  for (std::size_t k = 0; k < x.a.size(); ++k) s += std::norm(x.a[k] - y.a[k]);
  return std::sqrt(s);
}

inline double frobenius_norm(const SquareMatrix& x) {
  double s = 0.0;
  for (const auto& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

// Dense Hermitian matrix with exact conjugate symmetry as stored. Real
// symmetric matrices are the special case with zero imaginary parts.
class HermitianMatrix {
 public:
  static HermitianMatrix from_complex(std::size_t n, std::span<const Complex> row_major) {
    if (n == 0) throw DomainError("HermitianMatrix: dimension must be at least 1");
    if (row_major.size() != n * n) {
      throw DimensionMismatch("HermitianMatrix: expected " + std::to_string(n * n) +
                              " entries, got " + std::to_string(row_major.size()));
    }
    std::vector<Complex> a(row_major.begin(), row_major.end());
    double scale = 1.0;
    for (const auto& v : a) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw DomainError("HermitianMatrix: non-finite entry");
      }
      scale = std::max(scale, std::abs(v));
    }
    const double tol = kHermitianTol * scale;
    for (std::size_t i = 0; i < n; ++i) {
      Complex& d = a[i * n + i];
      if (std::abs(d.imag()) > tol) {
        throw NotHermitian("HermitianMatrix: diagonal entry " + std::to_string(i) +
                           " has imaginary part");
      }
      d = {d.real(), 0.0};
      for (std::size_t j = i + 1; j < n; ++j) {
        Complex& u = a[i * n + j];
        Complex& l = a[j * n + i];
        if (std::abs(u - std::conj(l)) > tol) {
          throw NotHermitian("HermitianMatrix: entries (" + std::to_string(i) + "," +
                             std::to_string(j) + ") and (" + std::to_string(j) + "," +
                             std::to_string(i) + ") are not conjugate");
        }
        const Complex avg = 0.5 * (u + std::conj(l));
        u = avg;
        l = std::conj(avg);
      }
    }
    return HermitianMatrix(n, std::move(a));
  }

  static HermitianMatrix from_real(std::size_t n, std::span<const double> row_major) {
    std::vector<Complex> a(row_major.begin(), row_major.end());
    return from_complex(n, a);
  }

  static HermitianMatrix from_parts(std::size_t n, std::span<const double> re,
                                    std::span<const double> im) {
    if (re.size() != im.size()) {
      throw DimensionMismatch("HermitianMatrix: real and imaginary parts differ in size");
    }
    std::vector<Complex> a(re.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = {re[k], im[k]};
    return from_complex(n, a);
  }

  static HermitianMatrix identity(std::size_t n, double scale = 1.0) {
    std::vector<double> d(n, scale);
    return diagonal(d);
  }

  static HermitianMatrix zero(std::size_t n) {
    if (n == 0) throw DomainError("HermitianMatrix: dimension must be at least 1");
    return HermitianMatrix(n, std::vector<Complex>(n * n));
  }

  static HermitianMatrix diagonal(std::span<const double> d) {
    HermitianMatrix m = zero(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.a_[i * m.n_ + i] = d[i];
    return m;
  }

  static HermitianMatrix diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
  }

  // (m + m^*) / 2 with no tolerance check; for products that are Hermitian in
  // exact arithmetic (x^{1/2} y x^{1/2}, Gram matrices, ...).
  static HermitianMatrix hermitian_part(const SquareMatrix& m) {
    if (m.n == 0) throw DomainError("HermitianMatrix: dimension must be at least 1");
    std::vector<Complex> a(m.a.size());
    for (std::size_t i = 0; i < m.n; ++i) {
      a[i * m.n + i] = m(i, i).real();
      for (std::size_t j = i + 1; j < m.n; ++j) {
        const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
        a[i * m.n + j] = avg;
        a[j * m.n + i] = std::conj(avg);
      }
    }
    return HermitianMatrix(m.n, std::move(a));
  }

  std::size_t dim() const noexcept { return n_; }
  Complex operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::span<const Complex> entries() const noexcept { return a_; }

  bool is_real() const noexcept {
    return std::all_of(a_.begin(), a_.end(), [](const Complex& v) { return v.imag() == 0.0; });
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  SquareMatrix to_square() const {
    SquareMatrix s(n_);
    s.a = a_;
    return s;
  }

  friend HermitianMatrix operator+(const HermitianMatrix& x, const HermitianMatrix& y) {
    x.require_same_dim(y, "operator+");
    std::vector<Complex> a(x.a_.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = x.a_[k] + y.a_[k];
    return HermitianMatrix(x.n_, std::move(a));
  }

  friend HermitianMatrix operator-(const HermitianMatrix& x, const HermitianMatrix& y) {
    x.require_same_dim(y, "operator-");
    std::vector<Complex> a(x.a_.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = x.a_[k] - y.a_[k];
    return HermitianMatrix(x.n_, std::move(a));
  }

  friend HermitianMatrix operator*(double s, const HermitianMatrix& x) {
    std::vector<Complex> a(x.a_.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = s * x.a_[k];
    return HermitianMatrix(x.n_, std::move(a));
  }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  HermitianMatrix(std::size_t n, std::vector<Complex> a) : n_(n), a_(std::move(a)) {}

  void require_same_dim(const HermitianMatrix& o, const char* op) const {
    if (n_ != o.n_) {
      throw DimensionMismatch(std::string(op) + ": dimensions " + std::to_string(n_) + " and " +
                              std::to_string(o.n_) + " differ");
    }
  }

  std::size_t n_;
  std::vector<Complex> a_;
};

inline SquareMatrix multiply(const HermitianMatrix& x, const HermitianMatrix& y) {
  return multiply(x.to_square(), y.to_square());
}

// Dense real n x m matrix, row-major.
class RectMatrix {
 public:
  RectMatrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
      : rows_(rows), cols_(cols), a_(std::move(row_major)) {
    if (rows_ == 0 || cols_ == 0) throw DomainError("RectMatrix: shape must be at least 1x1");
    if (a_.size() != rows_ * cols_) {
      throw DimensionMismatch("RectMatrix: expected " + std::to_string(rows_ * cols_) +
                              " entries, got " + std::to_string(a_.size()));
    }
  }

  static RectMatrix zeros(std::size_t rows, std::size_t cols) {
    return RectMatrix(rows, cols, std::vector<double>(rows * cols, 0.0));
  }

  static RectMatrix identity(std::size_t n) {
    RectMatrix m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  std::span<const double> entries() const noexcept { return a_; }

  RectMatrix transposed() const {
    std::vector<double> t(a_.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t[j * rows_ + i] = a_[i * cols_ + j];
    return RectMatrix(cols_, rows_, std::move(t));
  }

  // M^T M, cols x cols.
  HermitianMatrix gram() const { return cross_gram(*this, *this); }
  // M M^T, rows x rows.
  HermitianMatrix outer_gram() const { return cross_outer_gram(*this, *this); }

  friend RectMatrix operator+(const RectMatrix& x, const RectMatrix& y) {
    x.require_same_shape(y, "operator+");
    std::vector<double> a(x.a_.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = x.a_[k] + y.a_[k];
    return RectMatrix(x.rows_, x.cols_, std::move(a));
  }

  friend RectMatrix operator*(double s, const RectMatrix& x) {
    std::vector<double> a(x.a_.size());
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = s * x.a_[k];
    return RectMatrix(x.rows_, x.cols_, std::move(a));
  }

  friend bool operator==(const RectMatrix&, const RectMatrix&) = default;

  bool same_shape(const RectMatrix& o) const noexcept {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

  // b^T a + a^T b (cols x cols); symmetric by construction, possibly indefinite.
  friend HermitianMatrix symmetrized_cross(const RectMatrix& a, const RectMatrix& b) {
    a.require_same_shape(b, "symmetrized_cross");
    const std::size_t m = a.cols_;
    std::vector<double> c(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.rows_; ++k) s += b(k, i) * a(k, j);
        c[i * m + j] = s;
      }
    std::vector<double> sym(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) sym[i * m + j] = c[i * m + j] + c[j * m + i];
    return HermitianMatrix::from_real(m, sym);
  }

  // b a^T + a b^T (rows x rows).
  friend HermitianMatrix symmetrized_outer_cross(const RectMatrix& a, const RectMatrix& b) {
    return symmetrized_cross(a.transposed(), b.transposed());
  }

 private:
  // a^T b restricted to the upper triangle and mirrored, so a == b gives an
  // exactly symmetric Gram matrix.
  static HermitianMatrix cross_gram(const RectMatrix& a, const RectMatrix& b) {
    const std::size_t m = a.cols_;
    std::vector<double> g(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.rows_; ++k) s += a(k, i) * b(k, j);
        g[i * m + j] = s;
        g[j * m + i] = s;
      }
    return HermitianMatrix::from_real(m, g);
  }

  static HermitianMatrix cross_outer_gram(const RectMatrix& a, const RectMatrix& b) {
    return cross_gram(a.transposed(), b.transposed());
  }

  void require_same_shape(const RectMatrix& o, const char* op) const {
    if (!same_shape(o)) {
      throw DimensionMismatch(std::string(op) + ": shapes " + std::to_string(rows_) + "x" +
                              std::to_string(cols_) + " and " + std::to_string(o.rows_) + "x" +
                              std::to_string(o.cols_) + " differ");
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> a_;
};

struct SpectralBounds {
  double lo = 0.0;  // inf of the spectrum
  double hi = 0.0;  // sup of the spectrum
};

namespace detail {

struct SymmetricEigen {
  std::vector<double> values;   // unsorted, matching the columns of `vectors`
  std::vector<double> vectors;  // column-major n x n, empty unless requested
  int sweeps = 0;
  double offdiag_residual = 0.0;
};

// Cyclic Jacobi on a real symmetric row-major matrix. Stops once the
// off-diagonal Frobenius norm drops to kJacobiTol * ||a||_F, then runs one
// more sweep to polish the small eigenvalues.
inline SymmetricEigen jacobi_eigen(std::vector<double> a, std::size_t n, bool want_vectors) {
  SymmetricEigen out;
  if (want_vectors) {
    out.vectors.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + i] = 1.0;
  }
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  auto offdiag = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += at(i, j) * at(i, j);
    return std::sqrt(s);
  };
  double fro = 0.0;
  for (double v : a) fro += v * v;
  fro = std::sqrt(fro);
  if (!std::isfinite(fro)) throw DomainError("jacobi_eigen: matrix has non-finite entries");
  const double tol = kJacobiTol * fro;

  bool converged = false;
  int polish = 1;
  for (int sweep = 0; sweep <= kMaxJacobiSweeps; ++sweep) {
    const double off = offdiag();
    out.offdiag_residual = off;
    if (off <= tol) {
      converged = true;
      if (off == 0.0 || polish-- == 0) break;
    }
    if (sweep == kMaxJacobiSweeps) break;
    out.sweeps = sweep + 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        if (want_vectors) {
          double* v = out.vectors.data();
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v[p * n + k];
            const double vkq = v[q * n + k];
            v[p * n + k] = c * vkp - s * vkq;
            v[q * n + k] = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (!converged) {
    throw NonConvergence("jacobi_eigen: off-diagonal norm still above tolerance after " +
                         std::to_string(kMaxJacobiSweeps) + " sweeps");
  }
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = at(i, i);
  return out;
}

// Real symmetric stand-in for h: h itself when real, otherwise the 2n x 2n
// embedding [[Re, -Im], [Im, Re]] whose spectrum is that of h, doubled.
inline std::pair<std::vector<double>, std::size_t> real_embedding(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  if (h.is_real()) {
    std::vector<double> a(n * n);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = h.entries()[k].real();
    return {std::move(a), n};
  }
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = h(i, j);
      a[i * m + j] = v.real();
      a[(i + n) * m + (j + n)] = v.real();
      a[i * m + (j + n)] = -v.imag();
      a[(i + n) * m + j] = v.imag();
    }
  return {std::move(a), m};
}

}  // namespace detail

struct EigenDiagnostics {
  std::vector<double> values;  // ascending
  int sweeps = 0;
  double offdiag_residual = 0.0;
  double frobenius = 0.0;
};

inline EigenDiagnostics eig_sym_detailed(const HermitianMatrix& h) {
  auto [a, m] = detail::real_embedding(h);
  auto eig = detail::jacobi_eigen(std::move(a), m, false);
  std::sort(eig.values.begin(), eig.values.end());
  EigenDiagnostics d;
  d.sweeps = eig.sweeps;
  d.offdiag_residual = eig.offdiag_residual;
  d.frobenius = h.frobenius_norm();
  if (m == h.dim()) {
    d.values = std::move(eig.values);
  } else {
    // Embedded spectrum comes in equal pairs.
    d.values.reserve(h.dim());
    for (std::size_t k = 0; k < m; k += 2) d.values.push_back(eig.values[k]);
  }
  return d;
}

// Eigenvalues of h in ascending order.
inline std::vector<double> eig_sym(const HermitianMatrix& h) {
  return eig_sym_detailed(h).values;
}

inline SpectralBounds spectral_bounds(const HermitianMatrix& h) {
  const auto ev = eig_sym(h);
  return {ev.front(), ev.back()};
}

// f(h) through the eigendecomposition. For complex h the function is applied
// to the real embedding and the Hermitian blocks are read back out.
template <class F>
HermitianMatrix spectral_function(const HermitianMatrix& h, F&& f) {
  const std::size_t n = h.dim();
  auto [a, m] = detail::real_embedding(h);
  const auto eig = detail::jacobi_eigen(std::move(a), m, true);
  std::vector<double> fv(m);
  for (std::size_t k = 0; k < m; ++k) fv[k] = f(eig.values[k]);
  const double* v = eig.vectors.data();
  auto entry = [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += v[k * m + i] * fv[k] * v[k * m + j];
    return s;
  };
  SquareMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m == n) {
        r(i, j) = entry(i, j);
      } else {
        r(i, j) = {entry(i, j), entry(i + n, j)};
      }
    }
  return HermitianMatrix::hermitian_part(r);
}

inline bool is_psd(const HermitianMatrix& h, double tol) {
  const auto b = spectral_bounds(h);
  return b.lo >= -tol * std::max(1.0, b.hi);
}

// Largest absolute eigenvalue.
inline double operator_norm(const HermitianMatrix& h) {
  const auto b = spectral_bounds(h);
  return std::max(std::abs(b.lo), std::abs(b.hi));
}

// Largest singular value, as sqrt of the top eigenvalue of M^T M.
inline double operator_norm(const RectMatrix& m) {
  return std::sqrt(std::max(0.0, spectral_bounds(m.gram()).hi));
}

inline HermitianMatrix sqrt_psd(const HermitianMatrix& h) {
  const auto b = spectral_bounds(h);
  const double scale = std::max(std::abs(b.lo), std::abs(b.hi));
  if (b.lo < -1e-9 * scale) {
    throw NotPositive("sqrt_psd: minimum eigenvalue " + std::to_string(b.lo) +
                      " is negative beyond tolerance");
  }
  return spectral_function(h, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline HermitianMatrix inverse(const HermitianMatrix& h) {
  const auto ev = eig_sym(h);
  double min_abs = std::abs(ev.front());
  double max_abs = 0.0;
  for (double v : ev) {
    min_abs = std::min(min_abs, std::abs(v));
    max_abs = std::max(max_abs, std::abs(v));
  }
  if (!(min_abs > kSingularTol * max_abs)) {
    throw SingularMatrix("inverse: smallest |eigenvalue| " + std::to_string(min_abs) +
                         " is below the singularity threshold");
  }
  return spectral_function(h, [](double x) { return 1.0 / x; });
}

}  // namespace opcontrast
