#pragma once

// Contrast functionals of a single positive operator.
//
// For a PSD matrix x the contrast is
//
//   delta(x) = inf_{A > 0} || 1 - x / A ||
//            = (max eig x - min eig x) / (max eig x + min eig x),
//
// with delta(0) = 1. It is 0 exactly on positive multiples of the identity,
// 1 on singular operators, scale invariant, and generalizes the classical
// Michelson contrast (I_max - I_min) / (I_max + I_min).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "opcontrast/errors.hpp"
#include "opcontrast/linalg.hpp"

namespace opcontrast {

enum class ContrastPath { Spectral, InverseFormula, Scan };

inline const char* to_string(ContrastPath p) {
  switch (p) {
    case ContrastPath::Spectral:
      return "spectral";
    case ContrastPath::InverseFormula:
      return "inverse_formula";
    case ContrastPath::Scan:
      return "scan";
  }
  return "unknown";
}

struct ContrastReport {
  double value = 1.0;
  ContrastPath path = ContrastPath::Spectral;
  SpectralBounds bounds;               // lo clamped at 0
  std::optional<double> optimal_scale; // minimizing A; absent for the zero operator
  bool singular = true;
};

// Controls the golden-section search behind delta_scan.
struct ScanConfig {
  double bracket_expand = 10.0;
  double golden_tol = 1e-10;
  int max_iters = 200;
};

inline bool is_singular(const SpectralBounds& b) { return b.lo <= kSingularTol * b.hi; }

namespace detail {

// Spectral bounds of a PSD input with lo clamped at 0; throws NotPositive when
// the matrix leaves the cone by more than kPsdTol.
inline SpectralBounds psd_bounds(const HermitianMatrix& x, const char* who) {
  auto b = spectral_bounds(x);
  if (b.lo < -kPsdTol * std::max(1.0, b.hi)) {
    throw NotPositive(std::string(who) + ": matrix is not positive semidefinite (min eigenvalue " +
                      std::to_string(b.lo) + ")");
  }
  b.lo = std::max(b.lo, 0.0);
  b.hi = std::max(b.hi, 0.0);
  return b;
}

inline double delta_from_bounds(const SpectralBounds& b) {
  if (b.hi <= 0.0) return 1.0;
  const double lo = std::clamp(b.lo, 0.0, b.hi);
  return (b.hi - lo) / (b.hi + lo);
}

}  // namespace detail

inline ContrastReport delta(const HermitianMatrix& x) {
  ContrastReport r;
  r.path = ContrastPath::Spectral;
  r.bounds = detail::psd_bounds(x, "delta");
  r.value = detail::delta_from_bounds(r.bounds);
  r.singular = is_singular(r.bounds);
  if (r.bounds.hi > 0.0) r.optimal_scale = 0.5 * (r.bounds.lo + r.bounds.hi);
  return r;
}

// Contrast of an arbitrary Hermitian matrix with the lower spectral bound
// clamped at 0: anything with a non-positive eigenvalue gets 1.
inline double delta_clamped(const HermitianMatrix& h) {
  auto b = spectral_bounds(h);
  if (b.hi <= 0.0 || b.lo <= 0.0) return 1.0;
  return detail::delta_from_bounds(b);
}

// (kappa - 1) / (kappa + 1) with kappa = ||x|| ||x^{-1}||. Throws
// SingularMatrix when x is not invertible; use delta() there.
inline double delta_inverse_formula(const HermitianMatrix& x) {
  detail::psd_bounds(x, "delta_inverse_formula");
  const double kappa = operator_norm(x) * operator_norm(inverse(x));
  return (kappa - 1.0) / (kappa + 1.0);
}

// Midpoint of the spectrum: the A attaining the infimum in the definition.
inline double optimal_scale(const HermitianMatrix& x) {
  const auto b = detail::psd_bounds(x, "optimal_scale");
  if (b.hi <= 0.0) throw ZeroOperator("optimal_scale: zero operator has no minimizing scale");
  return 0.5 * (b.lo + b.hi);
}

// ||1 - x/A||, evaluated as the operator norm of the matrix itself.
inline double scaled_residual_norm(const HermitianMatrix& x, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("scaled_residual_norm: scale must be positive and finite");
  }
  return operator_norm(HermitianMatrix::identity(x.dim()) - (1.0 / a) * x);
}

// Brute-force evaluation of the defining infimum: golden-section search over
// lambda = 1/A on [0, bracket_expand * 2 / (lo + hi)], where the objective
// ||1 - lambda x|| is unimodal.
inline ContrastReport delta_scan(const HermitianMatrix& x, const ScanConfig& cfg = {}) {
  if (!(cfg.golden_tol > 0.0)) throw DomainError("delta_scan: golden_tol must be positive");
  if (!(cfg.bracket_expand > 1.0)) throw DomainError("delta_scan: bracket_expand must exceed 1");
  ContrastReport r;
  r.path = ContrastPath::Scan;
  r.bounds = detail::psd_bounds(x, "delta_scan");
  r.singular = is_singular(r.bounds);
  if (r.bounds.hi <= 0.0) {
    r.value = 1.0;
    return r;
  }
  const std::size_t n = x.dim();
  const auto id = HermitianMatrix::identity(n);
  auto objective = [&](double lambda) { return operator_norm(id - lambda * x); };

  constexpr double kInvPhi = 0.6180339887498949;
  double a = 0.0;
  double b = cfg.bracket_expand * 2.0 / (r.bounds.lo + r.bounds.hi);
  const double width0 = b - a;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  int iters = 0;
  while (b - a > cfg.golden_tol * width0) {
    if (++iters > cfg.max_iters) {
      throw NonConvergence("delta_scan: bracket did not shrink below tolerance in " +
                           std::to_string(cfg.max_iters) + " iterations");
    }
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = objective(mid);
  double best = mid;
  double fbest = fm;
  if (fc < fbest) {
    best = c;
    fbest = fc;
  }
  if (fd < fbest) {
    best = d;
    fbest = fd;
  }
  r.value = std::min(fbest, 1.0);
  r.optimal_scale = 1.0 / best;
  return r;
}

// Contrast of the product xy, via the Hermitian x^{1/2} y x^{1/2} whose
// spectrum agrees with that of xy away from 0. Singular factors give 1.
inline double delta_product(const HermitianMatrix& x, const HermitianMatrix& y) {
  if (x.dim() != y.dim()) {
    throw DimensionMismatch("delta_product: dimensions " + std::to_string(x.dim()) + " and " +
                            std::to_string(y.dim()) + " differ");
  }
  const auto bx = detail::psd_bounds(x, "delta_product");
  const auto by = detail::psd_bounds(y, "delta_product");
  if (is_singular(bx) || is_singular(by)) return 1.0;
  const auto s = sqrt_psd(x);
  const auto sandwich = HermitianMatrix::hermitian_part(multiply(multiply(s, y), s.to_square()));
  return delta(sandwich).value;
}

// delta(x * x), computed from the matrix square.
inline double delta_power2(const HermitianMatrix& x) {
  detail::psd_bounds(x, "delta_power2");
  return delta(HermitianMatrix::hermitian_part(multiply(x, x))).value;
}

// Membership in the cone K_c = { x >= 0 : delta(x) <= c }.
inline bool cone_member(const HermitianMatrix& x, double c, double slack = 0.0) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("cone_member: c must lie in [0, 1]");
  return delta(x).value <= c + slack;
}

enum class SingularPolicy {
  Reject,        // throw SingularMatrix on any singular argument
  DropLowerTerm  // use ||x|| in place of ||x|| + 1/||x^{-1}|| for singular x
};

struct SubadditivityTerms {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Both sides of
//   (||x+y|| + 1/||(x+y)^{-1}||) delta(x+y)
//     <= (||x|| + 1/||x^{-1}||) delta(x) + (||y|| + 1/||y^{-1}||) delta(y).
// For PSD invertible operators ||.|| + 1/||.^{-1}|| equals hi + lo.
inline SubadditivityTerms weighted_subadditivity_terms(
    const HermitianMatrix& x, const HermitianMatrix& y,
    SingularPolicy policy = SingularPolicy::Reject) {
  if (x.dim() != y.dim()) throw DimensionMismatch("weighted_subadditivity_terms: dimensions differ");
  auto term = [&](const HermitianMatrix& m, const char* name) {
    const auto r = delta(m);
    if (r.singular) {
      if (policy == SingularPolicy::Reject) {
        throw SingularMatrix(std::string("weighted_subadditivity_terms: ") + name +
                             " is singular");
      }
      return r.bounds.hi * r.value;
    }
    return (r.bounds.hi + r.bounds.lo) * r.value;
  };
  SubadditivityTerms t;
  t.lhs = term(x + y, "x+y");
  t.rhs = term(x, "x") + term(y, "y");
  return t;
}

// Contrast of the squared singular values of a rectangular matrix,
// min(delta(M^T M), delta(M M^T)). Whenever the shape is not square the
// larger Gram matrix is singular, so only the smaller one is formed.
inline double delta2(const RectMatrix& m) {
  if (m.cols() <= m.rows()) return delta(m.gram()).value;
  return delta(m.outer_gram()).value;
}

struct CrossTermBound {
  double lhs = 0.0;           // delta2(m1 + m2)
  double rhs = 0.0;           // max(delta2(m1), delta2(m2), min(cross terms))
  double equality_gap = 0.0;  // rhs - lhs
};

// Bound on delta2 of a sum through the symmetrized cross terms
// M2^T M1 + M1^T M2 and M2 M1^T + M1 M2^T. The cross terms may be indefinite
// and are measured with delta_clamped.
inline CrossTermBound cross_term_bound(const RectMatrix& m1, const RectMatrix& m2) {
  if (!m1.same_shape(m2)) throw DimensionMismatch("cross_term_bound: shapes differ");
  CrossTermBound b;
  b.lhs = delta2(m1 + m2);
  const double cross = std::min(delta_clamped(symmetrized_cross(m1, m2)),
                                delta_clamped(symmetrized_outer_cross(m1, m2)));
  b.rhs = std::max({delta2(m1), delta2(m2), cross});
  b.equality_gap = b.rhs - b.lhs;
  return b;
}

}  // namespace opcontrast
