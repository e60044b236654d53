#pragma once

// Randomized property suites for the contrast functionals. Each suite draws
// `cases` samples from a deterministic generator seeded from the suite name,
// evaluates one family of identities or inequalities and records the worst
// violation. Used by `opcontrast verify` and the acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opcontrast/blocks.hpp"
#include "opcontrast/contrast.hpp"
#include "opcontrast/linalg.hpp"
#include "opcontrast/pnm.hpp"
#include "opcontrast/random.hpp"

namespace opcontrast {

struct SuiteResult {
  std::string name;
  std::string claim;
  std::size_t cases = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  double worst = -std::numeric_limits<double>::infinity();  // largest (measured - allowed)

  bool passed() const noexcept { return cases > 0 && failures == 0; }

  // Records one check that `violation <= 0`, where violation is measured
  // minus the allowed slack.
  void check(double violation) {
    ++checks;
    if (!(violation <= 0.0)) ++failures;
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    worst = std::max(worst, violation);
  }
  void check_true(bool ok) { check(ok ? -1.0 : 1.0); }
};

namespace detail {

inline std::uint64_t suite_seed(std::string_view name, std::uint64_t base) {
  std::uint64_t h = 1469598103934665603ull ^ base;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

// Invertible PSD with norm between 0.1 and 10.
inline HermitianMatrix normalized_invertible(std::size_t n, Rng& rng) {
  auto x = random_invertible_psd(n, rng);
  return (log_uniform(rng, 0.1, 10.0) / operator_norm(x)) * x;
}

inline HermitianMatrix diag2(double a, double b) { return HermitianMatrix::diagonal({a, b}); }

inline BlockOperator random_block_operator(Rng& rng, std::size_t blocks, bool invertible) {
  std::vector<HermitianMatrix> b;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t n = uniform_int(rng, 1, 4);
    b.push_back(invertible ? normalized_invertible(n, rng)
                           : log_uniform(rng, 0.1, 10.0) * random_psd(n, rng));
  }
  return BlockOperator(std::move(b));
}

inline BlockOperator random_block_like(const BlockOperator& shape, Rng& rng) {
  std::vector<HermitianMatrix> b;
  for (const auto& blk : shape.blocks()) {
    const std::size_t n = blk.dim();
    b.push_back(uniform_int(rng, 0, 3) == 0 ? random_psd(n, rng) : normalized_invertible(n, rng));
  }
  return BlockOperator(std::move(b));
}

}  // namespace detail

using SuiteFn = std::function<void(SuiteResult&, Rng&, std::size_t)>;

struct SuiteDef {
  const char* name;
  const char* claim;
  SuiteFn run;
};

inline const std::vector<SuiteDef>& property_suites() {
  using namespace detail;
  static const std::vector<SuiteDef> suites = {
      {"range", "0 <= delta(x) <= 1",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const double v = delta(random_psd(uniform_int(rng, 1, 12), rng)).value;
           r.check(std::max(-v, v - 1.0));
         }
       }},
      {"singular_is_one", "delta(x) = 1 for singular x",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_singular_psd(uniform_int(rng, 1, 12), rng);
           r.check(std::abs(delta(x).value - 1.0) - 1e-12);
         }
       }},
      {"scale_invariance", "delta(t x) = delta(x)",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_psd(uniform_int(rng, 1, 10), rng);
           const double d = delta(x).value;
           for (double t : {1e-6, 1e-3, 1.0, 1e3, 1e6}) {
             r.check(std::abs(delta(t * x).value - d) - 1e-10);
           }
         }
       }},
      {"inverse_symmetry", "delta(x) = delta(x^{-1})",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_invertible_psd(uniform_int(rng, 1, 10), rng);
           r.check(std::abs(delta(x).value - delta(inverse(x)).value) - 1e-9);
         }
       }},
      {"zero_characterization", "delta(x) = 0 only for x = ||x|| 1",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t n = uniform_int(rng, 1, 8);
           const auto x = i % 2 == 0 ? HermitianMatrix::identity(n, log_uniform(rng, 1e-3, 1e3))
                                     : random_psd(n, rng);
           const auto rep = delta(x);
           if (rep.value <= 1e-10) {
             const double hi = rep.bounds.hi;
             r.check(operator_norm(x - HermitianMatrix::identity(n, hi)) - 1e-8 * hi);
           } else {
             r.check(-1.0);
           }
         }
       }},
      {"scan_oracle", "closed form matches the scanned infimum",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_psd(uniform_int(rng, 1, 12), rng);
           r.check(std::abs(delta_scan(x).value - delta(x).value) - 1e-6);
         }
       }},
      {"inverse_formula", "(k-1)/(k+1) with k = ||x|| ||x^{-1}|| matches delta",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_invertible_psd(uniform_int(rng, 1, 12), rng);
           r.check(std::abs(delta_inverse_formula(x) - delta(x).value) - 1e-9);
         }
       }},
      {"norm_bounds", "||1-x/||x|| ||/2 <= delta(x) <= ||1-x/||x|| || with the hi/(hi+lo) identity",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_psd(uniform_int(rng, 1, 10), rng);
           const auto rep = delta(x);
           if (rep.bounds.hi <= 0.0) {
             r.check_true(rep.value == 1.0);
             continue;
           }
           const double res = scaled_residual_norm(x, rep.bounds.hi);
           r.check(0.5 * res - rep.value - 1e-10);
           r.check(rep.value - res - 1e-10);
           const double ident = rep.bounds.hi / (rep.bounds.hi + rep.bounds.lo) * res;
           r.check(std::abs(rep.value - ident) - 1e-9);
         }
       }},
      {"weighted_subadditivity",
       "(hi+lo)(x+y) delta(x+y) <= (hi+lo)(x) delta(x) + (hi+lo)(y) delta(y), equality for x = t y",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t n = uniform_int(rng, 1, 10);
           const auto x = normalized_invertible(n, rng);
           const auto y = normalized_invertible(n, rng);
           const auto t = weighted_subadditivity_terms(x, y);
           r.check(t.lhs - t.rhs - 1e-9);
           const auto e = weighted_subadditivity_terms(x, log_uniform(rng, 0.1, 10.0) * x);
           r.check(std::abs(e.lhs - e.rhs) - 1e-10);
         }
       }},
      {"max_subadditivity", "delta(x+y) <= max(delta(x), delta(y))",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t n = uniform_int(rng, 2, 16);
           HermitianMatrix x = HermitianMatrix::zero(n), y = HermitianMatrix::zero(n);
           switch (i % 3) {
             case 0:
               x = random_psd(n, rng);
               y = random_psd(n, rng);
               break;
             case 1:
               x = near_singular(n, log_uniform(rng, 1e-10, 1e-3), rng);
               y = random_psd(n, rng);
               break;
             default:
               std::tie(x, y) = commuting_pair(n, rng);
           }
           r.check(delta(x + y).value - std::max(delta(x).value, delta(y).value) - 1e-9);
         }
       }},
      {"unitary_mixed_2x2", "delta(X+Y) <= max for X diagonal, Y unitarily mixed 2x2",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const double a1 = log_uniform(rng, 1e-3, 1e2), b1 = log_uniform(rng, 1e-3, 1e2);
           const double a2 = log_uniform(rng, 1e-3, 1e2), b2 = log_uniform(rng, 1e-3, 1e2);
           const double lam = uniform(rng, 0.0, 1.0);
           const double th = uniform(rng, 0.0, 2.0 * std::numbers::pi);
           const auto x = diag2(a1, b1);
           const auto y = make_unitary_mixed_psd(a2, b2, lam, std::polar(1.0, th));
           const double dy = delta(y).value;
           r.check(std::abs(dy - std::abs(b2 - a2) / (b2 + a2)) - 1e-12);
           r.check(delta(x + y).value - std::max(delta(x).value, dy) - 1e-9);
         }
       }},
      {"product_power", "delta(xy) = delta(yx) <= max(delta(x^2), delta(y^2)); delta(x) <= delta(x^2) <= 2 delta(x)",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t n = uniform_int(rng, 1, 10);
           const auto x = i % 4 == 0 ? random_psd(n, rng) : random_invertible_psd(n, rng);
           const auto y = i % 4 == 1 ? random_psd(n, rng) : random_invertible_psd(n, rng);
           const double xy = delta_product(x, y), yx = delta_product(y, x);
           const double x2 = delta_power2(x), y2 = delta_power2(y);
           const double dx = delta(x).value;
           r.check(std::abs(xy - yx) - 1e-9);
           r.check(xy - std::max(x2, y2) - 1e-9);
           r.check(x2 - 2.0 * dx - 1e-9);
           r.check(dx - x2 - 1e-9);
         }
       }},
      {"continuity", "|delta(x+eE) - delta(x)| <= 10 e / lambda_min; x_sing + 1/n -> delta 1",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t n = uniform_int(rng, 1, 8);
           const auto x = normalized_invertible(n, rng);
           const auto rep = delta(x);
           const double eps = 1e-4 * rep.bounds.lo * uniform(rng, 0.01, 1.0);
           const auto e = random_unit_symmetric(n, rng);
           r.check(std::abs(delta(x + eps * e).value - rep.value) - 10.0 * eps / rep.bounds.lo);

           const auto s = random_singular_psd(uniform_int(rng, 2, 8), rng);
           double prev = -1.0;
           for (double k : {1e2, 1e3, 1e4, 1e5, 1e6}) {
             const double d = delta(s + HermitianMatrix::identity(s.dim(), 1.0 / k)).value;
             r.check(prev - d);
             prev = d;
           }
           r.check(0.999 - prev);
         }
       }},
      {"commuting_equality", "commuting 2x2: equality iff proportional",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const double a = log_uniform(rng, 0.1, 10.0), b = log_uniform(rng, 0.1, 10.0);
           const double t = log_uniform(rng, 0.1, 10.0);
           const auto x = diag2(a, b);
           const auto y = diag2(t * a, t * b);
           const double dx = delta(x).value;
           r.check(std::abs(delta(x + y).value - dx) - 1e-12);
           r.check(std::abs(delta(y).value - dx) - 1e-12);
           // Non-proportional: ratios separated by at least 5%.
           const double f = log_uniform(rng, 1.05, 20.0);
           const double rz = a / b * (uniform_int(rng, 0, 1) ? f : 1.0 / f);
           const double b2 = log_uniform(rng, 0.1, 10.0);
           const auto z = diag2(rz * b2, b2);
           const double m = std::max(dx, delta(z).value);
           r.check(delta(x + z).value - (m - 1e-12));
         }
       }},
      {"cone_nesting", "K_{c1} is contained in K_{c2} for c1 <= c2; 1 in K_0; K_1 is everything",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t n = uniform_int(rng, 1, 8);
           const auto x = random_psd(n, rng);
           double c1 = uniform(rng, 0.0, 1.0), c2 = uniform(rng, 0.0, 1.0);
           if (c1 > c2) std::swap(c1, c2);
           r.check_true(!cone_member(x, c1) || cone_member(x, c2));
           r.check_true(cone_member(x, 1.0));
           r.check_true(cone_member(HermitianMatrix::identity(n, log_uniform(rng, 1e-3, 1e3)), 0.0, 1e-15));
           const auto b = random_block_operator(rng, uniform_int(rng, 1, 4), false);
           r.check_true(!cone_member_prime(b, c1) || cone_member_prime(b, c2));
         }
       }},
      {"direct_sum_bound", "delta_central(x) <= delta_prime(x)",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto b = random_block_operator(rng, uniform_int(rng, 1, 4), i % 2 == 0);
           const auto bound = delta_direct_sum_bound(b);
           r.check(bound.lhs - bound.rhs - 2e-3);
         }
       }},
      {"central_invariance", "delta_central is scale and block-order invariant; block indicators are central",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto b = random_block_operator(rng, uniform_int(rng, 1, 4), i % 2 == 0);
           const double base = delta_central(b);
           for (double t : {0.01, 100.0}) r.check(std::abs(delta_central(t * b) - base) - 2e-3);
           auto blocks = b.blocks();
           std::reverse(blocks.begin(), blocks.end());
           r.check(std::abs(delta_central(BlockOperator(blocks)) - base) - 2e-3);

           std::vector<HermitianMatrix> ind;
           const std::size_t k = uniform_int(rng, 1, 4), j = uniform_int(rng, 0, k - 1);
           for (std::size_t t = 0; t < k; ++t) {
             const std::size_t n = uniform_int(rng, 1, 3);
             ind.push_back(t == j ? HermitianMatrix::identity(n) : HermitianMatrix::zero(n));
           }
           r.check(delta_central(BlockOperator(ind)) - 1e-3);
         }
       }},
      {"delta_prime_relations", "blockwise product, power and sum relations; scale invariance",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const auto x = random_block_operator(rng, uniform_int(rng, 1, 4), i % 2 == 0);
           const auto y = random_block_like(x, rng);
           r.check(delta_prime_ops(x, y).worst_violation() - 1e-9);
           r.check(delta_prime(x + y) - std::max(delta_prime(x), delta_prime(y)) - 1e-9);
           const double dx = delta_prime(x);
           for (double t : {1e-3, 1e3}) r.check(std::abs(delta_prime(t * x) - dx) - 1e-10);
           if (i % 2 == 0) r.check_true(dx < 1.0);
         }
       }},
      {"cross_term_bound", "delta2(M1+M2) <= max(delta2(M1), delta2(M2), min(cross terms))",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t rows = uniform_int(rng, 1, 8), cols = uniform_int(rng, 1, 12);
           const auto m1 = gaussian_rect(rows, cols, rng);
           // Correlated partner so the cross terms are sometimes definite.
           const auto m2 = uniform(rng, 0.0, 2.0) * m1 + uniform(rng, 0.0, 1.0) * gaussian_rect(rows, cols, rng);
           const auto b = i % 2 ? cross_term_bound(m1, m2) : cross_term_bound(m1, gaussian_rect(rows, cols, rng));
           r.check(b.lhs - b.rhs - 1e-9);
         }
       }},
      {"delta2_prime_cross_bound", "channelwise cross-term bound for 3-channel stacks",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           const std::size_t rows = uniform_int(rng, 1, 8), cols = uniform_int(rng, 1, 8);
           std::vector<RectMatrix> m, n;
           for (int c = 0; c < 3; ++c) {
             m.push_back(gaussian_rect(rows, cols, rng));
             n.push_back(uniform(rng, 0.0, 2.0) * m.back() +
                         uniform(rng, 0.0, 1.0) * gaussian_rect(rows, cols, rng));
           }
           const auto b = delta2_prime_cross_bound(ChannelStack(m), ChannelStack(n));
           r.check(b.lhs - b.rhs - 1e-9);
         }
       }},
      {"michelson_diagonal", "Michelson contrast equals delta of the multiplication operator",
       [](SuiteResult& r, Rng& rng, std::size_t cases) {
         for (std::size_t i = 0; i < cases; ++i) {
           std::vector<double> s(uniform_int(rng, 1, 64));
           for (auto& v : s) v = uniform(rng, 0.0, 1.0);
           if (i % 5 == 0) s[uniform_int(rng, 0, s.size() - 1)] = 0.0;
           r.check(std::abs(michelson_contrast(s) - delta(HermitianMatrix::diagonal(s)).value) - 1e-12);
         }
       }},
  };
  return suites;
}

inline SuiteResult run_suite(const SuiteDef& def, std::size_t cases, std::uint64_t base_seed) {
  SuiteResult r;
  r.name = def.name;
  r.claim = def.claim;
  r.cases = cases;
  Rng rng(detail::suite_seed(def.name, base_seed));
  def.run(r, rng, cases);
  return r;
}

inline SuiteResult run_suite(std::string_view name, std::size_t cases, std::uint64_t base_seed = 0) {
  for (const auto& s : property_suites())
    if (name == s.name) return run_suite(s, cases, base_seed);
  throw std::invalid_argument("unknown property suite '" + std::string(name) + "'");
}

}  // namespace opcontrast
