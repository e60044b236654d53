#pragma once

// Finite direct sums of full matrix algebras. An element is a list of PSD
// blocks x = x_1 (+) ... (+) x_k; the center of the algebra consists of the
// blockwise scalars c_1 1 (+) ... (+) c_k 1 with ||z|| = max |c_i|.
//
// Two contrasts live here:
//   delta_prime(x)   = max_i delta(x_i)
//   delta_central(x) = inf { ||z - x/A|| : A > 0, z central, ||z|| = 1 }
// and their multichannel counterpart delta2_prime for stacks of rectangular
// matrices (image channels).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opcontrast/contrast.hpp"
#include "opcontrast/errors.hpp"
#include "opcontrast/linalg.hpp"

namespace opcontrast {

class BlockOperator {
 public:
  explicit BlockOperator(std::vector<HermitianMatrix> blocks,
                         std::vector<std::string> labels = {})
      : blocks_(std::move(blocks)), labels_(std::move(labels)) {
    if (blocks_.empty()) throw EmptyInput("BlockOperator: needs at least one block");
    if (!labels_.empty() && labels_.size() != blocks_.size()) {
      throw DimensionMismatch("BlockOperator: label count does not match block count");
    }
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (!is_psd(blocks_[i], kPsdTol)) {
        throw NotPositive("BlockOperator: block " + std::to_string(i) +
                          " is not positive semidefinite");
      }
    }
  }

  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<HermitianMatrix>& blocks() const noexcept { return blocks_; }
  const HermitianMatrix& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  bool same_structure(const BlockOperator& o) const noexcept {
    if (blocks_.size() != o.blocks_.size()) return false;
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i].dim() != o.blocks_[i].dim()) return false;
    return true;
  }

  friend BlockOperator operator+(const BlockOperator& x, const BlockOperator& y) {
    x.require_same_structure(y, "operator+");
    std::vector<HermitianMatrix> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x.blocks_[i] + y.blocks_[i]);
    return BlockOperator(std::move(out), x.labels_);
  }

  friend BlockOperator operator*(double s, const BlockOperator& x) {
    if (!(s >= 0.0)) throw DomainError("BlockOperator: scale must be non-negative");
    std::vector<HermitianMatrix> out;
    out.reserve(x.size());
    for (const auto& b : x.blocks_) out.push_back(s * b);
    return BlockOperator(std::move(out), x.labels_);
  }

  void require_same_structure(const BlockOperator& o, const char* op) const {
    if (!same_structure(o)) {
      throw DimensionMismatch(std::string(op) + ": block structures differ");
    }
  }

 private:
  std::vector<HermitianMatrix> blocks_;
  std::vector<std::string> labels_;
};

// Search resolution for delta_central. The objective is 1-Lipschitz in the
// normalized inverse scale u = max_i hi_i / A on [0, 2]; the search starts
// from `scale_grid` uniform cells and, for `refine_rounds` rounds, splits
// every cell whose Lipschitz lower bound can still beat the incumbent into
// `refine_factor` pieces.
struct CentralSearchConfig {
  int scale_grid = 96;
  int refine_rounds = 3;
  int refine_factor = 8;
};

struct CentralSearchResult {
  double value = 1.0;
  double optimal_scale = 0.0;  // A at the best grid point, 0 for the zero operator
  double error_bound = 0.0;    // certified: value - true infimum <= error_bound
};

inline double delta_prime(const BlockOperator& b) {
  double v = 0.0;
  for (const auto& blk : b.blocks()) v = std::max(v, delta(blk).value);
  return v;
}

namespace detail {

struct BlockSpectrum {
  double lo;
  double hi;
};

// Objective for a fixed lambda = 1/A with the central coefficients minimized
// out exactly. Block i alone is best served by c_i = clamp(mid_i lambda, 0, 1)
// giving g_i; the norm constraint forces some c_j = 1, which costs f_j.
inline double central_objective(const std::vector<BlockSpectrum>& spectra, double lambda) {
  double g_max = 0.0;
  double f_min = 1e300;
  for (const auto& s : spectra) {
    const double mid = 0.5 * (s.lo + s.hi) * lambda;
    const double half = 0.5 * (s.hi - s.lo) * lambda;
    const double g = mid <= 1.0 ? half : s.hi * lambda - 1.0;
    const double f = std::max(std::abs(1.0 - s.lo * lambda), std::abs(1.0 - s.hi * lambda));
    g_max = std::max(g_max, g);
    f_min = std::min(f_min, f);
  }
  return std::max(g_max, f_min);
}

inline std::vector<BlockSpectrum> block_spectra(const BlockOperator& b) {
  std::vector<BlockSpectrum> out;
  out.reserve(b.size());
  for (const auto& blk : b.blocks()) {
    const auto r = delta(blk);
    out.push_back({r.bounds.lo, r.bounds.hi});
  }
  return out;
}

}  // namespace detail

inline CentralSearchResult delta_central_search(const BlockOperator& b,
                                                const CentralSearchConfig& cfg = {}) {
  if (cfg.scale_grid < 2 || cfg.refine_rounds < 0 || cfg.refine_factor < 2) {
    throw DomainError("delta_central: invalid search configuration");
  }
  auto spectra = detail::block_spectra(b);
  double top = 0.0;
  for (const auto& s : spectra) top = std::max(top, s.hi);
  CentralSearchResult res;
  if (top <= 0.0) return res;  // zero operator: every admissible z has ||z|| = 1
  for (auto& s : spectra) {
    s.lo /= top;
    s.hi /= top;
  }
  auto objective = [&](double u) { return detail::central_objective(spectra, u); };

  struct Cell {
    double a, b, fa, fb;
  };
  std::vector<Cell> cells;
  double best = 1.0;
  double best_u = 0.0;
  auto consider = [&](double u, double f) {
    if (f < best) {
      best = f;
      best_u = u;
    }
  };
  {
    const double h = 2.0 / cfg.scale_grid;
    double prev_u = 0.0;
    double prev_f = objective(0.0);
    for (int k = 1; k <= cfg.scale_grid; ++k) {
      const double u = k * h;
      const double f = objective(u);
      consider(u, f);
      cells.push_back({prev_u, u, prev_f, f});
      prev_u = u;
      prev_f = f;
    }
  }
  auto lower_bound = [](const Cell& c) { return 0.5 * (c.fa + c.fb - (c.b - c.a)); };
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    std::vector<Cell> next;
    for (const auto& c : cells) {
      if (lower_bound(c) > best) continue;
      const double h = (c.b - c.a) / cfg.refine_factor;
      double prev_u = c.a;
      double prev_f = c.fa;
      for (int k = 1; k <= cfg.refine_factor; ++k) {
        const double u = k == cfg.refine_factor ? c.b : c.a + k * h;
        const double f = k == cfg.refine_factor ? c.fb : objective(u);
        consider(u, f);
        next.push_back({prev_u, u, prev_f, f});
        prev_u = u;
        prev_f = f;
      }
    }
    cells = std::move(next);
  }
  double lb = best;
  for (const auto& c : cells) lb = std::min(lb, lower_bound(c));
  res.value = best;
  res.optimal_scale = best_u > 0.0 ? top / best_u : 0.0;
  res.error_bound = std::max(0.0, best - lb);
  return res;
}

inline double delta_central(const BlockOperator& b, const CentralSearchConfig& cfg = {}) {
  return delta_central_search(b, cfg).value;
}

struct DirectSumBound {
  double lhs = 0.0;  // delta_central
  double rhs = 0.0;  // delta_prime
};

inline DirectSumBound delta_direct_sum_bound(const BlockOperator& b,
                                             const CentralSearchConfig& cfg = {}) {
  return {delta_central(b, cfg), delta_prime(b)};
}

// Blockwise product and power contrasts for a pair of operators with the same
// block structure.
struct DeltaPrimeSuite {
  double delta_x = 0.0;       // delta'(x)
  double delta_y = 0.0;       // delta'(y)
  double product_xy = 0.0;    // delta'(xy)
  double product_yx = 0.0;    // delta'(yx)
  double power2_x = 0.0;      // delta'(x^2)
  double power2_y = 0.0;      // delta'(y^2)
  double delta_sum = 0.0;     // delta'(x + y)

  // Largest violation of the product, power and sum relations (<= 0 when all
  // hold exactly).
  double worst_violation() const {
    return std::max({std::abs(product_xy - product_yx),
                     product_xy - std::max(power2_x, power2_y),
                     power2_x - 2.0 * delta_x, delta_x - power2_x,
                     power2_y - 2.0 * delta_y, delta_y - power2_y,
                     delta_sum - std::max(delta_x, delta_y)});
  }
};

inline DeltaPrimeSuite delta_prime_ops(const BlockOperator& x, const BlockOperator& y) {
  x.require_same_structure(y, "delta_prime_ops");
  DeltaPrimeSuite s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& xi = x.block(i);
    const auto& yi = y.block(i);
    s.delta_x = std::max(s.delta_x, delta(xi).value);
    s.delta_y = std::max(s.delta_y, delta(yi).value);
    s.product_xy = std::max(s.product_xy, delta_product(xi, yi));
    s.product_yx = std::max(s.product_yx, delta_product(yi, xi));
    s.power2_x = std::max(s.power2_x, delta_power2(xi));
    s.power2_y = std::max(s.power2_y, delta_power2(yi));
    s.delta_sum = std::max(s.delta_sum, delta(xi + yi).value);
  }
  return s;
}

// Cone K_c built on delta_prime.
inline bool cone_member_prime(const BlockOperator& x, double c, double slack = 0.0) {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("cone_member_prime: c must lie in [0, 1]");
  return delta_prime(x) <= c + slack;
}

// Multichannel stack of equally shaped rectangular matrices.
class ChannelStack {
 public:
  explicit ChannelStack(std::vector<RectMatrix> channels) : channels_(std::move(channels)) {
    if (channels_.empty()) throw EmptyInput("ChannelStack: needs at least one channel");
    for (const auto& c : channels_) {
      if (!c.same_shape(channels_.front())) {
        throw DimensionMismatch("ChannelStack: channels must share one shape");
      }
    }
  }

  std::size_t size() const noexcept { return channels_.size(); }
  const std::vector<RectMatrix>& channels() const noexcept { return channels_; }
  const RectMatrix& channel(std::size_t i) const { return channels_.at(i); }

  friend ChannelStack operator+(const ChannelStack& x, const ChannelStack& y) {
    if (x.size() != y.size() || !x.channels_.front().same_shape(y.channels_.front())) {
      throw DimensionMismatch("ChannelStack: operands differ in channel count or shape");
    }
    std::vector<RectMatrix> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(x.channels_[i] + y.channels_[i]);
    return ChannelStack(std::move(out));
  }

 private:
  std::vector<RectMatrix> channels_;
};

inline double delta2_prime(const ChannelStack& s) {
  double v = 0.0;
  for (const auto& c : s.channels()) v = std::max(v, delta2(c));
  return v;
}

// Channelwise analogue of cross_term_bound:
//   delta2'(M+N) <= max(delta2'(M), delta2'(N),
//                       min(sup_c delta(N_c^T M_c + M_c^T N_c),
//                           sup_c delta(N_c M_c^T + M_c N_c^T))).
inline CrossTermBound delta2_prime_cross_bound(const ChannelStack& m, const ChannelStack& n) {
  const auto sum = m + n;
  double sup_left = 0.0;
  double sup_right = 0.0;
  for (std::size_t c = 0; c < m.size(); ++c) {
    sup_left = std::max(sup_left, delta_clamped(symmetrized_cross(m.channel(c), n.channel(c))));
    sup_right =
        std::max(sup_right, delta_clamped(symmetrized_outer_cross(m.channel(c), n.channel(c))));
  }
  CrossTermBound b;
  b.lhs = delta2_prime(sum);
  b.rhs = std::max({delta2_prime(m), delta2_prime(n), std::min(sup_left, sup_right)});
  b.equality_gap = b.rhs - b.lhs;
  return b;
}

}  // namespace opcontrast
