#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "opcontrast/blocks.hpp"
#include "opcontrast/random.hpp"
#include "oracles.hpp"

using namespace opcontrast;

namespace {

HermitianMatrix diag(std::initializer_list<double> d) { return HermitianMatrix::diagonal(d); }

BlockOperator scalars(std::initializer_list<double> v) {
  std::vector<HermitianMatrix> b;
  for (double s : v) b.push_back(diag({s}));
  return BlockOperator(std::move(b));
}

std::vector<oracle::Interval> intervals(const BlockOperator& b) {
  std::vector<oracle::Interval> out;
  for (const auto& blk : b.blocks()) {
    const auto ev = oracle::eigenvalues(blk);
    out.push_back({std::max(ev.front(), 0.0), std::max(ev.back(), 0.0)});
  }
  return out;
}

BlockOperator random_blocks(Rng& rng, std::size_t k) {
  std::vector<HermitianMatrix> b;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t n = uniform_int(rng, 1, 4);
    b.push_back(log_uniform(rng, 0.05, 20.0) * random_psd(n, rng));
  }
  return BlockOperator(std::move(b));
}

}  // namespace

TEST(BlockOperator, Validation) {
  EXPECT_THROW(BlockOperator({}), EmptyInput);
  const std::vector<double> a = {0.0, 1.0, 1.0, 0.0};
  EXPECT_THROW(BlockOperator({HermitianMatrix::from_real(2, a)}), NotPositive);
  EXPECT_THROW(BlockOperator({diag({1})}, {"a", "b"}), DimensionMismatch);
  EXPECT_THROW(scalars({1, 2}) + scalars({1, 2, 3}), DimensionMismatch);
  EXPECT_THROW(-1.0 * scalars({1}), DomainError);
}

TEST(DeltaPrime, SupOverBlocks) {
  const BlockOperator b({diag({2, 4}), diag({3, 9})});
  EXPECT_NEAR(delta_prime(b), 0.5, 1e-15);
}

TEST(DeltaCentral, ScalarBlocksAreCentral) {
  EXPECT_LE(delta_central(scalars({1, 0.5, 0})), 1e-3);
  EXPECT_LE(delta_central(scalars({1, 0, 1})), 1e-3);
  EXPECT_EQ(delta_prime(scalars({1, 0, 1})), 1.0);
}

TEST(DeltaCentral, SingleBlockMatchesDelta) {
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_psd(uniform_int(rng, 1, 6), rng);
    EXPECT_NEAR(delta_central(BlockOperator({x})), delta(x).value, 1e-3);
  }
}

TEST(DeltaCentral, ZeroOperator) {
  const auto r = delta_central_search(BlockOperator({HermitianMatrix::zero(2)}));
  EXPECT_EQ(r.value, 1.0);
  EXPECT_EQ(r.optimal_scale, 0.0);
}

TEST(DeltaCentral, WithinCertifiedBoundOfExactOracle) {
  Rng rng(43);
  for (int t = 0; t < 300; ++t) {
    const auto b = random_blocks(rng, uniform_int(rng, 1, 5));
    const auto r = delta_central_search(b);
    const double exact = oracle::central_exact(intervals(b));
    EXPECT_GE(r.value, exact - 1e-9);
    EXPECT_LE(r.value, exact + r.error_bound + 1e-9);
    EXPECT_LE(r.error_bound, 1e-3);
  }
}

// Real signed coefficients never beat the [0, 1] restriction.
TEST(DeltaCentral, SignedCoefficientsDoNotHelp) {
  Rng rng(47);
  for (int t = 0; t < 12; ++t) {
    const auto b = random_blocks(rng, t % 3 == 0 ? 3 : 2);
    const auto spectra = intervals(b);
    double top = 0.0;
    for (const auto& s : spectra) top = std::max(top, s.hi);
    if (top <= 0.0) continue;
    const double grid = oracle::central_signed_grid(spectra, t % 3 == 0 ? 40 : 200, 400, 2.0 / top);
    const double exact = oracle::central_exact(spectra);
    EXPECT_GE(grid, exact - 1e-12);
    EXPECT_LE(grid, exact + (t % 3 == 0 ? 0.04 : 0.02));
  }
}

TEST(DeltaCentral, FinerSearchTightensBound) {
  Rng rng(53);
  const auto b = random_blocks(rng, 4);
  const auto coarse = delta_central_search(b, {8, 0, 2});
  const auto fine = delta_central_search(b);
  EXPECT_LE(fine.value, coarse.value + 1e-15);
  EXPECT_LE(fine.error_bound, coarse.error_bound + 1e-15);
  EXPECT_THROW(delta_central_search(b, {1, 0, 2}), DomainError);
}

TEST(DirectSum, ProjectionPatternExample) {
  const auto r = delta_direct_sum_bound(scalars({1, 0, 1}));
  EXPECT_LE(r.lhs, 1e-3);
  EXPECT_EQ(r.rhs, 1.0);
}

TEST(DeltaPrimeOps, SingularBlockGivesOne) {
  const BlockOperator x({diag({1, 0}), diag({1, 2})});
  const BlockOperator y({diag({1, 1}), diag({2, 1})});
  const auto s = delta_prime_ops(x, y);
  EXPECT_EQ(s.product_xy, 1.0);
  EXPECT_LE(s.worst_violation(), 1e-9);
}

TEST(ConePrime, Membership) {
  const BlockOperator b({diag({2, 4}), diag({3, 9})});
  EXPECT_TRUE(cone_member_prime(b, 0.5));
  EXPECT_FALSE(cone_member_prime(b, 0.4));
}

TEST(ChannelStack, ShapeChecks) {
  EXPECT_THROW(ChannelStack({}), EmptyInput);
  EXPECT_THROW(ChannelStack({RectMatrix::zeros(2, 2), RectMatrix::zeros(2, 3)}),
               DimensionMismatch);
  const ChannelStack s({RectMatrix(2, 2, {1, 0, 0, 2}), RectMatrix::identity(2)});
  EXPECT_NEAR(delta2_prime(s), 0.6, 1e-15);
}

TEST(ChannelStack, CrossBoundHolds) {
  Rng rng(59);
  for (int t = 0; t < 100; ++t) {
    std::vector<RectMatrix> m, n;
    for (int c = 0; c < 3; ++c) {
      m.push_back(gaussian_rect(3, 5, rng));
      n.push_back(gaussian_rect(3, 5, rng));
    }
    const auto b = delta2_prime_cross_bound(ChannelStack(m), ChannelStack(n));
    EXPECT_LE(b.lhs, b.rhs + 1e-9);
  }
}
