#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "opcontrast/contrast.hpp"
#include "opcontrast/random.hpp"
#include "opcontrast/verify.hpp"

using namespace opcontrast;

namespace {

HermitianMatrix diag(std::initializer_list<double> d) { return HermitianMatrix::diagonal(d); }

}  // namespace

TEST(Delta, DiagonalValues) {
  EXPECT_NEAR(delta(diag({2, 4})).value, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(delta(diag({3, 9})).value, 0.5, 1e-15);
  EXPECT_NEAR(delta(diag({1, 2})).value, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(delta(diag({2, 3})).value, 0.2, 1e-15);
  for (double l : {0.1, 0.5, 0.9}) {
    EXPECT_NEAR(delta(diag({1, l})).value, (1 - l) / (1 + l), 1e-15);
  }
}

TEST(Delta, DegenerateCases) {
  EXPECT_EQ(delta(HermitianMatrix::identity(4, 2.5)).value, 0.0);
  const auto z = delta(HermitianMatrix::zero(3));
  EXPECT_EQ(z.value, 1.0);
  EXPECT_FALSE(z.optimal_scale.has_value());
  EXPECT_TRUE(z.singular);
  const auto p = delta(diag({1, 0}));
  EXPECT_EQ(p.value, 1.0);
  EXPECT_TRUE(p.singular);
  EXPECT_DOUBLE_EQ(*p.optimal_scale, 0.5);
}

TEST(Delta, RejectsIndefinite) {
  const std::vector<double> a = {0.0, 1.0, 1.0, 0.0};
  EXPECT_THROW(delta(HermitianMatrix::from_real(2, a)), NotPositive);
}

TEST(Delta, ReportCarriesSpectrumAndScale) {
  const auto r = delta(diag({2, 4}));
  EXPECT_EQ(r.path, ContrastPath::Spectral);
  EXPECT_DOUBLE_EQ(r.bounds.lo, 2.0);
  EXPECT_DOUBLE_EQ(r.bounds.hi, 4.0);
  EXPECT_DOUBLE_EQ(*r.optimal_scale, 3.0);
  EXPECT_FALSE(r.singular);
}

TEST(InverseFormula, AgreesAndRejectsSingular) {
  EXPECT_NEAR(delta_inverse_formula(diag({2, 4})), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(delta_inverse_formula(HermitianMatrix::identity(3, 7.0)), 0.0, 1e-15);
  EXPECT_THROW(delta_inverse_formula(diag({1, 0})), SingularMatrix);
}

TEST(OptimalScale, MidpointOfSpectrum) {
  EXPECT_DOUBLE_EQ(optimal_scale(diag({2, 4})), 3.0);
  EXPECT_THROW(optimal_scale(HermitianMatrix::zero(2)), ZeroOperator);
}

// For diag(0, 1) every A >= 1/2 attains the infimum 1 and no smaller A does;
// the reported midpoint must be the left end of that set.
TEST(OptimalScale, SingularProjectionByGridScan) {
  const auto x = diag({0, 1});
  const double a_star = optimal_scale(x);
  EXPECT_DOUBLE_EQ(a_star, 0.5);
  EXPECT_NEAR(scaled_residual_norm(x, a_star), 1.0, 1e-15);
  for (int k = 1; k < 1000; ++k) {
    const double a = 0.5 * k / 1000.0;
    EXPECT_GT(scaled_residual_norm(x, a), 1.0) << a;
  }
}

TEST(Scan, MatchesClosedFormAndArgmin) {
  Rng rng(17);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_invertible_psd(uniform_int(rng, 2, 8), rng);
    const auto s = delta_scan(x);
    const auto r = delta(x);
    EXPECT_EQ(s.path, ContrastPath::Scan);
    EXPECT_NEAR(s.value, r.value, 1e-6);
    EXPECT_NEAR(*s.optimal_scale / *r.optimal_scale, 1.0, 1e-6);
  }
}

TEST(Scan, RejectsBadConfig) {
  ScanConfig cfg;
  cfg.golden_tol = 0.0;
  EXPECT_THROW(delta_scan(diag({1, 2}), cfg), DomainError);
  cfg = {};
  cfg.max_iters = 3;
  EXPECT_THROW(delta_scan(diag({1, 2}), cfg), NonConvergence);
}

TEST(Scan, ZeroOperatorIsOne) { EXPECT_EQ(delta_scan(HermitianMatrix::zero(2)).value, 1.0); }

TEST(Product, Examples) {
  EXPECT_NEAR(delta_product(diag({1, 2}), diag({1, 2})), 0.6, 1e-15);
  EXPECT_EQ(delta_product(diag({1, 0}), HermitianMatrix::identity(2)), 1.0);
  EXPECT_THROW(delta_product(diag({1, 2}), diag({1, 2, 3})), DimensionMismatch);
}

TEST(Product, NonCommutingPairIsSymmetric) {
  Rng rng(23);
  const auto x = random_invertible_psd(5, rng);
  const auto y = complex_wishart(5, 7, rng);
  EXPECT_NEAR(delta_product(x, y), delta_product(y, x), 1e-9);
}

TEST(Power2, Example) {
  const double p = delta_power2(diag({1, 2}));
  EXPECT_NEAR(p, 0.6, 1e-15);
  EXPECT_LE(1.0 / 3.0, p);
  EXPECT_LE(p, 2.0 / 3.0);
}

TEST(Cone, Membership) {
  EXPECT_FALSE(cone_member(diag({2, 4}), 0.3));
  EXPECT_TRUE(cone_member(diag({2, 4}), 1.0 / 3.0, 1e-15));
  EXPECT_TRUE(cone_member(diag({1, 0}), 1.0));
  EXPECT_THROW(cone_member(diag({1, 2}), 1.5), DomainError);
}

TEST(WeightedSubadditivity, EqualityForProportional) {
  const auto x = diag({1, 2});
  const auto t = weighted_subadditivity_terms(x, 3.0 * x);
  EXPECT_NEAR(t.lhs, t.rhs, 1e-12);
  const auto i = weighted_subadditivity_terms(HermitianMatrix::identity(2),
                                              HermitianMatrix::identity(2));
  EXPECT_EQ(i.lhs, 0.0);
  EXPECT_EQ(i.rhs, 0.0);
}

TEST(WeightedSubadditivity, SingularPolicy) {
  const auto p = diag({1, 0});
  const auto q = diag({0, 1});
  EXPECT_THROW(weighted_subadditivity_terms(p, q), SingularMatrix);
  const auto t = weighted_subadditivity_terms(p, q, SingularPolicy::DropLowerTerm);
  EXPECT_EQ(t.lhs, 0.0);
  EXPECT_EQ(t.rhs, 2.0);
}

TEST(Delta2, Examples) {
  EXPECT_NEAR(delta2(RectMatrix(2, 2, {1, 0, 0, 2})), 0.6, 1e-15);
  EXPECT_NEAR(delta2(RectMatrix(2, 3, {1, 0, 0, 0, 2, 0})), 0.6, 1e-15);
  EXPECT_EQ(delta(RectMatrix(2, 3, {1, 0, 0, 0, 2, 0}).gram()).value, 1.0);
  EXPECT_EQ(delta2(RectMatrix(2, 2, {1, 0, 0, 0})), 1.0);
}

TEST(CrossTerm, IdentityPair) {
  const auto b = cross_term_bound(RectMatrix::identity(3), RectMatrix::identity(3));
  EXPECT_NEAR(b.lhs, 0.0, 1e-15);
  EXPECT_NEAR(b.rhs, 0.0, 1e-15);
  EXPECT_THROW(cross_term_bound(RectMatrix::identity(3), RectMatrix::zeros(3, 2)),
               DimensionMismatch);
}

TEST(CrossTerm, RotationPairsSatisfyInequality) {
  Rng rng(31);
  for (int t = 0; t < 50; ++t) {
    const auto b = cross_term_bound(random_orthogonal(3, rng), random_orthogonal(3, rng));
    EXPECT_LE(b.lhs, b.rhs + 1e-9);
    EXPECT_GE(b.equality_gap, -1e-9);
  }
}

TEST(DeltaClamped, IndefiniteIsOne) {
  EXPECT_EQ(delta_clamped(diag({-1, 2})), 1.0);
  EXPECT_NEAR(delta_clamped(diag({1, 3})), 0.5, 1e-15);
}

TEST(Counterexamples, MinBoundFails) {
  const auto p = diag({1, 0});
  const auto q = diag({0, 1});
  EXPECT_EQ(delta(p + q).value, 0.0);
  EXPECT_EQ(std::min(delta(p).value, delta(q).value), 1.0);
}

TEST(Counterexamples, ContrastIsNotMonotone) {
  EXPECT_LT(delta(diag({2, 4})).value, delta(diag({3, 9})).value);
  EXPECT_GT(delta(diag({1, 2})).value, delta(diag({2, 3})).value);
}

TEST(UnitaryMixed, SpectrumIsPreserved) {
  const auto y = make_unitary_mixed_psd(2.0, 5.0, 0.3, std::polar(1.0, 0.7));
  EXPECT_NEAR(delta(y).value, 3.0 / 7.0, 1e-14);
}

class PropertySuite : public ::testing::TestWithParam<std::string> {};

TEST_P(PropertySuite, Passes) {
  const auto r = run_suite(GetParam(), 200, 12345);
  EXPECT_TRUE(r.passed()) << r.name << ": " << r.failures << " failures, worst " << r.worst;
}

INSTANTIATE_TEST_SUITE_P(All, PropertySuite, ::testing::ValuesIn([] {
                           std::vector<std::string> names;
                           for (const auto& s : property_suites()) names.emplace_back(s.name);
                           return names;
                         }()),
                         [](const auto& info) { return info.param; });
