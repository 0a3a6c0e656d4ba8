#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hermite_ecg/hermite_functions.hpp"
#include "test_support.hpp"

namespace hermite_ecg {
namespace {

TEST(HermitePolynomial, BaseCasesAndLowOrders) {
  EXPECT_EQ(hermite_polynomial(0, 123.4), 1.0);
  EXPECT_EQ(hermite_polynomial(0, -7.0), 1.0);
  EXPECT_DOUBLE_EQ(hermite_polynomial(1, 3.0), 6.0);
  EXPECT_DOUBLE_EQ(hermite_polynomial(2, 1.0), 2.0);
  // HP_3 = 8t^3 - 12t
  EXPECT_DOUBLE_EQ(hermite_polynomial(3, 2.0), 64.0 - 24.0);
}

TEST(HermitePolynomial, MatchesExplicitSum) {
  for (int n = 0; n <= 15; ++n) {
    for (double t : {-2.5, -0.3, 0.0, 0.7, 1.9}) {
      const double expected = static_cast<double>(testing::hermite_polynomial_direct(n, t));
      EXPECT_NEAR(hermite_polynomial(n, t), expected, 1e-12 * (1.0 + std::abs(expected))) << n << " " << t;
    }
  }
}

TEST(HermitePolynomial, RejectsOrdersOutsideRange) {
  EXPECT_THROW(hermite_polynomial(-1, 0.0), ValidationError);
  EXPECT_THROW(hermite_polynomial(kMaxHermiteOrder + 1, 0.0), ValidationError);
  EXPECT_NO_THROW(hermite_polynomial(kMaxHermiteOrder, 0.1));
}

TEST(HermiteFunction, ClosedFormValues) {
  const double inv_quartic_pi = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  EXPECT_NEAR(hermite_function(0, 0.0, 1.0), inv_quartic_pi, 1e-15);
  EXPECT_NEAR(hermite_function(0, 0.0, 1.0), 0.7511255444649425, 1e-15);
  EXPECT_EQ(hermite_function(1, 0.0, 1.0), 0.0);
  EXPECT_NEAR(hermite_function(0, 0.0, 4.0), 0.3755627722324712, 1e-15);
}

TEST(HermiteFunction, HighOrderMatchesArbitraryPrecision) {
  // 50-digit evaluation of e^{-t^2/2} HP_25(t) / sqrt(2^25 25! sqrt(pi)) at t = 1.3.
  constexpr double kFrozen = 0.05731102076154465218759341944499;
  EXPECT_NEAR(testing::hermite_function_direct(25, 1.3), kFrozen, 1e-16);
  EXPECT_NEAR(hermite_function(25, 1.3, 1.0), kFrozen, 1e-10 * kFrozen);
}

TEST(HermiteFunction, RecurrenceMatchesDirectFormulaOnGrid) {
  for (int n = 0; n <= 20; ++n) {
    for (int i = -50; i <= 50; ++i) {
      const double t = 0.1 * i;
      const double direct = testing::hermite_function_direct(n, t);
      const double got = hermite_function(n, t, 1.0);
      // Relative where the value is representable; near zeros an absolute floor.
      EXPECT_NEAR(got, direct, 1e-10 * std::max(std::abs(direct), 1e-6)) << "n=" << n << " t=" << t;
    }
  }
}

TEST(HermiteFunction, ScalingIsDilationWithUnitNormPrefactor) {
  for (int n : {0, 1, 4, 9}) {
    for (double t : {-3.0, -0.4, 1.1, 2.5}) {
      for (double delta : {0.5, 1.7, 3.0}) {
        EXPECT_NEAR(hermite_function(n, t, delta), hermite_function(n, t / delta, 1.0) / std::sqrt(delta), 1e-14);
      }
    }
  }
}

TEST(HermiteFunction, BatchMatchesSingleEvaluation) {
  const auto all = hermite_functions(30, 2.2, 1.4);
  ASSERT_EQ(all.size(), 31u);
  for (int n = 0; n <= 30; ++n) EXPECT_DOUBLE_EQ(all[static_cast<std::size_t>(n)], hermite_function(n, 2.2, 1.4));
}

TEST(HermiteFunction, LargeOrderStaysFinite) {
  for (double t : {0.0, 5.0, 20.0, 31.0}) EXPECT_TRUE(std::isfinite(hermite_function(kMaxHermiteOrder, t)));
}

TEST(HermiteFunction, RejectsBadDelta) {
  EXPECT_THROW(hermite_function(0, 0.0, 0.0), ValidationError);
  EXPECT_THROW(hermite_function(0, 0.0, -1.0), ValidationError);
  EXPECT_THROW(hermite_function(0, 0.0, std::nan("")), ValidationError);
}

TEST(HermiteRoots, SmallClosedForms) {
  EXPECT_EQ(hermite_roots(1), std::vector<double>{0.0});
  const auto r2 = hermite_roots(2);
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_NEAR(r2[0], -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(r2[1], 1.0 / std::sqrt(2.0), 1e-15);
  const auto r3 = hermite_roots(3);
  ASSERT_EQ(r3.size(), 3u);
  EXPECT_NEAR(r3[0], -std::sqrt(1.5), 1e-15);
  EXPECT_EQ(r3[1], 0.0);
  EXPECT_NEAR(r3[2], std::sqrt(1.5), 1e-15);
}

TEST(HermiteRoots, ResidualAndSymmetryUpTo256) {
  for (int n = 1; n <= kMaxRootCount; ++n) {
    const auto roots = hermite_roots(n);
    ASSERT_EQ(static_cast<int>(roots.size()), n);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (i > 0) {
        EXPECT_LT(roots[i - 1], roots[i]) << "N=" << n;
      }
      EXPECT_NEAR(roots[i], -roots[roots.size() - 1 - i], 1e-12);
      // |HP_N(t)| < 1e-8 |HP'_N(t)| with HP'_N = 2N HP_{N-1}, in long double.
      const auto [hp, hp_prev] = testing::hermite_polynomial_ld(n, roots[i]);
      const long double derivative = 2.0L * n * hp_prev;
      EXPECT_LT(std::fabs(hp), 1e-8L * std::fabs(derivative)) << "N=" << n << " z=" << i;
    }
  }
}

TEST(HermiteRoots, KnownLargestRoot) {
  // numpy.polynomial.hermite.hermroots for HP_31
  EXPECT_NEAR(hermite_roots(31).back(), 6.995680123718527, 1e-12);
}

TEST(HermiteRoots, RejectsCountsOutsideRange) {
  EXPECT_THROW(hermite_roots(0), ValidationError);
  EXPECT_THROW(hermite_roots(kMaxRootCount + 1), ValidationError);
}

}  // namespace
}  // namespace hermite_ecg
