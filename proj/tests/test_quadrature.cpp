#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "hermite_ecg/quadrature.hpp"

namespace hermite_ecg {
namespace {

TEST(BuildBasis, OnePointQuadrature) {
  const auto b = build_basis(1, 0.4);
  ASSERT_EQ(b.size(), 1);
  EXPECT_EQ(b.roots(), std::vector<double>{0.0});
  const double hf0 = hermite_function(0, 0.0);
  EXPECT_NEAR(b.synthesis()(0, 0), hf0, 1e-15);
  EXPECT_NEAR(b.analysis()(0, 0), 1.0 / hf0, 1e-15);
  EXPECT_NEAR((b.analysis() * b.synthesis())(0, 0), 1.0, 1e-15);
}

TEST(BuildBasis, AnalysisTimesSynthesisIsIdentityUpTo64) {
  for (int n = 1; n <= 64; ++n) {
    const auto b = build_basis(n, 1.0 * std::min(1.0, max_admissible_delta(n)));
    const Eigen::MatrixXd product = b.analysis() * b.synthesis();
    const double dev = (product - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    EXPECT_LT(dev, 1e-9) << "N=" << n;
  }
}

TEST(BuildBasis, MatrixEntriesFollowDefinition) {
  const int n = 8;
  const auto b = build_basis(n, 1.0);
  for (int z = 0; z < n; ++z) {
    const double tz = b.roots()[static_cast<std::size_t>(z)];
    const double last = hermite_function(n - 1, tz);
    for (int k = 0; k < n; ++k) {
      EXPECT_NEAR(b.synthesis()(z, k), hermite_function(k, tz), 1e-14);
      EXPECT_NEAR(b.analysis()(k, z), hermite_function(k, tz) / (n * last * last), 1e-12);
    }
  }
}

TEST(BuildBasis, NodePositionsScaleWithDelta) {
  const auto b = build_basis(15, 0.8);
  for (std::size_t z = 0; z < b.roots().size(); ++z) EXPECT_DOUBLE_EQ(b.node_positions[z], 0.8 * b.roots()[z]);
}

TEST(Admissibility, Window31Bound) {
  // 15 / max root of HP_31 (6.995680123718527)
  EXPECT_NEAR(max_admissible_delta(31), 2.1441803705608553, 1e-12);
  EXPECT_TRUE(is_admissible_delta(31, 2.0));
  EXPECT_TRUE(is_admissible_delta(31, 2.1));
  EXPECT_FALSE(is_admissible_delta(31, 2.2));
  EXPECT_FALSE(is_admissible_delta(31, 0.0));
  EXPECT_TRUE(std::isinf(max_admissible_delta(1)));
}

TEST(Admissibility, InadmissibleDeltaReportsBound) {
  try {
    build_basis(31, 10.0);
    FAIL() << "expected InadmissibleDelta";
  } catch (const InadmissibleDelta& e) {
    EXPECT_NEAR(e.max_admissible(), 2.1441803705608553, 1e-12);
    EXPECT_NE(std::string(e.what()).find("max admissible"), std::string::npos);
  }
}

TEST(BuildBasis, RejectsBadArguments) {
  EXPECT_THROW(build_basis(0, 1.0), ValidationError);
  EXPECT_THROW(build_basis(257, 1.0), ValidationError);
  EXPECT_THROW(build_basis(5, -1.0), ValidationError);
}

TEST(QuadratureCache, SharesUnitBasisAcrossDeltas) {
  const auto a = build_basis(21, 1.0);
  const auto b = build_basis(21, 1.7);
  EXPECT_EQ(a.unit.get(), b.unit.get());
}

TEST(QuadratureCache, ConcurrentConstructionYieldsIdenticalValues) {
  QuadratureCache cache;
  std::vector<std::shared_ptr<const UnitQuadrature>> got(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < got.size(); ++i) {
    threads.emplace_back([&, i] { got[i] = cache.get(47); });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(cache.size(), 1u);
  for (const auto& q : got) {
    EXPECT_EQ(q->roots, got[0]->roots);
    EXPECT_EQ((q->analysis - got[0]->analysis).cwiseAbs().maxCoeff(), 0.0);
  }
}

}  // namespace
}  // namespace hermite_ecg
