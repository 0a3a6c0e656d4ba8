#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "hermite_ecg/ht_optimizer.hpp"
#include "test_support.hpp"

namespace hermite_ecg {
namespace {

PeakSegment make_segment(std::vector<double> values) {
  return PeakSegment{"seg", 0, 0, std::move(values)};
}

TEST(L1Measure, Examples) {
  EXPECT_EQ(l1_measure(std::vector<double>{1.0, -2.0, 0.5}), 3.5);
  EXPECT_EQ(l1_measure(std::vector<double>{}), 0.0);
  EXPECT_EQ(l1_measure(std::vector<double>(7, 0.0)), 0.0);
  EXPECT_THROW(l1_measure(std::vector<double>{1.0, std::numeric_limits<double>::quiet_NaN()}),
               NumericalError);
}

TEST(DeltaGrid, DefaultHas21PointsWithEndpoints) {
  const auto grid = delta_grid(SearchSpec{});
  ASSERT_EQ(grid.size(), 21u);
  EXPECT_DOUBLE_EQ(grid.front(), 1.0);
  EXPECT_NEAR(grid.back(), 3.0, 1e-12);
  for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_NEAR(grid[i] - grid[i - 1], 0.1, 1e-12);
}

TEST(DeltaGrid, SinglePointAndValidation) {
  EXPECT_EQ(delta_grid(SearchSpec{1.5, 1.5, 0.1, 0, 0}), std::vector<double>{1.5});
  EXPECT_THROW(delta_grid(SearchSpec{0.0, 1.0, 0.1, 0, 0}), ValidationError);
  EXPECT_THROW(delta_grid(SearchSpec{2.0, 1.0, 0.1, 0, 0}), ValidationError);
  EXPECT_THROW(delta_grid(SearchSpec{1.0, 2.0, 0.0, 0, 0}), ValidationError);
  EXPECT_THROW(delta_grid(SearchSpec{1.0, 2.0, 0.1, 3, -3}), ValidationError);
}

TEST(OptimizeDelta, SkipsInadmissibleGridPoints) {
  std::mt19937_64 rng(7);
  const auto segment = make_segment(testing::random_values(rng, 31));
  const auto result = optimize_delta(segment, SearchSpec{1.0, 10.0, 0.1, 0, 0});
  const double bound = max_admissible_delta(31);
  std::size_t admissible = 0;
  for (const auto& t : result.trace) {
    EXPECT_EQ(t.admissible, t.delta <= bound) << t.delta;
    admissible += t.admissible ? 1 : 0;
  }
  EXPECT_EQ(result.trace.size(), 91u);
  EXPECT_EQ(admissible, 12u);  // 1.0 .. 2.1
  EXPECT_LE(result.delta_star, bound);
}

TEST(OptimizeDelta, NoAdmissibleDeltaCarriesBound) {
  const auto segment = make_segment(std::vector<double>(31, 1.0));
  try {
    optimize_delta(segment, SearchSpec{5.0, 6.0, 0.5, 0, 0});
    FAIL() << "expected NoAdmissibleDelta";
  } catch (const NoAdmissibleDelta& e) {
    EXPECT_NEAR(e.max_admissible(), 2.1441803705608553, 1e-12);
  }
}

TEST(OptimizeDelta, MatchedHermiteFunctionRecoversDelta) {
  const auto record = synthesize_qrs({{0, 1.0}}, 2.0, 31, 0.0, 1);
  const auto segment = extract_segment(record, 0, 31, 0);
  const auto result = optimize_delta(segment, SearchSpec{});
  EXPECT_NEAR(result.delta_star, 2.0, 1e-12);
  // Brute force over the same grid.
  double best_l1 = std::numeric_limits<double>::infinity();
  double best_delta = 0.0;
  for (double d : delta_grid(SearchSpec{})) {
    if (!is_admissible_delta(31, d)) continue;
    const double l1 = forward_ht(segment, d).l1;
    if (l1 < best_l1) {
      best_l1 = l1;
      best_delta = d;
    }
  }
  EXPECT_EQ(result.delta_star, best_delta);
  EXPECT_EQ(result.l1_star, best_l1);
  EXPECT_NEAR(result.l1_star, 1.0, 1e-6);
}

TEST(OptimizeDelta, ZeroSegmentPicksFirstDelta) {
  const auto result = optimize_delta(make_segment(std::vector<double>(31, 0.0)), SearchSpec{});
  EXPECT_EQ(result.delta_star, 1.0);
  EXPECT_EQ(result.l1_star, 0.0);
}

TEST(OptimizeDelta, ScalingInvariance) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto values = testing::random_values(rng, 31);
    const auto a = optimize_delta(make_segment(values), SearchSpec{});
    for (double& v : values) v *= 3.5;
    const auto b = optimize_delta(make_segment(values), SearchSpec{});
    EXPECT_EQ(a.delta_star, b.delta_star);
    EXPECT_NEAR(b.l1_star, 3.5 * a.l1_star, 1e-9 * b.l1_star);
  }
}

TEST(OptimizeDelta, FinerStepNeverWorse) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    const auto segment = make_segment(testing::random_values(rng, 31));
    const auto coarse = optimize_delta(segment, SearchSpec{1.0, 2.0, 0.2, 0, 0});
    const auto fine = optimize_delta(segment, SearchSpec{1.0, 2.0, 0.1, 0, 0});
    EXPECT_LE(fine.l1_star, coarse.l1_star + 1e-12);
  }
}

EcgRecord centred_beat(std::int64_t annotation_offset, double sigma = 0.0, std::uint64_t seed = 3) {
  SynthesisOptions options;
  options.margin = 12;
  options.annotation_offset = annotation_offset;
  return synthesize_qrs({{0, 2.0}, {2, -1.0}}, 2.0, 31, sigma, seed, options);
}

TEST(Optimize, AlignedBeatGivesZeroShift) {
  const auto record = centred_beat(0);
  const auto report = optimize(SegmentSource{&record, 0, 31}, SearchSpec{});
  EXPECT_EQ(report.best.tau, 0);
  EXPECT_NEAR(report.best.delta, 2.0, 1e-12);
  EXPECT_EQ(report.measure_vector.size(), 11u);
}

TEST(Optimize, MisannotatedBeatIsRecentred) {
  const auto record = centred_beat(3);
  const auto report = optimize(SegmentSource{&record, 0, 31}, SearchSpec{});
  EXPECT_EQ(report.best.tau, -3);
  EXPECT_NEAR(report.best.delta, 2.0, 1e-12);
}

TEST(Optimize, MeasureVectorAgreesWithBestAndGrid) {
  const auto record = centred_beat(1, 0.01, 5);
  const SearchSpec spec{};
  const auto report = optimize(SegmentSource{&record, 0, 31}, spec);
  ASSERT_EQ(report.full_grid.size(), 11u * 21u);
  double min_l1 = std::numeric_limits<double>::infinity();
  for (const auto& m : report.measure_vector) {
    min_l1 = std::min(min_l1, m.min_l1);
    if (m.tau == report.best.tau) {
      EXPECT_EQ(m.min_l1, report.best.l1);
    }
  }
  EXPECT_EQ(report.best.l1, min_l1);
  for (const auto& c : report.full_grid) {
    if (c.admissible) {
      EXPECT_GE(c.l1, min_l1);
    }
  }
  ASSERT_TRUE(report.baseline.has_value());
  EXPECT_LE(report.best.l1, report.baseline->l1);
}

TEST(Optimize, SinglePointGridEqualsBaseline) {
  const auto record = centred_beat(2, 0.01, 9);
  const auto report = optimize(SegmentSource{&record, 0, 31}, SearchSpec{1.0, 1.0, 0.1, 0, 0});
  ASSERT_TRUE(report.baseline.has_value());
  EXPECT_EQ(report.best.coeffs, report.baseline->coeffs);
  EXPECT_EQ(report.best.l1, report.baseline->l1);
}

TEST(Optimize, Deterministic) {
  const auto record = centred_beat(-2, 0.02, 17);
  const auto a = optimize(SegmentSource{&record, 0, 31}, SearchSpec{});
  const auto b = optimize(SegmentSource{&record, 0, 31}, SearchSpec{});
  EXPECT_EQ(a.best.coeffs, b.best.coeffs);
  EXPECT_EQ(a.best.tau, b.best.tau);
  EXPECT_EQ(a.best.delta, b.best.delta);
}

TEST(Optimize, OutOfRecordShiftNamesGridPoint) {
  const auto record = synthesize_qrs({{0, 1.0}}, 1.5, 31, 0.0, 1);
  try {
    optimize(SegmentSource{&record, 0, 31}, SearchSpec{});
    FAIL() << "expected WindowOutOfBounds";
  } catch (const WindowOutOfBounds& e) {
    EXPECT_NE(std::string(e.what()).find("tau=-5"), std::string::npos) << e.what();
  }
  SegmentSource zero{&record, 0, 31, PadPolicy::zero_pad};
  EXPECT_NO_THROW(optimize(zero, SearchSpec{}));
}

TEST(Optimize, BaselineAbsentWhenUnitDeltaInadmissible) {
  const auto record = synthesize_qrs({{0, 1.0}}, 0.5, 3, 0.0, 1, SynthesisOptions{"s", Label::healthy, 250.0, 2});
  const auto report = optimize(SegmentSource{&record, 0, 3}, SearchSpec{0.5, 0.8, 0.1, 0, 0});
  EXPECT_FALSE(report.baseline.has_value());
}

}  // namespace
}  // namespace hermite_ecg
