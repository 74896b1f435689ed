#include <gtest/gtest.h>

#include <cmath>

#include "fermat/envelope.hpp"

using namespace fermat;

namespace {

// 6 - 3(13/2)^{2/3} + (7/2)(13/2)^{1/3}, to 30 digits.
constexpr double kCStar = 2.08316487260625989655485780313;

}  // namespace

TEST(EnvelopeW, Examples) {
  for (double c : {0.0, 1.0, kLowerEnvelopeC, kUpperEnvelopeC}) {
    const double s = 1.0;
    const double node = std::pow(s + 7.0 / 3.0, 3) / 4.0;
    EXPECT_NEAR(envelope_w(c, node), (3.0 + 7.0 + 4.0 * c) / 4.0, 1e-12);
  }
  EXPECT_NEAR(envelope_w(kUpperEnvelopeC, 2.0), 19.0 / 12.0, 1e-15);
  EXPECT_NEAR(envelope_w(kLowerEnvelopeC, 2.0), 47.0 / 48.0, 1e-15);
  EXPECT_THROW(envelope_w(1.0, 0.0), std::domain_error);
  EXPECT_THROW(envelope_w(1.0, -3.0), std::domain_error);
}

TEST(EnvelopeW, ShiftedNodeIdentity) {
  for (int s = 1; s <= 100; ++s) {
    const double node = std::pow(s + 7.0 / 3.0, 3) / 4.0;
    const double expect = (3.0 * s * s + 7.0 * s + 4.0 * kUpperEnvelopeC) / 4.0;
    ASSERT_NEAR(envelope_w(kUpperEnvelopeC, node), expect, 1e-10 * expect) << s;
  }
}

// W'' = (k/2)^{-5/3} (7/36 - (k/2)^{1/3} / 6) changes sign at k = 2 (7/6)^3.
TEST(EnvelopeW, IsConcaveFromInflection) {
  for (int k = 4; k <= 100000; ++k) {
    const double kd = k;
    const double mid = 2.0 * envelope_w(kUpperEnvelopeC, kd);
    const double sides = envelope_w(kUpperEnvelopeC, kd - 1.0) + envelope_w(kUpperEnvelopeC, kd + 1.0);
    ASSERT_GE(mid, sides - 1e-9) << k;
  }
}

TEST(EnvelopeW, IsConvexBelowInflection) {
  const double inflection = 2.0 * std::pow(7.0 / 6.0, 3);
  EXPECT_GT(inflection, 3.0);
  EXPECT_LT(inflection, 4.0);
  for (int k : {2, 3}) {
    const double kd = k;
    const double second = envelope_w(0.0, kd - 1.0) + envelope_w(0.0, kd + 1.0) - 2.0 * envelope_w(0.0, kd);
    EXPECT_GT(second, 1e-3) << k;
  }
}

TEST(EnvelopeW, DerivativeBoundByFiniteDifferences) {
  for (double k = 1.0; k <= 1e6; k *= 1.37) {
    const double h = 1e-5 * k;
    const double fd = (envelope_w(0.0, k + h) - envelope_w(0.0, k - h)) / (2.0 * h);
    EXPECT_NEAR(fd, envelope_w_derivative(k), 1e-6 * std::max(1.0, std::abs(fd))) << k;
    EXPECT_LE(envelope_w_derivative(k), std::pow(k / 2.0, -1.0 / 3.0));
  }
}

TEST(EnvelopeW, BreakpointsDominateCubes) {
  for (std::int64_t s = 1; s <= 10000; ++s) {
    ASSERT_GE(breakpoint_k(static_cast<u64>(s)), Rat(s * s * s, 4));
  }
}

TEST(RequiredC, Examples) {
  EXPECT_NEAR(required_c(2), kCStar, 1e-12);
  EXPECT_NEAR(required_c(1), 2.07538775762331662661565582113, 1e-12);
  EXPECT_NEAR(required_c(1), 2.0 - envelope_w(0.0, 3.0), 1e-15);
  EXPECT_LT(required_c(10), required_c(2));
  EXPECT_NEAR(required_c(10), 1.86266893301103909462466387573, 1e-11);
  EXPECT_NEAR(c_star_closed_form(), kCStar, 1e-14);
}

TEST(CStar, AttainedAtTwoAndBelowTwentyFiveTwelfths) {
  const CStar cs = c_star(1000);
  EXPECT_EQ(cs.argmax_s, 2U);
  EXPECT_NEAR(cs.value, kCStar, 1e-12);
  EXPECT_LT(cs.value, 25.0 / 12.0);
  EXPECT_GT(cs.value, 5.0 / 3.0);
  EXPECT_TRUE(cs.tail_bound_holds);
  EXPECT_TRUE(cs.tail_covered);
  EXPECT_THROW(c_star(9), std::domain_error);
}

TEST(EnvelopeReal, Examples) {
  const auto far = envelope_real(1e8);
  EXPECT_LT(std::abs(far.value - envelope_w(kLowerEnvelopeC, 1e8)), 0.01);

  const auto one = envelope_real(1.0);
  EXPECT_LE(one.value, 1.0);
  EXPECT_GE(one.s, 1.0);

  EXPECT_LE(envelope_real(13.0).value, 6.0);
  EXPECT_THROW(envelope_real(0.5), std::domain_error);
}

TEST(EnvelopeReal, SolvesStationarityAndUndercutsIntegerMinimum) {
  for (std::int64_t k = 1; k <= 10000; ++k) {
    const double kd = static_cast<double>(k);
    const auto env = envelope_real(kd);
    const double residual = (2.0 * env.s - 1.0) * (env.s + 3.0) * (env.s + 3.0) - 8.0 * (kd + 2.0);
    const double slope = 2.0 * (env.s + 3.0) * (env.s + 3.0) + 4.0 * (2.0 * env.s - 1.0) * (env.s + 3.0);
    ASSERT_LE(std::abs(residual), 1e-10 * slope + 1e-9) << k;
    ASSERT_LE(env.value, bound_minimum(Rat(k)).value.to_double() + 1e-12) << k;
  }
}

TEST(Sandwich, HoldsOnSmallRange) {
  const auto r = sandwich_check(1, 20000);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checked, 20000U);
  // Tightest upper gap sits at k_2 = 13 and equals 25/12 - c*.
  EXPECT_EQ(r.min_upper_gap_at, Rat(13));
  EXPECT_NEAR(r.min_upper_gap, 25.0 / 12.0 - kCStar, 1e-12);
  EXPECT_LT(r.max_upper_gap, kUpperGapLimit);
}

TEST(Sandwich, SmallKValues) {
  const auto at2 = sandwich_check(2, 2);
  EXPECT_TRUE(at2.ok());
  EXPECT_EQ(bound_minimum(Rat(2)).value, Rat(3, 2));
  EXPECT_NEAR(at2.min_upper_gap, 1.0 / 12.0, 1e-14);
}

TEST(Sandwich, WorkerSplitMatchesSingleThread) {
  const auto one = sandwich_check(1, 5000, {}, 1);
  const auto many = sandwich_check(1, 5000, {}, 4);
  EXPECT_EQ(one.checked, many.checked);
  EXPECT_EQ(one.violation_count, many.violation_count);
  EXPECT_EQ(one.min_upper_gap, many.min_upper_gap);
  EXPECT_EQ(one.min_upper_gap_at, many.min_upper_gap_at);
  EXPECT_EQ(one.max_upper_gap_at, many.max_upper_gap_at);
  EXPECT_EQ(one.min_lower_gap_at, many.min_lower_gap_at);
}

TEST(Sandwich, ReportsViolationsWithTheirK) {
  // A margin of 100% of W forces upper-side failures.
  SandwichMargins harsh;
  harsh.relative = 1.0;
  const auto r = sandwich_check(1, 10, harsh);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations.front().k, Rat(1));
  EXPECT_THROW(sandwich_check(0, 5), std::domain_error);
  EXPECT_THROW(sandwich_check(6, 5), std::domain_error);
}

TEST(Sandwich, Breakpoints) {
  const auto r = sandwich_check_breakpoints(500);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.checked, 500U);
}
