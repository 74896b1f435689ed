#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fermat/bound_family.hpp"
#include "fermat/point_count.hpp"
#include "oracles.hpp"

using namespace fermat;

namespace {

CountResult indicator(const CurveInstance& inst) {
  const PrimeFieldCtx ctx(inst.p);
  return count_indicator(inst, PowerSubgroup(ctx, inst.n));
}

CountResult jacobi(const CurveInstance& inst) { return count_jacobi(inst, PrimeFieldCtx(inst.p)); }

}  // namespace

TEST(CountNaive, Examples) {
  const auto r = count_naive({13, 4, 1, 1});
  EXPECT_EQ(r.N, 8U);
  EXPECT_EQ(r.affine, 8U);
  EXPECT_EQ(r.infinity, 0U);
  EXPECT_EQ(r.d, 8U);
  EXPECT_EQ(r.method, CountMethod::naive);

  EXPECT_EQ(count_naive({5, 4, 1, 1}).N, 8U);
  EXPECT_EQ(count_naive({13, 2, 1, 1}).N, 14U);
}

TEST(CountIndicator, Examples) {
  EXPECT_EQ(indicator({13, 4, 1, 1}).N, 8U);
  EXPECT_EQ(indicator({13, 1, 1, 1}).N, 14U);
  EXPECT_TRUE(indicator({61, 5, 2, 3}).same_counts(count_naive({61, 5, 2, 3})));
}

TEST(CountJacobi, Examples) {
  EXPECT_EQ(jacobi({13, 4, 1, 1}).N, 8U);
  EXPECT_TRUE(jacobi({7, 3, 1, 1}).same_counts(count_naive({7, 3, 1, 1})));
  EXPECT_EQ(jacobi({13, 2, 1, 1}).N, 14U);
  EXPECT_EQ(jacobi({13, 1, 1, 1}).N, 14U);
}

// Frozen from an O(p^3) count of nonzero solutions in F_p^3 divided by p - 1.
TEST(Count, FrozenProjectiveValues) {
  struct Case {
    CurveInstance inst;
    u64 N;
    u64 d;
  };
  const Case cases[] = {
      {{13, 4, 1, 1}, 8, 8},   {{5, 4, 1, 1}, 8, 8},     {{13, 2, 1, 1}, 14, 6},
      {{61, 5, 2, 3}, 55, 5},  {{7, 3, 1, 1}, 9, 9},     {{13, 4, 2, 2}, 0, 0},
      {{13, 6, 1, 1}, 18, 18}, {{13, 12, 1, 1}, 24, 24}, {{31, 10, 3, 7}, 0, 0},
      {{37, 9, 5, 2}, 0, 0},   {{41, 8, 1, 1}, 16, 16},
  };
  for (const auto& c : cases) {
    const auto r = indicator(c.inst);
    EXPECT_EQ(r.N, c.N) << c.inst.p << ' ' << c.inst.n << ' ' << c.inst.a << ' ' << c.inst.b;
    EXPECT_EQ(r.d, c.d);
    EXPECT_EQ(jacobi(c.inst).N, c.N);
    EXPECT_EQ(count_naive(c.inst).N, c.N);
  }
}

TEST(Count, AgreesWithHomogeneousOracleOnSmallPrimes) {
  for (u64 p : {3, 5, 7, 11, 13, 17}) {
    const PrimeFieldCtx ctx(p);
    for (u64 n : divisors(p - 1)) {
      const PowerSubgroup sub(ctx, n);
      for (u64 a = 1; a < p; ++a) {
        for (u64 b = 1; b < p; ++b) {
          const CurveInstance inst{p, n, a, b};
          const auto r = count_indicator(inst, sub);
          ASSERT_EQ(r.N, oracle::projective_count(p, n, a, b)) << p << ' ' << n << ' ' << a << ' ' << b;
          ASSERT_EQ(r.d, oracle::projective_boundary(p, n, a, b));
        }
      }
    }
  }
}

TEST(BoundaryCount, Examples) {
  const PrimeFieldCtx f13(13);
  const PowerSubgroup g4(f13, 4);
  EXPECT_EQ(boundary_count_d({13, 4, 1, 1}, g4), 8U);
  // 2, 2 and -1 are all outside G = {1, 3, 9}; direct enumeration agrees on 0.
  EXPECT_EQ(boundary_count_d({13, 4, 2, 2}, g4), 0U);
  EXPECT_EQ(boundary_count_direct({13, 4, 2, 2}), 0U);

  const PrimeFieldCtx f5(5);
  EXPECT_EQ(boundary_count_d({5, 4, 1, 1}, PowerSubgroup(f5, 4)), 8U);
}

// Cross-method equality, divisibility, Weil, coset invariance and boundary
// agreement over p <= 200: exhaustive (a, b) up to 31, seeded samples above.
TEST(Count, InvariantsOverDeskScaleInstances) {
  std::mt19937_64 rng(20260101);
  for (u64 p = 3; p <= 200; ++p) {
    if (!oracle::is_prime(p)) continue;
    const PrimeFieldCtx ctx(p);
    for (u64 n : divisors(p - 1)) {
      if (n < 2) continue;
      const PowerSubgroup sub(ctx, n);
      const JacobiTable jt(ctx, n);
      const u64 gn = pow_mod(ctx.generator(), n, p);  // a unit n-th power

      std::vector<std::pair<u64, u64>> pairs;
      if (p <= 31) {
        for (u64 a = 1; a < p; ++a)
          for (u64 b = 1; b < p; ++b) pairs.emplace_back(a, b);
      } else {
        std::uniform_int_distribution<u64> pick(1, p - 1);
        for (int i = 0; i < 5; ++i) pairs.emplace_back(pick(rng), pick(rng));
      }
      for (auto [a, b] : pairs) {
        const CurveInstance inst{p, n, a, b};
        const auto main = count_indicator(inst, sub);
        ASSERT_TRUE(main.same_counts(count_naive(inst))) << p << ' ' << n << ' ' << a << ' ' << b;
        ASSERT_TRUE(main.same_counts(jt.count(inst))) << p << ' ' << n << ' ' << a << ' ' << b;
        ASSERT_EQ(main.N, main.affine + main.infinity);
        ASSERT_EQ((main.N - main.d) % (n * n), 0U);
        ASSERT_EQ(main.d % n, 0U);
        ASSERT_LE(main.d / n, 3U);
        ASSERT_TRUE(weil_verdict(main.N, inst));
        ASSERT_EQ(boundary_count_direct(inst), main.d);

        const CurveInstance shifted_a{p, n, a * gn % p, b};
        const CurveInstance shifted_b{p, n, a, b * gn % p};
        ASSERT_EQ(count_indicator(shifted_a, sub).N, main.N);
        ASSERT_EQ(count_indicator(shifted_b, sub).N, main.N);
      }
    }
  }
}

TEST(JacobiTable, SumsHaveExpectedMagnitudes) {
  const PrimeFieldCtx ctx(61);
  const JacobiTable jt(ctx, 12);
  const double root_p = std::sqrt(61.0);
  for (u64 j = 1; j < 12; ++j) EXPECT_NEAR(std::abs(jt.gauss(j)), root_p, 1e-9);
  EXPECT_NEAR(jt.jacobi(0, 0).real(), 61.0, 1e-12);
  for (u64 i = 1; i < 12; ++i) {
    EXPECT_NEAR(std::abs(jt.jacobi(0, i)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(jt.jacobi(i, 12 - i)), 1.0, 1e-9);
    for (u64 j = 1; j < 12; ++j) {
      if ((i + j) % 12 != 0) {
        EXPECT_NEAR(std::abs(jt.jacobi(i, j)), root_p, 1e-9);
      }
    }
  }
}

TEST(JacobiTable, DirectSumMatchesGaussQuotient) {
  const PrimeFieldCtx ctx(37);
  const JacobiTable jt(ctx, 9);
  for (u64 i = 1; i < 9; ++i) {
    for (u64 j = 1; j < 9; ++j) {
      std::complex<double> direct{0.0, 0.0};
      for (u64 u = 2; u < 37; ++u) direct += jt.character(i, u) * jt.character(j, 37 + 1 - u);
      EXPECT_NEAR(std::abs(direct - jt.jacobi(i, j)), 0.0, 1e-9) << i << ' ' << j;
    }
  }
}

TEST(CountDifferenceForm, MatchesBruteForce) {
  for (u64 p : {13, 31, 61}) {
    const PrimeFieldCtx ctx(p);
    for (u64 n : divisors(p - 1)) {
      const PowerSubgroup sub(ctx, n);
      for (u64 c = 1; c < p; c += 5) {
        u64 brute = 0;
        for (u64 x = 1; x < p; ++x)
          for (u64 y = 1; y < p; ++y)
            if ((pow_mod(x, n, p) + p - pow_mod(y, n, p)) % p == c) ++brute;
        EXPECT_EQ(count_difference_form(p, n, c, sub), brute) << p << ' ' << n << ' ' << c;
      }
    }
  }
}

TEST(ValidateInstance, RejectsBadTuples) {
  EXPECT_NO_THROW(validate_instance({13, 4, 1, 1}));
  EXPECT_THROW(validate_instance({15, 2, 1, 1}), InvalidInstance);
  EXPECT_THROW(validate_instance({13, 5, 1, 1}), InvalidInstance);
  EXPECT_THROW(validate_instance({13, 4, 0, 1}), InvalidInstance);
  EXPECT_THROW(validate_instance({13, 4, 1, 13}), InvalidInstance);
  EXPECT_THROW(validate_instance({13, 1, 1, 1}), InvalidInstance);
  EXPECT_NO_THROW(validate_instance({13, 1, 1, 1}, /*allow_line=*/true));
}
