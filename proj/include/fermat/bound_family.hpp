#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fermat/point_count.hpp"
#include "fermat/rational.hpp"

namespace fermat {

// Raised when a bound is requested outside 1 <= s <= n-3, s*n <= p.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

enum class Verdict { pass, fail, not_applicable };

std::string_view to_string(Verdict v) noexcept;

// ---------------------------------------------------------------------------
// Normalized bound family. U_s(k) is the d = 0 bound of the family divided
// by n^2, written as a linear function of k = (p - 1) / n.

/// (s^2 - s - 2)/4 + 2(k + 2)/(s + 3).
Rat normalized_bound(u64 s, const Rat& k);

/// The k at which U_s and U_{s+1} cross: s(s+3)(s+4)/4 - 2.
Rat breakpoint_k(u64 s);

struct BoundMinimum {
  Rat value;
  u64 optimal_s = 0;  // smallest minimizer
};

/// min over integer s >= 1 of U_s(k), for k >= 1. Found by locating the
/// interval k_{s-1} < k <= k_s (k_0 = -2) rather than scanning s.
BoundMinimum bound_minimum(const Rat& k);

/// Same minimum restricted to 1 <= s <= s_max.
BoundMinimum bound_minimum_constrained(const Rat& k, u64 s_max);

// ---------------------------------------------------------------------------
// Unnormalized family in terms of the curve data.

/// Largest s with s <= n - 3 and s*n <= p; zero when the range is empty.
u64 max_valid_s(u64 p, u64 n) noexcept;

/// (1/4)(s^2 - s - 2 + 16/(s+3)) n^2 + 2 n (p - 1 - d)/(s + 3) + d, exactly.
/// p need not satisfy n | p - 1 here; throws RangeError outside the s range.
Rat eq1_bound(u64 s, u64 p, u64 n, u64 d);
inline Rat eq1_bound(u64 s, const CurveInstance& inst, u64 d) {
  return eq1_bound(s, inst.p, inst.n, d);
}

/// d + n^2 * floor(U_s(k) - 2(d/n)/(s+3)) with k = (p-1)/n, using the fact
/// that N - d is a multiple of n^2. Requires d = j*n with j in {0,1,2,3}.
mpz_class eq1_bound_refined(u64 s, u64 p, u64 n, u64 d);
inline mpz_class eq1_bound_refined(u64 s, const CurveInstance& inst, u64 d) {
  return eq1_bound_refined(s, inst.p, inst.n, d);
}

// ---------------------------------------------------------------------------
// Closed-form bounds.

struct RealBound {
  double value = 0.0;
  bool applicable = false;
};

// Relative error budget of the double-precision closed-form bounds.
inline constexpr double kRealBoundRelError = 1e-12;

/// n^4 - 2n^3 - 3n^2 - 8n >= 4(p - 1), exactly.
bool theorem_hypothesis(u64 p, u64 n);
/// n^4 >= 4(p - 1), exactly.
bool corollary_hypothesis(u64 p, u64 n);

/// n^2 (3(k/2)^{2/3} - (7/2)(k/2)^{1/3} + 25/12). Throws InvalidInstance
/// for n < 4 or n not dividing p - 1.
RealBound theorem_bound(u64 p, u64 n);
inline RealBound theorem_bound(const CurveInstance& inst) { return theorem_bound(inst.p, inst.n); }

/// Decides N < 3 * 2^{-2/3} n^{4/3} (p-1)^{2/3} through 4N^3 < 27 n^4 (p-1)^2.
/// not_applicable when n < 4, n does not divide p - 1, or n^4 < 4(p-1).
Verdict corollary_verdict(u64 N, u64 p, u64 n);
inline Verdict corollary_verdict(u64 N, const CurveInstance& inst) {
  return corollary_verdict(N, inst.p, inst.n);
}

/// (N - p - 1)^2 <= (n-1)^2 (n-2)^2 p, exactly.
bool weil_verdict(u64 N, u64 p, u64 n);
inline bool weil_verdict(u64 N, const CurveInstance& inst) { return weil_verdict(N, inst.p, inst.n); }

/// Checks U_{n-3}(n^3/4) = (3n^2 - 7n + 10)/4 + 4/n and that its cube is
/// below (3n^2/4)^3, both exactly.
bool corollary_cube_step(u64 n);

/// 2 n^{4/3} (p-1)^{2/3}, applicable when n^4 > 8(p-1). Bounds the count of
/// x^n - y^n = c over F_p^* x F_p^*, not the projective count.
RealBound mitkin_bound(u64 p, u64 n);

/// (4/(sqrt 3 - 1)) n^{4/3} (p-1)^{2/3}, applicable when n^4 >= p-1. Same
/// normalization as mitkin_bound.
RealBound hbk_bound(u64 p, u64 n);

/// 4 n^{4/3} (p-1)^{2/3}, stated for (n - 1/2)^4 >= p - 1.
RealBound coarse_bound(u64 p, u64 n);

/// p + 1 + (n-1)(n-2) sqrt(p).
double weil_upper(u64 p, u64 n);

// ---------------------------------------------------------------------------
// Reports.

struct Eq1Entry {
  u64 s = 0;
  Rat eq1;
  mpz_class refined;
};

/// Every bound that depends on (p, n, d) only.
struct BoundTable {
  u64 p = 0;
  u64 n = 0;
  u64 d = 0;
  u64 k = 0;
  std::vector<Eq1Entry> eq1_per_s;  // s = 1 .. max_valid_s(p, n)
  BoundMinimum V;
  std::optional<RealBound> theorem;  // absent for n < 4
  RealBound mitkin;
  RealBound hbk;

  std::optional<Rat> eq1_min() const;
  std::optional<mpz_class> eq1_refined_min() const;
};

BoundTable make_bound_table(u64 p, u64 n, u64 d);

struct BoundReport {
  CurveInstance instance;
  u64 N = 0;
  BoundTable table;
  bool weil = false;
  Verdict corollary = Verdict::not_applicable;
};

BoundReport make_bound_report(const CurveInstance& inst, u64 N, u64 d);

}  // namespace fermat
