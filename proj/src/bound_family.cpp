#include "fermat/bound_family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fermat {

namespace {

Rat rat(u64 v) { return Rat(static_cast<std::int64_t>(v)); }

mpz_class big(u64 v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

void require_divisor(u64 p, u64 n, const char* who) {
  if (n == 0 || p < 2 || (p - 1) % n != 0) {
    throw InvalidInstance(std::string(who) + ": n = " + std::to_string(n) +
                          " does not divide p - 1 = " + std::to_string(p - 1));
  }
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "NA";
  }
  return "NA";
}

Rat normalized_bound(u64 s, const Rat& k) {
  const auto si = static_cast<std::int64_t>(s);
  return Rat(si * si - si - 2, 4) + Rat(2) * (k + Rat(2)) / Rat(si + 3);
}

Rat breakpoint_k(u64 s) {
  const auto si = static_cast<std::int64_t>(s);
  return Rat(si * (si + 3) * (si + 4), 4) - Rat(2);
}

BoundMinimum bound_minimum(const Rat& k) {
  if (k < Rat(1)) throw std::domain_error("bound_minimum: k must be at least 1");

  // k <= k_s  <=>  4(k + 2) <= s(s+3)(s+4); s(s+3)(s+4) > s^3 gives the guess.
  const double guess = std::floor(std::cbrt(4.0 * (k.to_double() + 2.0))) - 2.0;
  u64 s = guess > 1.0 ? static_cast<u64>(guess) : 1;
  while (s > 1 && k <= breakpoint_k(s - 1)) --s;
  while (k > breakpoint_k(s)) ++s;

  BoundMinimum out{normalized_bound(s, k), s};
  if (s > 1 && normalized_bound(s - 1, k) <= out.value) {
    throw std::logic_error("bound_minimum: located s is not the least minimizer");
  }
  if (normalized_bound(s + 1, k) < out.value) {
    throw std::logic_error("bound_minimum: located s is not a minimizer");
  }
  return out;
}

BoundMinimum bound_minimum_constrained(const Rat& k, u64 s_max) {
  if (s_max == 0) throw RangeError("bound_minimum_constrained: empty s range");
  BoundMinimum free = bound_minimum(k);
  if (free.optimal_s <= s_max) return free;
  // U_s(k) is convex in s, so past the free minimizer the best admissible s is the cap.
  return BoundMinimum{normalized_bound(s_max, k), s_max};
}

u64 max_valid_s(u64 p, u64 n) noexcept {
  if (n < 4) return 0;
  return std::min(n - 3, p / n);
}

Rat eq1_bound(u64 s, u64 p, u64 n, u64 d) {
  if (s < 1 || n < 4 || s > n - 3 || s * n > p) {
    throw RangeError("eq1_bound: s = " + std::to_string(s) + " outside 1 <= s <= n-3, s*n <= p");
  }
  const auto si = static_cast<std::int64_t>(s);
  const Rat nn = rat(n);
  const Rat lead = (Rat(si * si - si - 2) + Rat(16, si + 3)) * nn * nn / Rat(4);
  const Rat mid = Rat(2) * nn *
                  (Rat(static_cast<std::int64_t>(p) - 1 - static_cast<std::int64_t>(d))) /
                  Rat(si + 3);
  return lead + mid + rat(d);
}

mpz_class eq1_bound_refined(u64 s, u64 p, u64 n, u64 d) {
  if (s < 1 || n < 4 || s > n - 3 || s * n > p) {
    throw RangeError("eq1_bound_refined: s = " + std::to_string(s) +
                     " outside 1 <= s <= n-3, s*n <= p");
  }
  if (d % n != 0 || d / n > 3) {
    throw RangeError("eq1_bound_refined: d must be n times 0, 1, 2 or 3");
  }
  const Rat k(static_cast<std::int64_t>(p) - 1, static_cast<std::int64_t>(n));
  const Rat inner =
      normalized_bound(s, k) - Rat(2) * rat(d / n) / Rat(static_cast<std::int64_t>(s) + 3);
  return big(d) + big(n) * big(n) * inner.floor();
}

bool theorem_hypothesis(u64 p, u64 n) {
  const mpz_class N = big(n);
  const mpz_class lhs = N * N * N * N - 2 * N * N * N - 3 * N * N - 8 * N;
  return lhs >= 4 * (big(p) - 1);
}

bool corollary_hypothesis(u64 p, u64 n) {
  const mpz_class N = big(n);
  return N * N * N * N >= 4 * (big(p) - 1);
}

RealBound theorem_bound(u64 p, u64 n) {
  require_divisor(p, n, "theorem_bound");
  if (n < 4) throw InvalidInstance("theorem_bound: n must be at least 4");
  const double k = static_cast<double>((p - 1) / n);
  const double x = std::cbrt(k / 2.0);
  const double nd = static_cast<double>(n);
  return RealBound{nd * nd * (3.0 * x * x - 3.5 * x + 25.0 / 12.0), theorem_hypothesis(p, n)};
}

Verdict corollary_verdict(u64 N, u64 p, u64 n) {
  if (n < 4 || (p - 1) % n != 0 || !corollary_hypothesis(p, n)) return Verdict::not_applicable;
  const mpz_class c = big(N);
  const mpz_class nn = big(n);
  const mpz_class pm1 = big(p) - 1;
  const mpz_class lhs = 4 * c * c * c;
  const mpz_class rhs = 27 * nn * nn * nn * nn * pm1 * pm1;
  return lhs < rhs ? Verdict::pass : Verdict::fail;
}

bool weil_verdict(u64 N, u64 p, u64 n) {
  const mpz_class dev = big(N) - big(p) - 1;
  const mpz_class g = (big(n) - 1) * (big(n) - 2);
  return dev * dev <= g * g * big(p);
}

bool corollary_cube_step(u64 n) {
  if (n < 4) throw InvalidInstance("corollary_cube_step: n must be at least 4");
  const auto ni = static_cast<std::int64_t>(n);
  const Rat k = Rat(ni * ni * ni, 4);
  const Rat closed = Rat(3 * ni * ni - 7 * ni + 10, 4) + Rat(4, ni);
  if (normalized_bound(n - 3, k) != closed) return false;
  return pow(closed, 3) < pow(Rat(3 * ni * ni, 4), 3);
}

namespace {

double four_thirds_scale(u64 p, u64 n) {
  // n^{4/3} (p-1)^{2/3}
  const double nd = static_cast<double>(n);
  const double pm1 = static_cast<double>(p - 1);
  return nd * std::cbrt(nd * pm1 * pm1);
}

}  // namespace

RealBound mitkin_bound(u64 p, u64 n) {
  require_divisor(p, n, "mitkin_bound");
  const mpz_class nn = big(n);
  return RealBound{2.0 * four_thirds_scale(p, n), nn * nn * nn * nn > 8 * (big(p) - 1)};
}

RealBound hbk_bound(u64 p, u64 n) {
  require_divisor(p, n, "hbk_bound");
  const mpz_class nn = big(n);
  const double c = 4.0 / (std::sqrt(3.0) - 1.0);
  return RealBound{c * four_thirds_scale(p, n), nn * nn * nn * nn >= big(p) - 1};
}

RealBound coarse_bound(u64 p, u64 n) {
  require_divisor(p, n, "coarse_bound");
  const mpz_class m = 2 * big(n) - 1;
  return RealBound{4.0 * four_thirds_scale(p, n), m * m * m * m >= 16 * (big(p) - 1)};
}

double weil_upper(u64 p, u64 n) {
  const double g = static_cast<double>(n - 1) * static_cast<double>(n - 2);
  return static_cast<double>(p) + 1.0 + g * std::sqrt(static_cast<double>(p));
}

std::optional<Rat> BoundTable::eq1_min() const {
  if (eq1_per_s.empty()) return std::nullopt;
  auto it = std::min_element(eq1_per_s.begin(), eq1_per_s.end(),
                             [](const Eq1Entry& l, const Eq1Entry& r) { return l.eq1 < r.eq1; });
  return it->eq1;
}

std::optional<mpz_class> BoundTable::eq1_refined_min() const {
  if (eq1_per_s.empty()) return std::nullopt;
  mpz_class best = eq1_per_s.front().refined;
  for (const auto& e : eq1_per_s) best = std::min(best, e.refined);
  return best;
}

BoundTable make_bound_table(u64 p, u64 n, u64 d) {
  require_divisor(p, n, "make_bound_table");
  if (d % n != 0 || d / n > 3) {
    throw InvalidInstance("make_bound_table: d = " + std::to_string(d) +
                          " is not n times 0, 1, 2 or 3");
  }
  BoundTable t;
  t.p = p;
  t.n = n;
  t.d = d;
  t.k = (p - 1) / n;
  const u64 s_top = max_valid_s(p, n);
  t.eq1_per_s.reserve(s_top);
  for (u64 s = 1; s <= s_top; ++s) {
    t.eq1_per_s.push_back(Eq1Entry{s, eq1_bound(s, p, n, d), eq1_bound_refined(s, p, n, d)});
  }
  t.V = bound_minimum(rat(t.k));
  if (n >= 4) t.theorem = theorem_bound(p, n);
  t.mitkin = mitkin_bound(p, n);
  t.hbk = hbk_bound(p, n);
  return t;
}

BoundReport make_bound_report(const CurveInstance& inst, u64 N, u64 d) {
  BoundReport r;
  r.instance = inst;
  r.N = N;
  r.table = make_bound_table(inst.p, inst.n, d);
  r.weil = weil_verdict(N, inst);
  r.corollary = corollary_verdict(N, inst);
  return r;
}

}  // namespace fermat
