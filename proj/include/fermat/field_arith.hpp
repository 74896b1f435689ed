#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace fermat {

using u64 = std::uint64_t;

// Raised for (p, n, a, b) tuples that do not describe a usable curve or field.
class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// base^exp mod p by square-and-multiply. Requires base < p and p < 2^32.
constexpr u64 pow_mod(u64 base, u64 exp, u64 p) noexcept {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return result;
}

// Trial division; p is desk-scale.
bool is_prime(u64 p) noexcept;

// Distinct prime factors of m in increasing order.
std::vector<u64> prime_factors(u64 m);

// All positive divisors of m in increasing order.
std::vector<u64> divisors(u64 m);

/// Least g >= 2 of multiplicative order exactly p - 1. For p = 2 returns 1.
/// Throws InvalidInstance when p is not prime.
u64 find_primitive_root(u64 p);

/// The prime field F_p together with its least primitive root and a dense
/// discrete-log table. Immutable once built.
class PrimeFieldCtx {
 public:
  /// Certifies p prime, finds the primitive root and fills the dlog table.
  explicit PrimeFieldCtx(u64 p);

  u64 modulus() const noexcept { return p_; }
  u64 generator() const noexcept { return g_; }

  // Exponent e in [0, p-2] with g^e = t. t must be in [1, p-1].
  u64 dlog(u64 t) const noexcept { return dlog_[t]; }
  std::span<const u64> dlog_table() const noexcept { return dlog_; }

  u64 inverse(u64 t) const noexcept { return pow_mod(t, p_ - 2, p_); }
  u64 neg(u64 t) const noexcept { return t == 0 ? 0 : p_ - t; }

 private:
  u64 p_;
  u64 g_;
  std::vector<u64> dlog_;  // index 0 unused
};

/// G = {x^n : x in F_p^*}, the subgroup of order k = (p-1)/n.
class PowerSubgroup {
 public:
  /// Throws InvalidInstance unless n >= 1 and n | p - 1.
  PowerSubgroup(const PrimeFieldCtx& ctx, u64 n);

  u64 modulus() const noexcept { return p_; }
  u64 exponent() const noexcept { return n_; }
  u64 order() const noexcept { return k_; }

  bool contains(u64 t) const noexcept { return t != 0 && t < p_ && member_[t] != 0; }

  // Number of x in F_p with x^n = t: n on G, 1 at t = 0, 0 elsewhere.
  u64 root_count(u64 t) const noexcept {
    if (t == 0) return 1;
    return member_[t] != 0 ? n_ : 0;
  }

  std::span<const std::uint8_t> membership() const noexcept { return member_; }

 private:
  u64 p_;
  u64 n_;
  u64 k_;
  std::vector<std::uint8_t> member_;
};

inline PowerSubgroup nth_power_subgroup(const PrimeFieldCtx& ctx, u64 n) {
  return PowerSubgroup(ctx, n);
}

inline bool is_nth_power(const PowerSubgroup& sub, u64 t) noexcept { return sub.contains(t); }

}  // namespace fermat
