#pragma once

// Test-only reference implementations. Nothing here calls into the library's
// counting or bound code paths.

#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using i128 = __int128;
using u64 = std::uint64_t;

/// Exact fraction over 128-bit integers, for brute-force scans whose
/// magnitudes are known to stay small.
struct Frac {
  i128 num = 0;
  i128 den = 1;

  static i128 gcd(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  Frac() = default;
  Frac(i128 n, i128 d = 1) : num(n), den(d) {  // NOLINT
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const i128 g = gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Frac operator+(const Frac& a, const Frac& b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Frac operator-(const Frac& a, const Frac& b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend bool operator<(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Frac& a, const Frac& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator==(const Frac& a, const Frac& b) { return a.num == b.num && a.den == b.den; }
};

/// U_s(k) for k = kn/kd, written out independently of the library.
inline Frac u_of(i128 s, i128 kn, i128 kd = 1) {
  // (s^2 - s - 2)/4 + 2(k + 2)/(s + 3)
  return Frac(s * s - s - 2, 4) + Frac(2 * (kn + 2 * kd), kd * (s + 3));
}

struct Min {
  Frac value;
  i128 s = 0;
};

/// Minimum of U_s(k) over 1 <= s <= s_cap by scanning, smallest argmin.
inline Min scan_min(i128 kn, i128 kd, i128 s_cap) {
  Min best{u_of(1, kn, kd), 1};
  for (i128 s = 2; s <= s_cap; ++s) {
    const Frac v = u_of(s, kn, kd);
    if (v < best.value) best = {v, s};
  }
  return best;
}

inline u64 powmod(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  for (; e > 0; e >>= 1U) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
  }
  return r;
}

/// Projective points of a x^n + b y^n = z^n as (# nonzero (x, y, z) in F_p^3) / (p - 1).
/// O(p^3); small p only.
inline u64 projective_count(u64 p, u64 n, u64 a, u64 b) {
  std::vector<u64> pw(p);
  for (u64 x = 0; x < p; ++x) pw[x] = powmod(x, n, p);
  u64 total = 0;
  for (u64 x = 0; x < p; ++x) {
    for (u64 y = 0; y < p; ++y) {
      const u64 lhs = (a * pw[x] + b * pw[y]) % p;
      for (u64 z = 0; z < p; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (lhs == pw[z]) ++total;
      }
    }
  }
  return total / (p - 1);
}

/// Same, restricted to xyz = 0.
inline u64 projective_boundary(u64 p, u64 n, u64 a, u64 b) {
  std::vector<u64> pw(p);
  for (u64 x = 0; x < p; ++x) pw[x] = powmod(x, n, p);
  u64 total = 0;
  for (u64 x = 0; x < p; ++x) {
    for (u64 y = 0; y < p; ++y) {
      for (u64 z = 0; z < p; ++z) {
        if ((x == 0 && y == 0 && z == 0) || (x != 0 && y != 0 && z != 0)) continue;
        if ((a * pw[x] + b * pw[y]) % p == pw[z]) ++total;
      }
    }
  }
  return total / (p - 1);
}

inline bool is_prime(u64 v) {
  if (v < 2) return false;
  for (u64 d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

}  // namespace oracle
