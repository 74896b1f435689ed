#include "fermat/field_arith.hpp"

#include <string>

namespace fermat {

bool is_prime(u64 p) noexcept {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (u64 d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 m) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

std::vector<u64> divisors(u64 m) {
  std::vector<u64> small;
  std::vector<u64> large;
  for (u64 d = 1; d * d <= m; ++d) {
    if (m % d != 0) continue;
    small.push_back(d);
    if (d != m / d) large.push_back(m / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

u64 find_primitive_root(u64 p) {
  if (!is_prime(p)) {
    throw InvalidInstance("find_primitive_root: " + std::to_string(p) + " is not prime");
  }
  if (p == 2) return 1;
  const auto factors = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool primitive = true;
    for (u64 q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw InvalidInstance("find_primitive_root: no primitive root mod " + std::to_string(p));
}

PrimeFieldCtx::PrimeFieldCtx(u64 p) : p_(p), g_(0) {
  if (p < 3) throw InvalidInstance("PrimeFieldCtx: modulus must be an odd prime");
  if (p >= (u64{1} << 32)) throw InvalidInstance("PrimeFieldCtx: modulus too large");
  g_ = find_primitive_root(p);

  constexpr u64 kUnset = ~u64{0};
  dlog_.assign(p, kUnset);
  u64 t = 1;
  for (u64 e = 0; e + 1 < p; ++e) {
    if (dlog_[t] != kUnset) {
      throw InvalidInstance("PrimeFieldCtx: generator " + std::to_string(g_) +
                            " is not primitive mod " + std::to_string(p));
    }
    dlog_[t] = e;
    t = t * g_ % p;
  }
  dlog_[0] = 0;
}

PowerSubgroup::PowerSubgroup(const PrimeFieldCtx& ctx, u64 n)
    : p_(ctx.modulus()), n_(n), k_(0) {
  if (n == 0 || (p_ - 1) % n != 0) {
    throw InvalidInstance("PowerSubgroup: n = " + std::to_string(n) + " does not divide p - 1 = " +
                          std::to_string(p_ - 1));
  }
  k_ = (p_ - 1) / n;
  member_.assign(p_, 0);
  for (u64 t = 1; t < p_; ++t) {
    member_[t] = ctx.dlog(t) % n == 0 ? 1 : 0;
  }
}

}  // namespace fermat
