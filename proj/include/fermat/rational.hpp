#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace fermat {

/// Exact rational in lowest terms with a positive denominator, backed by GMP.
class Rat {
 public:
  Rat() = default;
  Rat(std::int64_t v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(std::int64_t num, std::int64_t den) : q_(static_cast<long>(num), static_cast<long>(den)) {
    q_.canonicalize();
  }
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  static Rat from_integer(const mpz_class& z) { return Rat(mpq_class(z)); }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const noexcept { return q_; }

  bool is_integer() const { return q_.get_den() == 1; }
  mpz_class floor() const;
  double to_double() const { return q_.get_d(); }

  // "num" or "num/den".
  std::string str() const { return q_.get_str(); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) { q_ /= o.q_; return *this; }

  friend Rat operator+(Rat l, const Rat& r) { return l += r; }
  friend Rat operator-(Rat l, const Rat& r) { return l -= r; }
  friend Rat operator*(Rat l, const Rat& r) { return l *= r; }
  friend Rat operator/(Rat l, const Rat& r) { return l /= r; }
  friend Rat operator-(const Rat& v) { return Rat(mpq_class(-v.q_)); }

  friend bool operator==(const Rat& l, const Rat& r) { return cmp(l.q_, r.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& l, const Rat& r) {
    const int c = cmp(l.q_, r.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& v) { return os << v.str(); }

 private:
  mpq_class q_;
};

inline Rat pow(const Rat& base, unsigned e) {
  Rat out(1);
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace fermat
