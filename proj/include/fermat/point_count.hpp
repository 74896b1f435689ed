#pragma once

#include <complex>
#include <string_view>
#include <vector>

#include "fermat/field_arith.hpp"

namespace fermat {

/// The projective curve a x^n + b y^n = z^n over F_p.
struct CurveInstance {
  u64 p = 0;
  u64 n = 0;
  u64 a = 0;
  u64 b = 0;

  u64 k() const noexcept { return (p - 1) / n; }

  friend bool operator==(const CurveInstance&, const CurveInstance&) = default;
  friend auto operator<=>(const CurveInstance&, const CurveInstance&) = default;
};

/// Checks p prime, n | p - 1, a and b in F_p^*. n = 1 (a line) passes only
/// when allow_line is set; it is useful as a counting oracle.
void validate_instance(const CurveInstance& inst, bool allow_line = false);

enum class CountMethod { naive, indicator, jacobi };

std::string_view to_string(CountMethod m) noexcept;

struct CountResult {
  u64 N = 0;         // projective points
  u64 d = 0;         // points with xyz = 0
  u64 affine = 0;    // solutions of a x^n + b y^n = 1
  u64 infinity = 0;  // points (t : 1 : 0)
  CountMethod method = CountMethod::naive;

  bool same_counts(const CountResult& o) const noexcept {
    return N == o.N && d == o.d && affine == o.affine && infinity == o.infinity;
  }
};

// Raised when a floating character sum fails to land on an integer.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Brute force over all p^2 affine pairs and p line-at-infinity candidates.
/// Independent of the dlog machinery; O(p^2).
CountResult count_naive(const CurveInstance& inst);

/// O(p) count through the representation numbers of x -> x^n.
CountResult count_indicator(const CurveInstance& inst, const PowerSubgroup& sub);

/// Gauss and Jacobi sums of the characters of order dividing n, tabulated
/// once per (p, n) and reused across coefficient pairs.
class JacobiTable {
 public:
  JacobiTable(const PrimeFieldCtx& ctx, u64 n);

  u64 modulus() const noexcept { return p_; }
  u64 exponent() const noexcept { return n_; }

  // J(chi_i, chi_j) with chi_j(g^e) = exp(2 pi i j e / n) and chi_0(0) = 1.
  std::complex<double> jacobi(u64 i, u64 j) const noexcept { return jacobi_[i * n_ + j]; }
  std::complex<double> gauss(u64 j) const noexcept { return gauss_[j]; }

  // chi_j(t) for t != 0.
  std::complex<double> character(u64 j, u64 t) const noexcept {
    return roots_[(j * (dlog_[t] % n_)) % n_];
  }

  CountResult count(const CurveInstance& inst) const;

 private:
  u64 p_;
  u64 n_;
  std::vector<u64> dlog_;
  std::vector<std::complex<double>> roots_;  // n-th roots of unity
  std::vector<std::complex<double>> gauss_;
  std::vector<std::complex<double>> jacobi_;
};

/// Character-sum count; result is rounded and checked to be integral to
/// within 1e-6 * p, otherwise NumericalFailure.
CountResult count_jacobi(const CurveInstance& inst, const PrimeFieldCtx& ctx);

/// d = n * (#{a in G} + #{b in G} + #{-a/b in G}).
u64 boundary_count_d(const CurveInstance& inst, const PowerSubgroup& sub);

/// d by direct enumeration of the projective points with xyz = 0.
u64 boundary_count_direct(const CurveInstance& inst);
/// Same, reusing a table of t^n mod p for t in [0, p).
u64 boundary_count_direct(const CurveInstance& inst, std::span<const u64> nth_powers);

/// #{(x, y) in F_p^* x F_p^* : x^n - y^n = c}, the normalization used by the
/// difference-form bounds (Mitkin, Heath-Brown and Konyagin).
u64 count_difference_form(u64 p, u64 n, u64 c, const PowerSubgroup& sub);

}  // namespace fermat
