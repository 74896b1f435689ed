#include "fermat/point_count.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace fermat {

namespace {

std::string describe(const CurveInstance& inst) {
  return "(p=" + std::to_string(inst.p) + ", n=" + std::to_string(inst.n) +
         ", a=" + std::to_string(inst.a) + ", b=" + std::to_string(inst.b) + ")";
}

u64 round_checked(std::complex<double> z, u64 p, const CurveInstance& inst) {
  const double tol = 1e-6 * static_cast<double>(p);
  const double r = std::round(z.real());
  if (std::abs(z.imag()) >= tol || std::abs(z.real() - r) >= tol || r < -0.5) {
    throw NumericalFailure("count_jacobi: non-integral character sum " +
                           std::to_string(z.real()) + " + " + std::to_string(z.imag()) +
                           "i for " + describe(inst));
  }
  return static_cast<u64>(r);
}

}  // namespace

void validate_instance(const CurveInstance& inst, bool allow_line) {
  if (!is_prime(inst.p) || inst.p < 3) {
    throw InvalidInstance("instance " + describe(inst) + ": p must be an odd prime");
  }
  if (inst.n == 0 || (inst.p - 1) % inst.n != 0) {
    throw InvalidInstance("instance " + describe(inst) + ": n must divide p - 1");
  }
  if (inst.n == 1 && !allow_line) {
    throw InvalidInstance("instance " + describe(inst) + ": n must be at least 2");
  }
  if (inst.a == 0 || inst.a >= inst.p || inst.b == 0 || inst.b >= inst.p) {
    throw InvalidInstance("instance " + describe(inst) + ": a and b must be nonzero residues");
  }
}

std::string_view to_string(CountMethod m) noexcept {
  switch (m) {
    case CountMethod::naive:
      return "naive";
    case CountMethod::indicator:
      return "indicator";
    case CountMethod::jacobi:
      return "jacobi";
  }
  return "unknown";
}

CountResult count_naive(const CurveInstance& inst) {
  const u64 p = inst.p;
  std::vector<u64> ax(p);
  std::vector<u64> by(p);
  for (u64 x = 0; x < p; ++x) {
    const u64 xn = pow_mod(x, inst.n, p);
    ax[x] = inst.a * xn % p;
    by[x] = inst.b * xn % p;
  }

  CountResult r;
  r.method = CountMethod::naive;
  for (u64 x = 0; x < p; ++x) {
    const u64 target = (1 + p - ax[x]) % p;
    for (u64 y = 0; y < p; ++y) {
      if (by[y] == target) ++r.affine;
    }
  }
  const u64 minus_b = p - inst.b;
  for (u64 t = 1; t < p; ++t) {
    if (ax[t] == minus_b) ++r.infinity;
  }
  r.N = r.affine + r.infinity;
  r.d = boundary_count_direct(inst);
  return r;
}

CountResult count_indicator(const CurveInstance& inst, const PowerSubgroup& sub) {
  const u64 p = inst.p;
  const u64 a_inv = pow_mod(inst.a, p - 2, p);
  const u64 b_inv = pow_mod(inst.b, p - 2, p);

  CountResult r;
  r.method = CountMethod::indicator;
  // u = a x^n ranges over F_p; then b y^n = 1 - u.
  u64 s = 0;        // a^{-1} u
  u64 t = b_inv;    // b^{-1} (1 - u)
  for (u64 u = 0; u < p; ++u) {
    r.affine += sub.root_count(s) * sub.root_count(t);
    s += a_inv;
    if (s >= p) s -= p;
    t = t >= b_inv ? t - b_inv : t + p - b_inv;
  }
  r.infinity = sub.contains((p - inst.b) * a_inv % p) ? inst.n : 0;
  r.N = r.affine + r.infinity;
  r.d = boundary_count_d(inst, sub);
  return r;
}

JacobiTable::JacobiTable(const PrimeFieldCtx& ctx, u64 n)
    : p_(ctx.modulus()), n_(n), dlog_(ctx.dlog_table().begin(), ctx.dlog_table().end()) {
  if (n == 0 || (p_ - 1) % n != 0) {
    throw InvalidInstance("JacobiTable: n must divide p - 1");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  roots_.resize(n);
  for (u64 j = 0; j < n; ++j) {
    roots_[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
  }
  std::vector<std::complex<double>> additive(p_);
  for (u64 t = 0; t < p_; ++t) {
    additive[t] = std::polar(1.0, two_pi * static_cast<double>(t) / static_cast<double>(p_));
  }

  gauss_.assign(n, {0.0, 0.0});
  for (u64 j = 0; j < n; ++j) {
    std::complex<double> acc{0.0, 0.0};
    for (u64 t = 1; t < p_; ++t) acc += character(j, t) * additive[t];
    gauss_[j] = acc;
  }

  jacobi_.assign(n * n, {0.0, 0.0});
  for (u64 i = 0; i < n; ++i) {
    for (u64 j = 0; j < n; ++j) {
      std::complex<double>& slot = jacobi_[i * n + j];
      if (i == 0 && j == 0) {
        slot = static_cast<double>(p_);
      } else if (i == 0 || j == 0) {
        slot = 0.0;
      } else if ((i + j) % n == 0) {
        slot = -character(i, p_ - 1);
      } else {
        slot = gauss_[i] * gauss_[j] / gauss_[(i + j) % n];
      }
    }
  }
}

CountResult JacobiTable::count(const CurveInstance& inst) const {
  if (inst.p != p_ || inst.n != n_) {
    throw InvalidInstance("JacobiTable::count: table built for a different (p, n)");
  }
  const u64 p = p_;
  const u64 n = n_;
  const u64 a_inv = pow_mod(inst.a, p - 2, p);
  const u64 b_inv = pow_mod(inst.b, p - 2, p);
  const u64 ea = dlog_[a_inv] % n;
  const u64 eb = dlog_[b_inv] % n;

  std::complex<double> affine{0.0, 0.0};
  for (u64 i = 0; i < n; ++i) {
    const std::complex<double> chi_a = roots_[(i * ea) % n];
    std::complex<double> row{0.0, 0.0};
    for (u64 j = 0; j < n; ++j) row += roots_[(j * eb) % n] * jacobi_[i * n + j];
    affine += chi_a * row;
  }

  const u64 ratio = (p - inst.b) * a_inv % p;  // -b/a
  std::complex<double> infinity{0.0, 0.0};
  for (u64 j = 0; j < n; ++j) infinity += character(j, ratio);

  CountResult r;
  r.method = CountMethod::jacobi;
  r.affine = round_checked(affine, p, inst);
  r.infinity = round_checked(infinity, p, inst);
  r.N = r.affine + r.infinity;

  const u64 minus_a_over_b = (p - inst.a) * pow_mod(inst.b, p - 2, p) % p;
  const u64 hits = static_cast<u64>(dlog_[inst.a] % n == 0) +
                   static_cast<u64>(dlog_[inst.b] % n == 0) +
                   static_cast<u64>(dlog_[minus_a_over_b] % n == 0);
  r.d = n * hits;
  return r;
}

CountResult count_jacobi(const CurveInstance& inst, const PrimeFieldCtx& ctx) {
  return JacobiTable(ctx, inst.n).count(inst);
}

u64 boundary_count_d(const CurveInstance& inst, const PowerSubgroup& sub) {
  const u64 p = inst.p;
  const u64 minus_a_over_b = (p - inst.a) * pow_mod(inst.b, p - 2, p) % p;
  const u64 hits = static_cast<u64>(sub.contains(inst.a)) + static_cast<u64>(sub.contains(inst.b)) +
                   static_cast<u64>(sub.contains(minus_a_over_b));
  return inst.n * hits;
}

u64 boundary_count_direct(const CurveInstance& inst) {
  std::vector<u64> table(inst.p);
  for (u64 t = 0; t < inst.p; ++t) table[t] = pow_mod(t, inst.n, inst.p);
  return boundary_count_direct(inst, table);
}

u64 boundary_count_direct(const CurveInstance& inst, std::span<const u64> nth_powers) {
  const u64 p = inst.p;
  u64 d = 0;
  for (u64 t = 1; t < p; ++t) {
    const u64 tn = nth_powers[t];
    if (inst.b * tn % p == 1) ++d;          // (0 : t : 1)
    if (inst.a * tn % p == 1) ++d;          // (t : 0 : 1)
    if (inst.a * tn % p == p - inst.b) ++d;  // (t : 1 : 0)
  }
  return d;
}

u64 count_difference_form(u64 p, u64 n, u64 c, const PowerSubgroup& sub) {
  if (sub.modulus() != p || sub.exponent() != n) {
    throw InvalidInstance("count_difference_form: subgroup built for a different (p, n)");
  }
  if (c == 0 || c >= p) throw InvalidInstance("count_difference_form: c must be nonzero");
  u64 total = 0;
  for (u64 u = 1; u < p; ++u) {
    const u64 v = (u + p - c) % p;
    if (sub.contains(u) && sub.contains(v)) total += n * n;
  }
  return total;
}

}  // namespace fermat
