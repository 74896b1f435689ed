#include "fermat/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace fermat {

namespace {

constexpr std::size_t kMaxRecordedViolations = 16;

double u_real(double s, double k) { return (s * s - s - 2.0) / 4.0 + 2.0 * (k + 2.0) / (s + 3.0); }

double stationarity(double s, double k) { return (2.0 * s - 1.0) * (s + 3.0) * (s + 3.0) - 8.0 * (k + 2.0); }

SandwichReport empty_report() {
  SandwichReport r;
  r.min_upper_gap = std::numeric_limits<double>::infinity();
  r.max_upper_gap = -std::numeric_limits<double>::infinity();
  r.min_lower_gap = std::numeric_limits<double>::infinity();
  return r;
}

void record(SandwichReport& r, SandwichViolation v) {
  ++r.violation_count;
  if (r.violations.size() < kMaxRecordedViolations) r.violations.push_back(std::move(v));
}

void check_point(SandwichReport& r, const Rat& k, const SandwichMargins& m) {
  const double kd = k.to_double();
  const double v = bound_minimum(k).value.to_double();
  const double lower = envelope_w(kLowerEnvelopeC, kd);
  const double upper = envelope_w(kUpperEnvelopeC, kd);
  const double eps = m.relative * std::max(1.0, upper);
  ++r.checked;

  if (!(lower - eps <= v)) record(r, {k, SandwichSide::lower, v, lower});
  if (!(v <= upper - eps)) record(r, {k, SandwichSide::upper, v, upper});
  const double gap = upper - v;
  if (!(gap < kUpperGapLimit + m.gap_slack)) record(r, {k, SandwichSide::gap, v, upper});

  if (gap < r.min_upper_gap) {
    r.min_upper_gap = gap;
    r.min_upper_gap_at = k;
  }
  if (gap > r.max_upper_gap) {
    r.max_upper_gap = gap;
    r.max_upper_gap_at = k;
  }
  if (v - lower < r.min_lower_gap) {
    r.min_lower_gap = v - lower;
    r.min_lower_gap_at = k;
  }
}

}  // namespace

double envelope_w(double c, double k) {
  if (!(k > 0.0)) throw std::domain_error("envelope_w: k must be positive");
  const double x = std::cbrt(k / 2.0);
  return 3.0 * x * x - 3.5 * x + c;
}

double envelope_w_derivative(double k) {
  if (!(k > 0.0)) throw std::domain_error("envelope_w_derivative: k must be positive");
  const double x = std::cbrt(k / 2.0);
  return 1.0 / x - (7.0 / 12.0) / (x * x);
}

double required_c(u64 s) {
  const Rat ks = breakpoint_k(s);
  return bound_minimum(ks).value.to_double() - envelope_w(0.0, ks.to_double());
}

double c_star_closed_form() {
  const double x = std::cbrt(6.5);
  return 6.0 - 3.0 * x * x + 3.5 * x;
}

CStar c_star(u64 s_max) {
  if (s_max < 10) throw std::domain_error("c_star: s_max must be at least 10");
  CStar out;
  out.value = -std::numeric_limits<double>::infinity();
  out.tail_bound_holds = true;
  for (u64 s = 1; s <= s_max; ++s) {
    const double c = required_c(s);
    if (c > out.value) {
      out.value = c;
      out.argmax_s = s;
    }
    const double tail = 5.0 / 3.0 + 559.0 / (54.0 * static_cast<double>(s));
    if (c > tail + 1e-9) out.tail_bound_holds = false;
  }
  out.tail_covered = 5.0 / 3.0 + 559.0 / (54.0 * static_cast<double>(s_max + 1)) < out.value;
  return out;
}

RealEnvelope envelope_real(double k) {
  if (!(k >= 1.0)) throw std::domain_error("envelope_real: k must be at least 1");
  if (stationarity(1.0, k) >= 0.0) return RealEnvelope{u_real(1.0, k), 1.0};

  double lo = 1.0;
  double hi = 2.0;
  while (stationarity(hi, k) < 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-10) {
    const double mid = lo + (hi - lo) / 2.0;
    if (mid <= lo || mid >= hi) break;
    (stationarity(mid, k) < 0.0 ? lo : hi) = mid;
  }
  const double s = lo + (hi - lo) / 2.0;
  return RealEnvelope{u_real(s, k), s};
}

void SandwichReport::merge(const SandwichReport& o) {
  checked += o.checked;
  violation_count += o.violation_count;
  for (const auto& v : o.violations) {
    if (violations.size() >= kMaxRecordedViolations) break;
    violations.push_back(v);
  }
  if (o.min_upper_gap < min_upper_gap) {
    min_upper_gap = o.min_upper_gap;
    min_upper_gap_at = o.min_upper_gap_at;
  }
  if (o.max_upper_gap > max_upper_gap) {
    max_upper_gap = o.max_upper_gap;
    max_upper_gap_at = o.max_upper_gap_at;
  }
  if (o.min_lower_gap < min_lower_gap) {
    min_lower_gap = o.min_lower_gap;
    min_lower_gap_at = o.min_lower_gap_at;
  }
}

SandwichReport sandwich_check(u64 k_from, u64 k_to, const SandwichMargins& margins,
                              unsigned workers) {
  if (k_from < 1 || k_from > k_to) {
    throw std::domain_error("sandwich_check: need 1 <= k_from <= k_to");
  }
  const u64 total = k_to - k_from + 1;
  const u64 parts = std::clamp<u64>(workers, 1, total);
  std::vector<SandwichReport> partial(parts, empty_report());

  auto run = [&](u64 part) {
    const u64 begin = k_from + total * part / parts;
    const u64 end = k_from + total * (part + 1) / parts;
    for (u64 k = begin; k < end; ++k) {
      check_point(partial[part], Rat(static_cast<std::int64_t>(k)), margins);
    }
  };
  if (parts == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(parts);
    for (u64 part = 0; part < parts; ++part) pool.emplace_back(run, part);
  }

  SandwichReport out = empty_report();
  for (const auto& r : partial) out.merge(r);
  return out;
}

SandwichReport sandwich_check_breakpoints(u64 s_max, const SandwichMargins& margins) {
  SandwichReport out = empty_report();
  for (u64 s = 1; s <= s_max; ++s) check_point(out, breakpoint_k(s), margins);
  return out;
}

}  // namespace fermat
