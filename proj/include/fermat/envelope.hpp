#pragma once

#include <cstddef>
#include <vector>

#include "fermat/bound_family.hpp"

namespace fermat {

// Constants of the two comparison curves around the bound minimum.
inline constexpr double kLowerEnvelopeC = 71.0 / 48.0;
inline constexpr double kUpperEnvelopeC = 25.0 / 12.0;
inline constexpr double kUpperGapLimit = 29.0 / 48.0;

/// 3(k/2)^{2/3} - (7/2)(k/2)^{1/3} + c. Throws std::domain_error for k <= 0.
double envelope_w(double c, double k);

/// d/dk of envelope_w: (k/2)^{-1/3} - (7/12)(k/2)^{-2/3}.
double envelope_w_derivative(double k);

/// V(k_s) - W_0(k_s): the least c for which W_c meets the bound minimum at k_s.
double required_c(u64 s);

struct CStar {
  double value = 0.0;
  u64 argmax_s = 0;
  // required_c(s) <= 5/3 + 559/(54 s) for every scanned s.
  bool tail_bound_holds = false;
  // 5/3 + 559/(54 (s_max + 1)) < value, so no s beyond the scan can win.
  bool tail_covered = false;
};

/// max of required_c over 1 <= s <= s_max. Throws std::domain_error when
/// s_max < 10.
CStar c_star(u64 s_max);

/// 6 - 3(13/2)^{2/3} + (7/2)(13/2)^{1/3}.
double c_star_closed_form();

struct RealEnvelope {
  double value = 0.0;
  double s = 0.0;
};

/// min of U_s(k) over real s >= 1. Bisects (2s - 1)(s + 3)^2 = 8(k + 2) to
/// 1e-10 in s, clamping to s = 1 when the stationary point lies below.
RealEnvelope envelope_real(double k);

struct SandwichMargins {
  double relative = 1e-9;   // eps = relative * max(1, W_upper(k))
  double gap_slack = 1e-9;  // allowance on W_upper - V < 29/48
};

enum class SandwichSide { lower, upper, gap };

struct SandwichViolation {
  Rat k;
  SandwichSide side = SandwichSide::lower;
  double bound_min = 0.0;  // V(k)
  double w = 0.0;          // the W value it was compared against
};

struct SandwichReport {
  u64 checked = 0;
  std::vector<SandwichViolation> violations;  // first few only
  u64 violation_count = 0;
  double min_upper_gap = 0.0;  // min of W_upper - V
  Rat min_upper_gap_at;
  double max_upper_gap = 0.0;  // max of W_upper - V
  Rat max_upper_gap_at;
  double min_lower_gap = 0.0;  // min of V - W_lower
  Rat min_lower_gap_at;

  bool ok() const noexcept { return violation_count == 0; }
  void merge(const SandwichReport& other);
};

/// W_{71/48}(k) <= V(k) < W_{25/12}(k) and W_{25/12}(k) - V(k) < 29/48 at
/// every integer k in [k_from, k_to]. workers > 1 splits the range.
SandwichReport sandwich_check(u64 k_from, u64 k_to, const SandwichMargins& margins = {},
                              unsigned workers = 1);

/// The same three inequalities at the breakpoints k_s, 1 <= s <= s_max.
SandwichReport sandwich_check_breakpoints(u64 s_max, const SandwichMargins& margins = {});

}  // namespace fermat
