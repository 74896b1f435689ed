#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fermat/bound_family.hpp"
#include "fermat/point_count.hpp"

namespace fermat {

enum class Check { weil, divisibility, eq1, theorem, corollary, cross_method, boundary };

inline constexpr std::array kAllChecks{Check::weil,      Check::divisibility, Check::eq1,
                                       Check::theorem,   Check::corollary,    Check::cross_method,
                                       Check::boundary};

std::string_view to_string(Check c) noexcept;
std::optional<Check> parse_check(std::string_view name);

enum class ReportFormat { csv, jsonl };

struct SweepConfig {
  u64 p_min = 3;
  u64 p_max = 100;
  u64 n_min = 2;
  // Every (a, b) in F_p^* x F_p^* for p <= this; seeded samples above.
  u64 exhaustive_coeff_p_max = 61;
  // Naive and Jacobi cross-checks for p <= this; defaults to exhaustive_coeff_p_max.
  std::optional<u64> cross_check_p_max;
  u64 samples_per_instance = 20;
  u64 seed = 1;
  std::set<Check> checks{kAllChecks.begin(), kAllChecks.end()};
  std::optional<std::string> output_path;
  ReportFormat output_format = ReportFormat::csv;
  unsigned workers = 1;

  u64 effective_cross_check_p_max() const noexcept {
    return cross_check_p_max.value_or(exhaustive_coeff_p_max);
  }
  bool enabled(Check c) const { return checks.contains(c); }

  /// Throws std::invalid_argument on p_max < 3, samples_per_instance < 1, etc.
  void validate() const;
};

/// Applies "key = value" lines (keys are the SweepConfig field names; '#'
/// starts a comment). Throws std::invalid_argument on unknown keys or bad values.
void apply_config_text(SweepConfig& cfg, std::string_view text);
void apply_config_file(SweepConfig& cfg, const std::string& path);

/// FERMAT_BOUNDS_WORKERS, when set, replaces cfg.workers.
void apply_worker_env(SweepConfig& cfg);

/// Primes in [lo, hi] by the sieve of Eratosthenes.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// Coefficient pairs for one (p, n), sorted by (a, b): all of F_p^*^2 when
/// p <= exhaustive_coeff_p_max, otherwise the forced pairs (1, 1), (1, p-1),
/// (g, 1) plus samples_per_instance distinct seeded pairs.
std::vector<std::pair<u64, u64>> coefficient_pairs(const SweepConfig& cfg, u64 p, u64 n, u64 g);

/// Every instance of the sweep in (p, n, a, b) order.
void enumerate_instances(const SweepConfig& cfg,
                         const std::function<void(const CurveInstance&)>& emit);

struct VerdictRow {
  CurveInstance inst;
  u64 k = 0;
  u64 N = 0;
  u64 d = 0;
  std::shared_ptr<const BoundTable> bounds;  // shared by rows with the same (p, n, d)
  std::optional<double> theorem_value;       // present iff the theorem applies
  bool theorem_applicable = false;
  Verdict corollary_pass = Verdict::not_applicable;
  Verdict weil_pass = Verdict::not_applicable;
  Verdict divisibility_pass = Verdict::not_applicable;
  std::optional<double> margin_ratio;
  // Not part of the report schema.
  Verdict theorem_pass = Verdict::not_applicable;
  Verdict eq1_pass = Verdict::not_applicable;
  Verdict cross_method_pass = Verdict::not_applicable;
  Verdict boundary_pass = Verdict::not_applicable;

  Verdict verdict(Check c) const noexcept;
  bool any_fail() const noexcept;
};

/// Exact report column order.
inline constexpr std::array<std::string_view, 17> kReportColumns{
    "p",       "n",         "a",         "b",
    "k",       "N",         "d",         "V_of_k",
    "optimal_s", "eq1_min", "eq1_refined_min", "theorem_value",
    "theorem_applicable", "corollary_pass", "weil_pass", "divisibility_pass",
    "margin_ratio"};

std::string format_double(double v);
std::string csv_header();
std::string csv_line(const VerdictRow& row);
std::string jsonl_line(const VerdictRow& row);

struct CheckTally {
  u64 pass = 0;
  u64 fail = 0;
  u64 not_applicable = 0;
};

struct SweepSummary {
  u64 instances = 0;
  std::array<CheckTally, kAllChecks.size()> tallies{};
  std::optional<double> max_margin_ratio;
  CurveInstance max_margin_instance;
  std::vector<CurveInstance> failures;  // first few failing rows
  // Informational: instances in the stated range of the original 4 n^{4/3}
  // (p-1)^{2/3} bound, and how many of those have it below Weil's bound.
  u64 coarse_range_instances = 0;
  u64 coarse_below_weil = 0;

  const CheckTally& tally(Check c) const noexcept { return tallies[static_cast<std::size_t>(c)]; }
  u64 total_failures() const noexcept;
  void print(std::ostream& os) const;
};

using RowSink = std::function<void(const VerdictRow&)>;

/// Runs every enabled check on every enumerated instance. Rows reach the sink
/// in (p, n, a, b) order whatever the worker count. Writes cfg.output_path
/// when set; throws std::runtime_error when it cannot be opened.
SweepSummary run_sweep(const SweepConfig& cfg, const RowSink& sink = {});

/// One VerdictRow computed from scratch, outside any sweep.
VerdictRow evaluate_instance(const CurveInstance& inst, const SweepConfig& cfg);

}  // namespace fermat
