#include "fermat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <condition_variable>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace fermat {

namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

u64 parse_u64(std::string_view key, std::string_view value) {
  u64 out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw std::invalid_argument("config: " + std::string(key) + " expects a nonnegative integer, got '" +
                                std::string(value) + "'");
  }
  return out;
}

std::set<Check> parse_checks(std::string_view value) {
  std::set<Check> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (item == "all") {
      out.insert(kAllChecks.begin(), kAllChecks.end());
    } else if (!item.empty()) {
      const auto c = parse_check(item);
      if (!c) throw std::invalid_argument("config: unknown check '" + std::string(item) + "'");
      out.insert(*c);
    }
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31U);
}

// Uniform in [0, bound) from a fixed-algorithm engine, by rejection.
u64 uniform_below(std::mt19937_64& rng, u64 bound) {
  const u64 limit = ~u64{0} - (~u64{0} % bound);
  u64 x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

Verdict from_bool(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

// Evaluates every instance sharing one (p, n).
class GroupEvaluator {
 public:
  GroupEvaluator(const SweepConfig& cfg, const PrimeFieldCtx& ctx, u64 n)
      : cfg_(cfg), p_(ctx.modulus()), n_(n), sub_(ctx, n), nth_powers_(p_) {
    for (u64 t = 0; t < p_; ++t) nth_powers_[t] = pow_mod(t, n, p_);
    cross_ = cfg.enabled(Check::cross_method) && p_ <= cfg.effective_cross_check_p_max();
    if (cross_) jacobi_.emplace(ctx, n);
  }

  VerdictRow evaluate(u64 a, u64 b) {
    const CurveInstance inst{p_, n_, a, b};
    const CountResult main = count_indicator(inst, sub_);

    VerdictRow row;
    row.inst = inst;
    row.k = inst.k();
    row.N = main.N;
    row.d = main.d;
    row.bounds = table_for(main.d);

    if (cfg_.enabled(Check::weil)) row.weil_pass = from_bool(weil_verdict(main.N, inst));
    if (cfg_.enabled(Check::divisibility)) {
      const bool ok = (main.N - main.d) % (n_ * n_) == 0 && main.d % n_ == 0 && main.d / n_ <= 3 &&
                      main.N >= main.d;
      row.divisibility_pass = from_bool(ok);
    }
    if (cfg_.enabled(Check::boundary)) {
      row.boundary_pass = from_bool(boundary_count_direct(inst, nth_powers_) == main.d);
    }
    if (cross_) {
      const CountResult naive = count_naive(inst);
      const CountResult jac = jacobi_->count(inst);
      row.cross_method_pass = from_bool(naive.same_counts(main) && jac.same_counts(main));
    }
    if (cfg_.enabled(Check::eq1)) {
      const auto eq1 = row.bounds->eq1_min();
      const auto refined = row.bounds->eq1_refined_min();
      if (eq1 && refined) {
        const mpz_class count = static_cast<unsigned long>(main.N);
        row.eq1_pass = from_bool(Rat::from_integer(count) <= *eq1 && count <= *refined);
      }
    }

    const auto& theorem = row.bounds->theorem;
    row.theorem_applicable = theorem.has_value() && theorem->applicable;
    if (row.theorem_applicable) {
      row.theorem_value = theorem->value;
      row.margin_ratio = static_cast<double>(main.N) / theorem->value;
      if (cfg_.enabled(Check::theorem)) {
        const double slack = theorem->value - static_cast<double>(main.N);
        row.theorem_pass = from_bool(slack >= 1e-9 * theorem->value);
      }
    }
    if (cfg_.enabled(Check::corollary)) row.corollary_pass = corollary_verdict(main.N, inst);
    return row;
  }

 private:
  std::shared_ptr<const BoundTable> table_for(u64 d) {
    auto& slot = tables_[std::min<u64>(d / n_, 3)];
    if (!slot) slot = std::make_shared<const BoundTable>(make_bound_table(p_, n_, d));
    return slot;
  }

  const SweepConfig& cfg_;
  u64 p_;
  u64 n_;
  PowerSubgroup sub_;
  std::vector<u64> nth_powers_;
  bool cross_ = false;
  std::optional<JacobiTable> jacobi_;
  std::array<std::shared_ptr<const BoundTable>, 4> tables_;
};

struct Group {
  u64 p = 0;
  u64 n = 0;
};

std::vector<Group> plan_groups(const SweepConfig& cfg) {
  std::vector<Group> out;
  for (u64 p : primes_in_range(std::max<u64>(cfg.p_min, 3), cfg.p_max)) {
    for (u64 n : divisors(p - 1)) {
      if (n >= std::max<u64>(cfg.n_min, 2)) out.push_back({p, n});
    }
  }
  return out;
}

std::vector<VerdictRow> run_group(const SweepConfig& cfg, Group g) {
  const PrimeFieldCtx ctx(g.p);
  GroupEvaluator eval(cfg, ctx, g.n);
  std::vector<VerdictRow> rows;
  for (auto [a, b] : coefficient_pairs(cfg, g.p, g.n, ctx.generator())) {
    rows.push_back(eval.evaluate(a, b));
  }
  return rows;
}

class SummaryBuilder {
 public:
  void add(const VerdictRow& row) {
    ++s_.instances;
    for (Check c : kAllChecks) {
      auto& t = s_.tallies[static_cast<std::size_t>(c)];
      switch (row.verdict(c)) {
        case Verdict::pass:
          ++t.pass;
          break;
        case Verdict::fail:
          ++t.fail;
          break;
        case Verdict::not_applicable:
          ++t.not_applicable;
          break;
      }
    }
    if (row.margin_ratio && (!s_.max_margin_ratio || *row.margin_ratio > *s_.max_margin_ratio)) {
      s_.max_margin_ratio = row.margin_ratio;
      s_.max_margin_instance = row.inst;
    }
    if (row.any_fail() && s_.failures.size() < kMaxRecordedFailures) s_.failures.push_back(row.inst);
    const RealBound coarse = coarse_bound(row.inst.p, row.inst.n);
    if (coarse.applicable) {
      ++s_.coarse_range_instances;
      if (coarse.value < weil_upper(row.inst.p, row.inst.n)) ++s_.coarse_below_weil;
    }
  }

  SweepSummary take() { return std::move(s_); }

 private:
  SweepSummary s_;
};

}  // namespace

std::string_view to_string(Check c) noexcept {
  switch (c) {
    case Check::weil:
      return "weil";
    case Check::divisibility:
      return "divisibility";
    case Check::eq1:
      return "eq1";
    case Check::theorem:
      return "theorem";
    case Check::corollary:
      return "corollary";
    case Check::cross_method:
      return "cross-method";
    case Check::boundary:
      return "boundary";
  }
  return "unknown";
}

std::optional<Check> parse_check(std::string_view name) {
  for (Check c : kAllChecks) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (p_max < 3) throw std::invalid_argument("p_max must be at least 3");
  if (p_min > p_max) throw std::invalid_argument("p_min must not exceed p_max");
  if (samples_per_instance < 1) throw std::invalid_argument("samples_per_instance must be at least 1");
  if (workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (p_max >= (u64{1} << 32)) throw std::invalid_argument("p_max too large");
}

void apply_config_text(SweepConfig& cfg, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key == "p_min") {
      cfg.p_min = parse_u64(key, value);
    } else if (key == "p_max") {
      cfg.p_max = parse_u64(key, value);
    } else if (key == "n_min") {
      cfg.n_min = parse_u64(key, value);
    } else if (key == "exhaustive_coeff_p_max") {
      cfg.exhaustive_coeff_p_max = parse_u64(key, value);
    } else if (key == "cross_check_p_max") {
      cfg.cross_check_p_max = parse_u64(key, value);
    } else if (key == "samples_per_instance") {
      cfg.samples_per_instance = parse_u64(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "checks") {
      cfg.checks = parse_checks(value);
    } else if (key == "output_path") {
      cfg.output_path = std::string(value);
    } else if (key == "output_format") {
      if (value == "csv") {
        cfg.output_format = ReportFormat::csv;
      } else if (value == "jsonl") {
        cfg.output_format = ReportFormat::jsonl;
      } else {
        throw std::invalid_argument("config: output_format must be csv or jsonl");
      }
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(parse_u64(key, value));
    } else {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": unknown key '" +
                                  std::string(key) + "'");
    }
  }
}

void apply_config_file(SweepConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  apply_config_text(cfg, buf.str());
}

void apply_worker_env(SweepConfig& cfg) {
  const char* env = std::getenv("FERMAT_BOUNDS_WORKERS");
  if (env == nullptr || *env == '\0') return;
  cfg.workers = static_cast<unsigned>(parse_u64("FERMAT_BOUNDS_WORKERS", env));
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2) return out;
  std::vector<bool> composite(hi + 1, false);
  for (u64 i = 2; i * i <= hi; ++i) {
    if (composite[i]) continue;
    for (u64 j = i * i; j <= hi; j += i) composite[j] = true;
  }
  for (u64 i = std::max<u64>(lo, 2); i <= hi; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::pair<u64, u64>> coefficient_pairs(const SweepConfig& cfg, u64 p, u64 n, u64 g) {
  std::vector<std::pair<u64, u64>> out;
  if (p <= cfg.exhaustive_coeff_p_max) {
    out.reserve((p - 1) * (p - 1));
    for (u64 a = 1; a < p; ++a) {
      for (u64 b = 1; b < p; ++b) out.emplace_back(a, b);
    }
    return out;
  }
  std::set<std::pair<u64, u64>> forced{{1, 1}, {1, p - 1}, {g, 1}};
  std::set<std::pair<u64, u64>> sampled;
  const u64 room = (p - 1) * (p - 1) - forced.size();
  const u64 want = std::min(cfg.samples_per_instance, room);
  std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(p * 0x100000001b3ULL + n)));
  while (sampled.size() < want) {
    const u64 a = 1 + uniform_below(rng, p - 1);
    const u64 b = 1 + uniform_below(rng, p - 1);
    if (!forced.contains({a, b})) sampled.insert({a, b});
  }
  sampled.insert(forced.begin(), forced.end());
  out.assign(sampled.begin(), sampled.end());
  return out;
}

void enumerate_instances(const SweepConfig& cfg,
                         const std::function<void(const CurveInstance&)>& emit) {
  for (const Group& g : plan_groups(cfg)) {
    const u64 root = find_primitive_root(g.p);
    for (auto [a, b] : coefficient_pairs(cfg, g.p, g.n, root)) emit(CurveInstance{g.p, g.n, a, b});
  }
}

Verdict VerdictRow::verdict(Check c) const noexcept {
  switch (c) {
    case Check::weil:
      return weil_pass;
    case Check::divisibility:
      return divisibility_pass;
    case Check::eq1:
      return eq1_pass;
    case Check::theorem:
      return theorem_pass;
    case Check::corollary:
      return corollary_pass;
    case Check::cross_method:
      return cross_method_pass;
    case Check::boundary:
      return boundary_pass;
  }
  return Verdict::not_applicable;
}

bool VerdictRow::any_fail() const noexcept {
  return std::any_of(kAllChecks.begin(), kAllChecks.end(),
                     [this](Check c) { return verdict(c) == Verdict::fail; });
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "NaN";
  return {buf.data(), ptr};
}

namespace {

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Cell values in column order; nullopt renders as NA.
std::array<std::optional<std::string>, kReportColumns.size()> cells(const VerdictRow& r) {
  const auto& t = *r.bounds;
  auto opt_double = [](const std::optional<double>& v) -> std::optional<std::string> {
    if (!v) return std::nullopt;
    return format_double(*v);
  };
  std::optional<std::string> eq1;
  if (auto v = t.eq1_min()) eq1 = v->str();
  std::optional<std::string> refined;
  if (auto v = t.eq1_refined_min()) refined = v->get_str();
  return {std::to_string(r.inst.p),
          std::to_string(r.inst.n),
          std::to_string(r.inst.a),
          std::to_string(r.inst.b),
          std::to_string(r.k),
          std::to_string(r.N),
          std::to_string(r.d),
          t.V.value.str(),
          std::to_string(t.V.optimal_s),
          eq1,
          refined,
          opt_double(r.theorem_value),
          std::string(r.theorem_applicable ? "true" : "false"),
          std::string(to_string(r.corollary_pass)),
          std::string(to_string(r.weil_pass)),
          std::string(to_string(r.divisibility_pass)),
          opt_double(r.margin_ratio)};
}

}  // namespace

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) {
    if (i > 0) out += ',';
    out += kReportColumns[i];
  }
  return out;
}

std::string csv_line(const VerdictRow& row) {
  const auto values = cells(row);
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += values[i] ? csv_field(*values[i]) : "NA";
  }
  return out;
}

std::string jsonl_line(const VerdictRow& row) {
  const auto& t = *row.bounds;
  nlohmann::ordered_json j;
  j["p"] = row.inst.p;
  j["n"] = row.inst.n;
  j["a"] = row.inst.a;
  j["b"] = row.inst.b;
  j["k"] = row.k;
  j["N"] = row.N;
  j["d"] = row.d;
  j["V_of_k"] = t.V.value.str();
  j["optimal_s"] = t.V.optimal_s;
  if (auto v = t.eq1_min()) {
    j["eq1_min"] = v->str();
  } else {
    j["eq1_min"] = "NA";
  }
  if (auto v = t.eq1_refined_min(); v && v->fits_slong_p()) {
    j["eq1_refined_min"] = v->get_si();
  } else if (v) {
    j["eq1_refined_min"] = v->get_str();
  } else {
    j["eq1_refined_min"] = "NA";
  }
  if (row.theorem_value) {
    j["theorem_value"] = *row.theorem_value;
  } else {
    j["theorem_value"] = "NA";
  }
  j["theorem_applicable"] = row.theorem_applicable;
  j["corollary_pass"] = to_string(row.corollary_pass);
  j["weil_pass"] = to_string(row.weil_pass);
  j["divisibility_pass"] = to_string(row.divisibility_pass);
  if (row.margin_ratio) {
    j["margin_ratio"] = *row.margin_ratio;
  } else {
    j["margin_ratio"] = "NA";
  }
  return j.dump();
}

u64 SweepSummary::total_failures() const noexcept {
  u64 total = 0;
  for (const auto& t : tallies) total += t.fail;
  return total;
}

void SweepSummary::print(std::ostream& os) const {
  os << "instances: " << instances << '\n';
  for (Check c : kAllChecks) {
    const auto& t = tally(c);
    os << "  " << to_string(c) << ": pass=" << t.pass << " fail=" << t.fail
       << " NA=" << t.not_applicable << '\n';
  }
  if (max_margin_ratio) {
    const auto& m = max_margin_instance;
    os << "max margin_ratio: " << format_double(*max_margin_ratio) << " at (p=" << m.p
       << ", n=" << m.n << ", a=" << m.a << ", b=" << m.b << ")\n";
  }
  os << "original 4n^{4/3}(p-1)^{2/3} bound below Weil's bound: " << coarse_below_weil << " of "
     << coarse_range_instances << " instances in its range (informational)\n";
  for (const auto& f : failures) {
    os << "FAIL at (p=" << f.p << ", n=" << f.n << ", a=" << f.a << ", b=" << f.b << ")\n";
  }
}

VerdictRow evaluate_instance(const CurveInstance& inst, const SweepConfig& cfg) {
  validate_instance(inst);
  const PrimeFieldCtx ctx(inst.p);
  GroupEvaluator eval(cfg, ctx, inst.n);
  return eval.evaluate(inst.a, inst.b);
}

SweepSummary run_sweep(const SweepConfig& cfg, const RowSink& sink) {
  cfg.validate();

  std::ofstream file;
  std::vector<char> buffer(1U << 20U);
  if (cfg.output_path) {
    file.rdbuf()->pubsetbuf(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    file.open(*cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open report file " + *cfg.output_path);
    if (cfg.output_format == ReportFormat::csv) file << csv_header() << '\n';
  }

  SummaryBuilder summary;
  auto consume = [&](const std::vector<VerdictRow>& rows) {
    for (const auto& row : rows) {
      summary.add(row);
      if (file.is_open()) {
        file << (cfg.output_format == ReportFormat::csv ? csv_line(row) : jsonl_line(row)) << '\n';
      }
      if (sink) sink(row);
    }
  };

  const auto groups = plan_groups(cfg);
  if (cfg.workers <= 1 || groups.size() <= 1) {
    for (const Group& g : groups) consume(run_group(cfg, g));
  } else {
    std::mutex mu;
    std::condition_variable ready_cv;
    std::vector<std::optional<std::vector<VerdictRow>>> results(groups.size());
    std::exception_ptr error;
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};

    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= groups.size() || stop.load()) return;
        try {
          auto rows = run_group(cfg, groups[i]);
          std::lock_guard lock(mu);
          results[i] = std::move(rows);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
          stop = true;
        }
        ready_cv.notify_all();
      }
    };

    {
      std::vector<std::jthread> pool;
      const unsigned count = std::min<std::size_t>(cfg.workers, groups.size());
      pool.reserve(count);
      for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);

      for (std::size_t i = 0; i < groups.size(); ++i) {
        std::vector<VerdictRow> rows;
        {
          std::unique_lock lock(mu);
          ready_cv.wait(lock, [&] { return results[i].has_value() || error != nullptr; });
          if (error) break;
          rows = std::move(*results[i]);
          results[i].reset();
        }
        consume(rows);
      }
      stop = true;
    }
    if (error) std::rethrow_exception(error);
  }

  if (file.is_open()) {
    file.flush();
    if (!file) throw std::runtime_error("failed writing report file " + *cfg.output_path);
  }
  return summary.take();
}

}  // namespace fermat
