#include "fermat/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <thread>

#include "fermat/envelope.hpp"
#include "fermat/sweep.hpp"

namespace fermat {

namespace {

struct CountArgs {
  u64 p = 0, n = 0, a = 0, b = 0;
  std::string method = "indicator";
};

struct BoundsArgs {
  u64 p = 0, n = 0, d = 0;
};

struct VerifyArgs {
  SweepConfig cfg;
  std::string config_path;
  std::string checks;
  std::string format;
  std::string output;
  u64 cross_check = 0;
};

struct EnvelopeArgs {
  u64 k_max = 1000000;
  u64 s_max = 10000;
  unsigned workers = 1;
};

void print_count(std::ostream& out, const CountResult& r) {
  out << "method=" << to_string(r.method) << " N=" << r.N << " d=" << r.d << " affine=" << r.affine
      << " infinity=" << r.infinity << '\n';
}

int run_count(const CountArgs& args, std::ostream& out) {
  const CurveInstance inst{args.p, args.n, args.a, args.b};
  validate_instance(inst, /*allow_line=*/true);
  const PrimeFieldCtx ctx(inst.p);

  std::vector<CountResult> results;
  const bool all = args.method == "all";
  if (all || args.method == "naive") results.push_back(count_naive(inst));
  if (all || args.method == "indicator") results.push_back(count_indicator(inst, PowerSubgroup(ctx, inst.n)));
  if (all || args.method == "jacobi") results.push_back(count_jacobi(inst, ctx));
  for (const auto& r : results) print_count(out, r);

  const bool agree = std::all_of(results.begin(), results.end(),
                                 [&](const CountResult& r) { return r.same_counts(results.front()); });
  if (results.size() > 1) out << "agreement across " << results.size() << " methods: " << (agree ? "yes" : "NO") << '\n';
  return agree ? kExitOk : kExitCheckFailed;
}

std::string flag(bool v) { return v ? "yes" : "no"; }

int run_bounds(const BoundsArgs& args, std::ostream& out) {
  if (!is_prime(args.p) || args.p < 3) throw InvalidInstance("p must be an odd prime");
  const BoundTable t = make_bound_table(args.p, args.n, args.d);
  out << std::setprecision(12);
  out << "p=" << t.p << " n=" << t.n << " k=" << t.k << " d=" << t.d << '\n';
  if (t.eq1_per_s.empty()) {
    out << "eq1: no s with 1 <= s <= n-3 and s*n <= p (NA)\n";
  } else {
    out << "s,eq1,eq1_refined\n";
    for (const auto& e : t.eq1_per_s) out << e.s << ',' << e.eq1 << ',' << e.refined.get_str() << '\n';
    out << "eq1_min=" << *t.eq1_min() << " eq1_refined_min=" << t.eq1_refined_min()->get_str() << '\n';
  }
  out << "V(k)=" << t.V.value << " optimal_s=" << t.V.optimal_s << '\n';
  if (t.theorem) {
    out << "theorem: value=" << t.theorem->value << " applicable=" << flag(t.theorem->applicable) << '\n';
  } else {
    out << "theorem: NA (n < 4)\n";
  }
  const bool cor = t.n >= 4 && corollary_hypothesis(t.p, t.n);
  const double cor_value = 3.0 * std::cbrt(static_cast<double>(t.n) * static_cast<double>(t.n) *
                                           static_cast<double>(t.n) * static_cast<double>(t.n) *
                                           static_cast<double>(t.p - 1) * static_cast<double>(t.p - 1) / 4.0);
  out << "corollary: value=" << cor_value << " applicable=" << flag(cor) << '\n';
  const double spread = static_cast<double>(t.n - 1) * static_cast<double>(t.n - 2) *
                        std::sqrt(static_cast<double>(t.p));
  out << "weil: " << static_cast<double>(t.p + 1) - spread << " <= N <= " << weil_upper(t.p, t.n) << '\n';
  out << "mitkin: value=" << t.mitkin.value << " applicable=" << flag(t.mitkin.applicable)
      << " (bounds #{x^n - y^n = c, xy != 0})\n";
  out << "hbk: value=" << t.hbk.value << " applicable=" << flag(t.hbk.applicable)
      << " (bounds #{x^n - y^n = c, xy != 0})\n";
  return kExitOk;
}

int run_verify(VerifyArgs& args, const CLI::App& sub, bool report_required, std::ostream& out) {
  SweepConfig cfg;
  if (!args.config_path.empty()) apply_config_file(cfg, args.config_path);
  apply_worker_env(cfg);

  auto given = [&](const char* name) { return sub.count(name) > 0; };
  if (given("--p-min")) cfg.p_min = args.cfg.p_min;
  if (given("--p-max")) cfg.p_max = args.cfg.p_max;
  if (given("--n-min")) cfg.n_min = args.cfg.n_min;
  if (given("--exhaustive-p-max")) cfg.exhaustive_coeff_p_max = args.cfg.exhaustive_coeff_p_max;
  if (given("--cross-check-p-max")) cfg.cross_check_p_max = args.cross_check;
  if (given("--samples")) cfg.samples_per_instance = args.cfg.samples_per_instance;
  if (given("--seed")) cfg.seed = args.cfg.seed;
  if (given("--workers")) cfg.workers = args.cfg.workers;
  if (given("--output")) cfg.output_path = args.output;
  if (given("--checks")) apply_config_text(cfg, "checks = " + args.checks);
  if (given("--format")) apply_config_text(cfg, "output_format = " + args.format);

  if (report_required && !cfg.output_path) {
    throw CLI::RequiredError("sweep requires --output (or output_path in the config file)");
  }
  cfg.validate();

  const SweepSummary summary = run_sweep(cfg);
  summary.print(out);
  if (cfg.output_path) out << "report: " << *cfg.output_path << '\n';
  const bool ok = summary.total_failures() == 0;
  out << (ok ? "all checks passed" : "CHECK FAILURES") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

int run_envelope(const EnvelopeArgs& args, std::ostream& out) {
  if (args.k_max < 1) throw CLI::ValidationError("--k-max must be at least 1");
  const SandwichReport ints = sandwich_check(1, args.k_max, {}, std::max(1U, args.workers));
  const SandwichReport bps = sandwich_check_breakpoints(args.s_max);
  const CStar cs = c_star(std::max<u64>(args.s_max, 10));

  out << std::setprecision(9);
  auto describe = [&](const char* label, const SandwichReport& r) {
    out << label << ": checked " << r.checked << " points, violations " << r.violation_count << '\n';
    out << "  min W_{25/12} - V = " << r.min_upper_gap << " at k=" << r.min_upper_gap_at << '\n';
    out << "  max W_{25/12} - V = " << r.max_upper_gap << " at k=" << r.max_upper_gap_at
        << " (limit 29/48 = " << kUpperGapLimit << ")\n";
    out << "  min V - W_{71/48} = " << r.min_lower_gap << " at k=" << r.min_lower_gap_at << '\n';
    for (const auto& v : r.violations) {
      const char* side = v.side == SandwichSide::lower ? "lower" : (v.side == SandwichSide::upper ? "upper" : "gap");
      out << "  VIOLATION " << side << " at k=" << v.k << ": V=" << v.bound_min << " W=" << v.w << '\n';
    }
  };
  describe("integer k in [1, k_max]", ints);
  describe("breakpoints k_s", bps);

  const bool below = cs.value < kUpperEnvelopeC;
  const bool sandwich_ok = ints.ok() && bps.ok();
  out << (sandwich_ok ? "sandwich holds" : "sandwich FAILS") << "; c* ~ " << std::setprecision(7) << cs.value
      << " at s=" << cs.argmax_s << "; c* < 25/12: " << flag(below)
      << "; tail bound " << (cs.tail_bound_holds && cs.tail_covered ? "covers all s" : "NOT verified") << '\n';
  return sandwich_ok && below && cs.tail_bound_holds && cs.tail_covered ? kExitOk : kExitCheckFailed;
}

void add_verify_options(CLI::App* sub, VerifyArgs& args) {
  sub->add_option("--config", args.config_path, "key = value file with SweepConfig fields");
  sub->add_option("--p-min", args.cfg.p_min, "smallest prime");
  sub->add_option("--p-max", args.cfg.p_max, "largest prime");
  sub->add_option("--n-min", args.cfg.n_min, "smallest exponent n");
  sub->add_option("--exhaustive-p-max", args.cfg.exhaustive_coeff_p_max,
                  "all (a, b) for p up to this, seeded samples above");
  sub->add_option("--cross-check-p-max", args.cross_check, "naive/Jacobi cross-checks for p up to this");
  sub->add_option("--samples", args.cfg.samples_per_instance, "random (a, b) per (p, n) above the exhaustive range");
  sub->add_option("--seed", args.cfg.seed, "sampling seed");
  sub->add_option("--checks", args.checks, "comma list of weil,divisibility,eq1,theorem,corollary,cross-method,boundary");
  sub->add_option("--output", args.output, "report path");
  sub->add_option("--format", args.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  sub->add_option("--workers", args.cfg.workers, "worker threads");
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts and bound verification for Fermat curves a x^n + b y^n = z^n over F_p",
               "fermat_bounds"};
  app.require_subcommand(1);

  CountArgs count_args;
  auto* count = app.add_subcommand("count", "count projective points of one curve");
  count->add_option("p", count_args.p)->required();
  count->add_option("n", count_args.n)->required();
  count->add_option("a", count_args.a)->required();
  count->add_option("b", count_args.b)->required();
  count->add_option("--method", count_args.method)
      ->check(CLI::IsMember({"naive", "indicator", "jacobi", "all"}));

  BoundsArgs bounds_args;
  auto* bounds = app.add_subcommand("bounds", "print every bound for (p, n)");
  bounds->add_option("p", bounds_args.p)->required();
  bounds->add_option("n", bounds_args.n)->required();
  bounds->add_option("--d", bounds_args.d, "number of points with xyz = 0");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run the verification sweep");
  add_verify_options(verify, verify_args);
  VerifyArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "verify, with the report file mandatory");
  add_verify_options(sweep, sweep_args);

  EnvelopeArgs env_args;
  auto* envelope = app.add_subcommand("envelope", "check the envelope sandwich and c*");
  envelope->add_option("--k-max", env_args.k_max, "largest integer k checked");
  envelope->add_option("--s-max", env_args.s_max, "largest breakpoint index checked");
  envelope->add_option("--workers", env_args.workers, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (count->parsed()) return run_count(count_args, out);
    if (bounds->parsed()) return run_bounds(bounds_args, out);
    if (verify->parsed()) return run_verify(verify_args, *verify, false, out);
    if (sweep->parsed()) return run_verify(sweep_args, *sweep, true, out);
    if (envelope->parsed()) return run_envelope(env_args, out);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace fermat
