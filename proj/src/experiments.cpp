#include "tempsec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "tempsec/io.hpp"
#include "tempsec/lp.hpp"

namespace tempsec {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void parallel_trials(std::int64_t count, int threads,
                     const std::function<void(std::int64_t)>& body) {
  threads = std::max(1, threads);
  if (threads == 1 || count <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::int64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double mean_of(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

}  // namespace

OracleKind oracle_from_string(const std::string& s) {
  if (s == "opt_star") return OracleKind::opt_star;
  if (s == "exact") return OracleKind::exact;
  if (s == "lp") return OracleKind::lp;
  bad("unknown oracle '" + s + "'");
}

const char* oracle_name(OracleKind k) {
  switch (k) {
    case OracleKind::opt_star: return "opt_star";
    case OracleKind::exact: return "exact";
    case OracleKind::lp: return "lp";
  }
  return "?";
}

Instance generate_instance(const GeneratorSpec& spec) {
  if (spec.n < 1) bad("generator: n must be at least 1");
  if (!(spec.gamma > 0.0) || spec.gamma > 1.0) bad("generator: gamma outside (0, 1]");
  if (!(spec.capacity > 0.0)) bad("generator: capacity must be positive");
  if (spec.kind != "uniform-values" && spec.kind != "geometric-values" &&
      spec.kind != "planted-heavy")
    bad("generator: unknown kind '" + spec.kind + "'");
  if (spec.kind == "geometric-values" && (!(spec.rho > 0.0) || spec.rho >= 1.0))
    bad("generator: rho outside (0, 1)");
  if (spec.kind == "planted-heavy" &&
      (spec.heavy_count < 0 || spec.heavy_count > spec.n || !(spec.heavy_value > 0.0)))
    bad("generator: bad planted-heavy parameters");

  Xoshiro256pp rng(spec.seed);
  Instance inst;
  inst.gamma = spec.gamma;
  inst.capacity = spec.capacity;
  inst.items.resize(spec.n);
  for (std::int64_t j = 0; j < spec.n; ++j) {
    Item& it = inst.items[j];
    it.id = static_cast<std::int32_t>(j);
    if (spec.kind == "uniform-values") {
      it.value = rng.uniform01();
    } else if (spec.kind == "geometric-values") {
      it.value = std::pow(spec.rho, static_cast<double>(j));
    } else {
      it.value = j < spec.heavy_count ? spec.heavy_value : rng.uniform01();
    }
    it.duration = spec.uniform_durations ? spec.gamma * rng.uniform_pos01()
                                         : spec.gamma;
  }
  if (spec.cardinality_row) {
    PackingConstraints pc;
    pc.capacities = {spec.capacity};
    pc.columns.assign(spec.n, {{0, 1.0}});
    inst.constraints = std::move(pc);
  }
  validate_instance(inst);
  return inst;
}

void validate_config(const ExperimentConfig& cfg) {
  validate_instance(cfg.instance);
  if (cfg.instance.n() == 0) bad("config: instance needs at least one item");
  double total_value = 0.0;
  for (const Item& it : cfg.instance.items) total_value += it.value;
  if (!(total_value > 0.0)) bad("config: instance has no positive value");
  if (cfg.trials < 1) bad("config: trials must be at least 1");
  if (!(cfg.params.alpha > 0.0) || cfg.params.alpha > 1.0)
    bad("config: alpha outside (0, 1]");
  if (cfg.params.epsilon && (*cfg.params.epsilon < 0.0 || *cfg.params.epsilon > 0.5))
    bad("config: epsilon outside [0, 1/2]");

  switch (cfg.variant) {
    case Variant::cardinality:
    case Variant::lengths:
      require_integral_capacity(cfg.instance);
      if (cfg.oracle == OracleKind::lp)
        bad("config: lp oracle requires the packing variant");
      break;
    case Variant::packing:
      if (!cfg.instance.constraints)
        bad("config: packing variant needs constraints");
      if (cfg.oracle != OracleKind::lp)
        bad("config: packing variant requires the lp oracle");
      break;
  }
}

namespace {

AlgorithmTrace run_one(const ExperimentConfig& cfg, const ArrivalRealization& arr,
                       Xoshiro256pp& rounding) {
  switch (cfg.variant) {
    case Variant::cardinality:
      return run_scaling_cardinality(cfg.instance, arr, cfg.params);
    case Variant::packing:
      return run_scaling_packing(cfg.instance, arr, cfg.params, rounding);
    case Variant::lengths:
      return run_scaling_lengths(cfg.instance, arr, cfg.params);
  }
  bad("config: unknown variant");
}

}  // namespace

RunResult run_trials(const ExperimentConfig& cfg, int threads,
                     const std::function<void(std::int64_t, const AlgorithmTrace&)>&
                         on_trace) {
  validate_config(cfg);

  double const_opt = 0.0;
  bool oracle_is_constant = true;
  switch (cfg.oracle) {
    case OracleKind::opt_star:
      const_opt = cfg.variant == Variant::lengths
                      ? opt_star_lengths(cfg.instance).value
                      : opt_star_cardinality(cfg.instance).value;
      break;
    case OracleKind::lp:
      const_opt = lp_relaxation_opt(cfg.instance).value;
      break;
    case OracleKind::exact:
      oracle_is_constant = false;
      break;
  }

  RunResult result;
  if (cfg.variant == Variant::packing) {
    if (cfg.params.epsilon) {
      result.epsilon_used = *cfg.params.epsilon;
    } else {
      const EpsilonDefault def =
          epsilon_default(std::max<std::int32_t>(1, sparsity(*cfg.instance.constraints)),
                          capacity_ratio(*cfg.instance.constraints));
      result.epsilon_used = def.value;
      result.epsilon_clamped = def.clamped;
    }
  }

  result.rows.assign(cfg.trials, TrialRow{});
  std::atomic<std::int64_t> violations{0};

  parallel_trials(cfg.trials, threads, [&](std::int64_t i) {
    Xoshiro256pp arr_rng = Xoshiro256pp::stream(cfg.seed, 2 * static_cast<std::uint64_t>(i));
    Xoshiro256pp alg_rng =
        Xoshiro256pp::stream(cfg.seed, 2 * static_cast<std::uint64_t>(i) + 1);
    const ArrivalRealization arr =
        sample_arrivals(cfg.instance.n(), cfg.arrivals, arr_rng);
    const AlgorithmTrace trace = run_one(cfg, arr, alg_rng);
    violations.fetch_add(verify_trace(cfg.instance, cfg.variant, trace),
                         std::memory_order_relaxed);
    const double opt =
        oracle_is_constant ? const_opt : opt_offline_exact(cfg.instance, arr).value;
    result.rows[i] = TrialRow{i, trace.alg_value, opt, cfg.seed};
    if (on_trace) on_trace(i, trace);
  });

  result.invariant_violations = violations.load();

  // Sequential reduction in trial order: thread count cannot change a bit.
  const auto n = static_cast<double>(cfg.trials);
  TrialAggregate& agg = result.agg;
  agg.trials = cfg.trials;
  double sum_alg = 0.0, sum_opt = 0.0, sum_ratio = 0.0;
  for (const TrialRow& row : result.rows) {
    sum_alg += row.alg_value;
    sum_opt += row.opt_value;
    sum_ratio += row.opt_value > 0.0 ? row.alg_value / row.opt_value : 0.0;
  }
  agg.mean_alg = sum_alg / n;
  agg.mean_opt = sum_opt / n;
  agg.mean_trial_ratio = sum_ratio / n;
  if (!(agg.mean_opt > 0.0)) bad("run_trials: oracle value is zero");
  agg.ratio = agg.mean_alg / agg.mean_opt;

  if (cfg.trials > 1) {
    double saa = 0.0, soo = 0.0, sao = 0.0;
    for (const TrialRow& row : result.rows) {
      const double da = row.alg_value - agg.mean_alg;
      const double dv = row.opt_value - agg.mean_opt;
      saa += da * da;
      soo += dv * dv;
      sao += da * dv;
    }
    const double denom = n - 1.0;
    saa /= denom;
    soo /= denom;
    sao /= denom;
    agg.stderr_alg = std::sqrt(saa / n);
    agg.stderr_opt = std::sqrt(soo / n);
    // Delta method on the ratio of means with paired per-trial samples.
    const double r = agg.ratio;
    const double var_ratio =
        (saa - 2.0 * r * sao + r * r * soo) / (n * agg.mean_opt * agg.mean_opt);
    const double se = var_ratio > 0.0 ? std::sqrt(var_ratio) : 0.0;
    agg.ci_low = r - 1.96 * se;
    agg.ci_high = r + 1.96 * se;
  } else {
    agg.ci_low = agg.ci_high = agg.ratio;
  }
  return result;
}

Theorem theorem_from_string(const std::string& s) {
  if (s == "thm1") return Theorem::thm1;
  if (s == "thm2") return Theorem::thm2;
  if (s == "thm3") return Theorem::thm3;
  if (s == "thm4") return Theorem::thm4;
  bad("unknown theorem '" + s + "'");
}

BoundResult theoretical_bound(Theorem which, double gamma, double B, double d) {
  if (!(gamma > 0.0) || gamma > 1.0) bad("bound: gamma outside (0, 1]");
  if (!(B >= 1.0)) bad("bound: capacity must be at least 1");
  if (!(d >= 1.0)) bad("bound: sparsity must be at least 1");
  BoundResult res;
  const double sg = std::sqrt(gamma);
  switch (which) {
    case Theorem::thm1:
      res.value = 0.5 * (1.0 - 3.5 * sg - 18.5 * std::sqrt(gamma / B) - gamma);
      break;
    case Theorem::thm2:
      res.value = 1.0 - 4.0 / std::sqrt(B) - 20.5 * std::sqrt(gamma / B) - 3.0 * gamma;
      res.flags.push_back("asymptotic");  // an O(1/B) term is dropped
      break;
    case Theorem::thm3:
      res.value = 1.0 / (1.0 + gamma);
      res.epsilon_term = std::sqrt(6.0 * (1.0 + std::log(d) + std::log(B)) / B);
      res.flags.push_back("constant-free");
      if (*res.epsilon_term >= 1.0) res.flags.push_back("vacuous");
      break;
    case Theorem::thm4:
      res.value = 0.25 - 5.0 * sg - 1.5 * gamma * std::log(1.0 / sg);
      break;
  }
  if (res.value < 0.0) res.flags.push_back("vacuous");
  return res;
}

BoundResult summary_bound(Variant variant, double gamma, double B, double d) {
  switch (variant) {
    case Variant::cardinality: {
      BoundResult thm1 = theoretical_bound(Theorem::thm1, gamma, B, d);
      BoundResult thm2 = theoretical_bound(Theorem::thm2, gamma, B, d);
      return thm2.value > thm1.value ? thm2 : thm1;
    }
    case Variant::packing: {
      BoundResult pair = theoretical_bound(Theorem::thm3, gamma, B, d);
      BoundResult out = pair;
      out.value = pair.value * std::max(0.0, 1.0 - *pair.epsilon_term);
      return out;
    }
    case Variant::lengths:
      return theoretical_bound(Theorem::thm4, gamma, B, d);
  }
  bad("summary_bound: unknown variant");
}

std::vector<BlockRow> block_feasibility_diagnostic(const ExperimentConfig& cfg,
                                                   std::int64_t N, int threads) {
  if (cfg.variant != Variant::cardinality)
    bad("block diagnostic: cardinality variant only");
  validate_config(cfg);
  if (N <= 0) N = static_cast<std::int64_t>(cfg.instance.n());

  const double gamma = cfg.instance.gamma;
  const double sg = std::sqrt(gamma);
  const auto nblocks = std::max<std::int32_t>(1, static_cast<std::int32_t>(1.0 / sg));
  std::vector<std::int64_t> tentative(nblocks, 0), both(nblocks, 0);
  std::mutex mu;

  run_trials(cfg, threads, [&](std::int64_t, const AlgorithmTrace& trace) {
    std::vector<std::int64_t> local_t(nblocks, 0), local_b(nblocks, 0);
    for (const TraceRecord& rec : trace.records) {
      if (!rec.tentative) continue;
      const auto blk = std::min<std::int32_t>(
          nblocks - 1, static_cast<std::int32_t>(rec.t / sg));
      ++local_t[blk];
      if (rec.feasible) ++local_b[blk];
    }
    std::lock_guard<std::mutex> lock(mu);
    for (std::int32_t b = 0; b < nblocks; ++b) {
      tentative[b] += local_t[b];
      both[b] += local_b[b];
    }
  });

  const double bound = 0.5 - sg - 1.0 / (4.0 * sg * static_cast<double>(N));
  const double ramp_edge = 2.0 * std::sqrt(gamma / cfg.instance.capacity);
  std::vector<BlockRow> rows(nblocks);
  for (std::int32_t b = 0; b < nblocks; ++b) {
    BlockRow& row = rows[b];
    row.block = b;
    row.t_lo = b * sg;
    row.t_hi = b + 1 == nblocks ? 1.0 : (b + 1) * sg;
    row.tentative = tentative[b];
    row.tentative_feasible = both[b];
    row.ratio = tentative[b] == 0
                    ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(both[b]) / static_cast<double>(tentative[b]);
    row.bound = bound;
    row.ramp_regime_ok = row.t_lo >= ramp_edge;
  }
  return rows;
}

WalkStats coupled_walk_diagnostic(double B, double gamma, std::int64_t N,
                                  std::int64_t trials, std::uint64_t seed,
                                  int threads) {
  if (!(B > 0.0)) bad("walk diagnostic: B must be positive");
  if (!(gamma > 0.0) || gamma > 1.0) bad("walk diagnostic: gamma outside (0, 1]");
  if (N < 1 || trials < 1) bad("walk diagnostic: N and trials must be positive");
  const double w_real = gamma * static_cast<double>(N);
  const auto W = static_cast<std::int64_t>(std::nearbyint(w_real));
  if (W < 1 || std::abs(w_real - static_cast<double>(W)) > 1e-9 * std::max(1.0, w_real))
    bad("walk diagnostic: gamma * N must be a positive integer");
  if (B > static_cast<double>(W)) bad("walk diagnostic: B cannot exceed gamma * N");

  const double p = B / static_cast<double>(W);
  WalkStats stats;
  stats.rows.assign(trials, WalkTrialRow{});
  stats.bound = 4.0 * std::sqrt(B);

  parallel_trials(trials, threads, [&](std::int64_t i) {
    Xoshiro256pp rng = Xoshiro256pp::stream(seed, static_cast<std::uint64_t>(i));
    // Trailing window first (it happens earlier), then the live block.
    std::vector<double> trail_prefix(W + 1, 0.0);
    for (std::int64_t k = 1; k <= W; ++k)
      trail_prefix[k] = trail_prefix[k - 1] + (rng.bernoulli(p) ? 1.0 : 0.0);
    const double window_sum = trail_prefix[W];
    double cur = 0.0;
    double max_diff = 0.0;  // empty prefix: the deviation is never negative
    for (std::int64_t k = 1; k <= W; ++k) {
      cur += rng.bernoulli(p) ? 1.0 : 0.0;
      max_diff = std::max(max_diff, cur - trail_prefix[k]);
    }
    WalkTrialRow& row = stats.rows[i];
    row.trial = i;
    row.window_sum = window_sum;
    row.max_term = max_diff;
    row.boundary_term = std::abs(window_sum - B);
    row.q = max_diff + row.boundary_term;
  });

  // Means in trial order.
  std::vector<double> qs(trials), sums(trials);
  for (std::int64_t i = 0; i < trials; ++i) {
    qs[i] = stats.rows[i].q;
    sums[i] = stats.rows[i].window_sum;
  }
  stats.mean_q = mean_of(qs);
  stats.mean_window_sum = mean_of(sums);
  double var = 0.0;
  for (double q : qs) var += (q - stats.mean_q) * (q - stats.mean_q);
  stats.stderr_q = trials > 1
                       ? std::sqrt(var / (static_cast<double>(trials) - 1.0) /
                                   static_cast<double>(trials))
                       : 0.0;
  return stats;
}

ViolationStats packing_violation_diagnostic(const ExperimentConfig& cfg,
                                            int threads) {
  if (cfg.variant != Variant::packing)
    bad("violation diagnostic: packing variant only");
  validate_config(cfg);
  const PackingConstraints& pc = *cfg.instance.constraints;
  const auto m = static_cast<std::int32_t>(pc.rows());
  const double gamma = cfg.instance.gamma;
  const double d = std::max<std::int32_t>(1, sparsity(pc));
  const double B = capacity_ratio(pc);

  std::vector<std::int64_t> checks(m, 0), violations(m, 0);
  std::int64_t tentative_total = 0, committed_total = 0;
  std::mutex mu;

  run_trials(cfg, threads, [&](std::int64_t, const AlgorithmTrace& trace) {
    std::vector<std::int64_t> local_checks(m, 0), local_viol(m, 0);
    std::int64_t local_tent = 0, local_comm = 0;
    std::vector<double> load(m, 0.0);
    std::deque<std::pair<double, std::int32_t>> window;  // (t, item), tentative only
    for (const TraceRecord& rec : trace.records) {
      while (!window.empty() && window.front().first < rec.t - gamma) {
        for (const auto& [row, coef] : pc.columns[window.front().second])
          load[row] -= coef;
        window.pop_front();
      }
      for (std::int32_t i = 0; i < m; ++i) {
        ++local_checks[i];
        if (load[i] > pc.capacities[i] - 1.0) ++local_viol[i];
      }
      if (rec.tentative) {
        ++local_tent;
        if (rec.selected) ++local_comm;
        window.emplace_back(rec.t, rec.item);
        for (const auto& [row, coef] : pc.columns[rec.item]) load[row] += coef;
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    for (std::int32_t i = 0; i < m; ++i) {
      checks[i] += local_checks[i];
      violations[i] += local_viol[i];
    }
    tentative_total += local_tent;
    committed_total += local_comm;
  });

  ViolationStats stats;
  stats.rows.resize(m);
  for (std::int32_t i = 0; i < m; ++i) {
    ViolationRow& row = stats.rows[i];
    row.row = i;
    row.checks = checks[i];
    row.violations = violations[i];
    row.rate = checks[i] == 0
                   ? 0.0
                   : static_cast<double>(violations[i]) / static_cast<double>(checks[i]);
    row.stderr_rate =
        checks[i] == 0
            ? 0.0
            : std::sqrt(row.rate * (1.0 - row.rate) / static_cast<double>(checks[i]));
    row.bound = 1.0 / (d * B);
    stats.max_rate = std::max(stats.max_rate, row.rate);
  }
  stats.tentative = tentative_total;
  stats.committed = committed_total;
  stats.commit_ratio =
      tentative_total == 0
          ? 1.0
          : static_cast<double>(committed_total) / static_cast<double>(tentative_total);
  return stats;
}

OracleCheckReport oracle_self_check(
    std::int64_t n_max, std::int64_t count, std::uint64_t seed,
    const std::string& out_dir,
    const std::function<double(const Instance&, const ArrivalRealization&)>&
        flow_override) {
  if (n_max < 1 || n_max > 20) bad("oracle check: n_max must lie in [1, 20]");
  if (count < 1) bad("oracle check: count must be positive");
  std::filesystem::create_directories(out_dir);

  OracleCheckReport report;
  Xoshiro256pp rng(seed);
  const double gammas[2] = {0.1, 0.3};

  for (std::int64_t c = 0; c < count; ++c) {
    Instance inst;
    inst.gamma = gammas[rng.next() % 2];
    inst.capacity = static_cast<double>(1 + rng.next() % 3);
    const std::int64_t n = 1 + static_cast<std::int64_t>(rng.next() % n_max);
    inst.items.resize(n);
    for (std::int64_t j = 0; j < n; ++j) {
      Item& it = inst.items[j];
      it.id = static_cast<std::int32_t>(j);
      // Dyadic values keep every subset sum exact, so "equal" means equal.
      it.value = static_cast<double>(rng.next() % 1048577) / 1048576.0;
      it.duration = c % 2 == 0
                        ? inst.gamma
                        : inst.gamma * static_cast<double>(1 + rng.next() % 1024) / 1024.0;
    }
    ArrivalRealization arr =
        sample_arrivals(n, ArrivalDistribution::uniform(), rng);
    const double flow_value = flow_override
                                  ? flow_override(inst, arr)
                                  : opt_offline_exact(inst, arr).value;
    const double brute_value = opt_offline_brute(inst, arr).value;
    ++report.schedule_checked;
    if (flow_value != brute_value) {
      report.ok = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "schedule oracle mismatch on instance %lld: flow %.17g vs brute %.17g",
                    static_cast<long long>(c), flow_value, brute_value);
      report.detail = buf;
      report.repro_path = out_dir + "/oracle_mismatch.json";
      std::string payload = "{\n  \"instance\": ";
      payload += instance_to_json(inst);
      payload += ",\n  \"arrival_times\": [";
      for (std::size_t j = 0; j < arr.times.size(); ++j) {
        if (j) payload += ", ";
        payload += format_double(arr.times[j]);
      }
      payload += "],\n  \"flow_value\": " + format_double(flow_value);
      payload += ",\n  \"brute_value\": " + format_double(brute_value) + "\n}\n";
      write_text_file(report.repro_path, payload);
      return report;
    }

    // Independent LP route: simplex against exhaustive vertex enumeration.
    PackingLP lp;
    const std::int32_t k = 1 + static_cast<std::int32_t>(rng.next() % 6);
    const std::int32_t m = 1 + static_cast<std::int32_t>(rng.next() % 4);
    lp.objective.resize(k);
    for (auto& v : lp.objective) v = rng.uniform01();
    lp.rows.assign(m, std::vector<double>(k, 0.0));
    for (auto& row : lp.rows)
      for (auto& a : row) a = rng.uniform01() < 0.2 ? 0.0 : rng.uniform01();
    lp.capacities.resize(m);
    for (auto& b : lp.capacities) b = rng.uniform01() * (0.5 * k);
    bool degenerate_row = false;
    for (const auto& row : lp.rows) {
      double mx = 0.0;
      for (double a : row) mx = std::max(mx, a);
      if (mx == 0.0) degenerate_row = true;
    }
    if (degenerate_row) continue;  // rows without mass say nothing here
    const double simplex_value = solve_packing_lp(lp).value;
    const double enum_value = lp_value_by_vertex_enumeration(lp);
    ++report.lp_checked;
    if (std::abs(simplex_value - enum_value) >
        1e-8 * std::max(1.0, std::abs(enum_value))) {
      report.ok = false;
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "lp mismatch on instance %lld: simplex %.17g vs enumeration %.17g",
                    static_cast<long long>(c), simplex_value, enum_value);
      report.detail = buf;
      report.repro_path = out_dir + "/lp_mismatch.json";
      std::string payload = "{\n  \"objective\": [";
      for (std::int32_t j = 0; j < k; ++j) {
        if (j) payload += ", ";
        payload += format_double(lp.objective[j]);
      }
      payload += "],\n  \"rows\": [";
      for (std::int32_t i = 0; i < m; ++i) {
        if (i) payload += ", ";
        payload += "[";
        for (std::int32_t j = 0; j < k; ++j) {
          if (j) payload += ", ";
          payload += format_double(lp.rows[i][j]);
        }
        payload += "]";
      }
      payload += "],\n  \"capacities\": [";
      for (std::int32_t i = 0; i < m; ++i) {
        if (i) payload += ", ";
        payload += format_double(lp.capacities[i]);
      }
      payload += "]\n}\n";
      write_text_file(report.repro_path, payload);
      return report;
    }
  }
  return report;
}

}  // namespace tempsec
