#ifndef TEMPSEC_EXPERIMENTS_HPP
#define TEMPSEC_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tempsec/arrivals.hpp"
#include "tempsec/model.hpp"
#include "tempsec/online.hpp"
#include "tempsec/oracles.hpp"

namespace tempsec {

enum class OracleKind { opt_star, exact, lp };

OracleKind oracle_from_string(const std::string& s);
const char* oracle_name(OracleKind k);

/// Frozen-value instance families.  Values and durations are drawn once
/// per configuration; only arrival times vary across trials.
struct GeneratorSpec {
  std::string kind = "uniform-values";  // uniform-values | geometric-values | planted-heavy
  std::int64_t n = 0;
  double gamma = 0.0;
  double capacity = 1.0;
  std::uint64_t seed = 1;
  bool uniform_durations = false;  // durations ~ U(0, gamma] instead of == gamma
  bool cardinality_row = false;    // attach the single all-ones constraint row
  double rho = 0.99;               // geometric-values decay
  std::int64_t heavy_count = 3;    // planted-heavy head size
  double heavy_value = 100.0;
};

Instance generate_instance(const GeneratorSpec& spec);

struct ExperimentConfig {
  Variant variant = Variant::cardinality;
  Instance instance;
  ArrivalDistribution arrivals = ArrivalDistribution::uniform();
  AlgorithmParams params;
  OracleKind oracle = OracleKind::opt_star;
  std::int64_t trials = 1;
  std::uint64_t seed = 1;
};

/// Rejects inconsistent combinations (packing without constraints, exact
/// oracle under packing, fractional capacity under count variants, ...).
void validate_config(const ExperimentConfig& cfg);

struct TrialRow {
  std::int64_t trial = 0;
  double alg_value = 0.0;
  double opt_value = 0.0;
  std::uint64_t stream_seed = 0;
};

struct TrialAggregate {
  std::int64_t trials = 0;
  double mean_alg = 0.0;
  double mean_opt = 0.0;
  double stderr_alg = 0.0;
  double stderr_opt = 0.0;
  double ratio = 0.0;            // mean_alg / mean_opt
  double mean_trial_ratio = 0.0; // mean of per-trial alg/opt, reported alongside
  double ci_low = 0.0;           // 95% delta-method interval for `ratio`
  double ci_high = 0.0;
};

struct RunResult {
  TrialAggregate agg;
  std::vector<TrialRow> rows;
  std::int64_t invariant_violations = 0;
  bool epsilon_clamped = false;
  double epsilon_used = 0.0;  // packing only
};

/// Trial t always consumes streams (seed, 2t) for arrivals and
/// (seed, 2t+1) for rounding, and per-trial results land in a slot indexed
/// by t before one sequential reduction, so any thread count produces the
/// same bytes.  Optional `keep_trace` hands each finished trace to the
/// caller (diagnostics, replay checks).
RunResult run_trials(const ExperimentConfig& cfg, int threads = 1,
                     const std::function<void(std::int64_t, const AlgorithmTrace&)>&
                         on_trace = nullptr);

enum class Theorem { thm1, thm2, thm3, thm4 };

Theorem theorem_from_string(const std::string& s);

struct BoundResult {
  double value = 0.0;
  std::optional<double> epsilon_term;  // thm3 pairs the guarantee with its eps
  std::vector<std::string> flags;      // "vacuous", "asymptotic", "constant-free"
};

BoundResult theoretical_bound(Theorem which, double gamma, double B, double d = 1.0);

/// Bound printed in run summaries: best applicable theorem per variant.
BoundResult summary_bound(Variant variant, double gamma, double B, double d);

struct BlockRow {
  std::int32_t block = 0;
  double t_lo = 0.0, t_hi = 0.0;
  std::int64_t tentative = 0;
  std::int64_t tentative_feasible = 0;
  double ratio = 0.0;  // NaN when tentative == 0
  double bound = 0.0;  // 1/2 - sqrt(gamma) - 1/(4 sqrt(gamma) N)
  bool ramp_regime_ok = false;  // block start past 2 sqrt(gamma / B)
};

/// Feasible-given-tentative rates per sqrt(gamma) block of [0, 1],
/// accumulated over `trials` runs of the cardinality rule.  N is the item
/// count in the bound term and defaults to the instance size when 0.
std::vector<BlockRow> block_feasibility_diagnostic(const ExperimentConfig& cfg,
                                                   std::int64_t N = 0,
                                                   int threads = 1);

struct WalkTrialRow {
  std::int64_t trial = 0;
  double window_sum = 0.0;  // trailing-window occupancy, mean should be B
  double max_term = 0.0;
  double boundary_term = 0.0;
  double q = 0.0;
};

struct WalkStats {
  std::vector<WalkTrialRow> rows;
  double mean_q = 0.0;
  double stderr_q = 0.0;
  double mean_window_sum = 0.0;  // should hover around B
  double bound = 0.0;            // 4 sqrt(B)
};

/// Simulates the coupled-window walk driving the large-B feasibility
/// argument: W = gamma * N i.i.d. Bernoulli(B / W) rounds against the
/// preceding window, Q = max prefix difference + |window sum - B|.
/// Requires integral gamma * N and B <= gamma * N.
WalkStats coupled_walk_diagnostic(double B, double gamma, std::int64_t N,
                                  std::int64_t trials, std::uint64_t seed,
                                  int threads = 1);

struct ViolationRow {
  std::int32_t row = 0;
  std::int64_t checks = 0;
  std::int64_t violations = 0;
  double rate = 0.0;
  double stderr_rate = 0.0;
  double bound = 0.0;  // 1 / (d * B)
};

struct ViolationStats {
  std::vector<ViolationRow> rows;
  double max_rate = 0.0;
  std::int64_t tentative = 0;
  std::int64_t committed = 0;
  double commit_ratio = 0.0;  // committed / tentative
};

/// At every arrival, per constraint: does the tentative consumption of the
/// trailing gamma-window exceed b_i - 1?  Measures the guard that makes
/// rounded commitments almost always fit.
ViolationStats packing_violation_diagnostic(const ExperimentConfig& cfg,
                                            int threads = 1);

struct OracleCheckReport {
  std::int64_t schedule_checked = 0;
  std::int64_t lp_checked = 0;
  bool ok = true;
  std::string detail;       // first mismatch description
  std::string repro_path;   // failing instance, serialized
};

/// Random small instances: flow vs exhaustive search (exact equality on
/// dyadic values) and simplex vs vertex enumeration (1e-8).  `flow_override`
/// lets tests inject a fault to exercise the mismatch path.
OracleCheckReport oracle_self_check(
    std::int64_t n_max, std::int64_t count, std::uint64_t seed,
    const std::string& out_dir,
    const std::function<double(const Instance&, const ArrivalRealization&)>&
        flow_override = nullptr);

}  // namespace tempsec

#endif
