#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempsec/experiments.hpp"
#include "tempsec/io.hpp"

namespace {

using namespace tempsec;

std::string flags_text(const BoundResult& bound) {
  if (bound.flags.empty()) return "-";
  std::string out;
  for (const auto& f : bound.flags) {
    if (!out.empty()) out += ',';
    out += f;
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int threads, bool trace, const std::vector<std::string>& sets) {
  const ParsedConfig parsed = load_config(config_path, ConfigMode::run, sets,
                                          std::getenv("TEMPSEC_SEED"));
  const ExperimentConfig& cfg = parsed.experiment;
  std::filesystem::create_directories(out_dir);

  std::function<void(std::int64_t, const AlgorithmTrace&)> on_trace;
  if (trace) {
    on_trace = [&](std::int64_t trial, const AlgorithmTrace& tr) {
      char name[48];
      std::snprintf(name, sizeof(name), "/trace_%05lld.csv",
                    static_cast<long long>(trial));
      write_text_file(out_dir + name, trace_csv(tr));
    };
  }
  const RunResult result = run_trials(cfg, threads, on_trace);
  write_text_file(out_dir + "/trials.csv", trials_csv(cfg, result));
  write_text_file(out_dir + "/summary.json", summary_json(cfg, result));

  const double B = cfg.variant == Variant::packing
                       ? capacity_ratio(*cfg.instance.constraints)
                       : cfg.instance.capacity;
  const std::int32_t d = cfg.instance.constraints
                             ? std::max<std::int32_t>(1, sparsity(*cfg.instance.constraints))
                             : 1;
  const BoundResult bound = summary_bound(cfg.variant, cfg.instance.gamma, B, d);
  std::printf("variant=%s trials=%lld ratio=%.6f ci=[%.6f,%.6f] bound=%.6f flags=%s\n",
              variant_name(cfg.variant), static_cast<long long>(result.agg.trials),
              result.agg.ratio, result.agg.ci_low, result.agg.ci_high, bound.value,
              flags_text(bound).c_str());
  if (result.invariant_violations != 0) {
    std::fprintf(stderr, "invariant violations: %lld\n",
                 static_cast<long long>(result.invariant_violations));
    return 3;
  }
  return 0;
}

int cmd_diagnose(const std::string& which, const std::string& config_path,
                 const std::string& out_dir, int threads,
                 const std::vector<std::string>& sets) {
  const ConfigMode mode = which == "block"  ? ConfigMode::diagnose_block
                          : which == "walk" ? ConfigMode::diagnose_walk
                                            : ConfigMode::diagnose_violation;
  const ParsedConfig parsed =
      load_config(config_path, mode, sets, std::getenv("TEMPSEC_SEED"));
  std::filesystem::create_directories(out_dir);

  if (which == "block") {
    const auto rows =
        block_feasibility_diagnostic(parsed.experiment, parsed.block_N, threads);
    write_text_file(out_dir + "/block.csv", block_csv(rows));
    std::printf("blocks=%zu bound=%.6f file=%s/block.csv\n", rows.size(),
                rows.empty() ? 0.0 : rows.front().bound, out_dir.c_str());
    return 0;
  }
  if (which == "walk") {
    const WalkConfig& w = parsed.walk;
    const WalkStats stats =
        coupled_walk_diagnostic(w.B, w.gamma, w.N, w.trials, w.seed, threads);
    write_text_file(out_dir + "/walk.csv", walk_csv(stats));
    std::printf("mean_q=%.4f stderr=%.4f bound=%.4f mean_window_sum=%.4f\n",
                stats.mean_q, stats.stderr_q, stats.bound, stats.mean_window_sum);
    return 0;
  }
  const ViolationStats stats = packing_violation_diagnostic(parsed.experiment, threads);
  write_text_file(out_dir + "/violation.csv", violation_csv(stats));
  std::printf("max_rate=%.6g bound=%.6g commit_ratio=%.6f tentative=%lld\n",
              stats.max_rate, stats.rows.empty() ? 0.0 : stats.rows.front().bound,
              stats.commit_ratio, static_cast<long long>(stats.tentative));
  return 0;
}

int cmd_oracle_check(std::int64_t n_max, std::int64_t count, std::uint64_t seed,
                     const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const OracleCheckReport report = oracle_self_check(n_max, count, seed, out_dir);
  std::printf("schedule_checked=%lld lp_checked=%lld ok=%d\n",
              static_cast<long long>(report.schedule_checked),
              static_cast<long long>(report.lp_checked), report.ok ? 1 : 0);
  if (!report.ok) {
    std::fprintf(stderr, "%s\nrepro: %s\n", report.detail.c_str(),
                 report.repro_path.c_str());
    return 1;
  }
  return 0;
}

int cmd_bounds(const std::string& theorem, double gamma, double B, double d) {
  const BoundResult bound = theoretical_bound(theorem_from_string(theorem), gamma, B, d);
  std::string eps = bound.epsilon_term ? format_double(*bound.epsilon_term) : "null";
  std::printf("{\"theorem\": \"%s\", \"value\": %s, \"epsilon_term\": %s, \"flags\": \"%s\"}\n",
              theorem.c_str(), format_double(bound.value).c_str(), eps.c_str(),
              flags_text(bound).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"temp-secretary scaling algorithms"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", which, theorem = "thm1";
  int threads = 1;
  bool trace = false;
  std::vector<std::string> sets;
  std::int64_t n_max = 12, count = 200;
  std::uint64_t seed = 1;
  double gamma = 0.01, B = 1.0, d = 1.0;

  CLI::App* run = app.add_subcommand("run", "Monte Carlo competitive-ratio run");
  run->add_option("--config", config_path)->required();
  run->add_option("--out", out_dir);
  run->add_option("--threads", threads);
  run->add_flag("--trace", trace);
  run->add_option("--set", sets);

  CLI::App* diag = app.add_subcommand("diagnose", "lemma-level diagnostics");
  diag->add_option("which", which)
      ->required()
      ->check(CLI::IsMember({"block", "walk", "violation"}));
  diag->add_option("--config", config_path)->required();
  diag->add_option("--out", out_dir);
  diag->add_option("--threads", threads);
  diag->add_option("--set", sets);

  CLI::App* oracle = app.add_subcommand("oracle-check", "cross-check the exact oracles");
  oracle->add_option("--n-max", n_max);
  oracle->add_option("--count", count);
  oracle->add_option("--seed", seed);
  oracle->add_option("--out", out_dir);

  CLI::App* bounds = app.add_subcommand("bounds", "print a theoretical bound");
  bounds->add_option("--theorem", theorem)
      ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4"}));
  bounds->add_option("--gamma", gamma);
  bounds->add_option("--B", B);
  bounds->add_option("--d", d);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, threads, trace, sets);
    if (diag->parsed()) return cmd_diagnose(which, config_path, out_dir, threads, sets);
    if (oracle->parsed())
      return cmd_oracle_check(n_max, count, seed, out_dir);
    return cmd_bounds(theorem, gamma, B, d);
  } catch (const tempsec::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
}
