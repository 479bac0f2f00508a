#ifndef TEMPSEC_IO_HPP
#define TEMPSEC_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempsec/experiments.hpp"

namespace tempsec {

/// Bad config / schema violation; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WalkConfig {
  double B = 0.0;
  double gamma = 0.0;
  std::int64_t N = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 1;
};

enum class ConfigMode { run, diagnose_block, diagnose_walk, diagnose_violation };

struct ParsedConfig {
  ExperimentConfig experiment;   // run / block / violation modes
  WalkConfig walk;               // walk mode
  std::int64_t block_N = 0;      // optional round-count override
};

/// Strict schema: unknown keys, wrong types, or inconsistent values raise
/// ConfigError anchored at the file, JSON pointer, or line of the offense.
ParsedConfig load_config(const std::string& path, ConfigMode mode,
                         const std::vector<std::string>& overrides,
                         const char* env_seed);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

std::string trials_csv(const ExperimentConfig& cfg, const RunResult& result);
std::string summary_json(const ExperimentConfig& cfg, const RunResult& result);
std::string trace_csv(const AlgorithmTrace& trace);
std::string block_csv(const std::vector<BlockRow>& rows);
std::string walk_csv(const WalkStats& stats);
std::string violation_csv(const ViolationStats& stats);

/// Doubles formatted with %.17g so artifacts round-trip bit-exactly.
std::string format_double(double v);

}  // namespace tempsec

#endif
