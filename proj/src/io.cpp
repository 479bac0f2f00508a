#include "tempsec/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tempsec {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* k : keys)
      if (key == k) known = true;
    if (!known) fail(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& obj, const std::string& where, const char* key,
                  bool required, double fallback = 0.0) {
  if (!obj.contains(key)) {
    if (required) fail(where + ": missing '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number()) fail(where + ": '" + key + "' must be a number");
  return obj[key].get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& where, const char* key,
                         bool required, std::int64_t fallback = 0) {
  if (!obj.contains(key)) {
    if (required) fail(where + ": missing '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_number_integer()) fail(where + ": '" + key + "' must be an integer");
  return obj[key].get<std::int64_t>();
}

std::string get_string(const json& obj, const std::string& where, const char* key,
                       bool required, const std::string& fallback = "") {
  if (!obj.contains(key)) {
    if (required) fail(where + ": missing '" + key + "'");
    return fallback;
  }
  if (!obj[key].is_string()) fail(where + ": '" + key + "' must be a string");
  return obj[key].get<std::string>();
}

bool get_bool(const json& obj, const std::string& where, const char* key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(where + ": '" + key + "' must be a boolean");
  return obj[key].get<bool>();
}

ArrivalDistribution parse_arrivals(const json& spec) {
  if (!spec.is_object()) fail("/arrivals: must be an object");
  const std::string kind = get_string(spec, "/arrivals", "kind", true);
  if (kind == "uniform") {
    check_keys(spec, "/arrivals", {"kind"});
    return ArrivalDistribution::uniform();
  }
  if (kind != "general") fail("/arrivals: kind must be 'uniform' or 'general'");
  check_keys(spec, "/arrivals", {"kind", "inverse_cdf"});
  if (!spec.contains("inverse_cdf") || !spec["inverse_cdf"].is_array())
    fail("/arrivals: 'inverse_cdf' array required for kind 'general'");
  std::vector<std::pair<double, double>> knots;
  for (const auto& pair : spec["inverse_cdf"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number())
      fail("/arrivals: inverse_cdf entries must be [u, x] number pairs");
    knots.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  try {
    return ArrivalDistribution::general(std::move(knots));
  } catch (const std::invalid_argument& e) {
    fail(std::string("/arrivals: ") + e.what());
  }
}

GeneratorSpec parse_generator(const json& spec) {
  if (!spec.is_object()) fail("/instance/generator: must be an object");
  check_keys(spec, "/instance/generator",
             {"kind", "n", "gamma", "capacity", "seed", "uniform_durations",
              "cardinality_row", "rho", "heavy_count", "heavy_value"});
  GeneratorSpec out;
  out.kind = get_string(spec, "/instance/generator", "kind", false, out.kind);
  out.n = get_integer(spec, "/instance/generator", "n", true);
  out.gamma = get_number(spec, "/instance/generator", "gamma", true);
  out.capacity = get_number(spec, "/instance/generator", "capacity", false, 1.0);
  out.seed = static_cast<std::uint64_t>(
      get_integer(spec, "/instance/generator", "seed", false, 1));
  out.uniform_durations =
      get_bool(spec, "/instance/generator", "uniform_durations", false);
  out.cardinality_row = get_bool(spec, "/instance/generator", "cardinality_row", false);
  out.rho = get_number(spec, "/instance/generator", "rho", false, out.rho);
  out.heavy_count =
      get_integer(spec, "/instance/generator", "heavy_count", false, out.heavy_count);
  out.heavy_value =
      get_number(spec, "/instance/generator", "heavy_value", false, out.heavy_value);
  return out;
}

void apply_override(json& doc, const std::string& setting) {
  const auto eq = setting.find('=');
  if (eq == std::string::npos || eq == 0)
    fail("--set expects key=value, got '" + setting + "'");
  const std::string path = setting.substr(0, eq);
  const std::string raw = setting.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare words become strings
  }
  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) fail("--set: empty path segment in '" + setting + "'");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    if (!node->contains(key)) (*node)[key] = json::object();
    node = &(*node)[key];
    if (!node->is_object()) fail("--set: '" + key + "' is not an object");
    start = dot + 1;
  }
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ParsedConfig load_config(const std::string& path, ConfigMode mode,
                         const std::vector<std::string>& overrides,
                         const char* env_seed) {
  const std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    fail(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
         ": invalid JSON: " + e.what());
  }
  if (!doc.is_object()) fail(path + ": top level must be an object");

  for (const std::string& setting : overrides) apply_override(doc, setting);
  if (env_seed && *env_seed) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env_seed, &end, 10);
    if (end == env_seed || *end != '\0')
      fail("TEMPSEC_SEED must be an unsigned integer, got '" + std::string(env_seed) + "'");
    doc["seed"] = v;
  }

  ParsedConfig out;
  if (mode == ConfigMode::diagnose_walk) {
    check_keys(doc, path, {"walk", "seed"});
    if (!doc.contains("walk") || !doc["walk"].is_object())
      fail(path + ": diagnose walk needs a 'walk' object");
    const json& w = doc["walk"];
    check_keys(w, "/walk", {"B", "gamma", "N", "trials"});
    out.walk.B = get_number(w, "/walk", "B", true);
    out.walk.gamma = get_number(w, "/walk", "gamma", true);
    out.walk.N = get_integer(w, "/walk", "N", true);
    out.walk.trials = get_integer(w, "/walk", "trials", true);
    out.walk.seed = static_cast<std::uint64_t>(get_integer(doc, path, "seed", false, 1));
    return out;
  }

  if (mode == ConfigMode::diagnose_block) {
    check_keys(doc, path,
               {"variant", "trials", "seed", "oracle", "instance", "arrivals",
                "params", "N"});
    out.block_N = get_integer(doc, path, "N", false, 0);
  } else {
    check_keys(doc, path,
               {"variant", "trials", "seed", "oracle", "instance", "arrivals",
                "params"});
  }

  ExperimentConfig& cfg = out.experiment;
  try {
    cfg.variant = variant_from_string(get_string(doc, path, "variant", true));
    cfg.trials = get_integer(doc, path, "trials", true);
    cfg.seed = static_cast<std::uint64_t>(get_integer(doc, path, "seed", true));
    cfg.oracle = oracle_from_string(get_string(doc, path, "oracle", true));

    if (!doc.contains("instance") || !doc["instance"].is_object())
      fail(path + ": 'instance' object required");
    const json& ij = doc["instance"];
    check_keys(ij, "/instance", {"file", "generator"});
    if (ij.contains("file") == ij.contains("generator"))
      fail("/instance: exactly one of 'file' or 'generator' required");
    if (ij.contains("file")) {
      cfg.instance = load_instance_json(get_string(ij, "/instance", "file", true));
    } else {
      cfg.instance = generate_instance(parse_generator(ij["generator"]));
    }
    if (cfg.instance.constraints)
      cfg.instance.constraints = normalize_constraints(*cfg.instance.constraints);

    if (doc.contains("arrivals")) cfg.arrivals = parse_arrivals(doc["arrivals"]);
    if (doc.contains("params")) {
      const json& pj = doc["params"];
      if (!pj.is_object()) fail("/params: must be an object");
      check_keys(pj, "/params", {"alpha", "epsilon"});
      cfg.params.alpha = get_number(pj, "/params", "alpha", false, 0.5);
      if (pj.contains("epsilon"))
        cfg.params.epsilon = get_number(pj, "/params", "epsilon", true);
    }
    validate_config(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path + ": " + e.what());
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

double bound_capacity(const ExperimentConfig& cfg) {
  return cfg.variant == Variant::packing ? capacity_ratio(*cfg.instance.constraints)
                                         : cfg.instance.capacity;
}

std::int32_t bound_sparsity(const ExperimentConfig& cfg) {
  return cfg.instance.constraints
             ? std::max<std::int32_t>(1, sparsity(*cfg.instance.constraints))
             : 1;
}

}  // namespace

std::string trials_csv(const ExperimentConfig& cfg, const RunResult& result) {
  std::string out = "trial,alg_value,opt_value,variant,gamma,B,d,epsilon,alpha,seed\n";
  const double B = bound_capacity(cfg);
  const std::int32_t d =
      cfg.instance.constraints ? sparsity(*cfg.instance.constraints) : 0;
  const std::string eps = cfg.variant == Variant::packing
                              ? format_double(result.epsilon_used)
                              : std::string();
  for (const TrialRow& row : result.rows) {
    char head[64];
    std::snprintf(head, sizeof(head), "%" PRId64 ",", row.trial);
    out += head;
    out += format_double(row.alg_value);
    out += ',';
    out += format_double(row.opt_value);
    out += ',';
    out += variant_name(cfg.variant);
    out += ',';
    out += format_double(cfg.instance.gamma);
    out += ',';
    out += format_double(B);
    out += ',';
    out += std::to_string(d);
    out += ',';
    out += eps;
    out += ',';
    out += format_double(cfg.params.alpha);
    out += ',';
    out += std::to_string(row.stream_seed);
    out += '\n';
  }
  return out;
}

std::string summary_json(const ExperimentConfig& cfg, const RunResult& result) {
  using nlohmann::ordered_json;
  const double B = bound_capacity(cfg);
  const BoundResult bound =
      summary_bound(cfg.variant, cfg.instance.gamma, B, bound_sparsity(cfg));

  ordered_json doc;
  doc["variant"] = variant_name(cfg.variant);
  doc["oracle"] = oracle_name(cfg.oracle);
  doc["gamma"] = cfg.instance.gamma;
  doc["B"] = B;
  doc["d"] = cfg.instance.constraints ? sparsity(*cfg.instance.constraints) : 0;
  doc["n"] = cfg.instance.n();
  doc["trials"] = result.agg.trials;
  doc["seed"] = cfg.seed;
  doc["alpha"] = cfg.params.alpha;
  if (cfg.variant == Variant::packing) {
    doc["epsilon"] = result.epsilon_used;
    doc["epsilon_clamped"] = result.epsilon_clamped;
  } else {
    doc["epsilon"] = nullptr;
  }
  doc["mean_alg"] = result.agg.mean_alg;
  doc["mean_opt"] = result.agg.mean_opt;
  doc["stderr_alg"] = result.agg.stderr_alg;
  doc["stderr_opt"] = result.agg.stderr_opt;
  doc["ratio"] = result.agg.ratio;
  doc["mean_trial_ratio"] = result.agg.mean_trial_ratio;
  doc["ci_low"] = result.agg.ci_low;
  doc["ci_high"] = result.agg.ci_high;
  doc["bound"] = bound.value;
  doc["bound_flags"] = bound.flags;
  if (bound.epsilon_term) doc["bound_epsilon_term"] = *bound.epsilon_term;
  doc["invariant_violations"] = result.invariant_violations;
  return doc.dump(2) + "\n";
}

std::string trace_csv(const AlgorithmTrace& trace) {
  std::string out = "item_id,t,tentative,feasible,selected,aux_value\n";
  for (const TraceRecord& rec : trace.records) {
    out += std::to_string(rec.item);
    out += ',';
    out += format_double(rec.t);
    out += ',';
    out += rec.tentative ? '1' : '0';
    out += ',';
    out += rec.feasible ? '1' : '0';
    out += ',';
    out += rec.selected ? '1' : '0';
    out += ',';
    out += format_double(rec.aux);
    out += '\n';
  }
  return out;
}

std::string block_csv(const std::vector<BlockRow>& rows) {
  std::string out =
      "block,t_lo,t_hi,tentative,tentative_feasible,ratio,bound,ramp_regime_ok\n";
  for (const BlockRow& row : rows) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%d,", row.block);
    out += buf;
    out += format_double(row.t_lo);
    out += ',';
    out += format_double(row.t_hi);
    out += ',';
    std::snprintf(buf, sizeof(buf), "%" PRId64 ",%" PRId64 ",", row.tentative,
                  row.tentative_feasible);
    out += buf;
    out += format_double(row.ratio);
    out += ',';
    out += format_double(row.bound);
    out += ',';
    out += row.ramp_regime_ok ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string walk_csv(const WalkStats& stats) {
  std::string out = "trial,window_sum,max_term,boundary_term,q,bound\n";
  for (const WalkTrialRow& row : stats.rows) {
    char head[32];
    std::snprintf(head, sizeof(head), "%" PRId64 ",", row.trial);
    out += head;
    out += format_double(row.window_sum);
    out += ',';
    out += format_double(row.max_term);
    out += ',';
    out += format_double(row.boundary_term);
    out += ',';
    out += format_double(row.q);
    out += ',';
    out += format_double(stats.bound);
    out += '\n';
  }
  return out;
}

std::string violation_csv(const ViolationStats& stats) {
  std::string out = "constraint,checks,violations,rate,stderr,bound\n";
  for (const ViolationRow& row : stats.rows) {
    char head[64];
    std::snprintf(head, sizeof(head), "%d,%" PRId64 ",%" PRId64 ",", row.row,
                  row.checks, row.violations);
    out += head;
    out += format_double(row.rate);
    out += ',';
    out += format_double(row.stderr_rate);
    out += ',';
    out += format_double(row.bound);
    out += '\n';
  }
  return out;
}

}  // namespace tempsec
