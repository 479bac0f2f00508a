#include "tempsec/online.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tempsec/lp.hpp"

namespace tempsec {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

/// Prefix sums over global ranks; arrivals flip one slot at a time.
class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : n_(n), tree_(n + 1, 0.0) {
    top_ = 1;
    while (top_ * 2 <= n_) top_ *= 2;
  }

  void add(std::size_t rank, double v) {
    for (std::size_t i = rank + 1; i <= n_; i += i & (~i + 1)) tree_[i] += v;
  }

  // Sum over ranks [0, rank]; rank == npos-like huge is rejected by caller.
  double prefix(std::size_t rank) const {
    double s = 0.0;
    for (std::size_t i = rank + 1; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

  // Largest p such that the first p slots sum strictly below target.
  std::size_t lower_position(double target) const {
    std::size_t pos = 0;
    double rem = target;
    for (std::size_t step = top_; step > 0; step >>= 1) {
      if (pos + step <= n_ && tree_[pos + step] < rem) {
        pos += step;
        rem -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::size_t n_;
  std::size_t top_;
  std::vector<double> tree_;
};

void check_common(const Instance& inst, const ArrivalRealization& arr) {
  validate_instance(inst);
  if (arr.times.size() != inst.n() || arr.order.size() != inst.n())
    bad("online: realization size mismatch");
}

void check_uniform_durations(const Instance& inst) {
  for (const Item& it : inst.items)
    if (std::abs(it.duration - inst.gamma) > 1e-12)
      bad("online: this variant needs all durations equal to gamma");
}

void check_params(const AlgorithmParams& params) {
  if (!(params.alpha > 0.0) || params.alpha > 1.0)
    bad("online: alpha outside (0, 1]");
  if (params.epsilon && (*params.epsilon < 0.0 || *params.epsilon > 0.5))
    bad("online: epsilon outside [0, 1/2]");
}

// Global ranks under (key desc, id asc); restriction to any arrived subset
// keeps the same relative order, which is what makes one-slot Fenwick
// updates equivalent to re-running the greedy on the whole pool.
std::vector<std::size_t> ranks_by_value(const Instance& inst) {
  std::vector<std::int32_t> ids(inst.n());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](std::int32_t a, std::int32_t b) {
    if (inst.items[a].value != inst.items[b].value)
      return inst.items[a].value > inst.items[b].value;
    return a < b;
  });
  std::vector<std::size_t> rank(inst.n());
  for (std::size_t r = 0; r < ids.size(); ++r) rank[ids[r]] = r;
  return rank;
}

std::vector<std::size_t> ranks_by_density(const Instance& inst) {
  std::vector<std::int32_t> ids(inst.n());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](std::int32_t a, std::int32_t b) {
    const double lhs = inst.items[a].value * inst.items[b].duration;
    const double rhs = inst.items[b].value * inst.items[a].duration;
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  std::vector<std::size_t> rank(inst.n());
  for (std::size_t r = 0; r < ids.size(); ++r) rank[ids[r]] = r;
  return rank;
}

}  // namespace

Variant variant_from_string(const std::string& s) {
  if (s == "cardinality") return Variant::cardinality;
  if (s == "packing") return Variant::packing;
  if (s == "lengths") return Variant::lengths;
  bad("unknown variant '" + s + "'");
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::cardinality: return "cardinality";
    case Variant::packing: return "packing";
    case Variant::lengths: return "lengths";
  }
  return "?";
}

AlgorithmTrace run_scaling_cardinality(const Instance& inst,
                                       const ArrivalRealization& arr,
                                       const AlgorithmParams& params) {
  check_common(inst, arr);
  check_params(params);
  check_uniform_durations(inst);
  require_integral_capacity(inst);
  const double B = inst.capacity;
  const double gamma = inst.gamma;

  const std::vector<std::size_t> rank = ranks_by_value(inst);
  Fenwick arrived(inst.n());
  ScheduleState state(inst, /*packing_rows=*/false);

  AlgorithmTrace trace;
  trace.records.reserve(inst.n());
  std::int64_t arrived_count = 0;
  for (std::int32_t j : arr.order) {
    const double t = arr.times[j];
    arrived.add(rank[j], 1.0);
    ++arrived_count;

    const double quota = std::floor(t * B / gamma);
    const std::int64_t better =
        rank[j] == 0 ? 0 : static_cast<std::int64_t>(arrived.prefix(rank[j] - 1) + 0.5);

    TraceRecord rec;
    rec.item = j;
    rec.t = t;
    rec.tentative = static_cast<double>(better) < quota;
    rec.aux = std::min(static_cast<double>(arrived_count), quota);
    state.advance(t);
    rec.feasible = state.fits(inst.items[j]);
    rec.selected = rec.tentative && rec.feasible;
    if (rec.selected) {
      state.commit(inst.items[j], t);
      trace.selections.emplace_back(j, t);
      trace.alg_value += inst.items[j].value;
    }
    trace.records.push_back(rec);
  }
  return trace;
}

AlgorithmTrace run_scaling_lengths(const Instance& inst,
                                   const ArrivalRealization& arr,
                                   const AlgorithmParams& params) {
  check_common(inst, arr);
  check_params(params);
  require_integral_capacity(inst);
  const double B = inst.capacity;

  const std::vector<std::size_t> rank = ranks_by_density(inst);
  Fenwick weights(inst.n());
  Fenwick counts(inst.n());
  ScheduleState state(inst, /*packing_rows=*/false);

  AlgorithmTrace trace;
  trace.records.reserve(inst.n());
  double arrived_total = 0.0;
  std::int64_t arrived_count = 0;
  for (std::int32_t j : arr.order) {
    const double t = arr.times[j];
    const double lambda = inst.items[j].duration;
    weights.add(rank[j], lambda);
    counts.add(rank[j], 1.0);
    arrived_total += lambda;
    ++arrived_count;

    const double target = params.alpha * t * B;
    const double better = rank[j] == 0 ? 0.0 : weights.prefix(rank[j] - 1);

    TraceRecord rec;
    rec.item = j;
    rec.t = t;
    rec.tentative = target > 0.0 && better < target;
    if (target <= 0.0) {
      rec.aux = 0.0;
    } else if (arrived_total < target) {
      rec.aux = static_cast<double>(arrived_count);
    } else {
      // Slot `below` is where the running duration first reaches the target;
      // the tentative set is every arrived item at or before that rank.
      const std::size_t below = weights.lower_position(target);
      rec.aux = below >= inst.n() ? static_cast<double>(arrived_count)
                                  : counts.prefix(below);
    }
    state.advance(t);
    rec.feasible = state.fits(inst.items[j]);
    rec.selected = rec.tentative && rec.feasible;
    if (rec.selected) {
      state.commit(inst.items[j], t);
      trace.selections.emplace_back(j, t);
      trace.alg_value += inst.items[j].value;
    }
    trace.records.push_back(rec);
  }
  return trace;
}

AlgorithmTrace run_scaling_packing(const Instance& inst,
                                   const ArrivalRealization& arr,
                                   const AlgorithmParams& params,
                                   Xoshiro256pp& rounding) {
  check_common(inst, arr);
  check_params(params);
  check_uniform_durations(inst);
  if (!inst.constraints) bad("online: packing variant needs constraints");
  const PackingConstraints& pc = *inst.constraints;
  {
    // The scaled-capacity rule assumes rows normalized to max coefficient 1.
    std::vector<double> mx(pc.rows(), 0.0);
    for (const auto& col : pc.columns)
      for (const auto& [row, coef] : col) mx[row] = std::max(mx[row], coef);
    for (double m : mx)
      if (std::abs(m - 1.0) > 1e-9)
        bad("online: packing constraints must be normalized (row max 1)");
  }

  double eps;
  bool clamped = false;
  if (params.epsilon) {
    eps = *params.epsilon;
  } else {
    const EpsilonDefault def =
        epsilon_default(std::max<std::int32_t>(1, sparsity(pc)), capacity_ratio(pc));
    eps = def.value;
    clamped = def.clamped;
  }
  (void)clamped;

  const double gamma = inst.gamma;
  ScheduleState state(inst, /*packing_rows=*/true);

  AlgorithmTrace trace;
  trace.records.reserve(inst.n());
  PackingLP lp;  // grows one column per arrival, j's coordinate is last
  lp.rows.assign(pc.rows(), {});
  lp.capacities.assign(pc.rows(), 0.0);

  for (std::int32_t j : arr.order) {
    const double t = arr.times[j];
    lp.objective.push_back(inst.items[j].value);
    for (auto& row : lp.rows) row.push_back(0.0);
    for (const auto& [row, coef] : pc.columns[j]) lp.rows[row].back() = coef;
    for (std::size_t i = 0; i < pc.rows(); ++i)
      lp.capacities[i] = t * (1.0 - eps) * pc.capacities[i] / gamma;

    const FractionalSolution sol = solve_packing_lp(lp);
    const double xj = sol.x.back();

    TraceRecord rec;
    rec.item = j;
    rec.t = t;
    rec.aux = sol.value;
    rec.tentative = randomized_round(xj, rounding);  // one draw per arrival
    state.advance(t);
    rec.feasible = state.fits(inst.items[j]);
    rec.selected = rec.tentative && rec.feasible;
    if (rec.selected) {
      state.commit(inst.items[j], t);
      trace.selections.emplace_back(j, t);
      trace.alg_value += inst.items[j].value;
    }
    trace.records.push_back(rec);
  }
  return trace;
}

AlgorithmTrace run_scaling_packing(const Instance& inst,
                                   const ArrivalRealization& arr,
                                   const AlgorithmParams& params) {
  Xoshiro256pp rounding(params.seed);
  return run_scaling_packing(inst, arr, params, rounding);
}

EpsilonDefault epsilon_default(double d, double B) {
  if (!(d >= 1.0)) bad("epsilon_default: d must be at least 1");
  if (!(B >= 1.0)) bad("epsilon_default: capacity ratio must be at least 1");
  const double raw = std::sqrt(6.0 * (1.0 + std::log(d) + std::log(B)) / B);
  if (raw > 0.5) return {0.5, true};
  return {raw, false};
}

std::int64_t verify_trace(const Instance& inst, Variant variant,
                          const AlgorithmTrace& trace) {
  std::int64_t violations = 0;
  double selected_sum = 0.0;
  std::size_t selected_count = 0;
  for (const TraceRecord& rec : trace.records) {
    if (rec.selected) {
      ++selected_count;
      selected_sum += inst.items[rec.item].value;
      if (!rec.tentative || !rec.feasible) ++violations;
    }
  }
  if (selected_count != trace.selections.size()) ++violations;
  if (std::abs(selected_sum - trace.alg_value) >
      1e-9 * std::max(1.0, std::abs(selected_sum)))
    ++violations;

  ScheduleState replay(inst, variant == Variant::packing);
  for (const auto& [item, start] : trace.selections) {
    if (start < replay.last_time()) {
      ++violations;  // corrupt ordering counts, it must not crash the check
      continue;
    }
    replay.advance(start);
    if (!replay.fits(inst.items[item])) {
      ++violations;
      continue;  // skip the offending commit, keep scanning
    }
    replay.commit(inst.items[item], start);
  }
  return violations;
}

}  // namespace tempsec
