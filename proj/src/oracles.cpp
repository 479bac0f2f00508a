#include "tempsec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "tempsec/min_cost_flow.hpp"

namespace tempsec {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void check_realization(const Instance& inst, const ArrivalRealization& arr) {
  if (arr.times.size() != inst.n() || arr.order.size() != inst.n())
    bad("oracle: realization size mismatch");
  for (double t : arr.times)
    if (t < 0.0 || t > 1.0) bad("oracle: arrival time outside [0, 1]");
}

}  // namespace

OfflineResult opt_star_cardinality(const Instance& inst) {
  validate_instance(inst);
  require_integral_capacity(inst);
  const std::int64_t B = static_cast<std::int64_t>(inst.capacity);
  const std::int64_t slots = B * ceil_one_over(inst.gamma);
  const std::int64_t take =
      std::min<std::int64_t>(static_cast<std::int64_t>(inst.n()), slots);

  std::vector<std::int32_t> ids(inst.n());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&](std::int32_t a, std::int32_t b) {
    if (inst.items[a].value != inst.items[b].value)
      return inst.items[a].value > inst.items[b].value;
    return a < b;
  });

  OfflineResult res;
  res.method = OracleMethod::topk;
  for (std::int64_t i = 0; i < take; ++i) {
    res.selected.push_back(ids[i]);
    res.value += inst.items[ids[i]].value;
  }
  std::sort(res.selected.begin(), res.selected.end());
  return res;
}

OfflineResult opt_star_lengths(const Instance& inst) {
  validate_instance(inst);
  require_integral_capacity(inst);
  std::vector<double> values(inst.n()), weights(inst.n());
  for (std::size_t j = 0; j < inst.n(); ++j) {
    values[j] = inst.items[j].value;
    weights[j] = inst.items[j].duration;
  }
  const double budget = inst.capacity * (1.0 + inst.gamma);
  FractionalSolution sol = fractional_knapsack(values, weights, budget);
  OfflineResult res;
  res.method = OracleMethod::knapsack;
  res.value = sol.value;
  res.x = std::move(sol.x);
  res.selected = std::move(sol.ones);
  return res;
}

OfflineResult lp_relaxation_opt(const Instance& inst) {
  validate_instance(inst);
  if (!inst.constraints) bad("lp_relaxation_opt: instance has no constraints");
  const PackingConstraints& pc = *inst.constraints;
  const double scale = static_cast<double>(ceil_one_over(inst.gamma));

  PackingLP lp;
  lp.objective.resize(inst.n());
  for (std::size_t j = 0; j < inst.n(); ++j) lp.objective[j] = inst.items[j].value;
  lp.rows.assign(pc.rows(), std::vector<double>(inst.n(), 0.0));
  for (std::size_t j = 0; j < inst.n(); ++j)
    for (const auto& [row, coef] : pc.columns[j]) lp.rows[row][j] = coef;
  lp.capacities = pc.capacities;
  for (double& b : lp.capacities) b *= scale;

  FractionalSolution sol = solve_packing_lp(lp);
  OfflineResult res;
  res.method = OracleMethod::lp;
  res.value = sol.value;
  res.x = std::move(sol.x);
  return res;
}

OfflineResult opt_offline_exact(const Instance& inst,
                                const ArrivalRealization& arr) {
  validate_instance(inst);
  require_integral_capacity(inst);
  check_realization(inst, arr);
  const double B = inst.capacity;
  const std::size_t n = inst.n();

  OfflineResult res;
  res.method = OracleMethod::flow;
  if (n == 0) return res;

  // Event timeline; a selected item routes one unit across its interval.
  std::vector<double> events;
  events.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    events.push_back(arr.times[j]);
    events.push_back(arr.times[j] + inst.items[j].duration);
  }
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  const auto node_of = [&](double t) {
    return static_cast<std::int32_t>(
        std::lower_bound(events.begin(), events.end(), t) - events.begin());
  };

  const std::int32_t E = static_cast<std::int32_t>(events.size());
  MinCostFlow mcf(E);
  for (std::int32_t i = 0; i + 1 < E; ++i) mcf.add_edge(i, i + 1, B, 0.0);
  std::vector<std::int32_t> item_edges(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::int32_t u = node_of(arr.times[j]);
    const std::int32_t v = node_of(arr.times[j] + inst.items[j].duration);
    item_edges[j] = mcf.add_edge(u, v, 1.0, -inst.items[j].value);
  }
  const auto [flow, cost] = mcf.min_cost_flow(0, E - 1, B);
  (void)flow;
  res.value = -cost;
  for (std::size_t j = 0; j < n; ++j)
    if (mcf.flow_on(item_edges[j]) > 0.5)
      res.selected.push_back(static_cast<std::int32_t>(j));
  return res;
}

bool schedule_is_feasible(const Instance& inst, const ArrivalRealization& arr,
                          const std::vector<std::int32_t>& selected) {
  const std::int64_t B = static_cast<std::int64_t>(inst.capacity);
  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(selected.size());
  for (std::int32_t j : selected)
    intervals.emplace_back(arr.times[j], arr.times[j] + inst.items[j].duration);
  std::sort(intervals.begin(), intervals.end());
  // Half-open intervals: sweep starts, dropping ends <= current start.
  std::priority_queue<double, std::vector<double>, std::greater<>> ends;
  for (const auto& [s, e] : intervals) {
    while (!ends.empty() && ends.top() <= s) ends.pop();
    ends.push(e);
    if (static_cast<std::int64_t>(ends.size()) > B) return false;
  }
  return true;
}

OfflineResult opt_offline_brute(const Instance& inst,
                                const ArrivalRealization& arr) {
  validate_instance(inst);
  require_integral_capacity(inst);
  check_realization(inst, arr);
  const std::size_t n = inst.n();
  if (n > 20) bad("opt_offline_brute: n too large");

  OfflineResult res;
  res.method = OracleMethod::brute;
  std::vector<std::int32_t> subset;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double value = 0.0;
    subset.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (1u << j)) {
        subset.push_back(static_cast<std::int32_t>(j));
        value += inst.items[j].value;
      }
    if (value <= res.value && mask != 0) continue;
    if (schedule_is_feasible(inst, arr, subset)) {
      res.value = value;
      res.selected = subset;
    }
  }
  return res;
}

}  // namespace tempsec
