#ifndef TEMPSEC_LP_HPP
#define TEMPSEC_LP_HPP

#include <cstdint>
#include <vector>

#include "tempsec/model.hpp"
#include "tempsec/rng.hpp"

namespace tempsec {

/// max v.x  s.t.  Ax <= b, 0 <= x <= 1, with A, b, v all nonnegative.
/// Rows are stored dense; always feasible at x = 0.
struct PackingLP {
  std::vector<double> objective;          // length k
  std::vector<std::vector<double>> rows;  // m rows of length k
  std::vector<double> capacities;         // length m
};

struct FractionalSolution {
  std::vector<double> x;
  double value = 0.0;
  std::vector<std::int32_t> ones;        // coordinates at 1
  std::vector<std::int32_t> fractional;  // coordinates strictly inside (0,1)
};

/// Bounded-variable simplex, Dantzig pricing with a Bland fallback once
/// degenerate pivots pile up.  Single-row problems go through the exact
/// greedy instead (same optimum, far cheaper at one solve per arrival).
/// `warm` is accepted for interface stability but not used yet.
/// Throws std::runtime_error if the iteration cap is hit.
FractionalSolution solve_packing_lp(const PackingLP& lp, double tol = 1e-9,
                                    const FractionalSolution* warm = nullptr);

/// Exhaustive basic-solution enumeration; independent check for the
/// simplex, practical up to ~8 variables and a handful of rows.
double lp_value_by_vertex_enumeration(const PackingLP& lp, double tol = 1e-9);

/// Greedy fill by value/weight (ties by index), final item fractional.
/// Weights must be positive, budget nonnegative.  `ones` holds the fully
/// included prefix.
FractionalSolution fractional_knapsack(const std::vector<double>& values,
                                       const std::vector<double>& weights,
                                       double budget);

/// Shortest prefix of the pool in (value/duration, id) order whose total
/// duration reaches `target`; the whole pool if it falls short, empty if
/// target is 0.  Returns item ids in prefix order.
std::vector<std::int32_t> greedy_round_up(const std::vector<Item>& pool,
                                          double target);

/// One Bernoulli(x) draw; x must lie in [0, 1] up to tol and is clamped.
bool randomized_round(double x, Xoshiro256pp& rng, double tol = 1e-9);

}  // namespace tempsec

#endif
