#ifndef TEMPSEC_ORACLES_HPP
#define TEMPSEC_ORACLES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "tempsec/lp.hpp"
#include "tempsec/model.hpp"

namespace tempsec {

enum class OracleMethod { topk, knapsack, flow, brute, lp };

struct OfflineResult {
  double value = 0.0;
  std::vector<std::int32_t> selected;  // item ids (empty for fractional)
  std::vector<double> x;               // fractional vector when applicable
  OracleMethod method = OracleMethod::topk;
};

/// Sum of the top min(n, B * ceil(1/gamma)) values; upper-bounds any
/// schedule realization by realization.  Capacity must be integral.
OfflineResult opt_star_cardinality(const Instance& inst);

/// Fractional knapsack with duration weights and budget B * (1 + gamma).
OfflineResult opt_star_lengths(const Instance& inst);

/// Packing LP with capacities scaled by ceil(1/gamma); needs constraints.
OfflineResult lp_relaxation_opt(const Instance& inst);

/// Exact best schedule for one realization: at most B items active at any
/// instant, item j occupying [tau_j, tau_j + duration_j).  Reduces to
/// min-cost flow over the event timeline.
OfflineResult opt_offline_exact(const Instance& inst,
                                const ArrivalRealization& arr);

/// Exhaustive subset search, n <= 20; cross-check for the flow oracle.
OfflineResult opt_offline_brute(const Instance& inst,
                                const ArrivalRealization& arr);

/// True iff at most B items of `selected` overlap at any instant.
bool schedule_is_feasible(const Instance& inst, const ArrivalRealization& arr,
                          const std::vector<std::int32_t>& selected);

}  // namespace tempsec

#endif
