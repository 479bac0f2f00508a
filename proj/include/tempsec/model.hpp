#ifndef TEMPSEC_MODEL_HPP
#define TEMPSEC_MODEL_HPP

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

namespace tempsec {

struct Item {
  std::int32_t id = 0;
  double value = 0.0;
  double duration = 0.0;
};

/// Column-sparse packing constraints: column j lists (row, coefficient)
/// pairs for item j, all coefficients nonnegative.
struct PackingConstraints {
  std::vector<double> capacities;
  std::vector<std::vector<std::pair<std::int32_t, double>>> columns;

  std::size_t rows() const { return capacities.size(); }
};

struct Instance {
  double gamma = 0.0;
  double capacity = 0.0;
  std::vector<Item> items;
  std::optional<PackingConstraints> constraints;

  std::size_t n() const { return items.size(); }
};

/// Throws std::invalid_argument on malformed data: gamma outside (0, 1],
/// nonpositive values/capacity, duration outside (0, gamma], negative
/// coefficients, column/row indices out of range.
void validate_instance(const Instance& inst);

/// Requires integral capacity >= 1 (count-style capacity is never coerced).
void require_integral_capacity(const Instance& inst);

Instance load_instance_json(const std::string& path);
Instance parse_instance_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

/// Divides each row by its largest coefficient (capacities too), so every
/// row maximum becomes 1.  Rejects rows with no positive coefficient.
PackingConstraints normalize_constraints(const PackingConstraints& pc);

/// min_i b_i / max_j a_ij; equals min_i b_i once normalized.
double capacity_ratio(const PackingConstraints& pc);

/// Largest number of nonzero coefficients in any column (0 if all empty).
std::int32_t sparsity(const PackingConstraints& pc);

struct ArrivalRealization {
  std::vector<double> times;        // times[j] = arrival of item j
  std::vector<std::int32_t> order;  // item ids sorted by (time, id)
};

/// Commitments made so far plus which are still active.  Cardinality mode
/// counts active items against `capacity`; packing mode tracks per-row
/// consumption.  Intervals are half-open [tau, tau + duration), so an item
/// ending exactly when another starts does not conflict.
class ScheduleState {
 public:
  ScheduleState(const Instance& inst, bool packing_rows);

  /// Expires items with end <= t.  t must not move backwards.
  void advance(double t);

  bool fits(const Item& item) const;
  void commit(const Item& item, double t);

  std::int64_t active_count() const { return static_cast<std::int64_t>(active_.size()); }
  double row_load(std::size_t i) const { return row_load_[i]; }
  double last_time() const { return last_time_; }
  const std::vector<std::pair<std::int32_t, double>>& selections() const {
    return selections_;
  }
  double total_value() const { return total_value_; }

 private:
  const Instance* inst_;
  bool packing_rows_;
  double last_time_ = 0.0;
  double total_value_ = 0.0;
  std::vector<double> row_load_;
  std::vector<std::pair<std::int32_t, double>> selections_;  // (item, start)
  // min-heap of (end, item)
  std::priority_queue<std::pair<double, std::int32_t>,
                      std::vector<std::pair<double, std::int32_t>>,
                      std::greater<>>
      active_;
};

/// True iff committing `item` at time t keeps the schedule feasible.
/// t must lie in [0, 1] and not precede the state's last decision time.
bool is_feasible_now(ScheduleState& state, double t, const Item& item,
                     const Instance& inst);

/// ceil(1/gamma) with snapping, so gamma = 0.1 yields 10 and not 11.
std::int64_t ceil_one_over(double gamma);

}  // namespace tempsec

#endif
