#ifndef TEMPSEC_ONLINE_HPP
#define TEMPSEC_ONLINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempsec/model.hpp"
#include "tempsec/rng.hpp"

namespace tempsec {

enum class Variant { cardinality, packing, lengths };

Variant variant_from_string(const std::string& s);
const char* variant_name(Variant v);

struct AlgorithmParams {
  double alpha = 0.5;                   // budget slope for the lengths variant
  std::optional<double> epsilon;        // packing safety margin, in [0, 1/2]
  std::uint64_t seed = 0;               // rounding stream when no rng is passed
};

struct TraceRecord {
  std::int32_t item = 0;
  double t = 0.0;
  bool tentative = false;
  bool feasible = false;
  bool selected = false;
  double aux = 0.0;  // tentative-set size, or LP value for packing
};

struct AlgorithmTrace {
  std::vector<TraceRecord> records;                        // arrival order
  std::vector<std::pair<std::int32_t, double>> selections; // (item, start)
  double alg_value = 0.0;
};

/// Threshold rule: item is tentative iff it ranks within the top
/// floor(t * B / gamma) arrived values (ties by id); selected iff also
/// fewer than B items are active at its arrival.
AlgorithmTrace run_scaling_cardinality(const Instance& inst,
                                       const ArrivalRealization& arr,
                                       const AlgorithmParams& params);

/// Scaled-LP rule: at each arrival solve the packing LP over everything
/// arrived with capacities t * (1 - eps) * b / gamma, round the arriving
/// coordinate, commit if the rows still fit.  Draws exactly one uniform
/// per arrival whatever the outcome.
AlgorithmTrace run_scaling_packing(const Instance& inst,
                                   const ArrivalRealization& arr,
                                   const AlgorithmParams& params,
                                   Xoshiro256pp& rounding);
AlgorithmTrace run_scaling_packing(const Instance& inst,
                                   const ArrivalRealization& arr,
                                   const AlgorithmParams& params);

/// Duration-aware rule: tentative iff the item joins the shortest
/// value/duration prefix covering alpha * t * B total duration.
AlgorithmTrace run_scaling_lengths(const Instance& inst,
                                   const ArrivalRealization& arr,
                                   const AlgorithmParams& params);

struct EpsilonDefault {
  double value = 0.0;
  bool clamped = false;  // raw value exceeded 1/2
};

/// sqrt(6 (1 + ln d + ln B) / B), clamped to 1/2.  d >= 1, B > 0.
EpsilonDefault epsilon_default(double d, double B);

/// Replays a trace against a fresh ScheduleState and recounts the value;
/// returns the number of violated invariants (0 when healthy):
/// selected-implies-tentative-and-feasible, capacity respected at every
/// commit, and the reported alg_value matching the selected sum.
std::int64_t verify_trace(const Instance& inst, Variant variant,
                          const AlgorithmTrace& trace);

}  // namespace tempsec

#endif
