#ifndef TEMPSEC_ARRIVALS_HPP
#define TEMPSEC_ARRIVALS_HPP

#include <cstdint>
#include <vector>

#include "tempsec/model.hpp"
#include "tempsec/rng.hpp"

namespace tempsec {

/// Arrival time distribution on [0, 1]: either exactly uniform or a
/// piecewise-linear inverse CDF table with endpoints (0,0) and (1,1) and
/// strictly increasing knots in both coordinates.
class ArrivalDistribution {
 public:
  static ArrivalDistribution uniform();
  static ArrivalDistribution general(
      std::vector<std::pair<double, double>> inverse_cdf);

  bool is_uniform() const { return uniform_; }

  /// Maps u in [0,1] through the inverse CDF.
  double quantile(double u) const;

  /// CDF value at x in [0,1] (inverse of quantile()).
  double cdf(double x) const;

  const std::vector<std::pair<double, double>>& table() const { return table_; }

 private:
  ArrivalDistribution() = default;
  bool uniform_ = true;
  std::vector<std::pair<double, double>> table_;
};

/// n i.i.d. arrival times, plus the processing order sorted by (time, id).
ArrivalRealization sample_arrivals(std::size_t n, const ArrivalDistribution& dist,
                                   Xoshiro256pp& rng);
ArrivalRealization sample_arrivals(std::size_t n, const ArrivalDistribution& dist,
                                   std::uint64_t seed);

/// sup over theta in [0, 1 - alpha] of F(theta + alpha) - F(theta): the
/// smallest gamma such that a window of quantile width alpha always covers
/// at most gamma probability mass.  Exact via kink enumeration.
double quantile_gamma_bound(const ArrivalDistribution& dist, double alpha);

}  // namespace tempsec

#endif
