#include "tempsec/arrivals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tempsec {

namespace {

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

double interp(const std::vector<std::pair<double, double>>& knots, double u) {
  // knots strictly increasing in .first; u within [first, last].
  auto it = std::upper_bound(
      knots.begin(), knots.end(), u,
      [](double lhs, const std::pair<double, double>& k) { return lhs < k.first; });
  if (it == knots.begin()) return knots.front().second;
  if (it == knots.end()) return knots.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (u - lo.first) / (hi.first - lo.first);
  return lo.second + w * (hi.second - lo.second);
}

}  // namespace

ArrivalDistribution ArrivalDistribution::uniform() {
  ArrivalDistribution d;
  d.uniform_ = true;
  d.table_ = {{0.0, 0.0}, {1.0, 1.0}};
  return d;
}

ArrivalDistribution ArrivalDistribution::general(
    std::vector<std::pair<double, double>> inverse_cdf) {
  if (inverse_cdf.size() < 2) bad("arrivals: inverse_cdf needs at least two knots");
  if (inverse_cdf.front() != std::pair<double, double>{0.0, 0.0} ||
      inverse_cdf.back() != std::pair<double, double>{1.0, 1.0})
    bad("arrivals: inverse_cdf must start at (0,0) and end at (1,1)");
  for (std::size_t i = 1; i < inverse_cdf.size(); ++i) {
    if (!(inverse_cdf[i].first > inverse_cdf[i - 1].first) ||
        !(inverse_cdf[i].second > inverse_cdf[i - 1].second))
      bad("arrivals: inverse_cdf knots must be strictly increasing in both coordinates");
  }
  ArrivalDistribution d;
  d.uniform_ = false;
  d.table_ = std::move(inverse_cdf);
  return d;
}

double ArrivalDistribution::quantile(double u) const {
  if (u < 0.0 || u > 1.0) bad("arrivals: quantile argument outside [0, 1]");
  if (uniform_) return u;
  return interp(table_, u);
}

double ArrivalDistribution::cdf(double x) const {
  if (x < 0.0 || x > 1.0) bad("arrivals: cdf argument outside [0, 1]");
  if (uniform_) return x;
  std::vector<std::pair<double, double>> swapped(table_.size());
  std::transform(table_.begin(), table_.end(), swapped.begin(),
                 [](const auto& k) { return std::pair<double, double>{k.second, k.first}; });
  return interp(swapped, x);
}

ArrivalRealization sample_arrivals(std::size_t n, const ArrivalDistribution& dist,
                                   Xoshiro256pp& rng) {
  ArrivalRealization out;
  out.times.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.times[j] = dist.quantile(rng.uniform01());
  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::sort(out.order.begin(), out.order.end(),
            [&](std::int32_t a, std::int32_t b) {
              if (out.times[a] != out.times[b]) return out.times[a] < out.times[b];
              return a < b;
            });
  return out;
}

ArrivalRealization sample_arrivals(std::size_t n, const ArrivalDistribution& dist,
                                   std::uint64_t seed) {
  Xoshiro256pp rng(seed);
  return sample_arrivals(n, dist, rng);
}

double quantile_gamma_bound(const ArrivalDistribution& dist, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) bad("arrivals: alpha outside (0, 1]");
  if (alpha == 1.0) return 1.0;
  if (dist.is_uniform()) return alpha;
  // F is piecewise linear, so theta -> F(theta + alpha) - F(theta) is too;
  // its sup sits at a kink: theta = x_i or theta = x_i - alpha.
  std::vector<double> candidates{0.0, 1.0 - alpha};
  for (const auto& [u, x] : dist.table()) {
    (void)u;
    candidates.push_back(x);
    candidates.push_back(x - alpha);
  }
  double best = 0.0;
  for (double theta : candidates) {
    if (theta < 0.0 || theta > 1.0 - alpha) continue;
    best = std::max(best, dist.cdf(theta + alpha) - dist.cdf(theta));
  }
  return best;
}

}  // namespace tempsec
