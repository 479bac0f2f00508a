#include "tempsec/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tempsec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void validate_lp(const PackingLP& lp) {
  const std::size_t k = lp.objective.size();
  if (lp.rows.size() != lp.capacities.size()) bad("lp: rows/capacities size mismatch");
  for (double v : lp.objective)
    if (!(v >= 0.0) || !std::isfinite(v)) bad("lp: objective must be nonnegative");
  for (const auto& row : lp.rows) {
    if (row.size() != k) bad("lp: row length mismatch");
    for (double a : row)
      if (!(a >= 0.0) || !std::isfinite(a)) bad("lp: coefficients must be nonnegative");
  }
  for (double b : lp.capacities)
    if (!(b >= 0.0) || !std::isfinite(b)) bad("lp: capacities must be nonnegative");
}

void classify(FractionalSolution& sol, double tol) {
  sol.ones.clear();
  sol.fractional.clear();
  for (std::size_t j = 0; j < sol.x.size(); ++j) {
    if (sol.x[j] >= 1.0 - tol) {
      sol.x[j] = 1.0;
      sol.ones.push_back(static_cast<std::int32_t>(j));
    } else if (sol.x[j] <= tol) {
      sol.x[j] = 0.0;
    } else {
      sol.fractional.push_back(static_cast<std::int32_t>(j));
    }
  }
}

// Density order shared by every greedy in the artifact: value/weight
// descending, ties by index ascending.  Cross-multiplied to dodge division.
std::vector<std::int32_t> density_order(const std::vector<double>& values,
                                        const std::vector<double>& weights) {
  std::vector<std::int32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    const double lhs = values[a] * weights[b];
    const double rhs = values[b] * weights[a];
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  return order;
}

FractionalSolution solve_single_row(const PackingLP& lp, double tol) {
  const std::size_t k = lp.objective.size();
  const std::vector<double>& row = lp.rows[0];
  FractionalSolution sol;
  sol.x.assign(k, 0.0);
  std::vector<double> values, weights;
  std::vector<std::int32_t> ids;
  for (std::size_t j = 0; j < k; ++j) {
    if (row[j] > 0.0) {
      values.push_back(lp.objective[j]);
      weights.push_back(row[j]);
      ids.push_back(static_cast<std::int32_t>(j));
    } else if (lp.objective[j] > 0.0) {
      sol.x[j] = 1.0;  // free rider: no consumption, positive value
    }
  }
  FractionalSolution inner = fractional_knapsack(values, weights, lp.capacities[0]);
  for (std::size_t i = 0; i < ids.size(); ++i) sol.x[ids[i]] = inner.x[i];
  sol.value = 0.0;
  for (std::size_t j = 0; j < k; ++j) sol.value += lp.objective[j] * sol.x[j];
  classify(sol, tol);
  return sol;
}

class BoundedSimplex {
 public:
  BoundedSimplex(const PackingLP& lp, double tol)
      : lp_(lp),
        tol_(tol),
        k_(static_cast<std::int32_t>(lp.objective.size())),
        m_(static_cast<std::int32_t>(lp.rows.size())) {}

  FractionalSolution solve() {
    const std::int32_t total = k_ + m_;
    status_.assign(total, AT_LOWER);
    basis_.resize(m_);
    binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
    xb_ = lp_.capacities;
    for (std::int32_t i = 0; i < m_; ++i) {
      basis_[i] = k_ + i;
      status_[k_ + i] = BASIC;
      binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
    }

    const std::int64_t iter_cap = 200LL * (k_ + m_) + 2000;
    std::int64_t degenerate_streak = 0;
    bool bland = false;
    std::vector<double> y(m_), w(m_);

    for (std::int64_t iter = 0; iter < iter_cap; ++iter) {
      if (iter > 0 && iter % 128 == 0) refresh_basics();
      compute_duals(y);
      const std::int32_t e = pick_entering(y, bland);
      if (e < 0) {
        refresh_basics();
        return extract();
      }
      column_through_binv(e, w);
      const double sigma = status_[e] == AT_LOWER ? 1.0 : -1.0;

      double t = e < k_ ? 1.0 : kInf;  // entering's own span
      std::int32_t leave_row = -1;
      Status leave_status = AT_LOWER;
      for (std::int32_t r = 0; r < m_; ++r) {
        const double delta = sigma * w[r];
        double tr = kInf;
        Status st = AT_LOWER;
        if (delta > tol_) {
          tr = std::max(0.0, xb_[r]) / delta;
          st = AT_LOWER;
        } else if (delta < -tol_) {
          const double ub = basis_[r] < k_ ? 1.0 : kInf;
          if (ub < kInf) {
            tr = std::max(0.0, ub - xb_[r]) / (-delta);
            st = AT_UPPER;
          }
        }
        if (tr < t - 1e-12 ||
            (tr < t + 1e-12 && leave_row >= 0 && basis_[r] < basis_[leave_row])) {
          t = tr;
          leave_row = r;
          leave_status = st;
        }
      }
      if (t == kInf)
        throw std::runtime_error("solve_packing_lp: unbounded direction");

      if (t <= tol_)
        ++degenerate_streak;
      else
        degenerate_streak = 0;
      if (degenerate_streak > 2LL * (k_ + m_) + 64) bland = true;

      for (std::int32_t r = 0; r < m_; ++r) xb_[r] -= t * sigma * w[r];
      const double enter_value = (status_[e] == AT_LOWER ? 0.0 : 1.0) + sigma * t;

      if (leave_row < 0) {
        status_[e] = status_[e] == AT_LOWER ? AT_UPPER : AT_LOWER;  // bound flip
        continue;
      }
      status_[basis_[leave_row]] = leave_status;
      basis_[leave_row] = e;
      status_[e] = BASIC;
      xb_[leave_row] = enter_value;
      pivot_binv(leave_row, w);
    }
    throw std::runtime_error("solve_packing_lp: iteration limit exceeded");
  }

 private:
  enum Status : std::uint8_t { AT_LOWER, AT_UPPER, BASIC };

  double col_entry(std::int32_t var, std::int32_t row) const {
    return var < k_ ? lp_.rows[row][var] : (var - k_ == row ? 1.0 : 0.0);
  }

  void compute_duals(std::vector<double>& y) const {
    for (std::int32_t i = 0; i < m_; ++i) {
      double s = 0.0;
      for (std::int32_t r = 0; r < m_; ++r) {
        const std::int32_t v = basis_[r];
        if (v < k_) s += lp_.objective[v] * binv_[static_cast<std::size_t>(r) * m_ + i];
      }
      y[i] = s;
    }
  }

  double reduced_cost(std::int32_t var, const std::vector<double>& y) const {
    double d = var < k_ ? lp_.objective[var] : 0.0;
    if (var < k_) {
      for (std::int32_t i = 0; i < m_; ++i) d -= y[i] * lp_.rows[i][var];
    } else {
      d -= y[var - k_];
    }
    return d;
  }

  std::int32_t pick_entering(const std::vector<double>& y, bool bland) const {
    std::int32_t best = -1;
    double best_score = tol_;
    for (std::int32_t v = 0; v < k_ + m_; ++v) {
      if (status_[v] == BASIC) continue;
      const double d = reduced_cost(v, y);
      double score = 0.0;
      if (status_[v] == AT_LOWER && d > tol_) score = d;
      if (status_[v] == AT_UPPER && d < -tol_) score = -d;
      if (score <= 0.0) continue;
      if (bland) return v;
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    return best;
  }

  void column_through_binv(std::int32_t var, std::vector<double>& w) const {
    for (std::int32_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::int32_t i = 0; i < m_; ++i)
        s += binv_[static_cast<std::size_t>(r) * m_ + i] * col_entry(var, i);
      w[r] = s;
    }
  }

  void pivot_binv(std::int32_t lr, const std::vector<double>& w) {
    const double piv = w[lr];
    double* lrow = &binv_[static_cast<std::size_t>(lr) * m_];
    for (std::int32_t i = 0; i < m_; ++i) lrow[i] /= piv;
    for (std::int32_t r = 0; r < m_; ++r) {
      if (r == lr || w[r] == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(r) * m_];
      for (std::int32_t i = 0; i < m_; ++i) row[i] -= w[r] * lrow[i];
    }
  }

  // Recomputes basic values from scratch: xB = Binv (b - sum of at-upper cols).
  void refresh_basics() {
    std::vector<double> rhs = lp_.capacities;
    for (std::int32_t j = 0; j < k_; ++j)
      if (status_[j] == AT_UPPER)
        for (std::int32_t i = 0; i < m_; ++i) rhs[i] -= lp_.rows[i][j];
    for (std::int32_t r = 0; r < m_; ++r) {
      double s = 0.0;
      for (std::int32_t i = 0; i < m_; ++i)
        s += binv_[static_cast<std::size_t>(r) * m_ + i] * rhs[i];
      xb_[r] = s;
    }
  }

  FractionalSolution extract() const {
    FractionalSolution sol;
    sol.x.assign(k_, 0.0);
    for (std::int32_t j = 0; j < k_; ++j)
      if (status_[j] == AT_UPPER) sol.x[j] = 1.0;
    for (std::int32_t r = 0; r < m_; ++r)
      if (basis_[r] < k_) sol.x[basis_[r]] = std::clamp(xb_[r], 0.0, 1.0);
    sol.value = 0.0;
    for (std::int32_t j = 0; j < k_; ++j) sol.value += lp_.objective[j] * sol.x[j];
    // Defensive: a structurally infeasible answer means the solver broke.
    for (std::int32_t i = 0; i < m_; ++i) {
      double load = 0.0;
      for (std::int32_t j = 0; j < k_; ++j) load += lp_.rows[i][j] * sol.x[j];
      if (load > lp_.capacities[i] + 1e-6 * std::max(1.0, lp_.capacities[i]))
        throw std::runtime_error("solve_packing_lp: infeasible basis at exit");
    }
    return sol;
  }

  const PackingLP& lp_;
  const double tol_;
  const std::int32_t k_, m_;
  std::vector<Status> status_;
  std::vector<std::int32_t> basis_;
  std::vector<double> binv_;
  std::vector<double> xb_;
};

}  // namespace

FractionalSolution solve_packing_lp(const PackingLP& lp, double tol,
                                    const FractionalSolution* warm) {
  (void)warm;  // reserved for a warm-start path; re-solves are cheap so far
  validate_lp(lp);
  const std::size_t k = lp.objective.size();
  if (lp.rows.empty()) {
    FractionalSolution sol;
    sol.x.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j)
      if (lp.objective[j] > 0.0) sol.x[j] = 1.0;
    sol.value = std::inner_product(lp.objective.begin(), lp.objective.end(),
                                   sol.x.begin(), 0.0);
    classify(sol, tol);
    return sol;
  }
  if (lp.rows.size() == 1) return solve_single_row(lp, tol);
  FractionalSolution sol = BoundedSimplex(lp, tol).solve();
  classify(sol, tol);
  return sol;
}

double lp_value_by_vertex_enumeration(const PackingLP& lp, double tol) {
  validate_lp(lp);
  const std::int32_t k = static_cast<std::int32_t>(lp.objective.size());
  const std::int32_t m = static_cast<std::int32_t>(lp.rows.size());
  if (k > 16) bad("vertex enumeration: too many variables");

  const auto feasible_value = [&](const std::vector<double>& x, double* value) {
    for (std::int32_t j = 0; j < k; ++j)
      if (x[j] < -1e-9 || x[j] > 1.0 + 1e-9) return false;
    for (std::int32_t i = 0; i < m; ++i) {
      double load = 0.0;
      for (std::int32_t j = 0; j < k; ++j) load += lp.rows[i][j] * x[j];
      if (load > lp.capacities[i] + tol * std::max(1.0, lp.capacities[i]) + 1e-9)
        return false;
    }
    *value = 0.0;
    for (std::int32_t j = 0; j < k; ++j) *value += lp.objective[j] * x[j];
    return true;
  };

  double best = 0.0;  // x = 0 is always feasible
  std::vector<double> x(k);
  std::vector<std::int32_t> frac, rows_sel;
  std::vector<double> mat, rhs;

  for (std::uint32_t fmask = 0; fmask < (1u << k); ++fmask) {
    const std::int32_t f = __builtin_popcount(fmask);
    if (f > m) continue;
    frac.clear();
    std::uint32_t rest = 0;
    for (std::int32_t j = 0; j < k; ++j) {
      if (fmask & (1u << j))
        frac.push_back(j);
      else
        rest |= 1u << j;
    }
    // Walk every 0/1 assignment of the non-fractional coordinates.
    std::uint32_t sub = rest;
    while (true) {
      for (std::int32_t j = 0; j < k; ++j)
        x[j] = (sub & (1u << j)) ? 1.0 : 0.0;
      if (f == 0) {
        double value;
        if (feasible_value(x, &value)) best = std::max(best, value);
      } else {
        for (std::uint32_t rmask = 0; rmask < (1u << m); ++rmask) {
          if (__builtin_popcount(rmask) != f) continue;
          rows_sel.clear();
          for (std::int32_t i = 0; i < m; ++i)
            if (rmask & (1u << i)) rows_sel.push_back(i);
          // Solve A_RF xF = b_R - A_R,fixed x_fixed.
          mat.assign(static_cast<std::size_t>(f) * f, 0.0);
          rhs.assign(f, 0.0);
          for (std::int32_t a = 0; a < f; ++a) {
            const std::int32_t i = rows_sel[a];
            double r = lp.capacities[i];
            for (std::int32_t j = 0; j < k; ++j)
              if (!(fmask & (1u << j))) r -= lp.rows[i][j] * x[j];
            rhs[a] = r;
            for (std::int32_t b = 0; b < f; ++b)
              mat[static_cast<std::size_t>(a) * f + b] = lp.rows[i][frac[b]];
          }
          // Gaussian elimination with partial pivoting; skip singular bases.
          bool singular = false;
          for (std::int32_t col = 0; col < f && !singular; ++col) {
            std::int32_t piv = col;
            for (std::int32_t r = col + 1; r < f; ++r)
              if (std::abs(mat[static_cast<std::size_t>(r) * f + col]) >
                  std::abs(mat[static_cast<std::size_t>(piv) * f + col]))
                piv = r;
            if (std::abs(mat[static_cast<std::size_t>(piv) * f + col]) < 1e-11) {
              singular = true;
              break;
            }
            if (piv != col) {
              for (std::int32_t c = 0; c < f; ++c)
                std::swap(mat[static_cast<std::size_t>(piv) * f + c],
                          mat[static_cast<std::size_t>(col) * f + c]);
              std::swap(rhs[piv], rhs[col]);
            }
            for (std::int32_t r = col + 1; r < f; ++r) {
              const double factor = mat[static_cast<std::size_t>(r) * f + col] /
                                    mat[static_cast<std::size_t>(col) * f + col];
              if (factor == 0.0) continue;
              for (std::int32_t c = col; c < f; ++c)
                mat[static_cast<std::size_t>(r) * f + c] -=
                    factor * mat[static_cast<std::size_t>(col) * f + c];
              rhs[r] -= factor * rhs[col];
            }
          }
          if (singular) continue;
          for (std::int32_t r = f - 1; r >= 0; --r) {
            double s = rhs[r];
            for (std::int32_t c = r + 1; c < f; ++c)
              s -= mat[static_cast<std::size_t>(r) * f + c] * x[frac[c]];
            x[frac[r]] = s / mat[static_cast<std::size_t>(r) * f + r];
          }
          double value;
          if (feasible_value(x, &value)) best = std::max(best, value);
        }
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
  }
  return best;
}

FractionalSolution fractional_knapsack(const std::vector<double>& values,
                                       const std::vector<double>& weights,
                                       double budget) {
  if (values.size() != weights.size()) bad("knapsack: values/weights size mismatch");
  if (!(budget >= 0.0) || !std::isfinite(budget)) bad("knapsack: budget must be nonnegative");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) bad("knapsack: weights must be positive");
  for (double v : values)
    if (!(v >= 0.0) || !std::isfinite(v)) bad("knapsack: values must be nonnegative");

  FractionalSolution sol;
  sol.x.assign(values.size(), 0.0);
  const std::vector<std::int32_t> order = density_order(values, weights);
  double used = 0.0;
  for (std::int32_t idx : order) {
    const double remaining = budget - used;
    if (remaining <= 0.0) break;
    if (weights[idx] <= remaining) {
      sol.x[idx] = 1.0;
      sol.ones.push_back(idx);
      sol.value += values[idx];
      used += weights[idx];
    } else {
      const double frac = remaining / weights[idx];
      sol.x[idx] = frac;
      sol.fractional.push_back(idx);
      sol.value += values[idx] * frac;
      break;
    }
  }
  std::sort(sol.ones.begin(), sol.ones.end());
  return sol;
}

std::vector<std::int32_t> greedy_round_up(const std::vector<Item>& pool,
                                          double target) {
  if (!(target >= 0.0) || !std::isfinite(target)) bad("greedy_round_up: bad target");
  std::vector<double> values(pool.size()), weights(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!(pool[i].duration > 0.0)) bad("greedy_round_up: durations must be positive");
    values[i] = pool[i].value;
    weights[i] = pool[i].duration;
  }
  std::vector<std::int32_t> prefix;
  if (target == 0.0) return prefix;
  const std::vector<std::int32_t> order = density_order(values, weights);
  double covered = 0.0;
  for (std::int32_t idx : order) {
    prefix.push_back(pool[idx].id);
    covered += weights[idx];
    if (covered >= target) return prefix;
  }
  return prefix;  // whole pool falls short of the target
}

bool randomized_round(double x, Xoshiro256pp& rng, double tol) {
  if (x < -tol || x > 1.0 + tol) bad("randomized_round: probability outside [0, 1]");
  return rng.uniform01() < std::clamp(x, 0.0, 1.0);
}

}  // namespace tempsec
