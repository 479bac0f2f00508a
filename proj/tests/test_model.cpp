#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "tempsec/lp.hpp"
#include "tempsec/model.hpp"
#include "tempsec/rng.hpp"

using namespace tempsec;

namespace {

Instance tiny_instance() {
  Instance inst;
  inst.gamma = 0.5;
  inst.capacity = 1.0;
  inst.items = {{0, 3.0, 0.5}, {1, 2.0, 0.25}};
  return inst;
}

PackingConstraints random_constraints(Xoshiro256pp& rng, int n, int m) {
  PackingConstraints pc;
  pc.capacities.resize(m);
  for (int i = 0; i < m; ++i) pc.capacities[i] = 0.5 + rng.uniform01() * 4.0;
  pc.columns.resize(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m; ++i)
      if (rng.uniform01() < 0.7)
        pc.columns[j].emplace_back(i, 0.1 + rng.uniform01() * 3.0);
  // every row needs a positive coefficient somewhere
  for (int i = 0; i < m; ++i) pc.columns[0].emplace_back(i, 0.2 + rng.uniform01());
  return pc;
}

// LP optimum of max v.x st constraints, x in [0,1]^n; used to confirm
// normalization leaves the feasible set untouched.
double lp_opt(const PackingConstraints& pc, const std::vector<double>& values) {
  PackingLP lp;
  lp.objective = values;
  lp.capacities = pc.capacities;
  lp.rows.assign(pc.rows(), std::vector<double>(values.size(), 0.0));
  for (std::size_t j = 0; j < pc.columns.size(); ++j)
    for (const auto& [row, coef] : pc.columns[j]) lp.rows[row][j] += coef;
  return solve_packing_lp(lp).value;
}

}  // namespace

TEST_CASE("validate accepts a sane instance") {
  Instance inst = tiny_instance();
  CHECK_NOTHROW(validate_instance(inst));
}

TEST_CASE("validate rejects out-of-range fields") {
  Instance inst = tiny_instance();
  inst.gamma = 0.0;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
  inst = tiny_instance();
  inst.gamma = 1.5;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
  inst = tiny_instance();
  inst.capacity = 0.0;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
  inst = tiny_instance();
  inst.items[1].id = 5;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
  inst = tiny_instance();
  inst.items[0].value = -1.0;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
  inst = tiny_instance();
  inst.items[0].duration = 0.0;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
  inst = tiny_instance();
  inst.items[0].duration = 0.6;  // above gamma
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);
}

TEST_CASE("validate checks constraint shape") {
  Instance inst = tiny_instance();
  PackingConstraints pc;
  pc.capacities = {1.0};
  pc.columns = {{{0, 1.0}}};  // one column, two items
  inst.constraints = pc;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  pc.columns.push_back({{1, 1.0}});  // row index out of range
  inst.constraints = pc;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  pc.columns[1] = {{0, -0.5}};  // negative coefficient
  inst.constraints = pc;
  CHECK_THROWS_AS(validate_instance(inst), std::invalid_argument);

  pc.columns[1] = {{0, 0.5}};
  inst.constraints = pc;
  CHECK_NOTHROW(validate_instance(inst));
}

TEST_CASE("integral capacity gate") {
  Instance inst = tiny_instance();
  CHECK_NOTHROW(require_integral_capacity(inst));
  inst.capacity = 2.5;
  CHECK_THROWS_AS(require_integral_capacity(inst), std::invalid_argument);
  inst.capacity = 0.5;
  CHECK_THROWS_AS(require_integral_capacity(inst), std::invalid_argument);
}

TEST_CASE("json round trip preserves the instance") {
  Instance inst = tiny_instance();
  PackingConstraints pc;
  pc.capacities = {2.0, 3.0};
  pc.columns = {{{0, 1.0}, {1, 0.5}}, {{1, 2.0}}};
  inst.constraints = pc;

  Instance back = parse_instance_json(instance_to_json(inst));
  CHECK(back.gamma == inst.gamma);
  CHECK(back.capacity == inst.capacity);
  REQUIRE(back.n() == inst.n());
  for (std::size_t j = 0; j < inst.n(); ++j) {
    CHECK(back.items[j].value == inst.items[j].value);
    CHECK(back.items[j].duration == inst.items[j].duration);
  }
  REQUIRE(back.constraints.has_value());
  CHECK(back.constraints->capacities == pc.capacities);
  CHECK(back.constraints->columns == pc.columns);
}

TEST_CASE("json parser fills duration with gamma and rejects junk") {
  Instance inst = parse_instance_json(
      R"({"gamma": 0.25, "capacity": 2, "items": [{"value": 1.0}], "constraints": null})");
  CHECK(inst.items[0].duration == 0.25);

  CHECK_THROWS_AS(parse_instance_json(
                      R"({"gamma": 0.25, "capacity": 2, "items": [], "extra": 1})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(
                      R"({"gamma": 0.25, "capacity": 2, "items": [{"value": 1, "id": 0}]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance_json(R"({"gamma": 0.25, "items": []})"),
                  std::invalid_argument);
}

TEST_CASE("normalization makes row maxima one and keeps the optimum") {
  Xoshiro256pp rng(77);
  for (int rep = 0; rep < 40; ++rep) {
    const int n = 2 + static_cast<int>(rng.next() % 6);
    const int m = 1 + static_cast<int>(rng.next() % 3);
    PackingConstraints pc = random_constraints(rng, n, m);
    PackingConstraints norm = normalize_constraints(pc);

    std::vector<double> mx(norm.rows(), 0.0);
    for (const auto& col : norm.columns)
      for (const auto& [row, coef] : col) mx[row] = std::max(mx[row], coef);
    for (double v : mx) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> values(n);
    for (double& v : values) v = rng.uniform01();
    CHECK(lp_opt(pc, values) == doctest::Approx(lp_opt(norm, values)).epsilon(1e-9));
  }
}

TEST_CASE("normalization rejects an all-zero row") {
  PackingConstraints pc;
  pc.capacities = {1.0, 1.0};
  pc.columns = {{{0, 1.0}}, {{0, 2.0}}};
  CHECK_THROWS_AS(normalize_constraints(pc), std::invalid_argument);
}

TEST_CASE("capacity ratio and sparsity on a worked example") {
  PackingConstraints pc;
  pc.capacities = {4.0, 9.0};
  pc.columns = {{{0, 2.0}, {1, 3.0}}, {{1, 0.0}}, {{0, 1.0}}};
  CHECK(capacity_ratio(pc) == doctest::Approx(2.0));  // min(4/2, 9/3)
  CHECK(sparsity(pc) == 2);                           // zero coef does not count
  PackingConstraints norm = normalize_constraints(pc);
  CHECK(capacity_ratio(norm) == doctest::Approx(2.0));
  CHECK(norm.capacities[0] == doctest::Approx(2.0));
  CHECK(norm.capacities[1] == doctest::Approx(3.0));
}

TEST_CASE("schedule state counts active intervals against capacity") {
  Instance inst;
  inst.gamma = 0.5;
  inst.capacity = 2.0;
  inst.items = {{0, 1.0, 0.5}, {1, 1.0, 0.5}, {2, 1.0, 0.5}, {3, 1.0, 0.1}};

  ScheduleState st(inst, false);
  CHECK(st.fits(inst.items[0]));
  st.commit(inst.items[0], 0.0);
  st.commit(inst.items[1], 0.1);
  CHECK(st.active_count() == 2);
  CHECK_FALSE(is_feasible_now(st, 0.2, inst.items[2], inst));
  // item 0 occupies [0, 0.5); at exactly 0.5 it is gone
  CHECK(is_feasible_now(st, 0.5, inst.items[2], inst));
  st.commit(inst.items[2], 0.5);
  CHECK(st.active_count() == 2);
  CHECK_THROWS_AS(st.advance(0.4), std::invalid_argument);  // time reversal
  st.advance(0.95);
  CHECK(st.active_count() == 1);
  st.commit(inst.items[3], 0.95);
  CHECK(st.total_value() == doctest::Approx(4.0));
  REQUIRE(st.selections().size() == 4);
  CHECK(st.selections()[2].first == 2);
  CHECK(st.selections()[2].second == 0.5);
}

TEST_CASE("schedule state tracks packing row loads") {
  Instance inst;
  inst.gamma = 0.5;
  inst.capacity = 1.0;
  inst.items = {{0, 1.0, 0.5}, {1, 1.0, 0.5}, {2, 1.0, 0.5}};
  PackingConstraints pc;
  pc.capacities = {1.5};
  pc.columns = {{{0, 1.0}}, {{0, 1.0}}, {{0, 0.5}}};
  inst.constraints = pc;

  ScheduleState st(inst, true);
  st.commit(inst.items[0], 0.0);
  CHECK(st.row_load(0) == doctest::Approx(1.0));
  CHECK_FALSE(st.fits(inst.items[1]));  // 1 + 1 > 1.5
  CHECK(st.fits(inst.items[2]));        // 1 + 0.5 = 1.5 fits exactly
  st.commit(inst.items[2], 0.2);
  CHECK(st.row_load(0) == doctest::Approx(1.5));
  st.advance(0.5);  // item 0 expires
  CHECK(st.row_load(0) == doctest::Approx(0.5));
  CHECK(st.fits(inst.items[1]));
  CHECK_THROWS_AS(ScheduleState(tiny_instance(), true), std::invalid_argument);
}

TEST_CASE("commit refuses an infeasible item") {
  Instance inst;
  inst.gamma = 0.5;
  inst.capacity = 1.0;
  inst.items = {{0, 1.0, 0.5}, {1, 1.0, 0.5}};
  ScheduleState st(inst, false);
  st.commit(inst.items[0], 0.3);
  CHECK_THROWS_AS(st.commit(inst.items[1], 0.4), std::invalid_argument);
}

TEST_CASE("ceil_one_over snaps near-integer reciprocals") {
  CHECK(ceil_one_over(0.1) == 10);
  CHECK(ceil_one_over(0.2) == 5);
  CHECK(ceil_one_over(0.25) == 4);
  CHECK(ceil_one_over(0.3) == 4);   // 1/0.3 = 3.33..
  CHECK(ceil_one_over(1.0) == 1);
  CHECK(ceil_one_over(1e-4) == 10000);
  CHECK(ceil_one_over(2.0 / 3.0) == 2);
  CHECK_THROWS_AS(ceil_one_over(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ceil_one_over(1.5), std::invalid_argument);
}

TEST_CASE("is_feasible_now validates its time argument") {
  Instance inst = tiny_instance();
  ScheduleState st(inst, false);
  CHECK_THROWS_AS(is_feasible_now(st, -0.1, inst.items[0], inst),
                  std::invalid_argument);
  CHECK_THROWS_AS(is_feasible_now(st, 1.1, inst.items[0], inst),
                  std::invalid_argument);
  CHECK(is_feasible_now(st, 0.4, inst.items[0], inst));
  CHECK_THROWS_AS(is_feasible_now(st, 0.2, inst.items[0], inst),
                  std::invalid_argument);
}
