#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tempsec/arrivals.hpp"
#include "tempsec/lp.hpp"
#include "tempsec/online.hpp"
#include "tempsec/rng.hpp"

using namespace tempsec;

namespace {

Instance make_instance(std::vector<double> values, double gamma, double B,
                       std::vector<double> durations = {}) {
  Instance inst;
  inst.gamma = gamma;
  inst.capacity = B;
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double d = durations.empty() ? gamma : durations[j];
    inst.items.push_back({static_cast<std::int32_t>(j), values[j], d});
  }
  return inst;
}

ArrivalRealization fixed_times(std::vector<double> times) {
  ArrivalRealization arr;
  arr.times = std::move(times);
  std::vector<std::int32_t> order(arr.times.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<std::int32_t>(j);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return arr.times[a] != arr.times[b] ? arr.times[a] < arr.times[b] : a < b;
  });
  arr.order = std::move(order);
  return arr;
}

Instance random_cardinality_instance(Xoshiro256pp& rng, int n, double gamma,
                                     double B, bool force_ties) {
  Instance inst;
  inst.gamma = gamma;
  inst.capacity = B;
  for (int j = 0; j < n; ++j) {
    const double v = force_ties
                         ? 0.1 * static_cast<double>(1 + rng.next() % 9)
                         : rng.uniform01();
    inst.items.push_back({j, v, gamma});
  }
  return inst;
}

// literal rank rule: position of `id` in the arrived pool ordered by
// (value desc, id asc), counted from 1
int literal_rank(const std::vector<Item>& arrived, const Item& item) {
  int rank = 1;
  for (const Item& other : arrived)
    if (other.value > item.value ||
        (other.value == item.value && other.id < item.id))
      ++rank;
  return rank;
}

Instance attach_unit_row(Instance inst, double b) {
  PackingConstraints pc;
  pc.capacities = {b};
  pc.columns.assign(inst.n(), {{0, 1.0}});
  inst.constraints = pc;
  return inst;
}

}  // namespace

TEST_CASE("cardinality rule on a hand-traced schedule") {
  Instance inst = make_instance({8.0, 6.0, 4.0, 2.0}, 0.25, 1.0);
  ArrivalRealization arr = fixed_times({0.35, 0.65, 0.30, 0.90});
  AlgorithmParams params;
  AlgorithmTrace tr = run_scaling_cardinality(inst, arr, params);

  REQUIRE(tr.records.size() == 4);
  // arrival order: item 2 (t=0.30), item 0 (0.35), item 1 (0.65), item 3 (0.90)
  CHECK(tr.records[0].item == 2);
  CHECK(tr.records[0].tentative);  // quota floor(.3*4) = 1, it is the best so far
  CHECK(tr.records[0].selected);
  CHECK(tr.records[1].item == 0);
  CHECK(tr.records[1].tentative);  // rank 1, quota 1
  CHECK_FALSE(tr.records[1].feasible);  // item 2 still active until 0.55
  CHECK_FALSE(tr.records[1].selected);
  CHECK(tr.records[2].item == 1);
  CHECK(tr.records[2].tentative);  // rank 2, quota floor(2.6) = 2
  CHECK(tr.records[2].selected);
  CHECK(tr.records[3].item == 3);
  CHECK_FALSE(tr.records[3].tentative);  // rank 4, quota 3
  CHECK(tr.alg_value == doctest::Approx(10.0));
  REQUIRE(tr.selections.size() == 2);
  CHECK(tr.selections[0].first == 2);
  CHECK(tr.selections[0].second == doctest::Approx(0.30));
  CHECK(tr.selections[1].first == 1);
  CHECK(verify_trace(inst, Variant::cardinality, tr) == 0);
}

TEST_CASE("zero quota at early times blocks everything") {
  Instance inst = make_instance({10.0, 5.0}, 0.5, 1.0);
  ArrivalRealization arr = fixed_times({0.6, 0.3});
  AlgorithmTrace tr = run_scaling_cardinality(inst, arr, AlgorithmParams{});
  CHECK_FALSE(tr.records[0].tentative);  // t=0.3: floor(0.6) = 0
  CHECK(tr.records[0].aux == 0.0);       // tentative set is empty
  CHECK(tr.records[1].tentative);        // t=0.6: quota 1, top value
  CHECK(tr.alg_value == doctest::Approx(10.0));
}

TEST_CASE("cardinality tentative matches the literal rank rule") {
  Xoshiro256pp rng(808);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 40 + static_cast<int>(rng.next() % 200);
    const double gamma = 0.02 + 0.2 * rng.uniform01();
    const double B = 1.0 + static_cast<double>(rng.next() % 3);
    Instance inst = random_cardinality_instance(rng, n, gamma, B, rep % 2 == 0);
    ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
    AlgorithmTrace tr = run_scaling_cardinality(inst, arr, AlgorithmParams{});

    std::vector<Item> arrived;
    for (const TraceRecord& rec : tr.records) {
      const Item& item = inst.items[rec.item];
      arrived.push_back(item);
      const auto quota = static_cast<std::int64_t>(
          std::floor(rec.t * inst.capacity / inst.gamma));
      const bool expect = quota > 0 && literal_rank(arrived, item) <= quota;
      REQUIRE(rec.tentative == expect);
      const double expect_aux = static_cast<double>(
          std::min<std::int64_t>(quota, static_cast<std::int64_t>(arrived.size())));
      REQUIRE(rec.aux == expect_aux);
    }
    CHECK(verify_trace(inst, Variant::cardinality, tr) == 0);
  }
}

TEST_CASE("selected implies tentative and feasible everywhere") {
  Xoshiro256pp rng(515);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 100 + static_cast<int>(rng.next() % 100);
    Instance inst = random_cardinality_instance(rng, n, 0.05, 2.0, false);
    ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
    AlgorithmTrace tr = run_scaling_cardinality(inst, arr, AlgorithmParams{});
    double sum = 0.0;
    for (const TraceRecord& rec : tr.records) {
      if (rec.selected) {
        CHECK(rec.tentative);
        CHECK(rec.feasible);
        sum += inst.items[rec.item].value;
      }
    }
    CHECK(sum == doctest::Approx(tr.alg_value).epsilon(1e-12));
  }
}

TEST_CASE("cardinality decisions are comparison-based") {
  Xoshiro256pp rng(33);
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 30 + static_cast<int>(rng.next() % 120);
    Instance inst = random_cardinality_instance(rng, n, 0.1, 1.0 + rng.next() % 2,
                                                rep % 3 == 0);
    ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
    Instance warped = inst;
    for (Item& it : warped.items) it.value = it.value * it.value + 0.5;  // monotone

    AlgorithmTrace a = run_scaling_cardinality(inst, arr, AlgorithmParams{});
    AlgorithmTrace b = run_scaling_cardinality(warped, arr, AlgorithmParams{});
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      CHECK(a.records[k].item == b.records[k].item);
      CHECK(a.records[k].tentative == b.records[k].tentative);
      CHECK(a.records[k].selected == b.records[k].selected);
    }
    CHECK(a.selections == b.selections);
  }
}

TEST_CASE("lengths rule on a hand-traced schedule") {
  Instance inst = make_instance({6.0, 2.0, 3.0}, 0.5, 1.0, {0.3, 0.4, 0.1});
  ArrivalRealization arr = fixed_times({0.8, 0.2, 0.5});
  AlgorithmParams params;  // alpha = 1/2
  AlgorithmTrace tr = run_scaling_lengths(inst, arr, params);

  REQUIRE(tr.records.size() == 3);
  CHECK(tr.records[0].item == 1);       // t=0.2, target 0.1, sole arrival
  CHECK(tr.records[0].tentative);
  CHECK(tr.records[0].selected);        // occupies [0.2, 0.6)
  CHECK(tr.records[1].item == 2);       // t=0.5, target 0.25
  CHECK(tr.records[1].tentative);       // density order: 2 first, needs 1 too
  CHECK_FALSE(tr.records[1].feasible);  // item 1 still active
  CHECK(tr.records[2].item == 0);       // t=0.8, target 0.4: prefix {2, 0}
  CHECK(tr.records[2].tentative);
  CHECK(tr.records[2].selected);
  CHECK(tr.alg_value == doctest::Approx(8.0));
  CHECK(verify_trace(inst, Variant::lengths, tr) == 0);
}

TEST_CASE("lengths tentative matches greedy_round_up membership") {
  Xoshiro256pp rng(919);
  for (int rep = 0; rep < 25; ++rep) {
    const int n = 30 + static_cast<int>(rng.next() % 150);
    const double gamma = 0.05 + 0.2 * rng.uniform01();
    Instance inst;
    inst.gamma = gamma;
    inst.capacity = 1.0 + static_cast<double>(rng.next() % 2);
    for (int j = 0; j < n; ++j)
      inst.items.push_back({j, rng.uniform01(), gamma * rng.uniform_pos01()});
    ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
    AlgorithmParams params;
    params.alpha = rep % 2 == 0 ? 0.5 : 0.8;
    AlgorithmTrace tr = run_scaling_lengths(inst, arr, params);

    std::vector<Item> arrived;
    for (const TraceRecord& rec : tr.records) {
      arrived.push_back(inst.items[rec.item]);
      const double target = params.alpha * rec.t * inst.capacity;
      const std::vector<std::int32_t> prefix = greedy_round_up(arrived, target);
      const bool expect =
          std::find(prefix.begin(), prefix.end(), rec.item) != prefix.end();
      REQUIRE(rec.tentative == expect);
    }
    CHECK(verify_trace(inst, Variant::lengths, tr) == 0);
  }
}

TEST_CASE("lengths decisions are invariant under value scaling") {
  Xoshiro256pp rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 50 + static_cast<int>(rng.next() % 100);
    Instance inst;
    inst.gamma = 0.1;
    inst.capacity = 1.0;
    for (int j = 0; j < n; ++j)
      inst.items.push_back({j, rng.uniform01(), 0.1 * rng.uniform_pos01()});
    ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
    Instance scaled = inst;
    for (Item& it : scaled.items) it.value *= 3.0;

    AlgorithmTrace a = run_scaling_lengths(inst, arr, AlgorithmParams{});
    AlgorithmTrace b = run_scaling_lengths(scaled, arr, AlgorithmParams{});
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t k = 0; k < a.records.size(); ++k) {
      CHECK(a.records[k].tentative == b.records[k].tentative);
      CHECK(a.records[k].selected == b.records[k].selected);
    }
    CHECK(b.alg_value == doctest::Approx(3.0 * a.alg_value).epsilon(1e-12));
  }
}

TEST_CASE("alpha outside (0, 1] is rejected") {
  Instance inst = make_instance({1.0}, 0.5, 1.0);
  ArrivalRealization arr = fixed_times({0.5});
  AlgorithmParams params;
  params.alpha = 0.0;
  CHECK_THROWS_AS(run_scaling_lengths(inst, arr, params), std::invalid_argument);
  params.alpha = 1.5;
  CHECK_THROWS_AS(run_scaling_lengths(inst, arr, params), std::invalid_argument);
}

TEST_CASE("packing with slack capacity accepts everything") {
  Xoshiro256pp rng(65);
  const int n = 60;
  Instance inst = make_instance(std::vector<double>(n, 0.0), 0.5, 1.0);
  for (int j = 0; j < n; ++j) inst.items[j].value = rng.uniform_pos01();
  inst = attach_unit_row(inst, static_cast<double>(n));
  // evenly spaced arrivals: capacity 1.5 k at the k-th arrival covers k items
  std::vector<double> times(n);
  for (int j = 0; j < n; ++j) times[j] = static_cast<double>(j + 1) / n;
  ArrivalRealization arr = fixed_times(std::move(times));
  AlgorithmParams params;
  params.epsilon = 0.25;  // t (1-eps) n / gamma = 1.5 t n
  Xoshiro256pp rounding(4);
  AlgorithmTrace tr = run_scaling_packing(inst, arr, params, rounding);
  double total = 0.0;
  for (const TraceRecord& rec : tr.records) {
    CHECK(rec.tentative);  // x_j = 1, rounding cannot refuse
    CHECK(rec.selected);
    total += inst.items[rec.item].value;
  }
  CHECK(tr.alg_value == doctest::Approx(total));
  CHECK(verify_trace(inst, Variant::packing, tr) == 0);
}

TEST_CASE("packing with zero capacity accepts nothing") {
  Instance inst = attach_unit_row(make_instance({1.0, 2.0, 3.0}, 0.5, 1.0), 0.0);
  ArrivalRealization arr = fixed_times({0.2, 0.5, 0.8});
  Xoshiro256pp rounding(9);
  AlgorithmParams params;
  params.epsilon = 0.25;  // capacity ratio 0 leaves no usable default
  AlgorithmTrace tr = run_scaling_packing(inst, arr, params, rounding);
  for (const TraceRecord& rec : tr.records) CHECK_FALSE(rec.tentative);
  CHECK(tr.alg_value == 0.0);
}

TEST_CASE("packing consumes exactly one uniform per arrival") {
  Xoshiro256pp rng(77);
  const int n = 40;
  Instance inst = make_instance(std::vector<double>(n, 0.5), 0.25, 1.0);
  for (int j = 0; j < n; ++j) inst.items[j].value = rng.uniform01();
  inst = attach_unit_row(inst, 8.0);
  ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);

  Xoshiro256pp a(123), b(123);
  (void)run_scaling_packing(inst, arr, AlgorithmParams{}, a);
  for (int i = 0; i < n; ++i) b.next();
  CHECK(a.next() == b.next());
}

TEST_CASE("packing trace is reproducible from the params seed") {
  Xoshiro256pp rng(31);
  const int n = 30;
  Instance inst = make_instance(std::vector<double>(n, 0.5), 0.25, 1.0);
  for (int j = 0; j < n; ++j) inst.items[j].value = rng.uniform01();
  inst = attach_unit_row(inst, 6.0);
  ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
  AlgorithmParams params;
  params.seed = 999;
  AlgorithmTrace t1 = run_scaling_packing(inst, arr, params);
  AlgorithmTrace t2 = run_scaling_packing(inst, arr, params);
  Xoshiro256pp stream(999);
  AlgorithmTrace t3 = run_scaling_packing(inst, arr, params, stream);
  REQUIRE(t1.records.size() == t2.records.size());
  for (std::size_t k = 0; k < t1.records.size(); ++k) {
    CHECK(t1.records[k].selected == t2.records[k].selected);
    CHECK(t1.records[k].selected == t3.records[k].selected);
  }
  CHECK(t1.alg_value == t2.alg_value);
  CHECK(t1.alg_value == t3.alg_value);
}

TEST_CASE("packing rejects unsupported shapes") {
  ArrivalRealization arr = fixed_times({0.5});
  Xoshiro256pp rounding(1);

  Instance no_rows = make_instance({1.0}, 0.5, 1.0);
  CHECK_THROWS_AS(run_scaling_packing(no_rows, arr, AlgorithmParams{}, rounding),
                  std::invalid_argument);

  Instance varied = attach_unit_row(make_instance({1.0}, 0.5, 1.0, {0.3}), 2.0);
  CHECK_THROWS_AS(run_scaling_packing(varied, arr, AlgorithmParams{}, rounding),
                  std::invalid_argument);

  // row maximum != 1: caller must normalize first
  Instance skew = make_instance({1.0}, 0.5, 1.0);
  PackingConstraints pc;
  pc.capacities = {4.0};
  pc.columns = {{{0, 2.0}}};
  skew.constraints = pc;
  CHECK_THROWS_AS(run_scaling_packing(skew, arr, AlgorithmParams{}, rounding),
                  std::invalid_argument);

  Instance ok = attach_unit_row(make_instance({1.0}, 0.5, 1.0), 2.0);
  AlgorithmParams bad_eps;
  bad_eps.epsilon = 0.75;
  CHECK_THROWS_AS(run_scaling_packing(ok, arr, bad_eps, rounding),
                  std::invalid_argument);
}

TEST_CASE("epsilon_default frozen values") {
  EpsilonDefault e = epsilon_default(1.0, 600.0);
  CHECK(e.value == doctest::Approx(0.27197).epsilon(1e-4));
  CHECK_FALSE(e.clamped);

  e = epsilon_default(1.0, 64.0);
  CHECK(e.value == 0.5);
  CHECK(e.clamped);

  e = epsilon_default(2.0, 10000.0);
  CHECK(e.value == doctest::Approx(0.080883).epsilon(1e-4));
  CHECK_FALSE(e.clamped);

  CHECK_THROWS_AS(epsilon_default(0.5, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_default(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("verify_trace counts tampering") {
  Xoshiro256pp rng(404);
  Instance inst = random_cardinality_instance(rng, 80, 0.1, 1.0, false);
  ArrivalRealization arr = sample_arrivals(inst.n(), ArrivalDistribution::uniform(), rng);
  AlgorithmTrace tr = run_scaling_cardinality(inst, arr, AlgorithmParams{});
  REQUIRE(verify_trace(inst, Variant::cardinality, tr) == 0);
  REQUIRE(!tr.selections.empty());

  AlgorithmTrace bad = tr;
  bad.alg_value += 1.0;
  CHECK(verify_trace(inst, Variant::cardinality, bad) > 0);

  bad = tr;
  for (TraceRecord& rec : bad.records)
    if (!rec.selected && !rec.tentative) {
      rec.selected = true;  // selected without tentative
      bad.selections.emplace_back(rec.item, rec.t);
      bad.alg_value += inst.items[rec.item].value;
      break;
    }
  CHECK(verify_trace(inst, Variant::cardinality, bad) > 0);

  bad = tr;
  bad.selections.pop_back();
  CHECK(verify_trace(inst, Variant::cardinality, bad) > 0);
}

TEST_CASE("variant names round trip") {
  CHECK(variant_from_string("cardinality") == Variant::cardinality);
  CHECK(variant_from_string("packing") == Variant::packing);
  CHECK(variant_from_string("lengths") == Variant::lengths);
  CHECK(variant_name(Variant::packing) == std::string("packing"));
  CHECK_THROWS_AS(variant_from_string("nope"), std::invalid_argument);
}

TEST_CASE("empty instance produces an empty trace") {
  Instance inst;
  inst.gamma = 0.5;
  inst.capacity = 1.0;
  ArrivalRealization arr;
  AlgorithmTrace tr = run_scaling_cardinality(inst, arr, AlgorithmParams{});
  CHECK(tr.records.empty());
  CHECK(tr.alg_value == 0.0);
  CHECK(verify_trace(inst, Variant::cardinality, tr) == 0);
}
