#include "tempsec/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tempsec {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void check_known_keys(const json& obj, const char* where,
                      std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    bool known = false;
    for (const char* k : keys)
      if (key == k) known = true;
    if (!known) bad(std::string(where) + ": unknown key '" + key + "'");
  }
}

double require_number(const json& obj, const char* where, const char* key) {
  if (!obj.contains(key)) bad(std::string(where) + ": missing '" + key + "'");
  if (!obj[key].is_number()) bad(std::string(where) + ": '" + key + "' must be a number");
  return obj[key].get<double>();
}

}  // namespace

void validate_instance(const Instance& inst) {
  if (!(inst.gamma > 0.0) || inst.gamma > 1.0)
    bad("instance: gamma must lie in (0, 1]");
  if (!(inst.capacity > 0.0)) bad("instance: capacity must be positive");
  for (std::size_t j = 0; j < inst.items.size(); ++j) {
    const Item& it = inst.items[j];
    if (it.id != static_cast<std::int32_t>(j)) bad("instance: item ids must be 0..n-1 in order");
    if (!(it.value >= 0.0) || !std::isfinite(it.value))
      bad("instance: item values must be finite and nonnegative");
    if (!(it.duration > 0.0) || it.duration > inst.gamma + 1e-12)
      bad("instance: durations must lie in (0, gamma]");
  }
  if (inst.constraints) {
    const PackingConstraints& pc = *inst.constraints;
    if (pc.columns.size() != inst.items.size())
      bad("instance: one constraint column per item required");
    const auto m = static_cast<std::int32_t>(pc.rows());
    if (m == 0) bad("instance: constraints present but no rows");
    for (double b : pc.capacities)
      if (!(b >= 0.0) || !std::isfinite(b)) bad("instance: row capacities must be nonnegative");
    for (const auto& col : pc.columns)
      for (const auto& [row, coef] : col) {
        if (row < 0 || row >= m) bad("instance: constraint row index out of range");
        if (!(coef >= 0.0) || !std::isfinite(coef))
          bad("instance: constraint coefficients must be nonnegative");
      }
  }
}

void require_integral_capacity(const Instance& inst) {
  if (inst.capacity < 1.0 || std::floor(inst.capacity) != inst.capacity)
    bad("instance: this variant needs an integral capacity >= 1, got " +
        std::to_string(inst.capacity));
}

Instance parse_instance_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("instance: ") + e.what());
  }
  if (!doc.is_object()) bad("instance: top level must be an object");
  check_known_keys(doc, "instance", {"gamma", "capacity", "items", "constraints"});

  Instance inst;
  inst.gamma = require_number(doc, "instance", "gamma");
  inst.capacity = require_number(doc, "instance", "capacity");
  if (!doc.contains("items") || !doc["items"].is_array())
    bad("instance: 'items' array required");
  std::int32_t id = 0;
  for (const auto& row : doc["items"]) {
    if (!row.is_object()) bad("instance: items must be objects");
    check_known_keys(row, "instance items", {"value", "duration"});
    Item it;
    it.id = id++;
    it.value = require_number(row, "instance items", "value");
    it.duration = row.contains("duration")
                      ? require_number(row, "instance items", "duration")
                      : inst.gamma;
    inst.items.push_back(it);
  }
  if (doc.contains("constraints") && !doc["constraints"].is_null()) {
    const json& c = doc["constraints"];
    if (!c.is_object()) bad("instance: 'constraints' must be an object or null");
    check_known_keys(c, "constraints", {"capacities", "columns"});
    if (!c.contains("capacities") || !c["capacities"].is_array())
      bad("constraints: 'capacities' array required");
    if (!c.contains("columns") || !c["columns"].is_array())
      bad("constraints: 'columns' array required");
    PackingConstraints pc;
    for (const auto& b : c["capacities"]) {
      if (!b.is_number()) bad("constraints: capacities must be numbers");
      pc.capacities.push_back(b.get<double>());
    }
    for (const auto& col : c["columns"]) {
      if (!col.is_array()) bad("constraints: each column must be an array");
      std::vector<std::pair<std::int32_t, double>> entries;
      for (const auto& pair : col) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number())
          bad("constraints: column entries must be [row, coef] pairs");
        entries.emplace_back(pair[0].get<std::int32_t>(), pair[1].get<double>());
      }
      pc.columns.push_back(std::move(entries));
    }
    inst.constraints = std::move(pc);
  }
  validate_instance(inst);
  return inst;
}

Instance load_instance_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("instance: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string instance_to_json(const Instance& inst) {
  json doc;
  doc["gamma"] = inst.gamma;
  doc["capacity"] = inst.capacity;
  doc["items"] = json::array();
  for (const Item& it : inst.items)
    doc["items"].push_back({{"value", it.value}, {"duration", it.duration}});
  if (inst.constraints) {
    json c;
    c["capacities"] = inst.constraints->capacities;
    c["columns"] = json::array();
    for (const auto& col : inst.constraints->columns) {
      json jcol = json::array();
      for (const auto& [row, coef] : col) jcol.push_back({row, coef});
      c["columns"].push_back(std::move(jcol));
    }
    doc["constraints"] = std::move(c);
  } else {
    doc["constraints"] = nullptr;
  }
  return doc.dump(2);
}

namespace {

std::vector<double> row_maxima(const PackingConstraints& pc) {
  std::vector<double> mx(pc.rows(), 0.0);
  for (const auto& col : pc.columns)
    for (const auto& [row, coef] : col) mx[row] = std::max(mx[row], coef);
  return mx;
}

}  // namespace

PackingConstraints normalize_constraints(const PackingConstraints& pc) {
  if (pc.rows() == 0) bad("normalize: no rows");
  const std::vector<double> mx = row_maxima(pc);
  for (std::size_t i = 0; i < mx.size(); ++i)
    if (mx[i] <= 0.0) bad("normalize: row " + std::to_string(i) + " has no positive coefficient");
  PackingConstraints out = pc;
  for (std::size_t i = 0; i < mx.size(); ++i) out.capacities[i] /= mx[i];
  for (auto& col : out.columns)
    for (auto& [row, coef] : col) coef /= mx[row];
  return out;
}

double capacity_ratio(const PackingConstraints& pc) {
  if (pc.rows() == 0) bad("capacity_ratio: no rows");
  const std::vector<double> mx = row_maxima(pc);
  double ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mx.size(); ++i) {
    if (mx[i] <= 0.0) bad("capacity_ratio: row " + std::to_string(i) + " has no positive coefficient");
    ratio = std::min(ratio, pc.capacities[i] / mx[i]);
  }
  return ratio;
}

std::int32_t sparsity(const PackingConstraints& pc) {
  std::int32_t d = 0;
  for (const auto& col : pc.columns) {
    std::int32_t nz = 0;
    for (const auto& [row, coef] : col) {
      (void)row;
      if (coef > 0.0) ++nz;
    }
    d = std::max(d, nz);
  }
  return d;
}

ScheduleState::ScheduleState(const Instance& inst, bool packing_rows)
    : inst_(&inst), packing_rows_(packing_rows) {
  if (packing_rows_) {
    if (!inst.constraints) bad("ScheduleState: packing mode needs constraints");
    row_load_.assign(inst.constraints->rows(), 0.0);
  }
}

void ScheduleState::advance(double t) {
  if (t < last_time_) bad("ScheduleState: time moved backwards");
  last_time_ = t;
  while (!active_.empty() && active_.top().first <= t) {
    const std::int32_t item = active_.top().second;
    active_.pop();
    if (packing_rows_)
      for (const auto& [row, coef] : inst_->constraints->columns[item])
        row_load_[row] -= coef;
  }
}

bool ScheduleState::fits(const Item& item) const {
  if (!packing_rows_)
    return static_cast<double>(active_.size()) < inst_->capacity;
  for (const auto& [row, coef] : inst_->constraints->columns[item.id])
    if (coef > 0.0 &&
        row_load_[row] + coef > inst_->constraints->capacities[row] + 1e-9)
      return false;
  return true;
}

void ScheduleState::commit(const Item& item, double t) {
  advance(t);
  if (!fits(item)) bad("ScheduleState: commit would violate capacity");
  active_.emplace(t + item.duration, item.id);
  if (packing_rows_)
    for (const auto& [row, coef] : inst_->constraints->columns[item.id])
      row_load_[row] += coef;
  selections_.emplace_back(item.id, t);
  total_value_ += item.value;
}

bool is_feasible_now(ScheduleState& state, double t, const Item& item,
                     const Instance& inst) {
  (void)inst;
  if (t < 0.0 || t > 1.0) bad("is_feasible_now: t outside [0, 1]");
  if (t < state.last_time()) bad("is_feasible_now: time moved backwards");
  state.advance(t);
  return state.fits(item);
}

std::int64_t ceil_one_over(double gamma) {
  if (!(gamma > 0.0) || gamma > 1.0) bad("ceil_one_over: gamma outside (0, 1]");
  const double r = 1.0 / gamma;
  const double nearest = std::nearbyint(r);
  if (std::abs(r - nearest) < 1e-9 * std::max(1.0, r))
    return static_cast<std::int64_t>(nearest);
  return static_cast<std::int64_t>(std::ceil(r));
}

}  // namespace tempsec
