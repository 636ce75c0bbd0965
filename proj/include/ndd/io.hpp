// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON documents for instances, schedules and generator metadata. Node,
// product and slot indices are 1-based in files.

#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ndd/errors.hpp"
#include "ndd/generator.hpp"
#include "ndd/model.hpp"

namespace ndd {

using Json = nlohmann::json;

inline constexpr const char* kInstanceFormat = "ndd-instance";
inline constexpr const char* kScheduleFormat = "ndd-schedule";

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["format"] = kInstanceFormat;
  j["version"] = 1;
  j["num_fcs"] = inst.num_fcs;
  j["num_dss"] = inst.num_dss;
  j["num_products"] = inst.num_products;
  j["num_slots"] = inst.num_slots;
  j["arrival_deadline"] = inst.arrival_deadline;
  j["ob_capacity"] = inst.ob_capacity;
  j["ib_capacity"] = inst.ib_capacity;
  Json lanes = Json::array();
  for (int i = 0; i < inst.num_fcs; ++i) {
    for (int d = 0; d < inst.num_dss; ++d) {
      const double h = inst.transit_hours(i, d);
      if (std::isfinite(h)) lanes.push_back({{"fc", i + 1}, {"ds", d + 1}, {"transit_hours", h}});
    }
  }
  j["lanes"] = std::move(lanes);
  Json stock = Json::array();
  for (int i = 0; i < inst.num_fcs; ++i) {
    Json row = Json::array();
    for (int k = 0; k < inst.num_products; ++k) {
      if (inst.stocks(i, k)) row.push_back(k + 1);
    }
    stock.push_back(std::move(row));
  }
  j["stocked_products"] = std::move(stock);
  Json demand = Json::array();
  for (const DemandEntry& e : inst.demand) {
    demand.push_back({e.ds + 1, e.product + 1, e.slot, e.amount});
  }
  j["demand"] = std::move(demand);
  return j;
}

namespace detail {

inline const Json& field(const Json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw ParseError(ptr.empty() ? "/" : ptr, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(ptr + "/" + key, "missing field");
  return *it;
}

inline int as_int(const Json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ParseError(ptr, "expected an integer");
  return j.get<int>();
}

inline double as_number(const Json& j, const std::string& ptr) {
  if (!j.is_number()) throw ParseError(ptr, "expected a number");
  return j.get<double>();
}

inline const Json& as_array(const Json& j, const std::string& ptr) {
  if (!j.is_array()) throw ParseError(ptr, "expected an array");
  return j;
}

inline int index_in(const Json& j, const std::string& ptr, int hi) {
  const int v = as_int(j, ptr);
  if (v < 1 || v > hi) {
    throw ParseError(ptr, "index " + std::to_string(v) + " outside 1.." + std::to_string(hi));
  }
  return v;
}

inline std::vector<int> int_vector(const Json& root, const char* key, std::size_t size) {
  const std::string ptr = std::string("/") + key;
  const Json& a = as_array(field(root, "", key), ptr);
  if (a.size() != size) {
    throw ParseError(ptr, "expected " + std::to_string(size) + " entries");
  }
  std::vector<int> out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(as_int(a[k], ptr + "/" + std::to_string(k)));
  return out;
}

inline void check_format(const Json& j, const char* expected) {
  const Json& f = field(j, "", "format");
  if (!f.is_string() || f.get<std::string>() != expected) {
    throw ParseError("/format", std::string("expected \"") + expected + "\"");
  }
}

}  // namespace detail

inline Instance instance_from_json(const Json& j) {
  using detail::as_array;
  using detail::as_int;
  using detail::field;
  detail::check_format(j, kInstanceFormat);
  const int I = as_int(field(j, "", "num_fcs"), "/num_fcs");
  const int J = as_int(field(j, "", "num_dss"), "/num_dss");
  const int K = as_int(field(j, "", "num_products"), "/num_products");
  const int T = as_int(field(j, "", "num_slots"), "/num_slots");
  Instance inst;
  try {
    inst = Instance::empty(I, J, K, T);
  } catch (const InvalidInput& e) {
    throw ParseError("/", e.what());
  }
  inst.arrival_deadline = detail::int_vector(j, "arrival_deadline", J);
  inst.ob_capacity = detail::int_vector(j, "ob_capacity", I);
  inst.ib_capacity = detail::int_vector(j, "ib_capacity", J);

  const Json& lanes = as_array(field(j, "", "lanes"), "/lanes");
  for (std::size_t k = 0; k < lanes.size(); ++k) {
    const std::string p = "/lanes/" + std::to_string(k);
    const int fc = detail::index_in(field(lanes[k], p, "fc"), p + "/fc", I);
    const int ds = detail::index_in(field(lanes[k], p, "ds"), p + "/ds", J);
    const double h = detail::as_number(field(lanes[k], p, "transit_hours"), p + "/transit_hours");
    if (!(h >= 0.0)) throw ParseError(p + "/transit_hours", "must be >= 0");
    if (std::isfinite(inst.transit_hours(fc - 1, ds - 1))) throw ParseError(p, "duplicate lane");
    inst.set_transit(fc - 1, ds - 1, h);
  }

  const Json& stock = as_array(field(j, "", "stocked_products"), "/stocked_products");
  if (static_cast<int>(stock.size()) != I) {
    throw ParseError("/stocked_products", "expected one list per FC");
  }
  for (int i = 0; i < I; ++i) {
    const std::string p = "/stocked_products/" + std::to_string(i);
    const Json& row = as_array(stock[i], p);
    for (std::size_t k = 0; k < row.size(); ++k) {
      inst.set_stock(i, detail::index_in(row[k], p + "/" + std::to_string(k), K) - 1);
    }
  }

  const Json& demand = as_array(field(j, "", "demand"), "/demand");
  for (std::size_t k = 0; k < demand.size(); ++k) {
    const std::string p = "/demand/" + std::to_string(k);
    const Json& e = as_array(demand[k], p);
    if (e.size() != 4) throw ParseError(p, "expected [ds, product, slot, amount]");
    const int ds = detail::index_in(e[0], p + "/0", J);
    const int prod = detail::index_in(e[1], p + "/1", K);
    const int slot = detail::index_in(e[2], p + "/2", T);
    const double amount = detail::as_number(e[3], p + "/3");
    if (!(amount >= 0.0) || !std::isfinite(amount)) throw ParseError(p + "/3", "demand must be >= 0");
    if (amount > 0.0) inst.add_demand(ds - 1, prod - 1, slot, amount);
  }
  inst.normalize_demand();
  try {
    inst.validate();
  } catch (const InvalidInput& e) {
    throw ParseError("/", e.what());
  }
  return inst;
}

inline Json schedule_to_json(const Schedule& s) {
  Json trucks = Json::array();
  for (const Truck& t : s) trucks.push_back({t.fc + 1, t.ds + 1, t.slot});
  return {{"format", kScheduleFormat}, {"version", 1}, {"trucks", std::move(trucks)}};
}

// Indices are checked against the instance dimensions when one is given.
inline Schedule schedule_from_json(const Json& j, const Instance* inst = nullptr) {
  detail::check_format(j, kScheduleFormat);
  const Json& trucks = detail::as_array(detail::field(j, "", "trucks"), "/trucks");
  const int big = std::numeric_limits<int>::max();
  Schedule s;
  for (std::size_t k = 0; k < trucks.size(); ++k) {
    const std::string p = "/trucks/" + std::to_string(k);
    const Json& e = detail::as_array(trucks[k], p);
    if (e.size() != 3) throw ParseError(p, "expected [fc, ds, slot]");
    const int fc = detail::index_in(e[0], p + "/0", inst ? inst->num_fcs : big);
    const int ds = detail::index_in(e[1], p + "/1", inst ? inst->num_dss : big);
    const int slot = detail::index_in(e[2], p + "/2", inst ? inst->num_slots : big);
    if (!s.insert({fc - 1, ds - 1, slot})) throw ParseError(p, "duplicate truck");
  }
  return s;
}

inline Json metadata_to_json(const GeneratedInstance& g) {
  const GeneratorConfig& c = g.config;
  Json cfg = {{"seed", c.seed},
              {"num_fcs", c.num_fcs},
              {"ds_ratio", c.ds_ratio},
              {"num_categories", c.num_categories},
              {"num_slots", c.num_slots},
              {"map_side_km", c.map_side_km},
              {"fc_min_spacing_km", c.fc_min_spacing_km},
              {"ds_min_spacing_km", c.ds_min_spacing_km},
              {"spacing_relax_factor", c.spacing_relax_factor},
              {"speed_kmh", {c.speed_min_kmh, c.speed_max_kmh}},
              {"deadline_range", {c.deadline_min, c.deadline_max}},
              {"stocked_fraction", {c.stocked_min, c.stocked_max}},
              {"request_prob", {c.request_prob_min, c.request_prob_max}},
              {"products_per_category", {c.products_min, c.products_max}},
              {"category_mean", {c.category_mean_min, c.category_mean_max}},
              {"ob_capacity", c.ob_capacity},
              {"ib_capacity", c.ib_capacity}};
  auto points = [](const std::vector<Point>& ps) {
    Json a = Json::array();
    for (const Point& p : ps) a.push_back({p.x, p.y});
    return a;
  };
  return {{"format", "ndd-instance-metadata"},
          {"config", std::move(cfg)},
          {"fc_xy_km", points(g.meta.fc_xy)},
          {"ds_xy_km", points(g.meta.ds_xy)},
          {"fc_spacing_used_km", g.meta.fc_spacing_used},
          {"ds_spacing_used_km", g.meta.ds_spacing_used},
          {"category_mean", g.meta.category_mean},
          {"category_products", g.meta.category_products},
          {"ds_request_prob", g.meta.ds_request_prob},
          {"speed_kmh", g.meta.speed_kmh}};
}

inline Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + " byte " + std::to_string(e.byte), e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("failed writing " + path);
}

inline Instance read_instance(const std::string& path) {
  return instance_from_json(parse_json_text(read_text(path), path));
}

inline Schedule read_schedule(const std::string& path, const Instance* inst = nullptr) {
  return schedule_from_json(parse_json_text(read_text(path), path), inst);
}

inline std::string dump(const Json& j) { return j.dump(1) + "\n"; }

}  // namespace ndd
