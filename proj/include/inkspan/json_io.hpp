// Copyright 2026 The inkspan Authors
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

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "inkspan/error.hpp"
#include "inkspan/instance.hpp"

namespace inkspan {

using Json = nlohmann::ordered_json;

namespace detail {

// Integral doubles are written as JSON integers.
inline Json number(double v) {
  if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9007199254740992.0) {
    return static_cast<long long>(v);
  }
  return v;
}

inline double read_number(const Json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::kBadInput, std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace detail

// {"T":int,"items":[{"id":str,"value":num,"weight":num}],"capacities":[...],
//  "discounts":[...]}; discounts may be omitted.
inline Json instance_to_json(const Instance& inst) {
  Json items = Json::array();
  for (std::size_t i = 0; i < inst.item_count(); ++i) {
    items.push_back({{"id", inst.id(i)},
                     {"value", detail::number(inst.original_values()[i])},
                     {"weight", detail::number(inst.weight(i))}});
  }
  Json caps = Json::array(), discounts = Json::array();
  for (double c : inst.capacities()) caps.push_back(detail::number(c));
  for (double d : inst.discounts()) discounts.push_back(detail::number(d));
  return {{"T", inst.horizon()}, {"items", items}, {"capacities", caps}, {"discounts", discounts}};
}

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kBadInput, "instance must be a JSON object");
  for (const char* key : {"T", "items", "capacities"}) {
    if (!j.contains(key)) throw Error(ErrorCode::kBadInput, std::string("missing field \"") + key + "\"");
  }
  if (!j["T"].is_number_integer()) throw Error(ErrorCode::kBadInput, "T must be an integer");
  InstanceData d;
  d.horizon = j["T"].get<int>();
  if (!j["items"].is_array()) throw Error(ErrorCode::kBadInput, "items must be an array");
  for (const auto& item : j["items"]) {
    if (!item.is_object() || !item.contains("id") || !item["id"].is_string() || !item.contains("value") ||
        !item.contains("weight")) {
      throw Error(ErrorCode::kBadInput, "each item needs id, value and weight");
    }
    d.ids.push_back(item["id"].get<std::string>());
    d.values.push_back(detail::read_number(item["value"], "value"));
    d.weights.push_back(detail::read_number(item["weight"], "weight"));
  }
  if (!j["capacities"].is_array()) throw Error(ErrorCode::kBadInput, "capacities must be an array");
  for (const auto& c : j["capacities"]) d.capacities.push_back(detail::read_number(c, "capacity"));
  if (j.contains("discounts")) {
    if (!j["discounts"].is_array()) throw Error(ErrorCode::kBadInput, "discounts must be an array");
    for (const auto& x : j["discounts"]) d.discounts.push_back(detail::read_number(x, "discount"));
  }
  return validate_instance(std::move(d));
}

// {"insertion_time":{"<id>":int|null}}
inline Json schedule_to_json(const Instance& inst, const Schedule& sched) {
  Json times = Json::object();
  for (std::size_t i = 0; i < sched.item_count(); ++i) {
    auto t = sched.insertion_time(i);
    times[inst.id(i)] = t ? Json(*t) : Json(nullptr);
  }
  return {{"insertion_time", times}};
}

// Items absent from the map are never inserted.
inline Schedule schedule_from_json(const Instance& inst, const Json& j) {
  if (!j.is_object() || !j.contains("insertion_time") || !j["insertion_time"].is_object()) {
    throw Error(ErrorCode::kBadInput, "schedule needs an \"insertion_time\" object");
  }
  Schedule s(inst.item_count());
  for (const auto& [id, t] : j["insertion_time"].items()) {
    std::size_t i = 0;
    while (i < inst.item_count() && inst.id(i) != id) ++i;
    if (i == inst.item_count()) throw Error(ErrorCode::kUnknownItem, "unknown item id \"" + id + "\"");
    if (t.is_null()) continue;
    if (!t.is_number_integer()) throw Error(ErrorCode::kBadInput, "insertion time must be an integer or null");
    const int period = t.get<int>();
    if (period < 1 || period > inst.horizon()) {
      throw Error(ErrorCode::kUnknownItem, "item \"" + id + "\" inserted outside [1, T]");
    }
    s.insert(i, period);
  }
  return s;
}

inline Json result_to_json(const Instance& inst, const AlgoResult& r) {
  Json witness = Json::object();
  for (const auto& [k, v] : r.witness) witness[k] = v;
  Json j = {{"algorithm", r.algorithm},
            {"value", detail::number(r.value)},
            {"claimed_factor", r.claimed_factor ? detail::number(*r.claimed_factor) : Json(nullptr)},
            {"witness", witness}};
  j["schedule"] = schedule_to_json(inst, r.schedule);
  return j;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kBadInput, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kBadInput, path + ": " + e.what());
  }
}

inline Instance read_instance_file(const std::string& path) { return instance_from_json(read_json_file(path)); }

}  // namespace inkspan
