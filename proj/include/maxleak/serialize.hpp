// Copyright 2026 The maxleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "maxleak/core.hpp"

namespace maxleak {

// JSON formats:
//   Prior     : array of numbers
//   Mechanism : {"rows": [[...], ...]}
//   PriorSet  : {"type": "finite", "priors": [[...], ...]}
//             | {"type": "segment", "base": [...], "direction": [...],
//                "delta_min": x, "delta_max": y}
//             | {"type": "union", "members": [...]}
// Numbers are emitted in shortest round-trip form, so parsing a serialized
// value reproduces every entry bit-exactly.

namespace detail {

inline std::vector<double> number_array(const nlohmann::json& j,
                                        const char* what) {
  if (!j.is_array()) {
    fail(Errc::SchemaError, std::string(what) + " must be an array");
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number()) {
      fail(Errc::SchemaError, std::string(what) + " must contain only numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

inline nlohmann::json parse_text(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::SchemaError, "invalid JSON");
  return j;
}

}  // namespace detail

inline nlohmann::json to_json(const Prior& p) {
  return nlohmann::json(p.probs());
}

inline Prior prior_from_json(const nlohmann::json& j) {
  return make_prior(detail::number_array(j, "prior"));
}

inline nlohmann::json to_json(const Mechanism& m) {
  return nlohmann::json{{"rows", m.to_rows()}};
}

inline Mechanism mechanism_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows")) {
    fail(Errc::SchemaError, "mechanism must be an object with a \"rows\" array");
  }
  const auto& rows_json = j.at("rows");
  if (!rows_json.is_array()) {
    fail(Errc::SchemaError, "mechanism \"rows\" must be an array");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(rows_json.size());
  for (const auto& r : rows_json) {
    rows.push_back(detail::number_array(r, "mechanism row"));
  }
  return make_mechanism(rows);
}

inline nlohmann::json to_json(const PriorSet& set) {
  nlohmann::json j;
  if (const auto* f = std::get_if<PriorSet::Finite>(&set.node())) {
    j["type"] = "finite";
    nlohmann::json priors = nlohmann::json::array();
    for (const Prior& p : f->priors) priors.push_back(to_json(p));
    j["priors"] = std::move(priors);
  } else if (const auto* s = std::get_if<PriorSet::Segment>(&set.node())) {
    j["type"] = "segment";
    j["base"] = s->base;
    j["direction"] = s->direction;
    j["delta_min"] = s->delta_min;
    j["delta_max"] = s->delta_max;
  } else {
    j["type"] = "union";
    nlohmann::json members = nlohmann::json::array();
    for (const PriorSet& m : std::get<PriorSet::Union>(set.node()).members) {
      members.push_back(to_json(m));
    }
    j["members"] = std::move(members);
  }
  return j;
}

inline PriorSet prior_set_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    fail(Errc::SchemaError, "prior set must be an object with a \"type\" tag");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "finite") {
    if (!j.contains("priors") || !j.at("priors").is_array()) {
      fail(Errc::SchemaError, "finite set needs a \"priors\" array");
    }
    if (j.at("priors").empty()) fail(Errc::EmptySet, "finite set has no priors");
    std::vector<Prior> priors;
    for (const auto& p : j.at("priors")) priors.push_back(prior_from_json(p));
    return make_finite_set(std::move(priors));
  }
  if (type == "segment") {
    for (const char* key : {"base", "direction", "delta_min", "delta_max"}) {
      if (!j.contains(key)) {
        fail(Errc::SchemaError, std::string("segment needs \"") + key + "\"");
      }
    }
    if (!j.at("delta_min").is_number() || !j.at("delta_max").is_number()) {
      fail(Errc::SchemaError, "segment deltas must be numbers");
    }
    return make_segment(detail::number_array(j.at("base"), "segment base"),
                        detail::number_array(j.at("direction"), "segment direction"),
                        j.at("delta_min").get<double>(),
                        j.at("delta_max").get<double>());
  }
  if (type == "union") {
    if (!j.contains("members") || !j.at("members").is_array()) {
      fail(Errc::SchemaError, "union needs a \"members\" array");
    }
    if (j.at("members").empty()) fail(Errc::EmptySet, "union has no members");
    std::vector<PriorSet> members;
    for (const auto& m : j.at("members")) members.push_back(prior_set_from_json(m));
    return make_union(std::move(members));
  }
  fail(Errc::SchemaError, "unknown prior set type \"" + type + "\"");
}

inline Prior parse_prior(std::string_view text) {
  return prior_from_json(detail::parse_text(text));
}

inline Mechanism parse_mechanism(std::string_view text) {
  return mechanism_from_json(detail::parse_text(text));
}

inline PriorSet parse_prior_set(std::string_view text) {
  return prior_set_from_json(detail::parse_text(text));
}

inline std::string serialize(const Prior& p) { return to_json(p).dump(); }
inline std::string serialize(const Mechanism& m) { return to_json(m).dump(2); }
inline std::string serialize(const PriorSet& s) { return to_json(s).dump(2); }

}  // namespace maxleak
