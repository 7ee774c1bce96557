// Copyright 2026 The ska Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SKA_JSON_IO_HPP_
#define SKA_JSON_IO_HPP_

#include <algorithm>
#include <cctype>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "ska/analysis.hpp"
#include "ska/error.hpp"
#include "ska/mmi.hpp"
#include "ska/partition.hpp"
#include "ska/rational.hpp"
#include "ska/source_model.hpp"
#include "ska/structure.hpp"

namespace ska::io {

using nlohmann::json;

// Rationals travel as strings ("p/q" or "p"); integer JSON numbers are
// accepted on input.
inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw Error("expected a rational string, got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw Error(e.what());
  }
}

inline json subset_to_json(const UserSet& users, Subset s) {
  return users.labels_of(s);
}

inline Subset subset_from_json(const UserSet& users, const json& j) {
  if (!j.is_array()) throw Error("expected a list of user labels");
  Subset s;
  for (const auto& l : j) {
    if (!l.is_string()) throw Error("user labels must be strings");
    const int i = users.index_of(l.get<std::string>());
    if (s.contains(i)) throw Error("repeated user label in a set");
    s = s.with(i);
  }
  return s;
}

inline json family_to_json(const UserSet& users,
                           const std::vector<Subset>& family) {
  json out = json::array();
  for (Subset s : family) out.push_back(subset_to_json(users, s));
  return out;
}

inline std::vector<Subset> family_from_json(const UserSet& users,
                                            const json& j) {
  if (!j.is_array()) throw Error("expected a list of sets");
  std::vector<Subset> out;
  for (const auto& s : j) out.push_back(subset_from_json(users, s));
  return out;
}

/// Partitions are lists of blocks, each a list of labels in user order.
inline json partition_to_json(const UserSet& users, const Partition& p) {
  return family_to_json(users, p.blocks());
}

inline Partition partition_from_json(const UserSet& users, const json& j) {
  return Partition(users.size(), family_from_json(users, j));
}

/// Comma-joined labels in user order; "" for the empty set.
inline std::string subset_key(const UserSet& users, Subset s) {
  std::string key;
  for (const auto& l : users.labels_of(s)) {
    if (!key.empty()) key += ",";
    key += l;
  }
  return key;
}

inline Subset subset_from_key(const UserSet& users, const std::string& key) {
  Subset s;
  std::size_t start = 0;
  while (start <= key.size() && !key.empty()) {
    const auto comma = key.find(',', start);
    const std::string label = key.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    const int i = users.index_of(label);
    if (s.contains(i)) throw Error("repeated user label in key '" + key + "'");
    s = s.with(i);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return s;
}

namespace detail {

inline const json& require(const json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw Error(std::string("missing field '") + field + "'");
  }
  return j.at(field);
}

/// Labels mentioned in table keys, numeric labels ordered numerically.
inline std::vector<std::string> labels_from_keys(const json& table) {
  std::set<std::string> seen;
  for (const auto& [key, value] : table.items()) {
    std::size_t start = 0;
    while (!key.empty()) {
      const auto comma = key.find(',', start);
      seen.insert(key.substr(start, comma == std::string::npos
                                        ? std::string::npos
                                        : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  std::vector<std::string> labels(seen.begin(), seen.end());
  const auto numeric = [](const std::string& s) {
    return !s.empty() && s.size() < 18 &&
           std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
  };
  if (std::all_of(labels.begin(), labels.end(), numeric)) {
    std::sort(labels.begin(), labels.end(),
              [](const std::string& a, const std::string& b) {
                return std::stoll(a) < std::stoll(b);
              });
  }
  return labels;
}

}  // namespace detail

/// Reads a source document:
///   {"users": [...], "model": "hypergraph",
///    "edges": [{"members": [...], "weight": "p/q"}, ...]}
///   {"users": [...], "model": "table", "entropy": {"1": "1", "1,2": "2"}}
/// For tables "users" may be omitted and is then read off the keys.
inline SourceModel source_from_json(const json& doc) {
  const std::string model = detail::require(doc, "model").get<std::string>();
  if (model == "hypergraph") {
    UserSet users(detail::require(doc, "users").get<std::vector<std::string>>());
    std::vector<WeightedEdge> edges;
    for (const auto& e : detail::require(doc, "edges")) {
      edges.push_back({subset_from_json(users, detail::require(e, "members")),
                       rational_from_json(detail::require(e, "weight"))});
    }
    return HypergraphicalSource(std::move(users), std::move(edges));
  }
  if (model == "table") {
    const json& table = detail::require(doc, "entropy");
    if (!table.is_object()) throw Error("'entropy' must be an object");
    UserSet users(doc.contains("users")
                      ? doc.at("users").get<std::vector<std::string>>()
                      : detail::labels_from_keys(table));
    std::vector<std::optional<Rational>> values(std::size_t{1} << users.size());
    for (const auto& [key, value] : table.items()) {
      auto& slot = values[subset_from_key(users, key).bits()];
      if (slot) throw Error("duplicate entropy entry for '" + key + "'");
      slot = rational_from_json(value);
    }
    std::vector<Rational> h(values.size());
    for (std::size_t b = 0; b < values.size(); ++b) {
      if (b == 0) {
        h[b] = values[b].value_or(Rational(0));
      } else if (!values[b]) {
        throw Error("entropy table is missing subset '" +
                    subset_key(users, Subset(static_cast<Subset::Bits>(b))) +
                    "'");
      } else {
        h[b] = *values[b];
      }
    }
    return EntropyTable(std::move(users), std::move(h));
  }
  throw Error("unknown model '" + model + "'");
}

inline SourceModel parse_source(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  try {
    return source_from_json(doc);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed source document: ") + e.what());
  }
}

inline json to_json(const SourceModel& source) {
  const UserSet& users = source.users();
  json doc;
  doc["users"] = users.labels();
  if (source.is_hypergraphical()) {
    doc["model"] = "hypergraph";
    doc["edges"] = json::array();
    for (const auto& e : source.hypergraph().edges()) {
      doc["edges"].push_back({{"members", subset_to_json(users, e.members)},
                              {"weight", to_json(e.weight)}});
    }
    return doc;
  }
  doc["model"] = "table";
  doc["entropy"] = json::object();
  const auto h = entropy_values(source);
  for (std::size_t b = 1; b < h.size(); ++b) {
    doc["entropy"][subset_key(users, Subset(static_cast<Subset::Bits>(b)))] =
        to_json(h[b]);
  }
  return doc;
}

inline json to_json(const ValidationReport& r) {
  json out;
  out["valid"] = r.ok();
  out["violations"] = json::array();
  for (const auto& v : r.violations) {
    out["violations"].push_back({{"kind", v.kind}, {"message", v.message}});
  }
  return out;
}

// --- MmiResult -------------------------------------------------------------

inline json to_json(const UserSet& users, const MmiResult& r) {
  json out;
  out["gamma"] = to_json(r.gamma);
  out["optimal_partitions"] = json::array();
  for (const auto& p : r.optimal_partitions) {
    out["optimal_partitions"].push_back(partition_to_json(users, p));
  }
  out["fundamental"] = partition_to_json(users, r.fundamental);
  out["gap"] = r.gap ? to_json(*r.gap) : json("inf");
  out["ell"] = r.ell;
  return out;
}

inline MmiResult mmi_from_json(const UserSet& users, const json& j) {
  MmiResult r;
  r.gamma = rational_from_json(detail::require(j, "gamma"));
  for (const auto& p : detail::require(j, "optimal_partitions")) {
    r.optimal_partitions.push_back(partition_from_json(users, p));
  }
  std::sort(r.optimal_partitions.begin(), r.optimal_partitions.end());
  r.fundamental = partition_from_json(users, detail::require(j, "fundamental"));
  const json& gap = detail::require(j, "gap");
  if (!(gap.is_string() && gap.get<std::string>() == "inf")) {
    r.gap = rational_from_json(gap);
  }
  r.ell = j.contains("ell") ? j.at("ell").get<int>() : r.fundamental.size();
  return r;
}

// --- TMaxReport ------------------------------------------------------------

inline TCase tcase_from_json(const json& j) {
  const auto s = j.get<std::string>();
  if (s == "T1") return TCase::kT1;
  if (s == "T2") return TCase::kT2;
  throw Error("unknown case tag '" + s + "'");
}

inline json to_json(const UserSet& users, const TMaxReport& r) {
  json out;
  out["t_max"] = family_to_json(users, r.t_max);
  out["case"] = to_string(r.tcase);
  if (r.tcase == TCase::kT2) {
    out["complement_family"] = family_to_json(users, r.complement_family);
  }
  if (r.coarsest_optimal) {
    out["coarsest_optimal"] = partition_to_json(users, *r.coarsest_optimal);
  }
  return out;
}

inline TMaxReport tmax_from_json(const UserSet& users, const json& j) {
  TMaxReport r;
  r.t_max = family_from_json(users, detail::require(j, "t_max"));
  r.tcase = tcase_from_json(detail::require(j, "case"));
  if (j.contains("complement_family")) {
    r.complement_family = family_from_json(users, j.at("complement_family"));
  }
  if (j.contains("coarsest_optimal")) {
    r.coarsest_optimal = partition_from_json(users, j.at("coarsest_optimal"));
  }
  return r;
}

// --- CriticalEdgeReport ----------------------------------------------------

inline json to_json(const UserSet& users, const CriticalEdgeReport& r) {
  return {{"edges", family_to_json(users, r.edges)},
          {"common_size", r.common_size},
          {"case", to_string(r.tcase)}};
}

inline CriticalEdgeReport critical_from_json(const UserSet& users,
                                             const json& j) {
  CriticalEdgeReport r;
  r.edges = family_from_json(users, detail::require(j, "edges"));
  r.common_size = detail::require(j, "common_size").get<int>();
  r.tcase = tcase_from_json(detail::require(j, "case"));
  return r;
}

// --- GrowthCurve -----------------------------------------------------------

inline json to_json(const UserSet& users, const GrowthCurve& c) {
  json values = json::array();
  json witnesses = json::array();
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    values.push_back(to_json(c.values[k]));
    witnesses.push_back(subset_to_json(users, c.witnesses[k]));
  }
  return {{"values", values},
          {"witnesses", witnesses},
          {"unique_shortcut_checked", c.unique_shortcut_checked}};
}

inline GrowthCurve growth_from_json(const UserSet& users, const json& j) {
  GrowthCurve c;
  for (const auto& v : detail::require(j, "values")) {
    c.values.push_back(rational_from_json(v));
  }
  c.witnesses = family_from_json(users, detail::require(j, "witnesses"));
  c.unique_shortcut_checked = j.value("unique_shortcut_checked", false);
  return c;
}

// --- ConjectureReport ------------------------------------------------------

inline json to_json(const UserSet& users, const ConjectureReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"edge", subset_to_json(users, e.edge)},
                       {"rate", to_json(e.rate)},
                       {"predicted", to_json(e.predicted)},
                       {"holds", e.holds}});
  }
  return {{"entries", entries}, {"all_hold", r.all_hold()}};
}

inline ConjectureReport conjecture_from_json(const UserSet& users,
                                             const json& j) {
  ConjectureReport r;
  for (const auto& e : detail::require(j, "entries")) {
    r.entries.push_back({subset_from_json(users, detail::require(e, "edge")),
                         rational_from_json(detail::require(e, "rate")),
                         rational_from_json(detail::require(e, "predicted")),
                         detail::require(e, "holds").get<bool>()});
  }
  return r;
}

inline json to_json(const ConjectureTally& t) {
  return {{"instances", t.instances},
          {"edges", t.edges},
          {"holds", t.holds},
          {"violations", t.violations},
          {"instances_with_violation", t.instances_with_violation}};
}

// --- PerturbationVerdict ---------------------------------------------------

inline json to_json(const UserSet& users, const PerturbationVerdict& v) {
  json out = {{"mode", to_string(v.mode)},
              {"set", subset_to_json(users, v.set)},
              {"eps", to_json(v.eps)},
              {"mmi_before", to_json(v.mmi_before)},
              {"mmi_after", to_json(v.mmi_after)},
              {"quotient", to_json(v.quotient)},
              {"formula", to_json(v.formula)},
              {"rate_ok", v.rate_ok},
              {"ok", v.ok()}};
  if (v.optimal_subset_ok) out["optimal_subset_ok"] = *v.optimal_subset_ok;
  if (v.granular_eps) {
    out["granular_eps"] = to_json(*v.granular_eps);
    out["granular_ok"] = *v.granular_ok;
  }
  return out;
}

inline PerturbationVerdict verdict_from_json(const UserSet& users,
                                             const json& j) {
  PerturbationVerdict v;
  const auto mode = detail::require(j, "mode").get<std::string>();
  if (mode == "increment") {
    v.mode = PerturbationMode::kIncrement;
  } else if (mode == "decrement") {
    v.mode = PerturbationMode::kDecrement;
  } else {
    throw Error("unknown perturbation mode '" + mode + "'");
  }
  v.set = subset_from_json(users, detail::require(j, "set"));
  v.eps = rational_from_json(detail::require(j, "eps"));
  v.mmi_before = rational_from_json(detail::require(j, "mmi_before"));
  v.mmi_after = rational_from_json(detail::require(j, "mmi_after"));
  v.quotient = rational_from_json(detail::require(j, "quotient"));
  v.formula = rational_from_json(detail::require(j, "formula"));
  v.rate_ok = detail::require(j, "rate_ok").get<bool>();
  if (j.contains("optimal_subset_ok")) {
    v.optimal_subset_ok = j.at("optimal_subset_ok").get<bool>();
  }
  if (j.contains("granular_eps")) {
    v.granular_eps = rational_from_json(j.at("granular_eps"));
    v.granular_ok = detail::require(j, "granular_ok").get<bool>();
  }
  return v;
}

}  // namespace ska::io

#endif  // SKA_JSON_IO_HPP_
