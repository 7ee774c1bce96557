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

#ifndef SKA_SOURCE_MODEL_HPP_
#define SKA_SOURCE_MODEL_HPP_

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ska/error.hpp"
#include "ska/rational.hpp"
#include "ska/subset.hpp"

namespace ska {

/// Ordered list of distinct user labels. Subsets of users are bitmasks over
/// this order.
class UserSet {
 public:
  UserSet() = default;
  explicit UserSet(std::vector<std::string> labels)
      : labels_(std::move(labels)) {
    if (labels_.size() < 2) throw Error("a source needs at least two users");
    if (labels_.size() > static_cast<std::size_t>(kMaxGroundSize)) {
      throw EnumerationLimitError("at most " + std::to_string(kMaxGroundSize) +
                                  " users are supported");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (labels_[i] == labels_[j]) {
          throw Error("duplicate user label '" + labels_[i] + "'");
        }
      }
    }
  }

  /// Users labelled "1".."n".
  static UserSet numbered(int n) {
    std::vector<std::string> labels;
    for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
    return UserSet(std::move(labels));
  }

  int size() const { return static_cast<int>(labels_.size()); }
  Subset all() const { return Subset::full(size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  int index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error("unknown user label '" + label + "'");
    return static_cast<int>(it - labels_.begin());
  }

  Subset subset(std::span<const std::string> labels) const {
    Subset s;
    for (const auto& l : labels) s = s.with(index_of(l));
    return s;
  }
  Subset subset(std::initializer_list<std::string> labels) const {
    return subset(std::span<const std::string>(labels.begin(), labels.size()));
  }

  /// Labels of `s` in ground order.
  std::vector<std::string> labels_of(Subset s) const {
    std::vector<std::string> out;
    for (int i : s) out.push_back(label(i));
    return out;
  }

  /// Throws unless `s` only uses indices of this ground set.
  void check(Subset s) const {
    if (!all().contains(s)) throw Error("subset contains unknown users");
  }

  friend bool operator==(const UserSet&, const UserSet&) = default;

 private:
  std::vector<std::string> labels_;
};

struct WeightedEdge {
  Subset members;
  Rational weight;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Source whose entropy is the weighted coverage function of its edges: each
/// edge carries independent randomness of entropy `weight` observed by every
/// member.
class HypergraphicalSource {
 public:
  HypergraphicalSource(UserSet users, std::vector<WeightedEdge> edges)
      : users_(std::move(users)), edges_(std::move(edges)) {
    for (const auto& e : edges_) {
      if (e.members.empty()) throw Error("edge with no members");
      users_.check(e.members);
    }
  }

  const UserSet& users() const { return users_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  Rational entropy(Subset b) const {
    users_.check(b);
    Rational h;
    for (const auto& e : edges_) {
      if (e.members.intersects(b)) h += e.weight;
    }
    return h;
  }

  /// Total weight of edges whose member set is exactly `s`.
  Rational edge_weight(Subset s) const {
    Rational w;
    for (const auto& e : edges_) {
      if (e.members == s) w += e.weight;
    }
    return w;
  }

  friend bool operator==(const HypergraphicalSource&,
                         const HypergraphicalSource&) = default;

 private:
  UserSet users_;
  std::vector<WeightedEdge> edges_;
};

/// Explicit entropy function: one value per subset, indexed by bitmask.
class EntropyTable {
 public:
  EntropyTable(UserSet users, std::vector<Rational> values)
      : users_(std::move(users)), values_(std::move(values)) {
    if (values_.size() != (std::size_t{1} << users_.size())) {
      throw Error("entropy table must list every subset of the users");
    }
  }

  const UserSet& users() const { return users_; }
  const std::vector<Rational>& values() const { return values_; }

  Rational entropy(Subset b) const {
    users_.check(b);
    return values_[b.bits()];
  }

  friend bool operator==(const EntropyTable&, const EntropyTable&) = default;

 private:
  UserSet users_;
  std::vector<Rational> values_;
};

/// A finite multiterminal source, seen through its entropy function.
class SourceModel {
 public:
  SourceModel(HypergraphicalSource s) : model_(std::move(s)) {}  // NOLINT
  SourceModel(EntropyTable t) : model_(std::move(t)) {}          // NOLINT

  const UserSet& users() const {
    return std::visit([](const auto& m) -> const UserSet& { return m.users(); },
                      model_);
  }
  int size() const { return users().size(); }

  /// H(Z_B).
  Rational entropy(Subset b) const {
    return std::visit([b](const auto& m) { return m.entropy(b); }, model_);
  }
  Rational entropy(std::initializer_list<std::string> labels) const {
    return entropy(users().subset(labels));
  }

  bool is_hypergraphical() const {
    return std::holds_alternative<HypergraphicalSource>(model_);
  }
  const HypergraphicalSource& hypergraph() const {
    if (!is_hypergraphical()) {
      throw Error("operation requires a hypergraphical source");
    }
    return std::get<HypergraphicalSource>(model_);
  }
  const std::variant<HypergraphicalSource, EntropyTable>& model() const {
    return model_;
  }

  friend bool operator==(const SourceModel&, const SourceModel&) = default;

 private:
  std::variant<HypergraphicalSource, EntropyTable> model_;
};

/// H(B) for every B, indexed by bitmask.
inline std::vector<Rational> entropy_values(const SourceModel& source) {
  const int n = source.size();
  if (!source.is_hypergraphical()) {
    return std::get<EntropyTable>(source.model()).values();
  }
  const auto& edges = source.hypergraph().edges();
  std::vector<Rational> h(std::size_t{1} << n);
  for (Subset::Bits b = 1; b < h.size(); ++b) {
    // H(B) = H(B - {i}) + weight of edges meeting i but not B - {i}.
    const Subset s(b);
    const int i = s.min_element();
    const Subset rest = s.without(i);
    Rational extra;
    for (const auto& e : edges) {
      if (e.members.contains(i) && !e.members.intersects(rest)) {
        extra += e.weight;
      }
    }
    h[b] = h[rest.bits()] + extra;
  }
  return h;
}

inline EntropyTable to_table(const SourceModel& source) {
  return EntropyTable(source.users(), entropy_values(source));
}

struct Violation {
  std::string kind;  // "normalization", "monotonicity", "submodularity",
                     // "negative weight"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline std::string set_text(const UserSet& users, Subset s) {
  std::string out = "{";
  bool first = true;
  for (const auto& l : users.labels_of(s)) {
    if (!first) out += ",";
    out += l;
    first = false;
  }
  return out + "}";
}

}  // namespace detail

/// Checks that the entropy function is normalized, monotone and submodular.
/// Reports the first violation of each kind found.
inline ValidationReport validate(const SourceModel& source) {
  ValidationReport report;
  const UserSet& users = source.users();
  if (source.is_hypergraphical()) {
    // Coverage functions with nonnegative weights are always polymatroids.
    for (const auto& e : source.hypergraph().edges()) {
      if (e.weight.sign() < 0) {
        report.violations.push_back(
            {"negative weight", "negative weight " + e.weight.str() +
                                    " on edge " +
                                    detail::set_text(users, e.members)});
        break;
      }
    }
    return report;
  }

  const auto h = entropy_values(source);
  const int n = users.size();
  if (!h[0].is_zero()) {
    report.violations.push_back(
        {"normalization", "H({}) = " + h[0].str() + " but must be 0"});
  }
  bool monotone_done = false;
  bool submodular_done = false;
  for (Subset::Bits b = 0; b < h.size(); ++b) {
    const Subset a(b);
    for (int i = 0; i < n && !monotone_done; ++i) {
      if (a.contains(i)) continue;
      if (h[a.with(i).bits()] < h[b]) {
        report.violations.push_back(
            {"monotonicity", "H(" + detail::set_text(users, a.with(i)) +
                                 ") = " + h[a.with(i).bits()].str() +
                                 " < H(" + detail::set_text(users, a) +
                                 ") = " + h[b].str()});
        monotone_done = true;
      }
    }
    // Local exchange inequalities are equivalent to submodularity.
    for (int i = 0; i < n && !submodular_done; ++i) {
      if (a.contains(i)) continue;
      for (int j = i + 1; j < n && !submodular_done; ++j) {
        if (a.contains(j)) continue;
        const Subset ai = a.with(i);
        const Subset aj = a.with(j);
        const Subset aij = ai.with(j);
        const Rational lhs = h[ai.bits()] + h[aj.bits()];
        const Rational rhs = h[aij.bits()] + h[b];
        if (lhs < rhs) {
          report.violations.push_back(
              {"submodularity",
               "H(" + detail::set_text(users, ai) + ") + H(" +
                   detail::set_text(users, aj) + ") = " + lhs.str() +
                   " < H(" + detail::set_text(users, aij) + ") + H(" +
                   detail::set_text(users, a) + ") = " + rhs.str()});
          submodular_done = true;
        }
      }
    }
    if (monotone_done && submodular_done) break;
  }
  return report;
}

/// (S, eps)-incremented source: independent randomness of entropy `eps`
/// handed to every user in S. S = {} is a no-op.
inline SourceModel increment(const SourceModel& source, Subset s,
                             const Rational& eps) {
  if (eps.sign() <= 0) throw Error("increment requires eps > 0");
  source.users().check(s);
  if (s.empty()) return source;
  if (source.is_hypergraphical()) {
    const auto& hg = source.hypergraph();
    auto edges = hg.edges();
    edges.push_back({s, eps});
    return HypergraphicalSource(hg.users(), std::move(edges));
  }
  auto values = entropy_values(source);
  for (Subset::Bits b = 0; b < values.size(); ++b) {
    if (Subset(b).intersects(s)) values[b] += eps;
  }
  return EntropyTable(source.users(), std::move(values));
}

/// Entropy available on edge S (0 if the source has no such edge).
inline Rational has_edge(const HypergraphicalSource& source, Subset s) {
  return source.edge_weight(s);
}

/// (S, eps)-decremented source: removes `eps` of the common randomness held
/// exactly by S. Edges emptied by the removal are dropped.
inline HypergraphicalSource decrement(const HypergraphicalSource& source,
                                      Subset s, const Rational& eps) {
  if (eps.sign() <= 0) throw Error("decrement requires eps > 0");
  source.users().check(s);
  if (has_edge(source, s) < eps) {
    throw Error("source does not have edge " +
                detail::set_text(source.users(), s) +
                " of sufficient entropy");
  }
  Rational remaining = eps;
  std::vector<WeightedEdge> edges;
  for (const auto& e : source.edges()) {
    if (e.members != s || remaining.is_zero()) {
      edges.push_back(e);
      continue;
    }
    if (e.weight <= remaining) {
      remaining -= e.weight;
      continue;
    }
    edges.push_back({e.members, e.weight - remaining});
    remaining = Rational(0);
  }
  return HypergraphicalSource(source.users(), std::move(edges));
}

inline SourceModel decrement(const SourceModel& source, Subset s,
                             const Rational& eps) {
  return decrement(source.hypergraph(), s, eps);
}

struct PinEdge {
  std::string u;
  std::string v;
  Rational weight;
};

/// Pairwise independent network: one independent edge per graph edge.
inline HypergraphicalSource pin_source(UserSet users,
                                       const std::vector<PinEdge>& graph) {
  std::vector<WeightedEdge> edges;
  for (const auto& g : graph) {
    const int i = users.index_of(g.u);
    const int j = users.index_of(g.v);
    if (i == j) throw Error("self-loop on user '" + g.u + "'");
    edges.push_back({Subset::singleton(i).with(j), g.weight});
  }
  return HypergraphicalSource(std::move(users), std::move(edges));
}

/// Same source with user i renamed to position perm[i].
inline SourceModel permute_users(const SourceModel& source,
                                 const std::vector<int>& perm) {
  const int n = source.size();
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[perm[i]] = source.users().label(i);
  UserSet users(std::move(labels));
  const auto map = [&](Subset s) {
    Subset out;
    for (int i : s) out = out.with(perm[i]);
    return out;
  };
  if (source.is_hypergraphical()) {
    std::vector<WeightedEdge> edges;
    for (const auto& e : source.hypergraph().edges()) {
      edges.push_back({map(e.members), e.weight});
    }
    return HypergraphicalSource(std::move(users), std::move(edges));
  }
  const auto h = entropy_values(source);
  std::vector<Rational> values(h.size());
  for (Subset::Bits b = 0; b < h.size(); ++b) values[map(Subset(b)).bits()] = h[b];
  return EntropyTable(std::move(users), std::move(values));
}

/// Least common multiple of the denominators of all entropy values.
inline std::int64_t entropy_denominator(const SourceModel& source) {
  std::int64_t d = 1;
  if (source.is_hypergraphical()) {
    for (const auto& e : source.hypergraph().edges()) {
      d = lcm_checked(d, e.weight.den());
    }
    return d;
  }
  for (const auto& v : entropy_values(source)) d = lcm_checked(d, v.den());
  return d;
}

}  // namespace ska

#endif  // SKA_SOURCE_MODEL_HPP_
