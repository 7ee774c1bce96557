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

#ifndef SKA_STRUCTURE_HPP_
#define SKA_STRUCTURE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ska/error.hpp"
#include "ska/mmi.hpp"
#include "ska/partition.hpp"
#include "ska/rational.hpp"
#include "ska/source_model.hpp"
#include "ska/submodular_min.hpp"
#include "ska/subset.hpp"

namespace ska {

/// Zero-singleton-submodular function on the block indices of the
/// fundamental partition:
///
///   g(B) = h(U_{i in B} C_i) - sum_{i in B} h(C_i),   h(C) = H(Z_C) - gamma,
///
/// so g({}) = -gamma. Its nonempty zero sets are exactly the index sets of
/// blocks of optimal partitions, plus the whole index set.
class ZssFunction {
 public:
  ZssFunction(std::shared_ptr<const std::vector<Rational>> entropy,
              std::vector<Subset> blocks, Rational gamma,
              std::int64_t entropy_den)
      : entropy_(std::move(entropy)),
        blocks_(std::move(blocks)),
        gamma_(std::move(gamma)),
        entropy_den_(entropy_den) {}

  int ell() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Subset>& blocks() const { return blocks_; }
  const Rational& gamma() const { return gamma_; }

  /// Union of the blocks indexed by `b`.
  Subset users_of(Subset b) const {
    Subset out;
    for (int i : b) out |= blocks_[i];
    return out;
  }

  Rational operator()(Subset b) const {
    Rational value = (*entropy_)[users_of(b).bits()];
    for (int i : b) value -= (*entropy_)[blocks_[i].bits()];
    return value + gamma_ * Rational(b.size() - 1);
  }

  SetFunctionOracle as_oracle() const {
    return {ell(), [g = *this](Subset b) { return g(b); }};
  }

  /// Grid spacing of g's values: 1 / (D * (ell - 1)!), D the lcm of entropy
  /// denominators.
  Rational rounding_unit() const {
    std::int64_t den = entropy_den_;
    for (int k = 2; k < ell(); ++k) den = lcm_checked(den, den * k);
    return Rational(1, den);
  }

 private:
  std::shared_ptr<const std::vector<Rational>> entropy_;
  std::vector<Subset> blocks_;
  Rational gamma_;
  std::int64_t entropy_den_;
};

inline ZssFunction build_g(const SourceModel& source, const MmiResult& mmi) {
  return ZssFunction(
      std::make_shared<const std::vector<Rational>>(entropy_values(source)),
      mmi.fundamental.blocks(), mmi.gamma, entropy_denominator(source));
}

/// Which minimizer backs the lattice-family minimizations.
enum class SfmMethod { kMinNormPoint, kBruteForce };

/// Bookkeeping across minimizer calls.
struct SfmLog {
  int calls = 0;
  int fallbacks = 0;
  std::vector<std::string> diagnostics;
};

namespace detail {

inline Rational min_over_family(const ZssFunction& g, Subset lower,
                                Subset upper, SfmMethod method, SfmLog* log) {
  const auto oracle = g.as_oracle();
  const LatticeFamily family{lower, upper};
  if (method == SfmMethod::kBruteForce) {
    return minimize_bruteforce(oracle, family).value;
  }
  auto r = minimize_mnp(oracle, family, g.rounding_unit());
  if (log) {
    ++log->calls;
    log->fallbacks += r.fallback;
    for (auto& d : r.diagnostics) log->diagnostics.push_back(std::move(d));
  }
  return r.value;
}

}  // namespace detail

/// Every B ⊆ [ell] with g(B) = 0, in canonical order ({} only when gamma = 0).
inline std::vector<Subset> zero_sets(const ZssFunction& g,
                                     int cap = kDefaultEnumerationCap) {
  if (g.ell() > cap) {
    throw EnumerationLimitError("zero-set enumeration limit exceeded");
  }
  std::vector<Subset> out;
  for_each_subset_of(Subset::full(g.ell()), [&](Subset b) {
    if (g(b).is_zero()) out.push_back(b);
  });
  sort_canonical(out);
  return out;
}

/// The unique maximal zero set M with seed ∈ M ⊆ [ell] - {exclude}, grown
/// greedily in index order; nullopt when no such zero set exists.
inline std::optional<Subset> maximal_zero_set(
    const ZssFunction& g, int exclude, int seed,
    SfmMethod method = SfmMethod::kMinNormPoint, SfmLog* log = nullptr) {
  if (exclude == seed) throw Error("exclude and seed must differ");
  if (exclude < 0 || seed < 0 || exclude >= g.ell() || seed >= g.ell()) {
    throw Error("block index out of range");
  }
  const Subset upper = Subset::full(g.ell()).without(exclude);
  Subset c = Subset::singleton(seed);
  if (!detail::min_over_family(g, c, upper, method, log).is_zero()) {
    return std::nullopt;
  }
  for (int k = 0; k < g.ell(); ++k) {
    if (k == exclude || c.contains(k)) continue;
    if (detail::min_over_family(g, c.with(k), upper, method, log).is_zero()) {
      c = c.with(k);
    }
  }
  return c;
}

enum class TCase { kT1, kT2 };

inline const char* to_string(TCase c) { return c == TCase::kT1 ? "T1" : "T2"; }

/// Maximal blocks over all optimal partitions and their dichotomy: either
/// they form the coarsest optimal partition (T1), or their complements are
/// pairwise disjoint and nonempty (T2).
struct TMaxReport {
  std::vector<Subset> t_max;  // user sets, canonical order
  TCase tcase = TCase::kT1;
  std::vector<Subset> complement_family;     // T2 only
  std::optional<Partition> coarsest_optimal;  // T1 only

  friend bool operator==(const TMaxReport&, const TMaxReport&) = default;
};

/// Classifies a family of maximal blocks into the T1/T2 dichotomy.
inline TMaxReport classify_t_max(std::vector<Subset> t_max,
                                 const SourceModel& source,
                                 const MmiResult& mmi) {
  sort_canonical(t_max);
  const Subset all = source.users().all();
  TMaxReport report;
  report.t_max = t_max;

  Subset covered;
  bool disjoint = true;
  for (Subset c : t_max) {
    disjoint = disjoint && !c.intersects(covered);
    covered |= c;
  }
  if (disjoint && covered == all && t_max.size() >= 2) {
    Partition p(source.size(), t_max);
    if (!mmi.is_optimal(p)) {
      throw Error("internal: T_max partitions V but is not optimal");
    }
    report.tcase = TCase::kT1;
    report.coarsest_optimal = p;
    return report;
  }

  Subset seen;
  for (Subset c : t_max) {
    const Subset comp = all - c;
    if (comp.empty() || comp.intersects(seen)) {
      throw Error("internal: T_max satisfies neither T1 nor T2");
    }
    seen |= comp;
    report.complement_family.push_back(comp);
  }
  if (report.complement_family.size() < 2) {
    throw Error("internal: T_max satisfies neither T1 nor T2");
  }
  report.tcase = TCase::kT2;
  return report;
}

/// T_max through maximal zero sets of g: one greedy run per ordered
/// (exclude, seed) pair of block indices.
inline TMaxReport t_max(const SourceModel& source, const MmiResult& mmi,
                        SfmMethod method = SfmMethod::kMinNormPoint,
                        SfmLog* log = nullptr) {
  const ZssFunction g = build_g(source, mmi);
  std::vector<Subset> candidates(mmi.fundamental.blocks());
  for (int i = 0; i < g.ell(); ++i) {
    for (int j = 0; j < g.ell(); ++j) {
      if (i == j) continue;
      if (auto m = maximal_zero_set(g, i, j, method, log)) {
        candidates.push_back(g.users_of(*m));
      }
    }
  }
  return classify_t_max(maximal_sets(candidates), source, mmi);
}

/// T_max read off the brute-force zero-set family of g.
inline TMaxReport t_max_bruteforce(const SourceModel& source,
                                   const MmiResult& mmi) {
  const ZssFunction g = build_g(source, mmi);
  const Subset everything = Subset::full(g.ell());
  std::vector<Subset> candidates;
  for (Subset b : zero_sets(g)) {
    if (!b.empty() && b != everything) candidates.push_back(g.users_of(b));
  }
  return classify_t_max(maximal_sets(candidates), source, mmi);
}

/// Greedy with a single run per excluded index, starting from the empty set
/// and adding indices in order while a zero set containing the current set
/// remains. Kept for comparison with the per-pair variant used by t_max.
inline std::vector<Subset> t_max_single_pass(const SourceModel& source,
                                             const MmiResult& mmi) {
  const ZssFunction g = build_g(source, mmi);
  std::vector<Subset> candidates(mmi.fundamental.blocks());
  for (int i = 0; i < g.ell(); ++i) {
    const Subset upper = Subset::full(g.ell()).without(i);
    Subset c;
    for (int k = 0; k < g.ell(); ++k) {
      if (k == i) continue;
      if (detail::min_over_family(g, c.with(k), upper, SfmMethod::kBruteForce,
                                  nullptr)
              .is_zero()) {
        c = c.with(k);
      }
    }
    if (!c.empty()) candidates.push_back(g.users_of(c));
  }
  auto out = maximal_sets(candidates);
  sort_canonical(out);
  return out;
}

/// True iff the fundamental partition is the only optimal partition, i.e. g
/// has no zero set B with 2 <= |B| <= ell - 1.
inline bool is_unique_optimal(const SourceModel& source, const MmiResult& mmi,
                              SfmMethod method = SfmMethod::kMinNormPoint,
                              SfmLog* log = nullptr) {
  const ZssFunction g = build_g(source, mmi);
  const int ell = g.ell();
  if (ell == 2) return true;
  if (method == SfmMethod::kBruteForce) {
    for (Subset b : zero_sets(g)) {
      if (b.size() >= 2 && b.size() <= ell - 1) return false;
    }
    return true;
  }
  for (int i = 0; i < ell; ++i) {
    for (int j = i + 1; j < ell; ++j) {
      for (int k = 0; k < ell; ++k) {
        if (k == i || k == j) continue;
        const Subset lower = Subset::singleton(i).with(j);
        const Subset upper = Subset::full(ell).without(k);
        if (!detail::min_over_family(g, lower, upper, method, log).sign()) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace ska

#endif  // SKA_STRUCTURE_HPP_
