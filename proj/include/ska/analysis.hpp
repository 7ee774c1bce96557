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

#ifndef SKA_ANALYSIS_HPP_
#define SKA_ANALYSIS_HPP_

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ska/error.hpp"
#include "ska/mmi.hpp"
#include "ska/partition.hpp"
#include "ska/rational.hpp"
#include "ska/source_model.hpp"
#include "ska/structure.hpp"
#include "ska/subset.hpp"

namespace ska {

namespace detail {

/// (blocks crossed - 1) / (|P| - 1).
inline Rational crossing_ratio(const Partition& p, Subset s) {
  return Rational(blocks_crossed(p, s) - 1) / Rational(p.size() - 1);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Incremental key agreement
// ---------------------------------------------------------------------------

/// Growth rate of the MMI when common randomness is added to S: the minimum
/// over optimal partitions of the crossing ratio; 0 for S = {}.
inline Rational growth_rate(const MmiResult& mmi, Subset s) {
  if (s.empty()) return Rational(0);
  Rational best(1);
  for (const auto& p : mmi.optimal_partitions) {
    best = std::min(best, detail::crossing_ratio(p, s));
  }
  return best;
}

inline Rational growth_rate(const SourceModel& source, const MmiResult& mmi,
                            Subset s) {
  source.users().check(s);
  return growth_rate(mmi, s);
}

struct GrowthCurve {
  std::vector<Rational> values;   // index k = 0..k_max
  std::vector<Subset> witnesses;  // an optimal S with |S| <= k
  bool unique_shortcut_checked = false;

  friend bool operator==(const GrowthCurve&, const GrowthCurve&) = default;
};

/// Growth rate of every order k <= k_max by subset enumeration. Since the
/// growth rate is monotone in S, only sets of size exactly k are scanned.
inline GrowthCurve growth_curve(const SourceModel& source, const MmiResult& mmi,
                                int k_max) {
  const int n = source.size();
  if (k_max < 0 || k_max > n) throw Error("k must lie in [0, |V|]");
  GrowthCurve curve;
  curve.values.push_back(Rational(0));
  curve.witnesses.push_back(Subset());
  for (int k = 1; k <= k_max; ++k) {
    Rational best = curve.values.back();
    Subset witness = curve.witnesses.back();
    if (best < Rational(1)) {
      for_each_subset_of(Subset::full(n), [&](Subset s) {
        if (s.size() != k || best == Rational(1)) return;
        const Rational r = growth_rate(mmi, s);
        if (r > best) {
          best = r;
          witness = s;
        }
      });
    }
    curve.values.push_back(best);
    curve.witnesses.push_back(witness);
  }

  if (mmi.optimal_partitions.size() == 1) {
    // Unique optimum: (k - 1) / (ell - 1) for 1 <= k <= ell.
    for (int k = 1; k <= std::min(k_max, mmi.ell); ++k) {
      if (curve.values[k] != Rational(k - 1) / Rational(mmi.ell - 1)) {
        throw Error("internal: unique-optimum growth formula mismatch at k = " +
                    std::to_string(k));
      }
    }
    curve.unique_shortcut_checked = true;
  }
  return curve;
}

struct CriticalEdgeReport {
  std::vector<Subset> edges;  // canonical order
  int common_size = 0;
  TCase tcase = TCase::kT1;

  friend bool operator==(const CriticalEdgeReport&,
                         const CriticalEdgeReport&) = default;
};

/// Critical edges from the maximal optimal blocks: pairs straddling a block
/// (T1), or transversals of the complements (T2).
inline CriticalEdgeReport critical_edges(const SourceModel& source,
                                         const TMaxReport& tmax) {
  CriticalEdgeReport report;
  report.tcase = tmax.tcase;
  const Subset all = source.users().all();
  if (tmax.tcase == TCase::kT1) {
    for (Subset c : tmax.t_max) {
      for (int i : c) {
        for (int j : all - c) report.edges.push_back(Subset::singleton(i).with(j));
      }
    }
    report.common_size = 2;
  } else {
    std::vector<Subset> partial{Subset()};
    for (Subset comp : tmax.complement_family) {
      std::vector<Subset> next;
      for (Subset s : partial) {
        for (int i : comp) next.push_back(s.with(i));
      }
      partial = std::move(next);
    }
    report.edges = std::move(partial);
    report.common_size = static_cast<int>(tmax.t_max.size());
  }
  sort_canonical(report.edges);
  return report;
}

inline CriticalEdgeReport critical_edges(const SourceModel& source,
                                         const MmiResult& mmi) {
  return critical_edges(source, t_max(source, mmi));
}

/// Critical edges by definition: the minimal sets with positive growth rate.
/// Growth rate is monotone, so S is minimal iff dropping any one element
/// makes the rate vanish.
inline std::vector<Subset> critical_edges_bruteforce(const MmiResult& mmi,
                                                     int n) {
  std::vector<Subset> out;
  for_each_subset_of(Subset::full(n), [&](Subset s) {
    if (growth_rate(mmi, s).sign() <= 0) return;
    for (int i : s) {
      if (growth_rate(mmi, s.without(i)).sign() > 0) return;
    }
    out.push_back(s);
  });
  sort_canonical(out);
  return out;
}

/// Shrinks S = V one user at a time (ascending order), dropping a user
/// whenever the rest still has positive growth rate.
inline Subset greedy_critical_edge(const SourceModel& source,
                                   const MmiResult& mmi) {
  Subset s = source.users().all();
  for (int u = 0; u < source.size(); ++u) {
    if (growth_rate(mmi, s.without(u)).sign() > 0) s = s.without(u);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Decremental key agreement
// ---------------------------------------------------------------------------

namespace detail {

inline void require_edge(const SourceModel& source, Subset s) {
  source.users().check(s);
  if (!source.is_hypergraphical() ||
      has_edge(source.hypergraph(), s).sign() <= 0) {
    throw Error("source does not have edge " +
                set_text(source.users(), s));
  }
}

}  // namespace detail

/// Loss rate of the MMI when common randomness is removed from edge S: the
/// maximum over optimal partitions of the crossing ratio.
inline Rational loss_rate(const SourceModel& source, const MmiResult& mmi,
                          Subset s) {
  detail::require_edge(source, s);
  Rational worst(0);
  for (const auto& p : mmi.optimal_partitions) {
    worst = std::max(worst, detail::crossing_ratio(p, s));
  }
  return worst;
}

/// An edge is excess iff it lies inside a block of the fundamental partition.
inline bool is_excess(const SourceModel& source, const MmiResult& mmi,
                      Subset s) {
  detail::require_edge(source, s);
  const auto& blocks = mmi.fundamental.blocks();
  return std::any_of(blocks.begin(), blocks.end(),
                     [s](Subset c) { return c.contains(s); });
}

// ---------------------------------------------------------------------------
// Perturbation check
// ---------------------------------------------------------------------------

enum class PerturbationMode { kIncrement, kDecrement };

inline const char* to_string(PerturbationMode m) {
  return m == PerturbationMode::kIncrement ? "increment" : "decrement";
}

struct PerturbationVerdict {
  PerturbationMode mode = PerturbationMode::kIncrement;
  Subset set;
  Rational eps;
  Rational mmi_before;
  Rational mmi_after;
  Rational quotient;  // |I(perturbed) - I| / eps
  Rational formula;   // growth_rate or loss_rate
  bool rate_ok = false;
  // Π*(perturbed) ⊆ Π*(original); only checked when eps < gap.
  std::optional<bool> optimal_subset_ok;
  // Integer-entropy sources with |V| >= 3: the rate recovered with
  // eps = 1 / ((|V|-1)(|V|-2)).
  std::optional<Rational> granular_eps;
  std::optional<bool> granular_ok;

  bool ok() const {
    return rate_ok && optimal_subset_ok.value_or(true) &&
           granular_ok.value_or(true);
  }

  friend bool operator==(const PerturbationVerdict&,
                         const PerturbationVerdict&) = default;
};

namespace detail {

inline SourceModel perturb(const SourceModel& source, Subset s,
                           const Rational& eps, PerturbationMode mode) {
  return mode == PerturbationMode::kIncrement ? increment(source, s, eps)
                                              : decrement(source, s, eps);
}

inline Rational perturbation_quotient(const MmiResult& before,
                                      const MmiResult& after,
                                      const Rational& eps,
                                      PerturbationMode mode) {
  const Rational diff = mode == PerturbationMode::kIncrement
                            ? after.gamma - before.gamma
                            : before.gamma - after.gamma;
  return diff / eps;
}

inline bool all_integer_entropies(const SourceModel& source) {
  const auto h = entropy_values(source);
  return std::all_of(h.begin(), h.end(),
                     [](const Rational& v) { return v.is_integer(); });
}

}  // namespace detail

/// Perturbs the source by eps = gap / 2 (1 when every partition is optimal;
/// for decrements at most the available edge weight), recomputes the MMI by
/// enumeration and compares the difference quotient with the closed-form
/// rate, exactly.
///
/// An explicit `eps_override` replaces the automatic choice; the identity is
/// then only guaranteed for eps <= gap.
inline PerturbationVerdict perturbation_verify(
    const SourceModel& source, const MmiResult& mmi, Subset s,
    PerturbationMode mode, int cap = kDefaultEnumerationCap,
    std::optional<Rational> eps_override = std::nullopt) {
  PerturbationVerdict v;
  v.mode = mode;
  v.set = s;
  v.mmi_before = mmi.gamma;
  Rational eps = mmi.gap ? *mmi.gap / Rational(2) : Rational(1);
  if (eps_override) {
    if (eps_override->sign() <= 0) throw Error("eps must be positive");
    eps = *eps_override;
  }
  if (mode == PerturbationMode::kDecrement) {
    detail::require_edge(source, s);
    if (!eps_override) eps = std::min(eps, has_edge(source.hypergraph(), s));
    v.formula = loss_rate(source, mmi, s);
  } else {
    source.users().check(s);
    v.formula = growth_rate(mmi, s);
  }
  v.eps = eps;

  if (s.empty()) {
    // The increment is a no-op; the rate is 0 by convention.
    v.mmi_after = mmi.gamma;
    v.quotient = Rational(0);
    v.rate_ok = v.formula.is_zero();
    v.optimal_subset_ok = true;
    return v;
  }

  const MmiResult after = ska::mmi(detail::perturb(source, s, eps, mode), cap);
  v.mmi_after = after.gamma;
  v.quotient = detail::perturbation_quotient(mmi, after, eps, mode);
  v.rate_ok = v.quotient == v.formula;
  if (!mmi.gap || eps < *mmi.gap) {
    v.optimal_subset_ok = std::all_of(
        after.optimal_partitions.begin(), after.optimal_partitions.end(),
        [&](const Partition& p) { return mmi.is_optimal(p); });
  }

  const int n = source.size();
  if (n >= 3 && detail::all_integer_entropies(source)) {
    const Rational eps2(1, static_cast<std::int64_t>(n - 1) * (n - 2));
    const bool feasible = mode == PerturbationMode::kIncrement ||
                          eps2 <= has_edge(source.hypergraph(), s);
    if (feasible) {
      const MmiResult after2 =
          ska::mmi(detail::perturb(source, s, eps2, mode), cap);
      v.granular_eps = eps2;
      v.granular_ok =
          detail::perturbation_quotient(mmi, after2, eps2, mode) == v.formula;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Conjecture on growth rates of critical edges
// ---------------------------------------------------------------------------

struct ConjectureEntry {
  Subset edge;
  Rational rate;       // growth rate of the edge
  Rational predicted;  // (|S| - 1) / (ell - 1)
  bool holds = false;

  friend bool operator==(const ConjectureEntry&,
                         const ConjectureEntry&) = default;
};

struct ConjectureReport {
  std::vector<ConjectureEntry> entries;
  bool all_hold() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ConjectureEntry& e) { return e.holds; });
  }

  friend bool operator==(const ConjectureReport&,
                         const ConjectureReport&) = default;
};

/// Compares each critical edge's growth rate with (|S| - 1) / (ell - 1).
/// Violations are reported, never raised.
inline ConjectureReport conjecture_check(const SourceModel& source,
                                         const MmiResult& mmi) {
  ConjectureReport report;
  for (Subset s : critical_edges(source, mmi).edges) {
    ConjectureEntry e;
    e.edge = s;
    e.rate = growth_rate(mmi, s);
    e.predicted = Rational(s.size() - 1) / Rational(mmi.ell - 1);
    e.holds = e.rate == e.predicted;
    report.entries.push_back(e);
  }
  return report;
}

struct ConjectureTally {
  int instances = 0;
  int edges = 0;
  int holds = 0;
  int violations = 0;
  int instances_with_violation = 0;
};

inline void accumulate(ConjectureTally& tally, const ConjectureReport& r) {
  ++tally.instances;
  bool violated = false;
  for (const auto& e : r.entries) {
    ++tally.edges;
    if (e.holds) {
      ++tally.holds;
    } else {
      ++tally.violations;
      violated = true;
    }
  }
  tally.instances_with_violation += violated;
}

}  // namespace ska

#endif  // SKA_ANALYSIS_HPP_
