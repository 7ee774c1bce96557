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

#ifndef SKA_SUBMODULAR_MIN_HPP_
#define SKA_SUBMODULAR_MIN_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ska/error.hpp"
#include "ska/rational.hpp"
#include "ska/subset.hpp"

namespace ska {

/// Set function over {0, ..., ground_size-1} with exact values.
struct SetFunctionOracle {
  int ground_size = 0;
  std::function<Rational(Subset)> eval;

  Rational operator()(Subset s) const { return eval(s); }
};

/// The sets B with lower ⊆ B ⊆ upper.
struct LatticeFamily {
  Subset lower;
  Subset upper;

  Subset free() const { return upper - lower; }
};

/// The function B' -> f(lower ∪ B') - f(lower) on the free elements of a
/// lattice family, reindexed to {0, ..., m-1}.
class Contraction {
 public:
  Contraction(const SetFunctionOracle& f, const LatticeFamily& family)
      : f_(f), lower_(family.lower), free_(family.free().members()) {
    if (!family.upper.contains(family.lower)) {
      throw Error("lattice family needs lower ⊆ upper");
    }
    if (!Subset::full(f.ground_size).contains(family.upper)) {
      throw Error("lattice family exceeds the ground set");
    }
    base_ = f_(lower_);
  }

  int size() const { return static_cast<int>(free_.size()); }
  const Rational& base() const { return base_; }

  /// Maps a reduced set back to the original ground set (adding `lower`).
  Subset expand(Subset reduced) const {
    Subset out = lower_;
    for (int k : reduced) out = out.with(free_[k]);
    return out;
  }

  Rational operator()(Subset reduced) const {
    return f_(expand(reduced)) - base_;
  }

  SetFunctionOracle as_oracle() const {
    return {size(), [c = *this](Subset s) { return c(s); }};
  }

 private:
  SetFunctionOracle f_;
  Subset lower_;
  std::vector<int> free_;
  Rational base_;
};

struct BruteForceMinimum {
  Rational value;
  Subset minimizer;                 // first of `minimizers`
  std::vector<Subset> minimizers;   // canonical order
};

/// Exact minimum over a lattice family by enumerating every feasible set.
inline BruteForceMinimum minimize_bruteforce(const SetFunctionOracle& f,
                                             const LatticeFamily& family,
                                             int cap = 24) {
  if (!family.upper.contains(family.lower)) {
    throw Error("lattice family needs lower ⊆ upper");
  }
  if (family.free().size() > cap) {
    throw EnumerationLimitError("brute-force minimization over " +
                                std::to_string(family.free().size()) +
                                " free elements exceeds the cap of " +
                                std::to_string(cap));
  }
  BruteForceMinimum out;
  bool first = true;
  for_each_subset_of(family.free(), [&](Subset s) {
    const Subset b = family.lower | s;
    const Rational v = f(b);
    if (first || v < out.value) {
      out.value = v;
      out.minimizers.assign(1, b);
      first = false;
    } else if (v == out.value) {
      out.minimizers.push_back(b);
    }
  });
  std::sort(out.minimizers.begin(), out.minimizers.end(), canonical_less);
  out.minimizer = out.minimizers.front();
  return out;
}

/// Vertex of the base polytope of f produced by the greedy rule on `order`:
/// the element at position k receives f(prefix_k) - f(prefix_{k-1}).
inline std::vector<Rational> greedy_base_vertex(const SetFunctionOracle& f,
                                                std::span<const int> order) {
  std::vector<Rational> q(f.ground_size);
  Subset prefix;
  Rational prev = f(prefix);
  for (int i : order) {
    prefix = prefix.with(i);
    const Rational cur = f(prefix);
    q[i] = cur - prev;
    prev = cur;
  }
  return q;
}

/// Exhaustive submodularity check through the local exchange inequalities
/// f(A+i) + f(A+j) >= f(A+i+j) + f(A).
inline bool is_submodular(const SetFunctionOracle& f) {
  const int n = f.ground_size;
  std::vector<Rational> v(std::size_t{1} << n);
  for (Subset::Bits b = 0; b < v.size(); ++b) v[b] = f(Subset(b));
  for (Subset::Bits b = 0; b < v.size(); ++b) {
    const Subset a(b);
    for (int i = 0; i < n; ++i) {
      if (a.contains(i)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (a.contains(j)) continue;
        if (v[a.with(i).bits()] + v[a.with(j).bits()] <
            v[a.with(i).with(j).bits()] + v[b]) {
          return false;
        }
      }
    }
  }
  return true;
}

struct MnpOptions {
  double tolerance = 1e-10;
  /// Fallback to brute force is only attempted up to this many free elements.
  int bruteforce_cap = 24;
};

struct MnpMinimum {
  Rational value;
  Subset minimizer;
  bool fallback = false;   // true when brute force produced the answer
  double residual = 0;     // best value minus the dual lower bound
  int iterations = 0;      // major Wolfe iterations
  std::vector<std::string> diagnostics;
};

namespace detail {

using Vec = Eigen::VectorXd;

/// Coefficients (summing to 1) of the point of minimum norm in the affine
/// hull of the columns of `pts`.
inline Vec affine_minimizer(const Eigen::MatrixXd& pts) {
  const auto k = pts.cols();
  if (k == 1) return Vec::Ones(1);
  const Eigen::MatrixXd d = pts.rightCols(k - 1).colwise() - pts.col(0);
  const Vec rhs = -pts.col(0);
  Vec beta;
  // Normal equations first; QR when they are singular or inaccurate.
  const Eigen::MatrixXd gram = d.transpose() * d;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  bool ok = ldlt.info() == Eigen::Success;
  if (ok) {
    beta = ldlt.solve(d.transpose() * rhs);
    const double err = (gram * beta - d.transpose() * rhs).norm();
    ok = beta.allFinite() &&
         err <= 1e-9 * std::max(1.0, (d.transpose() * rhs).norm());
  }
  if (!ok) beta = d.colPivHouseholderQr().solve(rhs);
  Vec alpha(k);
  alpha(0) = 1.0 - beta.sum();
  alpha.tail(k - 1) = beta;
  return alpha;
}

}  // namespace detail

/// Minimizes a submodular f over a lattice family with the Fujishige-Wolfe
/// minimum-norm-point algorithm on the base polytope of the contracted
/// function.
///
/// The iteration runs in floating point. Candidate minimizers (all prefixes of
/// the final point's sorted coordinates) are re-evaluated exactly, and the
/// answer is trusted when the best candidate lies within rounding_unit / 4 of
/// the dual lower bound x^-(V). Every value of f is assumed to be a multiple
/// of `rounding_unit`. Otherwise, or when the iteration cap 10 * 2^m is hit,
/// the result comes from brute force and `fallback` is set.
inline MnpMinimum minimize_mnp(const SetFunctionOracle& f,
                               const LatticeFamily& family,
                               const Rational& rounding_unit,
                               const MnpOptions& options = {}) {
  if (rounding_unit.sign() <= 0) throw Error("rounding unit must be positive");
  const Contraction fc(f, family);
  const int m = fc.size();
  MnpMinimum out;
  if (m == 0) {
    out.value = fc.base();
    out.minimizer = family.lower;
    return out;
  }

  std::vector<int> order(m);
  const auto greedy = [&](const detail::Vec& weight) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight(a) < weight(b); });
    detail::Vec q(m);
    Subset prefix;
    Rational prev;
    for (int i : order) {
      prefix = prefix.with(i);
      const Rational cur = fc(prefix);
      q(i) = (cur - prev).to_double();
      prev = cur;
    }
    return q;
  };

  const double tol = options.tolerance;
  const std::int64_t cap =
      m >= 30 ? INT64_MAX : 10 * (std::int64_t{1} << m);

  std::vector<detail::Vec> corral{greedy(detail::Vec::Zero(m))};
  detail::Vec lambda = detail::Vec::Ones(1);
  detail::Vec x = corral.front();
  bool converged = false;

  const auto corral_matrix = [&] {
    Eigen::MatrixXd pts(m, static_cast<Eigen::Index>(corral.size()));
    for (std::size_t k = 0; k < corral.size(); ++k) {
      pts.col(static_cast<Eigen::Index>(k)) = corral[k];
    }
    return pts;
  };

  while (out.iterations < cap) {
    ++out.iterations;
    const detail::Vec q = greedy(x);
    const double xx = x.squaredNorm();
    if (xx - x.dot(q) <= tol * std::max(1.0, xx)) {
      converged = true;
      break;
    }
    const bool repeated = std::any_of(
        corral.begin(), corral.end(),
        [&](const detail::Vec& s) { return (s - q).norm() <= 1e-12; });
    if (repeated) {
      converged = true;
      break;
    }
    corral.push_back(q);
    lambda.conservativeResize(lambda.size() + 1);
    lambda(lambda.size() - 1) = 0.0;

    while (true) {
      const Eigen::MatrixXd pts = corral_matrix();
      const detail::Vec alpha = detail::affine_minimizer(pts);
      if (!alpha.allFinite()) {
        out.diagnostics.push_back("affine minimizer failed numerically");
        break;
      }
      if ((alpha.array() > 1e-12).all()) {
        lambda = alpha;
        x = pts * lambda;
        break;
      }
      // Step from lambda toward alpha until a coefficient hits zero.
      double theta = 1.0;
      for (Eigen::Index k = 0; k < alpha.size(); ++k) {
        if (alpha(k) <= 1e-12) {
          const double denom = lambda(k) - alpha(k);
          if (denom > 0) theta = std::min(theta, lambda(k) / denom);
        }
      }
      lambda = (1.0 - theta) * lambda + theta * alpha;
      std::vector<detail::Vec> kept;
      std::vector<double> kept_lambda;
      for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (lambda(k) > 1e-12) {
          kept.push_back(corral[static_cast<std::size_t>(k)]);
          kept_lambda.push_back(lambda(k));
        }
      }
      if (kept.empty()) {
        kept.push_back(corral.back());
        kept_lambda.push_back(1.0);
      }
      corral = std::move(kept);
      lambda = Eigen::Map<detail::Vec>(kept_lambda.data(),
                                       static_cast<Eigen::Index>(kept_lambda.size()));
      lambda /= lambda.sum();
      x = corral_matrix() * lambda;
      if (corral.size() == 1) break;
    }
  }

  // Exact re-evaluation of every threshold set of x.
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return x(a) < x(b); });
  Subset prefix;
  Rational best = fc(prefix);
  Subset best_set = prefix;
  for (int i : order) {
    prefix = prefix.with(i);
    const Rational v = fc(prefix);
    if (v < best) {
      best = v;
      best_set = prefix;
    }
  }
  double lower_bound = 0;
  for (Eigen::Index i = 0; i < m; ++i) lower_bound += std::min(x(i), 0.0);
  out.residual = best.to_double() - lower_bound;
  const double quarter = rounding_unit.to_double() / 4;

  if (out.residual < -quarter) {
    out.diagnostics.push_back(
        "non-submodular behavior: a feasible set beats the base-polytope "
        "lower bound");
  }
  if (!converged) {
    out.diagnostics.push_back("iteration cap reached");
  }
  if (converged && std::abs(out.residual) < quarter) {
    out.value = best + fc.base();
    out.minimizer = fc.expand(best_set);
    return out;
  }

  out.fallback = true;
  out.diagnostics.push_back("residual " + std::to_string(out.residual) +
                            " not below rounding_unit/4; brute force used");
  const auto bf = minimize_bruteforce(f, family, options.bruteforce_cap);
  out.value = bf.value;
  out.minimizer = bf.minimizer;
  return out;
}

}  // namespace ska

#endif  // SKA_SUBMODULAR_MIN_HPP_
