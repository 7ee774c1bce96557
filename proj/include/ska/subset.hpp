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

#ifndef SKA_SUBSET_HPP_
#define SKA_SUBSET_HPP_

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <vector>

namespace ska {

/// Largest ground set a bitmask subset can address.
inline constexpr int kMaxGroundSize = 31;

/// Subset of a ground set {0, ..., n-1}, stored as a bitmask. Element i is
/// the i-th user (or block index) in ground-set order.
class Subset {
 public:
  using Bits = std::uint32_t;

  constexpr Subset() = default;
  constexpr explicit Subset(Bits bits) : bits_(bits) {}

  static constexpr Subset singleton(int i) { return Subset(Bits{1} << i); }
  static constexpr Subset full(int n) {
    return Subset(n >= 32 ? ~Bits{0} : (Bits{1} << n) - 1);
  }
  static Subset of(std::initializer_list<int> members) {
    Subset s;
    for (int i : members) s = s.with(i);
    return s;
  }

  constexpr Bits bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1U; }
  /// True iff `other` is a subset of this set.
  constexpr bool contains(Subset other) const {
    return (other.bits_ & ~bits_) == 0;
  }
  constexpr bool intersects(Subset other) const {
    return (bits_ & other.bits_) != 0;
  }
  constexpr Subset with(int i) const { return Subset(bits_ | (Bits{1} << i)); }
  constexpr Subset without(int i) const {
    return Subset(bits_ & ~(Bits{1} << i));
  }
  /// Smallest member; undefined on the empty set.
  constexpr int min_element() const { return std::countr_zero(bits_); }

  constexpr Subset operator|(Subset o) const { return Subset(bits_ | o.bits_); }
  constexpr Subset operator&(Subset o) const { return Subset(bits_ & o.bits_); }
  /// Set difference.
  constexpr Subset operator-(Subset o) const {
    return Subset(bits_ & ~o.bits_);
  }
  Subset& operator|=(Subset o) { return *this = *this | o; }
  Subset& operator&=(Subset o) { return *this = *this & o; }

  friend constexpr bool operator==(Subset, Subset) = default;
  friend constexpr auto operator<=>(Subset, Subset) = default;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = const int*;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(Bits rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    friend constexpr bool operator==(iterator, iterator) = default;

   private:
    Bits rest_ = 0;
  };

  /// Iterates members in increasing index order.
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> members() const { return {begin(), end()}; }

 private:
  Bits bits_ = 0;
};

/// Visits every subset of `mask` (including the empty set and `mask`).
template <typename Fn>
void for_each_subset_of(Subset mask, Fn&& fn) {
  const auto m = mask.bits();
  Subset::Bits s = 0;
  while (true) {
    fn(Subset(s));
    if (s == m) break;
    s = (s - m) & m;
  }
}

/// Canonical ordering of subsets for reports: lexicographic on the sorted
/// member lists, so {1,2} < {1,2,3} < {1,3} < {2}.
inline bool canonical_less(Subset a, Subset b) {
  return a.members() < b.members();
}

inline void sort_canonical(std::vector<Subset>& family) {
  std::sort(family.begin(), family.end(), canonical_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
}

/// Inclusion-wise maximal members of `family` (duplicates collapsed).
inline std::vector<Subset> maximal_sets(const std::vector<Subset>& family) {
  std::vector<Subset> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < family.size() && !dominated; ++j) {
      if (family[j] == family[i]) {
        dominated = j < i;
      } else {
        dominated = family[j].contains(family[i]);
      }
    }
    if (!dominated) out.push_back(family[i]);
  }
  return out;
}

/// Inclusion-wise minimal members of `family` (duplicates collapsed).
inline std::vector<Subset> minimal_sets(const std::vector<Subset>& family) {
  std::vector<Subset> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < family.size() && !dominated; ++j) {
      if (family[j] == family[i]) {
        dominated = j < i;
      } else {
        dominated = family[i].contains(family[j]);
      }
    }
    if (!dominated) out.push_back(family[i]);
  }
  return out;
}

}  // namespace ska

#endif  // SKA_SUBSET_HPP_
