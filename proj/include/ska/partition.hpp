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

#ifndef SKA_PARTITION_HPP_
#define SKA_PARTITION_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include "ska/error.hpp"
#include "ska/subset.hpp"

namespace ska {

/// Partition of the ground set {0, ..., n-1} into nonempty disjoint blocks.
/// Blocks are kept sorted by their smallest element, so two partitions are
/// equal iff they are syntactically equal.
class Partition {
 public:
  Partition() = default;
  Partition(int n, std::vector<Subset> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    Subset covered;
    for (Subset b : blocks_) {
      if (b.empty()) throw Error("partition with an empty block");
      if (b.intersects(covered)) throw Error("partition blocks overlap");
      covered |= b;
    }
    if (covered != Subset::full(n)) {
      throw Error("partition blocks do not cover the ground set");
    }
    std::sort(blocks_.begin(), blocks_.end(), [](Subset a, Subset b) {
      return a.min_element() < b.min_element();
    });
  }

  static Partition singletons(int n) {
    std::vector<Subset> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(Subset::singleton(i));
    return Partition(n, std::move(blocks));
  }
  static Partition whole(int n) { return Partition(n, {Subset::full(n)}); }

  int ground_size() const { return n_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const std::vector<Subset>& blocks() const { return blocks_; }
  Subset block(int i) const { return blocks_.at(i); }

  /// Index of the block holding element i.
  int block_of(int i) const {
    for (int k = 0; k < size(); ++k) {
      if (blocks_[k].contains(i)) return k;
    }
    throw Error("element outside the ground set");
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  int n_ = 0;
  std::vector<Subset> blocks_;
};

namespace detail {

inline void check_same_ground(const Partition& p, const Partition& q) {
  if (p.ground_size() != q.ground_size()) {
    throw Error("partitions over different ground sets");
  }
}

}  // namespace detail

/// True iff every block of `p` lies inside some block of `q`.
inline bool is_refinement(const Partition& p, const Partition& q) {
  detail::check_same_ground(p, q);
  for (Subset b : p.blocks()) {
    const bool inside = std::any_of(q.blocks().begin(), q.blocks().end(),
                                    [b](Subset c) { return c.contains(b); });
    if (!inside) return false;
  }
  return true;
}

/// Number of blocks of `p` that meet `s`.
inline int blocks_crossed(const Partition& p, Subset s) {
  int count = 0;
  for (Subset b : p.blocks()) count += b.intersects(s);
  return count;
}

/// Coarsest common refinement.
inline Partition meet(const Partition& p, const Partition& q) {
  detail::check_same_ground(p, q);
  std::vector<Subset> blocks;
  for (Subset a : p.blocks()) {
    for (Subset b : q.blocks()) {
      if (a.intersects(b)) blocks.push_back(a & b);
    }
  }
  return Partition(p.ground_size(), std::move(blocks));
}

/// Walks all set partitions of {0..n-1} as restricted growth strings: element
/// i goes to block label[i], and label[i] <= 1 + max(label[0..i-1]). Labels
/// are assigned in order of first appearance, so block k's smallest element
/// precedes block (k+1)'s.
class PartitionEnumerator {
 public:
  PartitionEnumerator(int n, int min_blocks)
      : n_(n), min_blocks_(min_blocks), label_(n, 0), prefix_max_(n, 0) {
    if (n < 1 || n > kMaxGroundSize) throw Error("bad ground-set size");
    if (min_blocks < 1 || min_blocks > n) {
      throw Error("min_blocks must lie in [1, n]");
    }
    done_ = false;
    if (block_count() < min_blocks_) advance();
    if (!done_) fill_blocks();
  }

  bool done() const { return done_; }
  int block_count() const { return prefix_max_[n_ - 1] + 1; }
  std::span<const Subset> blocks() const { return {blocks_.data(), blocks_.size()}; }
  Partition partition() const { return Partition(n_, blocks_); }

  void next() {
    advance();
    if (!done_) fill_blocks();
  }

 private:
  void step() {
    int i = n_ - 1;
    while (i > 0 && label_[i] > prefix_max_[i - 1]) --i;
    if (i == 0) {
      done_ = true;
      return;
    }
    ++label_[i];
    prefix_max_[i] = std::max(prefix_max_[i - 1], label_[i]);
    for (int j = i + 1; j < n_; ++j) {
      label_[j] = 0;
      prefix_max_[j] = prefix_max_[i];
    }
  }

  void advance() {
    do {
      step();
    } while (!done_ && block_count() < min_blocks_);
  }

  void fill_blocks() {
    blocks_.assign(block_count(), Subset());
    for (int i = 0; i < n_; ++i) blocks_[label_[i]] = blocks_[label_[i]].with(i);
  }

  int n_;
  int min_blocks_;
  bool done_ = true;
  std::vector<int> label_;
  std::vector<int> prefix_max_;
  std::vector<Subset> blocks_;
};

/// Calls fn(blocks) for every partition of {0..n-1} with at least
/// `min_blocks` blocks. Blocks arrive in canonical order.
template <typename Fn>
void for_each_partition(int n, int min_blocks, Fn&& fn) {
  for (PartitionEnumerator e(n, min_blocks); !e.done(); e.next()) {
    fn(e.blocks());
  }
}

/// Input range over the partitions of {0..n-1} with at least `min_blocks`
/// blocks, streamed in restricted-growth-string order.
class PartitionRange {
 public:
  PartitionRange(int n, int min_blocks) : n_(n), min_blocks_(min_blocks) {
    PartitionEnumerator probe(n, min_blocks);  // validates arguments
  }

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Partition;
    using difference_type = std::ptrdiff_t;
    using pointer = const Partition*;
    using reference = const Partition&;

    iterator() = default;
    iterator(int n, int min_blocks) : e_(std::in_place, n, min_blocks) {
      load();
    }
    const Partition& operator*() const { return current_; }
    const Partition* operator->() const { return &current_; }
    iterator& operator++() {
      e_->next();
      load();
      return *this;
    }
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return !e_ || e_->done(); }

   private:
    void load() {
      if (!e_->done()) current_ = e_->partition();
    }
    std::optional<PartitionEnumerator> e_;
    Partition current_;
  };

  iterator begin() const { return iterator(n_, min_blocks_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int n_;
  int min_blocks_;
};

inline PartitionRange enumerate_partitions(int n, int min_blocks) {
  return PartitionRange(n, min_blocks);
}

}  // namespace ska

#endif  // SKA_PARTITION_HPP_
