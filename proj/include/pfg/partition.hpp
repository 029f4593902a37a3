// Copyright 2026 The pfg Authors
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

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pfg/coalition.hpp"

namespace pfg {

// A partition of the ground set {0, ..., n-1} into non-empty blocks, kept in
// canonical order (ascending minimum agent).
//
// Convention for the grand coalition: the partition {N} is understood as
// {N, emptyset}. The empty block is never stored, but size() reports 2 for
// it, and the transfer-target set at (N, {N, emptyset}) is exactly
// {emptyset}. All other partitions report their stored block count.
class Partition {
 public:
  Partition() = default;

  static Partition of_blocks(int n, std::span<const Coalition> blocks) {
    check_n(n);
    Partition p;
    p.n_ = static_cast<std::uint8_t>(n);
    Coalition seen;
    int covered = 0;
    for (const Coalition& b : blocks) {
      if (b.empty()) {
        throw std::invalid_argument("partition: empty block");
      }
      if (b.intersects(seen)) {
        throw std::invalid_argument("partition: overlapping blocks");
      }
      seen = seen.united(b);
      covered += b.size();
      if (p.count_ >= n) {
        throw std::invalid_argument("partition: too many blocks");
      }
      p.blocks_[p.count_++] = b;
    }
    if (seen != Coalition::full(n) || covered != n) {
      throw std::invalid_argument("partition: blocks do not cover the ground set");
    }
    std::sort(p.blocks_.begin(), p.blocks_.begin() + p.count_,
              [](Coalition a, Coalition b) { return a.min_agent() < b.min_agent(); });
    return p;
  }

  static Partition of_blocks(int n, std::initializer_list<Coalition> blocks) {
    return of_blocks(n, std::span<const Coalition>(blocks.begin(), blocks.size()));
  }

  static Partition grand(int n) {
    check_n(n);
    Partition p;
    p.n_ = static_cast<std::uint8_t>(n);
    p.count_ = 1;
    p.blocks_[0] = Coalition::full(n);
    return p;
  }

  static Partition singletons(int n) {
    check_n(n);
    Partition p;
    p.n_ = static_cast<std::uint8_t>(n);
    p.count_ = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) p.blocks_[i] = Coalition::single(i);
    return p;
  }

  // Builds from a restricted-growth string: labels[a] is the block of agent
  // a, labels[0] == 0 and labels[a] <= 1 + max(labels[0..a-1]). Blocks come
  // out in canonical order because label j first appears at its minimum
  // agent.
  static Partition from_rgs(std::span<const int> labels) {
    const int n = static_cast<int>(labels.size());
    check_n(n);
    Partition p;
    p.n_ = static_cast<std::uint8_t>(n);
    int max_label = -1;
    for (int a = 0; a < n; ++a) {
      const int l = labels[static_cast<std::size_t>(a)];
      if (l < 0 || l > max_label + 1) {
        throw std::invalid_argument("invalid restricted-growth string");
      }
      if (l == max_label + 1) {
        ++max_label;
        ++p.count_;
      }
      p.blocks_[l] = p.blocks_[l].with(a);
    }
    return p;
  }

  int n() const { return n_; }

  // Number of blocks, counting the conventional empty block at the grand
  // coalition: {N} reports 2.
  int size() const { return count_ == 1 ? 2 : count_; }

  // Number of stored (non-empty) blocks.
  int block_count() const { return count_; }

  bool is_grand() const { return count_ == 1; }

  std::span<const Coalition> blocks() const {
    return std::span<const Coalition>(blocks_.data(), count_);
  }

  bool contains_block(Coalition c) const {
    for (const Coalition& b : blocks()) {
      if (b == c) return true;
    }
    return false;
  }

  Coalition block_of(int agent) const {
    if (agent < 0 || agent >= n_) {
      throw std::invalid_argument("agent index out of range");
    }
    for (const Coalition& b : blocks()) {
      if (b.contains(agent)) return b;
    }
    throw std::logic_error("partition invariant broken");
  }

  // Index (in canonical block order) of the block containing the agent.
  int block_index_of(int agent) const {
    if (agent < 0 || agent >= n_) {
      throw std::invalid_argument("agent index out of range");
    }
    for (int i = 0; i < count_; ++i) {
      if (blocks_[static_cast<std::size_t>(i)].contains(agent)) return i;
    }
    throw std::logic_error("partition invariant broken");
  }

  // Canonical key: the restricted-growth string packed 4 bits per agent.
  std::uint64_t code() const {
    std::uint64_t code = 0;
    for (int a = 0; a < n_; ++a) {
      code |= static_cast<std::uint64_t>(block_index_of(a)) << (4 * a);
    }
    return code;
  }

  bool operator==(const Partition& other) const {
    if (n_ != other.n_ || count_ != other.count_) return false;
    return std::equal(blocks_.begin(), blocks_.begin() + count_,
                      other.blocks_.begin());
  }

 private:
  static void check_n(int n) {
    if (n < 1 || n > kMaxAgents) {
      throw size_limit_error("ground set size must be in 1..12");
    }
  }

  std::array<Coalition, kMaxAgents> blocks_{};
  std::uint8_t n_ = 0;
  std::uint8_t count_ = 0;
};

// A coalition together with a partition it belongs to. The pair
// (emptyset, {N, emptyset}) is not constructible: subjects are always
// stored, non-empty blocks.
class EmbeddedCoalition {
 public:
  EmbeddedCoalition(Coalition subject, Partition partition)
      : subject_(subject), partition_(std::move(partition)) {
    if (!partition_.contains_block(subject_)) {
      throw std::invalid_argument("subject is not a block of the partition");
    }
  }

  const Coalition& subject() const { return subject_; }
  const Partition& partition() const { return partition_; }
  int n() const { return partition_.n(); }

  bool operator==(const EmbeddedCoalition&) const = default;

 private:
  Coalition subject_;
  Partition partition_;
};

// A set of pairwise-disjoint non-empty coalitions; what remains of a
// partition when blocks are removed. The distinguished fragment {emptyset}
// (no real blocks) stands for the conventional leftover of the grand
// coalition, and compares below every fragment under reduces_to.
class PartitionFragment {
 public:
  static PartitionFragment empty_set() { return PartitionFragment({}); }

  static PartitionFragment of_blocks(std::vector<Coalition> blocks) {
    Coalition seen;
    for (const Coalition& b : blocks) {
      if (b.empty()) {
        throw std::invalid_argument("fragment: empty block");
      }
      if (b.intersects(seen)) {
        throw std::invalid_argument("fragment: overlapping blocks");
      }
      seen = seen.united(b);
    }
    std::sort(blocks.begin(), blocks.end(),
              [](Coalition a, Coalition b) { return a.min_agent() < b.min_agent(); });
    return PartitionFragment(std::move(blocks));
  }

  static PartitionFragment of_partition(const Partition& p) {
    auto b = p.blocks();
    return PartitionFragment(std::vector<Coalition>(b.begin(), b.end()));
  }

  bool is_empty_set() const { return blocks_.empty(); }
  std::span<const Coalition> blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }

  Coalition agents() const {
    Coalition all;
    for (const Coalition& b : blocks_) all = all.united(b);
    return all;
  }

  bool operator==(const PartitionFragment&) const = default;

 private:
  explicit PartitionFragment(std::vector<Coalition> blocks)
      : blocks_(std::move(blocks)) {}

  std::vector<Coalition> blocks_;
};

// P with the block S removed. Removing N from {N, emptyset} leaves the
// distinguished fragment {emptyset}.
inline PartitionFragment remove_subject(const Partition& p, const Coalition& s) {
  if (!p.contains_block(s)) {
    throw std::invalid_argument("remove_subject: not a block of the partition");
  }
  std::vector<Coalition> rest;
  rest.reserve(static_cast<std::size_t>(p.block_count()));
  for (const Coalition& b : p.blocks()) {
    if (b != s) rest.push_back(b);
  }
  return PartitionFragment::of_blocks(std::move(rest));
}

// All partitions of {0, ..., n-1} in lexicographic order of their
// restricted-growth strings. The first entry is always {N} and the last is
// the singleton partition.
inline std::vector<Partition> enumerate_partitions(int n) {
  if (n < 1 || n > kMaxAgents) {
    throw size_limit_error("ground set size must be in 1..12");
  }
  std::vector<Partition> out;
  std::array<int, kMaxAgents> labels{};
  const auto emit = [&] {
    out.push_back(Partition::from_rgs(
        std::span<const int>(labels.data(), static_cast<std::size_t>(n))));
  };
  const auto recurse = [&](auto&& self, int pos, int max_label) -> void {
    if (pos == n) {
      emit();
      return;
    }
    for (int l = 0; l <= max_label + 1; ++l) {
      labels[static_cast<std::size_t>(pos)] = l;
      self(self, pos + 1, std::max(max_label, l));
    }
  };
  labels[0] = 0;
  recurse(recurse, 1, 0);
  return out;
}

// All embedded coalitions of {0, ..., n-1}: partition-major (enumeration
// order above), block-minor (canonical block order).
inline std::vector<EmbeddedCoalition> enumerate_embedded(int n) {
  std::vector<EmbeddedCoalition> out;
  for (const Partition& p : enumerate_partitions(n)) {
    for (const Coalition& b : p.blocks()) {
      out.push_back(EmbeddedCoalition(b, p));
    }
  }
  return out;
}

// Destination block of a single-agent transfer: an existing block of the
// partition, or nullopt for the conventional empty coalition (the agent
// leaves to form a singleton).
using TransferTarget = std::optional<Coalition>;

// Moves one agent from its block to the target. The source loses the agent
// (and disappears when it becomes empty); the target gains it. A nullopt
// target creates the singleton {agent}. The block count never changes by
// more than one.
inline Partition transfer(const Partition& p, const Coalition& from,
                          const TransferTarget& to, int agent) {
  if (!p.contains_block(from)) {
    throw std::invalid_argument("transfer: source is not a block");
  }
  if (!from.contains(agent)) {
    throw std::invalid_argument("transfer: agent not in source block");
  }
  if (to.has_value()) {
    if (*to == from) {
      throw std::invalid_argument("transfer: target equals source");
    }
    if (!p.contains_block(*to)) {
      throw std::invalid_argument("transfer: target is not a block");
    }
  }
  std::array<Coalition, kMaxAgents + 1> blocks;
  std::size_t count = 0;
  for (const Coalition& b : p.blocks()) {
    if (b == from || (to.has_value() && b == *to)) continue;
    blocks[count++] = b;
  }
  const Coalition left = from.without(agent);
  if (!left.empty()) blocks[count++] = left;
  blocks[count++] = to.has_value() ? to->with(agent) : Coalition::single(agent);
  return Partition::of_blocks(
      p.n(), std::span<const Coalition>(blocks.data(), count));
}

// Admissible targets for moving an agent out of `from`: every other block of
// the partition, then the empty coalition. At (N, {N, emptyset}) the list is
// exactly {emptyset}.
inline std::vector<TransferTarget> transfer_targets(const Partition& p,
                                                    const Coalition& from) {
  if (!p.contains_block(from)) {
    throw std::invalid_argument("transfer_targets: source is not a block");
  }
  std::vector<TransferTarget> out;
  out.reserve(static_cast<std::size_t>(p.block_count()));
  for (const Coalition& b : p.blocks()) {
    if (b != from) out.push_back(b);
  }
  out.push_back(std::nullopt);
  return out;
}

namespace detail {

// reduces_to with the candidate extension given as a raw block list. Checks
// that each block of `reduced` sits inside a single block of the list and
// that distinct blocks map to distinct containers.
inline bool reduces_to_blocks(const PartitionFragment& reduced,
                              std::span<const Coalition> blocks) {
  std::uint32_t used = 0;
  for (const Coalition& small : reduced.blocks()) {
    int host = -1;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].contains(small.min_agent())) {
        host = static_cast<int>(i);
        break;
      }
    }
    if (host < 0 || !small.subset_of(blocks[static_cast<std::size_t>(host)])) {
      return false;
    }
    if ((used >> host) & 1u) return false;
    used |= 1u << host;
  }
  return true;
}

}  // namespace detail

// Whether `larger` can be reduced to `reduced`: every agent of `reduced`
// appears in `larger`, agents sharing a block in `reduced` share one in
// `larger`, and agents in distinct blocks of `reduced` stay in distinct
// blocks of `larger`. Equivalently, deleting agents and then whole blocks
// from `larger` can produce `reduced`. The fragment {emptyset} reduces from
// everything; nothing else reduces from {emptyset}.
inline bool reduces_to(const PartitionFragment& reduced,
                       const PartitionFragment& larger) {
  return detail::reduces_to_blocks(reduced, larger.blocks());
}

// Number of partitions of {0, ..., n-1} that the fragment reduces from.
// For {emptyset} this is the number of all partitions. Depends only on the
// fragment's block count and number of covered agents, not on their shape.
inline std::uint64_t count_extensions(const PartitionFragment& fragment,
                                      int n) {
  if (!fragment.agents().subset_of(Coalition::full(n))) {
    throw std::invalid_argument("count_extensions: fragment exceeds ground set");
  }
  std::uint64_t count = 0;
  for (const Partition& p : enumerate_partitions(n)) {
    if (detail::reduces_to_blocks(fragment, p.blocks())) ++count;
  }
  return count;
}

inline Partition apply_permutation(const AgentPermutation& sigma,
                                   const Partition& p) {
  if (sigma.n() != p.n()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  std::array<Coalition, kMaxAgents> blocks;
  std::size_t count = 0;
  for (const Coalition& b : p.blocks()) blocks[count++] = sigma.apply(b);
  return Partition::of_blocks(
      p.n(), std::span<const Coalition>(blocks.data(), count));
}

inline EmbeddedCoalition apply_permutation(const AgentPermutation& sigma,
                                           const EmbeddedCoalition& ec) {
  return EmbeddedCoalition(sigma.apply(ec.subject()),
                           apply_permutation(sigma, ec.partition()));
}

// Cached enumeration of one ground set: its partitions, its embedded
// coalitions, and index lookups for both. Shared and immutable after
// construction.
class EmbeddedSpace {
 public:
  static const EmbeddedSpace& get(int n) {
    if (n < 1 || n > kMaxAgents) {
      throw size_limit_error("ground set size must be in 1..12");
    }
    static std::mutex mu;
    static std::map<int, std::unique_ptr<const EmbeddedSpace>> cache;
    std::scoped_lock lock(mu);
    auto& slot = cache[n];
    if (!slot) slot.reset(new EmbeddedSpace(n));
    return *slot;
  }

  int n() const { return n_; }
  const std::vector<Partition>& partitions() const { return partitions_; }
  std::size_t ec_count() const { return entries_.size(); }

  const Coalition& subject(std::size_t ec_index) const {
    return entries_.at(ec_index).subject;
  }

  const Partition& partition(std::size_t ec_index) const {
    return partitions_[entries_.at(ec_index).partition];
  }

  EmbeddedCoalition ec(std::size_t ec_index) const {
    return EmbeddedCoalition(subject(ec_index), partition(ec_index));
  }

  std::size_t partition_index(const Partition& p) const {
    auto it = partition_idx_.find(p.code());
    if (it == partition_idx_.end() || !(partitions_[it->second] == p)) {
      throw std::invalid_argument("partition not in this space");
    }
    return it->second;
  }

  std::size_t index_of(const Coalition& s, const Partition& p) const {
    const std::size_t pi = partition_index(p);
    const auto blocks = p.blocks();
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b] == s) return partition_ec_offset_[pi] + b;
    }
    throw std::invalid_argument("subject is not a block of the partition");
  }

  std::size_t index_of(const EmbeddedCoalition& ec) const {
    return index_of(ec.subject(), ec.partition());
  }

  // Embedded-coalition indices ordered by subject size (ascending), ties by
  // index. Forward substitution over the coalition-basis triangle follows
  // this order.
  const std::vector<std::size_t>& by_subject_size() const { return by_size_; }

  // Index of (N, {N, emptyset}).
  std::size_t grand_index() const { return grand_index_; }

 private:
  explicit EmbeddedSpace(int n) : n_(n), partitions_(enumerate_partitions(n)) {
    partition_idx_.reserve(partitions_.size() * 2);
    partition_ec_offset_.reserve(partitions_.size());
    std::size_t offset = 0;
    for (std::size_t pi = 0; pi < partitions_.size(); ++pi) {
      partition_idx_.emplace(partitions_[pi].code(),
                             static_cast<std::uint32_t>(pi));
      partition_ec_offset_.push_back(offset);
      for (const Coalition& b : partitions_[pi].blocks()) {
        entries_.push_back(Entry{static_cast<std::uint32_t>(pi), b});
      }
      offset = entries_.size();
    }
    by_size_.resize(entries_.size());
    for (std::size_t i = 0; i < by_size_.size(); ++i) by_size_[i] = i;
    std::stable_sort(by_size_.begin(), by_size_.end(),
                     [&](std::size_t a, std::size_t b) {
                       return entries_[a].subject.size() <
                              entries_[b].subject.size();
                     });
    grand_index_ = index_of(Coalition::full(n), Partition::grand(n));
  }

  struct Entry {
    std::uint32_t partition;
    Coalition subject;
  };

  int n_;
  std::vector<Partition> partitions_;
  std::vector<Entry> entries_;
  std::unordered_map<std::uint64_t, std::uint32_t> partition_idx_;
  std::vector<std::size_t> partition_ec_offset_;
  std::vector<std::size_t> by_size_;
  std::size_t grand_index_ = 0;
};

}  // namespace pfg
