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

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pfg/coalition.hpp"
#include "pfg/game.hpp"
#include "pfg/partition.hpp"
#include "pfg/rational.hpp"

namespace pfg {

// One summand of a marginal contribution: what the coalition loses when the
// agent moves to the target. The subtrahend is the remainder's value in the
// transferred partition; for a departing singleton it is 0 (the empty
// coalition's worth).
inline Rational elementary_mc(const Game& v, int agent, const Coalition& s,
                              const Partition& p, const TransferTarget& to) {
  if (p.n() != v.n()) {
    throw std::invalid_argument("elementary_mc: ground set mismatch");
  }
  const Partition after = transfer(p, s, to, agent);
  return v.value(s, p) - v.value(s.without(agent), after);
}

namespace detail {

// The partition's blocks minus one (possibly empty, meaning remove nothing).
inline PartitionFragment fragment_without(const Partition& p,
                                          const Coalition& removed) {
  std::vector<Coalition> blocks;
  blocks.reserve(static_cast<std::size_t>(p.block_count()));
  for (const Coalition& b : p.blocks()) {
    if (removed.empty() || b != removed) blocks.push_back(b);
  }
  return PartitionFragment::of_blocks(std::move(blocks));
}

// count_extensions depends only on the fragment's block count and covered
// agents, so distinct fragments share cache slots. The cache lives here so
// count_extensions itself stays a direct enumeration.
inline std::uint64_t counted_extensions(const PartitionFragment& fragment, int n) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::uint64_t> cache;
  const std::tuple<int, int, int> key{n, fragment.block_count(),
                                      fragment.agents().size()};
  {
    std::scoped_lock lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::uint64_t count = count_extensions(fragment, n);
  std::scoped_lock lock(mu);
  cache.emplace(key, count);
  return count;
}

}  // namespace detail

// The Hu-Yang weight of one elementary contribution. Moves to existing
// blocks weigh 1; the move to the empty coalition weighs 1 + r, where r
// compensates for the target partitions that can no longer arise:
//
//   1 + r = count_extensions(after-empty-move fragment minus S - i)
//         / count_extensions(after-existing-move fragment minus S - i).
//
// The denominator does not depend on which existing block is chosen. At the
// grand coalition the empty move is the only one and weighs 1.
inline Rational huyang_weight(int agent, const Coalition& s, const Partition& p,
                              const TransferTarget& to, int n) {
  if (p.n() != n) {
    throw std::invalid_argument("huyang_weight: ground set mismatch");
  }
  if (!p.contains_block(s) || !s.contains(agent)) {
    throw std::invalid_argument("huyang_weight: invalid embedded coalition");
  }
  if (to.has_value()) {
    if (*to == s || !p.contains_block(*to)) {
      throw std::invalid_argument("huyang_weight: invalid target");
    }
    return Rational(1);
  }
  if (p.is_grand()) return Rational(1);
  const Coalition rest = s.without(agent);
  const PartitionFragment above = detail::fragment_without(
      transfer(p, s, std::nullopt, agent), rest);
  const TransferTarget first = transfer_targets(p, s).front();
  const PartitionFragment below = detail::fragment_without(
      transfer(p, s, first, agent), rest);
  return Rational(BigInt(detail::counted_extensions(above, n)),
                  BigInt(detail::counted_extensions(below, n)));
}

enum class SchemeFamily {
  bolger,
  externality_free,
  steady,
  hu_yang,
  custom,
};

// A rule assigning a non-negative weight to each elementary contribution
// (agent, coalition, partition, target). Named schemes:
//
//   bolger            1 on every target, empty included.
//   externality_free  1 on the empty target only.
//   steady            1 on existing blocks, 0 on the empty target; at the
//                     grand coalition (whose only target is the empty one)
//                     the empty target weighs 1.
//   hu_yang           1 on existing blocks, 1 + r on the empty target
//                     (see huyang_weight).
//
// With `normalized`, marginal contributions divide by the total weight over
// the targets of the embedded coalition.
class WeightScheme {
 public:
  using WeightFn = std::function<Rational(
      int, const Coalition&, const Partition&, const TransferTarget&)>;

  static WeightScheme bolger(bool normalized = false) {
    return WeightScheme(SchemeFamily::bolger, "bolger", normalized,
                        [](int, const Coalition&, const Partition&,
                           const TransferTarget&) { return Rational(1); });
  }

  static WeightScheme externality_free(bool normalized = false) {
    return WeightScheme(SchemeFamily::externality_free, "free", normalized,
                        [](int, const Coalition&, const Partition&,
                           const TransferTarget& to) {
                          return Rational(to.has_value() ? 0 : 1);
                        });
  }

  static WeightScheme steady(bool normalized = false) {
    return WeightScheme(SchemeFamily::steady, "steady", normalized,
                        [](int, const Coalition&, const Partition& p,
                           const TransferTarget& to) {
                          if (to.has_value()) return Rational(1);
                          return Rational(p.is_grand() ? 1 : 0);
                        });
  }

  static WeightScheme hu_yang(bool normalized = false) {
    return WeightScheme(SchemeFamily::hu_yang, "huyang", normalized,
                        [](int agent, const Coalition& s, const Partition& p,
                           const TransferTarget& to) {
                          return huyang_weight(agent, s, p, to, p.n());
                        });
  }

  static WeightScheme custom(std::string name, WeightFn raw,
                             bool normalized = false) {
    return WeightScheme(SchemeFamily::custom, std::move(name), normalized,
                        std::move(raw));
  }

  SchemeFamily family() const { return family_; }
  const std::string& name() const { return name_; }
  bool normalized() const { return normalized_; }

  WeightScheme with_normalized(bool normalized) const {
    WeightScheme copy = *this;
    copy.normalized_ = normalized;
    return copy;
  }

  // The unnormalized weight of one elementary contribution. Negative weights
  // from custom rules are rejected.
  Rational raw_weight(int agent, const Coalition& s, const Partition& p,
                      const TransferTarget& to) const {
    Rational w = raw_(agent, s, p, to);
    if (w < 0) {
      throw std::invalid_argument("scheme '" + name_ +
                                  "' produced a negative weight");
    }
    return w;
  }

 private:
  WeightScheme(SchemeFamily family, std::string name, bool normalized,
               WeightFn raw)
      : family_(family), name_(std::move(name)), normalized_(normalized),
        raw_(std::move(raw)) {}

  SchemeFamily family_;
  std::string name_;
  bool normalized_;
  WeightFn raw_;
};

// The scheme's marginal contribution of the agent at (s, p): the weighted
// sum of elementary contributions over all targets, divided by the total
// weight when the scheme is normalized. Every scheme must put nonzero
// weight on the grand coalition's only target (the empty coalition);
// schemes violating that are rejected here.
inline Rational marginal_contribution(const Game& v, int agent,
                                      const Coalition& s, const Partition& p,
                                      const WeightScheme& scheme) {
  if (p.n() != v.n()) {
    throw std::invalid_argument("marginal_contribution: ground set mismatch");
  }
  if (!p.contains_block(s) || !s.contains(agent)) {
    throw std::invalid_argument(
        "marginal_contribution: invalid embedded coalition");
  }
  Rational acc(0);
  Rational total(0);
  for (const TransferTarget& to : transfer_targets(p, s)) {
    const Rational w = scheme.raw_weight(agent, s, p, to);
    if (p.is_grand() && !to.has_value() && w == 0) {
      throw std::invalid_argument(
          "scheme '" + scheme.name() +
          "' puts zero weight on the grand coalition's empty target");
    }
    if (w != 0) acc += w * elementary_mc(v, agent, s, p, to);
    total += w;
  }
  if (!scheme.normalized()) return acc;
  if (total == 0) {
    throw std::invalid_argument("scheme '" + scheme.name() +
                                "' cannot be normalized at " +
                                format_embedded(EmbeddedCoalition(s, p)));
  }
  return acc / total;
}

// All marginal contributions of one agent, over the embedded coalitions
// whose subject contains the agent, in canonical enumeration order.
struct MarginalVector {
  int n = 0;
  int agent = 0;
  std::vector<std::pair<std::size_t, Rational>> entries;

  bool is_zero() const {
    for (const auto& [index, value] : entries) {
      if (value != 0) return false;
    }
    return true;
  }
};

inline MarginalVector mc_vector(const Game& v, int agent,
                                const WeightScheme& scheme) {
  if (agent < 0 || agent >= v.n()) {
    throw std::invalid_argument("agent index out of range");
  }
  const EmbeddedSpace& space = v.space();
  MarginalVector out{v.n(), agent, {}};
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    const Coalition s = space.subject(i);
    if (!s.contains(agent)) continue;
    out.entries.emplace_back(
        i, marginal_contribution(v, agent, s, space.partition(i), scheme));
  }
  return out;
}

// Whether the agent's marginal contributions vanish everywhere under the
// scheme. Nullity does not depend on the scheme's normalized flag.
inline bool is_null_player(const Game& v, int agent, const WeightScheme& scheme) {
  return mc_vector(v, agent, scheme).is_zero();
}

// The stronger, scheme-independent notion: every elementary contribution of
// the agent is zero. This implies nullity under every weight scheme.
inline bool is_elementary_null_player(const Game& v, int agent) {
  if (agent < 0 || agent >= v.n()) {
    throw std::invalid_argument("agent index out of range");
  }
  const EmbeddedSpace& space = v.space();
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    const Coalition s = space.subject(i);
    if (!s.contains(agent)) continue;
    const Partition& p = space.partition(i);
    for (const TransferTarget& to : transfer_targets(p, s)) {
      if (elementary_mc(v, agent, s, p, to) != 0) return false;
    }
  }
  return true;
}

}  // namespace pfg
