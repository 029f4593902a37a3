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
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace pfg {

// Largest ground set the library handles. Partition enumeration is
// exponential, so this is a hard cap rather than a tunable.
inline constexpr int kMaxAgents = 12;

// Thrown when a requested ground set exceeds kMaxAgents (or is empty where
// a non-empty one is required).
struct size_limit_error : std::domain_error {
  using std::domain_error::domain_error;
};

// A set of agents, stored as a bitmask. Agents are 0-indexed internally;
// the text format is 1-indexed (see game.hpp).
class Coalition {
 public:
  using mask_type = std::uint16_t;

  constexpr Coalition() = default;

  static constexpr Coalition from_bits(mask_type bits) {
    return Coalition(bits);
  }

  static constexpr Coalition single(int agent) {
    return Coalition(static_cast<mask_type>(mask_type{1} << check(agent)));
  }

  // The full set {0, ..., n-1}.
  static constexpr Coalition full(int n) {
    if (n < 0 || n > kMaxAgents) {
      throw std::invalid_argument("coalition: agent count out of range");
    }
    return Coalition(static_cast<mask_type>((mask_type{1} << n) - 1));
  }

  static constexpr Coalition of(std::initializer_list<int> agents) {
    Coalition c;
    for (int a : agents) c = c.with(a);
    return c;
  }

  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr mask_type bits() const { return bits_; }

  constexpr bool contains(int agent) const {
    return (bits_ >> check(agent)) & 1u;
  }

  constexpr Coalition with(int agent) const {
    return Coalition(static_cast<mask_type>(bits_ | (mask_type{1} << check(agent))));
  }

  constexpr Coalition without(int agent) const {
    return Coalition(static_cast<mask_type>(bits_ & ~(mask_type{1} << check(agent))));
  }

  constexpr bool subset_of(Coalition other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  constexpr bool intersects(Coalition other) const {
    return (bits_ & other.bits_) != 0;
  }

  constexpr Coalition united(Coalition other) const {
    return Coalition(static_cast<mask_type>(bits_ | other.bits_));
  }

  constexpr Coalition intersect(Coalition other) const {
    return Coalition(static_cast<mask_type>(bits_ & other.bits_));
  }

  constexpr Coalition minus(Coalition other) const {
    return Coalition(static_cast<mask_type>(bits_ & ~other.bits_));
  }

  // Smallest agent; requires a non-empty coalition.
  constexpr int min_agent() const {
    if (bits_ == 0) {
      throw std::invalid_argument("min_agent of empty coalition");
    }
    return std::countr_zero(bits_);
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (mask_type m = bits_; m != 0; m &= static_cast<mask_type>(m - 1)) {
      out.push_back(std::countr_zero(m));
    }
    return out;
  }

  friend constexpr auto operator<=>(Coalition, Coalition) = default;

 private:
  explicit constexpr Coalition(mask_type bits) : bits_(bits) {}

  static constexpr int check(int agent) {
    if (agent < 0 || agent >= kMaxAgents) {
      throw std::invalid_argument("agent index out of range");
    }
    return agent;
  }

  mask_type bits_ = 0;
};

// A bijection on {0, ..., n-1}.
class AgentPermutation {
 public:
  // image[i] is the image of agent i. Must be a permutation of 0..n-1.
  explicit AgentPermutation(std::vector<int> image) : image_(std::move(image)) {
    const int n = static_cast<int>(image_.size());
    if (n < 1 || n > kMaxAgents) {
      throw std::invalid_argument("permutation size out of range");
    }
    std::uint32_t seen = 0;
    for (int v : image_) {
      if (v < 0 || v >= n || (seen >> v) & 1u) {
        throw std::invalid_argument("not a permutation of 0..n-1");
      }
      seen |= 1u << v;
    }
  }

  static AgentPermutation identity(int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = i;
    return AgentPermutation(std::move(image));
  }

  static AgentPermutation transposition(int n, int a, int b) {
    AgentPermutation p = identity(n);
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw std::invalid_argument("transposition agents out of range");
    }
    std::swap(p.image_[static_cast<std::size_t>(a)],
              p.image_[static_cast<std::size_t>(b)]);
    return p;
  }

  // All n! permutations in lexicographic order of their image vectors.
  // Guarded at n <= 8; beyond that the list itself is the bottleneck.
  static std::vector<AgentPermutation> all(int n) {
    if (n < 1 || n > 8) {
      throw std::invalid_argument("permutation enumeration limited to n <= 8");
    }
    std::vector<int> image(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = i;
    std::vector<AgentPermutation> out;
    do {
      out.push_back(AgentPermutation(image));
    } while (std::next_permutation(image.begin(), image.end()));
    return out;
  }

  int n() const { return static_cast<int>(image_.size()); }

  int operator()(int agent) const {
    if (agent < 0 || agent >= n()) {
      throw std::invalid_argument("agent index out of range");
    }
    return image_[static_cast<std::size_t>(agent)];
  }

  Coalition apply(Coalition c) const {
    Coalition out;
    for (auto m = c.bits(); m != 0;
         m &= static_cast<Coalition::mask_type>(m - 1)) {
      out = out.with((*this)(std::countr_zero(m)));
    }
    return out;
  }

  // Composition (this after inner): result(i) = this(inner(i)).
  AgentPermutation compose(const AgentPermutation& inner) const {
    if (inner.n() != n()) {
      throw std::invalid_argument("permutation size mismatch");
    }
    std::vector<int> image(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) {
      image[static_cast<std::size_t>(i)] = (*this)(inner(i));
    }
    return AgentPermutation(std::move(image));
  }

  AgentPermutation inverse() const {
    std::vector<int> image(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) {
      image[static_cast<std::size_t>((*this)(i))] = i;
    }
    return AgentPermutation(std::move(image));
  }

  const std::vector<int>& image() const { return image_; }

  bool operator==(const AgentPermutation&) const = default;

 private:
  std::vector<int> image_;
};

}  // namespace pfg
