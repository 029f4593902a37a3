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

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pfg/coalition.hpp"
#include "pfg/game.hpp"
#include "pfg/partition.hpp"
#include "pfg/rational.hpp"

namespace pfg {

// The classical Shapley value of a characteristic game.
inline ValueVector shapley(const CharacteristicGame& v) {
  const int n = v.n();
  std::vector<BigInt> factorial(static_cast<std::size_t>(n) + 1, BigInt(1));
  for (int k = 1; k <= n; ++k) {
    factorial[static_cast<std::size_t>(k)] =
        factorial[static_cast<std::size_t>(k - 1)] * k;
  }
  ValueVector phi(static_cast<std::size_t>(n), Rational(0));
  const auto full = Coalition::full(n).bits();
  for (Coalition::mask_type bits = 1; bits <= full; ++bits) {
    const Coalition s = Coalition::from_bits(bits);
    const int size = s.size();
    const Rational coeff(factorial[static_cast<std::size_t>(size - 1)] *
                             factorial[static_cast<std::size_t>(n - size)],
                         factorial[static_cast<std::size_t>(n)]);
    for (int i : s.members()) {
      phi[static_cast<std::size_t>(i)] +=
          coeff * (v.value(s) - v.value(s.without(i)));
    }
  }
  return phi;
}

// How much weight each embedding (S, P) of a coalition S contributes when a
// partition-function-form game is averaged down to a characteristic one.
// For each S, the weights over all partitions containing S must sum to 1.
struct PartitionWeighting {
  std::string name;
  std::function<Rational(const Coalition&, const Partition&)> weight;
};

// All weight on the embedding where outsiders are singletons.
inline PartitionWeighting free_weighting() {
  return PartitionWeighting{
      "free", [](const Coalition& s, const Partition& p) {
        for (const Coalition& b : p.blocks()) {
          if (b != s && b.size() != 1) return Rational(0);
        }
        return Rational(1);
      }};
}

// All weight on the embedding where outsiders form one block: {S, N - S},
// and {N, emptyset} for S = N.
inline PartitionWeighting mcquillin_weighting() {
  return PartitionWeighting{
      "mcquillin", [](const Coalition& s, const Partition& p) {
        if (s == Coalition::full(p.n())) return Rational(1);
        return p.block_count() == 2 ? Rational(1) : Rational(0);
      }};
}

// Equal weight on every embedding of S. The embedding counts are taken from
// the enumerated space, not from a closed form.
inline PartitionWeighting uniform_weighting(int n) {
  const EmbeddedSpace& space = EmbeddedSpace::get(n);
  auto counts = std::make_shared<std::vector<std::uint32_t>>(std::size_t{1} << n, 0);
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    ++(*counts)[space.subject(i).bits()];
  }
  return PartitionWeighting{
      "uniform", [counts](const Coalition& s, const Partition&) {
        return Rational(1, (*counts)[s.bits()]);
      }};
}

// Averages a partition-function-form game down to a characteristic game
// using the given weighting. Throws std::invalid_argument if some
// coalition's weights do not sum to 1.
inline CharacteristicGame average_approach(const Game& v,
                                           const PartitionWeighting& weighting) {
  const EmbeddedSpace& space = v.space();
  const std::size_t slots = std::size_t{1} << v.n();
  std::vector<Rational> acc(slots, Rational(0));
  std::vector<Rational> total(slots, Rational(0));
  for (std::size_t i = 0; i < v.ec_count(); ++i) {
    const Coalition s = space.subject(i);
    const Rational w = weighting.weight(s, space.partition(i));
    if (w != 0) acc[s.bits()] += w * v.at(i);
    total[s.bits()] += w;
  }
  CharacteristicGame out(v.n());
  for (std::size_t bits = 1; bits < slots; ++bits) {
    const Coalition s = Coalition::from_bits(static_cast<Coalition::mask_type>(bits));
    if (total[bits] != 1) {
      throw std::invalid_argument("weighting '" + weighting.name +
                                  "' does not sum to 1 for coalition " +
                                  format_coalition(s));
    }
    out.set(s, std::move(acc[bits]));
  }
  return out;
}

// The externality-free projection: each coalition keeps the value it gets
// when all outsiders stand alone.
inline CharacteristicGame project_free(const Game& v) {
  return average_approach(v, free_weighting());
}

// The projection where outsiders merge into one block.
inline CharacteristicGame project_mcquillin(const Game& v) {
  return average_approach(v, mcquillin_weighting());
}

// ---------------------------------------------------------------------------
// Constant-coalition basis.

// Value of the basis game anchored at `base` evaluated at `at`:
//
//   e(S~, P~) = (|P| - 1)^-(|S~ - S|)   if P~ - S~ reduces from P - S
//                                       and |P| = |P~|,
//             = 0                       otherwise,
//
// where (S, P) is the anchor, sizes count the conventional empty block at
// the grand coalition, and the anchor itself evaluates to 1.
inline Rational basis_value(const EmbeddedCoalition& base,
                            const EmbeddedCoalition& at) {
  if (base.n() != at.n()) {
    throw std::invalid_argument("basis_value: ground set mismatch");
  }
  if (base.partition().size() != at.partition().size()) return Rational(0);
  const PartitionFragment base_rest =
      remove_subject(base.partition(), base.subject());
  const PartitionFragment at_rest = remove_subject(at.partition(), at.subject());
  if (!reduces_to(at_rest, base_rest)) return Rational(0);
  const int extra = at.subject().minus(base.subject()).size();
  if (extra == 0) return Rational(1);
  BigInt denom = 1;
  for (int k = 0; k < extra; ++k) denom *= base.partition().size() - 1;
  return Rational(BigInt(1), denom);
}

// The basis game anchored at (s, p), materialized over every embedded
// coalition.
inline Game basis_game(const Coalition& s, const Partition& p) {
  const EmbeddedCoalition base(s, p);
  Game out(p.n());
  const EmbeddedSpace& space = out.space();
  for (std::size_t i = 0; i < out.ec_count(); ++i) {
    out.set_at(i, basis_value(base, space.ec(i)));
  }
  return out;
}

// Coordinates of a game in the constant-coalition basis, indexed like the
// game's embedded coalitions.
struct BasisCoefficients {
  int n = 0;
  std::vector<Rational> alpha;
};

// Solves v = sum alpha * e by forward substitution over subject size. The
// basis is triangular: e_base(at) = 0 unless the base subject is contained
// in the at subject, and distinct bases with equal-sized subjects never see
// each other.
inline BasisCoefficients decompose(const Game& v) {
  const EmbeddedSpace& space = v.space();
  const auto& order = space.by_subject_size();
  std::vector<EmbeddedCoalition> ecs;
  ecs.reserve(space.ec_count());
  for (std::size_t i = 0; i < space.ec_count(); ++i) ecs.push_back(space.ec(i));

  BasisCoefficients out{v.n(), std::vector<Rational>(space.ec_count(), Rational(0))};
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t idx = order[oi];
    Rational acc = v.at(idx);
    for (std::size_t oj = 0; oj < oi; ++oj) {
      const std::size_t jdx = order[oj];
      if (space.subject(jdx).size() >= space.subject(idx).size()) break;
      if (out.alpha[jdx] == 0) continue;
      acc -= out.alpha[jdx] * basis_value(ecs[jdx], ecs[idx]);
    }
    out.alpha[idx] = std::move(acc);
  }
  return out;
}

// Rebuilds the game sum alpha * e from basis coordinates.
inline Game reconstruct(const BasisCoefficients& coeffs) {
  Game out(coeffs.n);
  const EmbeddedSpace& space = out.space();
  if (coeffs.alpha.size() != space.ec_count()) {
    throw std::invalid_argument("reconstruct: coefficient count mismatch");
  }
  std::vector<EmbeddedCoalition> ecs;
  ecs.reserve(space.ec_count());
  for (std::size_t i = 0; i < space.ec_count(); ++i) ecs.push_back(space.ec(i));
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    Rational acc(0);
    for (std::size_t j = 0; j < space.ec_count(); ++j) {
      if (coeffs.alpha[j] == 0) continue;
      acc += coeffs.alpha[j] * basis_value(ecs[j], ecs[i]);
    }
    out.set_at(i, std::move(acc));
  }
  return out;
}

// The value built directly from the basis decomposition: each basis game
// pays its grand-coalition worth equally to its anchor subject's members,
// scaled by its coefficient. Only anchors whose partitions report two
// blocks reach the grand coalition.
inline ValueVector value_full_basis(const Game& v) {
  const EmbeddedSpace& space = v.space();
  const BasisCoefficients coeffs = decompose(v);
  const EmbeddedCoalition grand = space.ec(space.grand_index());
  ValueVector phi(static_cast<std::size_t>(v.n()), Rational(0));
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    if (coeffs.alpha[i] == 0) continue;
    const Rational at_grand = basis_value(space.ec(i), grand);
    if (at_grand == 0) continue;
    const Coalition s = space.subject(i);
    const Rational share = coeffs.alpha[i] * at_grand / s.size();
    for (int j : s.members()) {
      phi[static_cast<std::size_t>(j)] += share;
    }
  }
  return phi;
}

enum class ExtensionMethod {
  externality_free,
  mcquillin,
};

// Shapley value of the chosen projection.
inline ValueVector value_extended(const Game& v, ExtensionMethod method) {
  switch (method) {
    case ExtensionMethod::externality_free:
      return shapley(project_free(v));
    case ExtensionMethod::mcquillin:
      return shapley(project_mcquillin(v));
  }
  throw std::invalid_argument("unknown extension method");
}

}  // namespace pfg
