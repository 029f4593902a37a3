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
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfg/game.hpp"
#include "pfg/marginality.hpp"
#include "pfg/values.hpp"

namespace pfg {

// Everything needed to replay a failed check through the public API: the
// games involved, the permutation or scalar where one applies, the offending
// agent, and a human-readable account of the violating quantities.
struct AxiomWitness {
  std::vector<Game> games;
  std::optional<AgentPermutation> permutation;
  std::optional<Rational> lambda;
  std::optional<int> agent;
  std::string detail;
};

struct AxiomReport {
  std::string axiom;
  std::string instance;
  bool passed = false;
  std::optional<AxiomWitness> witness;
};

// One line per report: "<axiom> <instance> <pass|fail>", with the witness
// detail appended on failure.
inline std::string format_report(const AxiomReport& report) {
  std::string out = report.axiom + " " + report.instance + " " +
                    (report.passed ? "pass" : "fail");
  if (!report.passed && report.witness.has_value() &&
      !report.witness->detail.empty()) {
    out += " " + report.witness->detail;
  }
  return out;
}

// A per-agent payoff rule for partition-function-form games.
using ValueFunction = std::function<ValueVector(const Game&)>;

namespace detail {

inline std::string format_vector(const ValueVector& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) out += ',';
    out += to_string(x[i]);
  }
  out += ')';
  return out;
}

inline std::string format_permutation(const AgentPermutation& sigma) {
  std::string out = "[";
  for (int i = 0; i < sigma.n(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(sigma(i) + 1);
  }
  out += ']';
  return out;
}

// Nonzero entries only; enough to reconstruct the game by hand.
inline std::string format_game_compact(const Game& v) {
  const EmbeddedSpace& space = v.space();
  std::string out = "[";
  bool sep = false;
  for (std::size_t i = 0; i < v.ec_count(); ++i) {
    if (v.at(i) == 0) continue;
    if (sep) out += "; ";
    out += format_embedded(space.ec(i)) + " = " + to_string(v.at(i));
    sep = true;
  }
  out += ']';
  return out;
}

}  // namespace detail

// Payoffs sum to the grand coalition's worth.
inline AxiomReport check_efficiency(const ValueFunction& phi, const Game& v,
                                    std::string instance = "-") {
  const ValueVector payoff = phi(v);
  Rational sum(0);
  for (const Rational& x : payoff) sum += x;
  AxiomReport report{"efficiency", std::move(instance), sum == v.grand_value(), {}};
  if (!report.passed) {
    report.witness = AxiomWitness{
        {v}, {}, {}, {},
        "sum=" + to_string(sum) + " grand=" + to_string(v.grand_value()) +
            " game=" + detail::format_game_compact(v)};
  }
  return report;
}

// Relabeling agents relabels payoffs: phi(sigma(v))_i = phi(v)_sigma(i).
inline AxiomReport check_symmetry(const ValueFunction& phi, const Game& v,
                                  const AgentPermutation& sigma,
                                  std::string instance = "-") {
  const ValueVector lhs = phi(permute_game(sigma, v));
  const ValueVector rhs = permute_value_vector(sigma, phi(v));
  AxiomReport report{"symmetry", std::move(instance), lhs == rhs, {}};
  if (!report.passed) {
    int agent = 0;
    while (lhs[static_cast<std::size_t>(agent)] ==
           rhs[static_cast<std::size_t>(agent)]) {
      ++agent;
    }
    report.witness = AxiomWitness{
        {v}, sigma, {}, agent,
        "agent=" + std::to_string(agent + 1) +
            " sigma=" + detail::format_permutation(sigma) +
            " phi(permuted)=" + detail::format_vector(lhs) +
            " permuted(phi)=" + detail::format_vector(rhs) +
            " game=" + detail::format_game_compact(v)};
  }
  return report;
}

// Additivity and scalar homogeneity.
inline AxiomReport check_linearity(const ValueFunction& phi, const Game& v1,
                                   const Game& v2, const Rational& lambda,
                                   std::string instance = "-") {
  const ValueVector phi1 = phi(v1);
  const ValueVector phi2 = phi(v2);
  const ValueVector phi_sum = phi(v1 + v2);
  const ValueVector phi_scaled = phi(lambda * v1);
  std::string why;
  for (std::size_t i = 0; i < phi1.size() && why.empty(); ++i) {
    if (phi_sum[i] != phi1[i] + phi2[i]) {
      why = "additivity agent=" + std::to_string(i + 1) +
            " phi(v1+v2)=" + to_string(phi_sum[i]) +
            " phi(v1)+phi(v2)=" + to_string(phi1[i] + phi2[i]);
    } else if (phi_scaled[i] != lambda * phi1[i]) {
      why = "homogeneity agent=" + std::to_string(i + 1) +
            " lambda=" + to_string(lambda) +
            " phi(lambda*v1)=" + to_string(phi_scaled[i]) +
            " lambda*phi(v1)=" + to_string(lambda * phi1[i]);
    }
  }
  AxiomReport report{"linearity", std::move(instance), why.empty(), {}};
  if (!report.passed) {
    report.witness = AxiomWitness{
        {v1, v2}, {}, lambda, {},
        why + " game1=" + detail::format_game_compact(v1) +
            " game2=" + detail::format_game_compact(v2)};
  }
  return report;
}

// Agents whose marginal contributions vanish everywhere under the scheme
// receive nothing.
inline AxiomReport check_null_player(const ValueFunction& phi, const Game& v,
                                     const WeightScheme& scheme,
                                     std::string instance = "-") {
  const ValueVector payoff = phi(v);
  AxiomReport report{"null-player", std::move(instance), true, {}};
  for (int i = 0; i < v.n(); ++i) {
    if (payoff[static_cast<std::size_t>(i)] == 0) continue;
    if (is_null_player(v, i, scheme)) {
      report.passed = false;
      report.witness = AxiomWitness{
          {v}, {}, {}, i,
          "agent=" + std::to_string(i + 1) +
              " payoff=" + to_string(payoff[static_cast<std::size_t>(i)]) +
              " scheme=" + scheme.name() +
              " game=" + detail::format_game_compact(v)};
      return report;
    }
  }
  return report;
}

namespace detail {

// Deterministic across standard libraries: plain modulo draws from a seeded
// mt19937_64, never uniform_int_distribution.
inline int draw(std::mt19937_64& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

inline AgentPermutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<int> image(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) image[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    std::swap(image[static_cast<std::size_t>(i)],
              image[static_cast<std::size_t>(draw(rng, i + 1))]);
  }
  return AgentPermutation(std::move(image));
}

}  // namespace detail

// A game with every embedded coalition drawn from p/q, p in -100..100,
// q in {1, 2, 3, 6}.
inline Game random_game(int n, std::mt19937_64& rng) {
  static constexpr int kDenoms[] = {1, 2, 3, 6};
  Game out(n);
  for (std::size_t i = 0; i < out.ec_count(); ++i) {
    const int p = detail::draw(rng, 201) - 100;
    const int q = kDenoms[detail::draw(rng, 4)];
    out.set_at(i, Rational(p, q));
  }
  return out;
}

// Checks that the basis-built value agrees with the Shapley value of the
// two-block projection, over every basis game of the ground set and over
// `trials` random games. One aggregated report; the witness carries the
// first offending game.
inline AxiomReport verify_mcquillin_equivalence(int n, int trials,
                                                std::uint64_t seed) {
  const EmbeddedSpace& space = EmbeddedSpace::get(n);
  AxiomReport report{"equivalence", "n=" + std::to_string(n), true, {}};
  const auto check = [&](const Game& game, const std::string& which) {
    const ValueVector direct = value_full_basis(game);
    const ValueVector via_projection =
        value_extended(game, ExtensionMethod::mcquillin);
    if (direct == via_projection) return true;
    report.passed = false;
    report.witness = AxiomWitness{
        {game}, {}, {}, {},
        which + " full-basis=" + detail::format_vector(direct) +
            " mcquillin-shapley=" + detail::format_vector(via_projection) +
            " game=" + detail::format_game_compact(game)};
    return false;
  };
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    if (!check(basis_game(space.subject(i), space.partition(i)),
               "basis-" + std::to_string(i + 1))) {
      return report;
    }
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    if (!check(random_game(n, rng), "random-" + std::to_string(t + 1))) {
      return report;
    }
  }
  return report;
}

// The full harness for the basis-built value: efficiency, symmetry,
// linearity, and the steady null-player axiom, over every basis game of the
// ground set plus `trials` random games, ending with the projection
// equivalence. Symmetry runs over all permutations up to n = 4 and over 24
// seeded draws beyond. Reports come back in a deterministic order.
inline std::vector<AxiomReport> run_axiom_suite(int n, int trials,
                                                std::uint64_t seed) {
  const EmbeddedSpace& space = EmbeddedSpace::get(n);
  const ValueFunction phi = [](const Game& g) { return value_full_basis(g); };
  const WeightScheme steady = WeightScheme::steady();

  std::vector<std::pair<std::string, Game>> games;
  for (std::size_t i = 0; i < space.ec_count(); ++i) {
    games.emplace_back("basis-" + std::to_string(i + 1),
                       basis_game(space.subject(i), space.partition(i)));
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    games.emplace_back("random-" + std::to_string(t + 1), random_game(n, rng));
  }

  std::vector<AgentPermutation> perms;
  if (n <= 4) {
    perms = AgentPermutation::all(n);
  } else {
    for (int k = 0; k < 24; ++k) {
      perms.push_back(detail::random_permutation(n, rng));
    }
  }

  std::vector<AxiomReport> reports;
  for (const auto& [instance, game] : games) {
    reports.push_back(check_efficiency(phi, game, instance));
  }
  for (const auto& [instance, game] : games) {
    AxiomReport merged{"symmetry", instance, true, {}};
    for (const AgentPermutation& sigma : perms) {
      AxiomReport one = check_symmetry(phi, game, sigma, instance);
      if (!one.passed) {
        merged = std::move(one);
        break;
      }
    }
    reports.push_back(std::move(merged));
  }
  static constexpr std::string_view kLambdas[] = {"2", "-3/2", "1/6", "5"};
  for (std::size_t k = 0; k + 1 < games.size(); ++k) {
    reports.push_back(check_linearity(
        phi, games[k].second, games[k + 1].second,
        parse_rational(kLambdas[k % 4]),
        games[k].first + "+" + games[k + 1].first));
  }
  for (const auto& [instance, game] : games) {
    reports.push_back(check_null_player(phi, game, steady, instance));
  }
  reports.push_back(verify_mcquillin_equivalence(n, trials, seed + 1));
  return reports;
}

}  // namespace pfg
