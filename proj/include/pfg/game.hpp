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

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfg/coalition.hpp"
#include "pfg/partition.hpp"
#include "pfg/rational.hpp"

namespace pfg {

// Error in the textual game format, carrying the 1-based source line.
struct parse_error : std::runtime_error {
  parse_error(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line(line) {}
  int line;
};

enum class ParseMode {
  // Unlisted embedded coalitions default to 0.
  permissive,
  // Every embedded coalition must be listed exactly once.
  strict,
};

// A partition-function-form game: a rational value for every embedded
// coalition of {0, ..., n-1}. Values are stored per embedded-coalition index
// of EmbeddedSpace::get(n). The empty coalition is worth 0 in every
// partition by convention.
class Game {
 public:
  explicit Game(int n)
      : n_(n), values_(EmbeddedSpace::get(n).ec_count(), Rational(0)) {}

  int n() const { return n_; }
  std::size_t ec_count() const { return values_.size(); }

  const EmbeddedSpace& space() const { return EmbeddedSpace::get(n_); }

  const Rational& at(std::size_t ec_index) const {
    return values_.at(ec_index);
  }

  void set_at(std::size_t ec_index, Rational value) {
    values_.at(ec_index) = std::move(value);
  }

  void set(const Coalition& s, const Partition& p, Rational value) {
    values_[space().index_of(s, p)] = std::move(value);
  }

  // v(S, P). An empty subject is worth 0 in any partition of the right
  // ground set; otherwise (S, P) must be a valid embedded coalition.
  Rational value(const Coalition& s, const Partition& p) const {
    if (p.n() != n_) {
      throw std::invalid_argument("game: partition over wrong ground set");
    }
    if (s.empty()) {
      EmbeddedSpace::get(n_).partition_index(p);
      return Rational(0);
    }
    return values_[space().index_of(s, p)];
  }

  const Rational& grand_value() const {
    return values_[space().grand_index()];
  }

  bool operator==(const Game&) const = default;

 private:
  int n_;
  std::vector<Rational> values_;
};

// A classical coalitional game: one value per coalition, no externalities.
// Indexed by coalition bitmask; the empty coalition is pinned at 0.
class CharacteristicGame {
 public:
  explicit CharacteristicGame(int n)
      : n_(n), values_(std::size_t{1} << check(n), Rational(0)) {}

  int n() const { return n_; }

  const Rational& value(const Coalition& s) const {
    return values_.at(s.bits());
  }

  void set(const Coalition& s, Rational value) {
    if (s.empty()) {
      if (value != 0) {
        throw std::invalid_argument("the empty coalition is worth 0");
      }
      return;
    }
    values_.at(s.bits()) = std::move(value);
  }

  bool operator==(const CharacteristicGame&) const = default;

 private:
  static int check(int n) {
    if (n < 1 || n > kMaxAgents) {
      throw size_limit_error("ground set size must be in 1..12");
    }
    return n;
  }

  int n_;
  std::vector<Rational> values_;
};

// Per-agent payoffs, indexed by agent.
using ValueVector = std::vector<Rational>;

// Sum of coefficient * game over the list. All games must share a ground
// set; the list must be non-empty.
inline Game linear_combine(const std::vector<std::pair<Rational, Game>>& terms) {
  if (terms.empty()) {
    throw std::invalid_argument("linear_combine: empty term list");
  }
  Game out(terms.front().second.n());
  for (const auto& [coeff, game] : terms) {
    if (game.n() != out.n()) {
      throw std::invalid_argument("linear_combine: ground set mismatch");
    }
    for (std::size_t i = 0; i < out.ec_count(); ++i) {
      out.set_at(i, out.at(i) + coeff * game.at(i));
    }
  }
  return out;
}

inline Game operator+(const Game& a, const Game& b) {
  return linear_combine({{Rational(1), a}, {Rational(1), b}});
}

inline Game operator*(const Rational& c, const Game& g) {
  return linear_combine({{c, g}});
}

// Embeds a classical game as a partition-function-form game whose values
// ignore the partition.
inline Game lift_characteristic(const CharacteristicGame& v) {
  Game out(v.n());
  const EmbeddedSpace& space = out.space();
  for (std::size_t i = 0; i < out.ec_count(); ++i) {
    out.set_at(i, v.value(space.subject(i)));
  }
  return out;
}

// Whether some coalition's value depends on the surrounding partition.
inline bool has_externalities(const Game& v) {
  const EmbeddedSpace& space = v.space();
  std::vector<std::optional<Rational>> first(std::size_t{1} << v.n());
  for (std::size_t i = 0; i < v.ec_count(); ++i) {
    auto& slot = first[space.subject(i).bits()];
    if (!slot.has_value()) {
      slot = v.at(i);
    } else if (*slot != v.at(i)) {
      return true;
    }
  }
  return false;
}

// The game w(S, P) = v(sigma(S), sigma(P)).
inline Game permute_game(const AgentPermutation& sigma, const Game& v) {
  if (sigma.n() != v.n()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  Game out(v.n());
  const EmbeddedSpace& space = v.space();
  for (std::size_t i = 0; i < out.ec_count(); ++i) {
    const EmbeddedCoalition image = apply_permutation(sigma, space.ec(i));
    out.set_at(i, v.at(space.index_of(image)));
  }
  return out;
}

// The vector y with y[i] = x[sigma(i)].
inline ValueVector permute_value_vector(const AgentPermutation& sigma,
                                        const ValueVector& x) {
  if (static_cast<std::size_t>(sigma.n()) != x.size()) {
    throw std::invalid_argument("permutation size mismatch");
  }
  ValueVector out(x.size());
  for (int i = 0; i < sigma.n(); ++i) {
    out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(sigma(i))];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text rendering. Agents are 1-indexed in all input and output.

inline std::string format_coalition(const Coalition& c) {
  std::string out = "{";
  bool sep = false;
  for (int a : c.members()) {
    if (sep) out += ',';
    out += std::to_string(a + 1);
    sep = true;
  }
  out += '}';
  return out;
}

// Blocks joined by '|' in canonical order. The grand coalition's
// conventional empty block is not written.
inline std::string format_partition(const Partition& p) {
  std::string out;
  bool sep = false;
  for (const Coalition& b : p.blocks()) {
    if (sep) out += '|';
    out += format_coalition(b);
    sep = true;
  }
  return out;
}

inline std::string format_embedded(const EmbeddedCoalition& ec) {
  return format_partition(ec.partition()) + " : " + format_coalition(ec.subject());
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Parses "{a,b,...}" with 1-indexed agents in strictly ascending order.
inline Coalition parse_coalition(std::string_view text, int n, int line) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
    throw parse_error(line, "expected a coalition like {1,3}");
  }
  text = text.substr(1, text.size() - 2);
  Coalition out;
  int prev = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = trim(text.substr(pos, comma - pos));
    if (tok.empty()) {
      throw parse_error(line, "empty agent in coalition");
    }
    int agent = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') {
        throw parse_error(line, "invalid agent '" + std::string(tok) + "'");
      }
      if (agent <= kMaxAgents) agent = agent * 10 + (c - '0');
    }
    if (agent < 1 || agent > n) {
      throw parse_error(line, "agent " + std::string(tok) + " out of range 1.." +
                                   std::to_string(n));
    }
    if (agent <= prev) {
      throw parse_error(line, "agents must be strictly ascending in a coalition");
    }
    prev = agent;
    out = out.with(agent - 1);
    pos = comma + 1;
  }
  if (out.empty()) {
    throw parse_error(line, "empty coalition");
  }
  return out;
}

// Parses "{..}|{..}|..." into a partition of {0, ..., n-1} with blocks in
// canonical order.
inline Partition parse_partition(std::string_view text, int n, int line) {
  std::vector<Coalition> blocks;
  std::size_t pos = 0;
  text = trim(text);
  if (text.empty()) {
    throw parse_error(line, "empty partition");
  }
  while (pos <= text.size()) {
    std::size_t bar = text.find('|', pos);
    if (bar == std::string_view::npos) bar = text.size();
    blocks.push_back(parse_coalition(text.substr(pos, bar - pos), n, line));
    if (blocks.size() > 1 &&
        blocks[blocks.size() - 2].min_agent() > blocks.back().min_agent()) {
      throw parse_error(line, "blocks must be ordered by minimum agent");
    }
    pos = bar + 1;
    if (bar == text.size()) break;
  }
  try {
    return Partition::of_blocks(n, blocks);
  } catch (const std::invalid_argument& e) {
    throw parse_error(line, e.what());
  }
}

}  // namespace detail

// Reads the textual game format:
//
//   # comment
//   agents 3
//   {1}|{2,3} : {1} = -7/2
//
// Each entry line is "<partition> : <coalition> = <rational>"; the coalition
// must be a block of the partition. Blank lines and '#' comments are
// ignored. The "agents" header must come first. Duplicate entries are an
// error; missing ones are 0 in permissive mode and an error in strict mode.
inline Game parse_game(std::istream& in, ParseMode mode = ParseMode::permissive) {
  std::optional<Game> game;
  std::vector<bool> listed;
  int line_no = 0;
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view s(raw);
    if (auto hash = s.find('#'); hash != std::string_view::npos) {
      s = s.substr(0, hash);
    }
    s = detail::trim(s);
    if (s.empty()) continue;
    if (!game.has_value()) {
      constexpr std::string_view kHeader = "agents";
      if (s.substr(0, kHeader.size()) != kHeader) {
        throw parse_error(line_no, "expected 'agents <n>' header");
      }
      std::string_view rest = detail::trim(s.substr(kHeader.size()));
      int n = 0;
      if (rest.empty()) {
        throw parse_error(line_no, "expected 'agents <n>' header");
      }
      for (char c : rest) {
        if (c < '0' || c > '9') {
          throw parse_error(line_no, "invalid agent count '" + std::string(rest) + "'");
        }
        if (n <= 100) n = n * 10 + (c - '0');
      }
      if (n < 1 || n > kMaxAgents) {
        throw parse_error(line_no, "agent count must be in 1..12");
      }
      game.emplace(n);
      listed.assign(game->ec_count(), false);
      continue;
    }
    const std::size_t colon = s.find(':');
    const std::size_t eq = s.find('=', colon == std::string_view::npos ? 0 : colon);
    if (colon == std::string_view::npos || eq == std::string_view::npos) {
      throw parse_error(line_no, "expected '<partition> : <coalition> = <value>'");
    }
    const Partition p = detail::parse_partition(s.substr(0, colon), game->n(), line_no);
    const Coalition c = detail::parse_coalition(
        s.substr(colon + 1, eq - colon - 1), game->n(), line_no);
    std::size_t index = 0;
    try {
      index = game->space().index_of(c, p);
    } catch (const std::invalid_argument&) {
      throw parse_error(line_no, "coalition " + format_coalition(c) +
                                     " is not a block of the partition");
    }
    if (listed[index]) {
      throw parse_error(line_no, "duplicate entry for " +
                                     format_embedded(game->space().ec(index)));
    }
    Rational value;
    try {
      value = parse_rational(detail::trim(s.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw parse_error(line_no, e.what());
    }
    listed[index] = true;
    game->set_at(index, std::move(value));
  }
  if (!game.has_value()) {
    throw parse_error(line_no, "missing 'agents <n>' header");
  }
  if (mode == ParseMode::strict) {
    for (std::size_t i = 0; i < listed.size(); ++i) {
      if (!listed[i]) {
        throw parse_error(line_no, "strict mode: no entry for " +
                                       format_embedded(game->space().ec(i)));
      }
    }
  }
  return *game;
}

inline Game parse_game_text(std::string_view text,
                            ParseMode mode = ParseMode::permissive) {
  std::istringstream in{std::string(text)};
  return parse_game(in, mode);
}

// Writes the format read by parse_game, listing every embedded coalition in
// canonical order. The output round-trips exactly, including under strict
// mode.
inline void serialize_game(const Game& v, std::ostream& out) {
  out << "agents " << v.n() << "\n";
  const EmbeddedSpace& space = v.space();
  for (std::size_t i = 0; i < v.ec_count(); ++i) {
    out << format_partition(space.partition(i)) << " : "
        << format_coalition(space.subject(i)) << " = " << to_string(v.at(i))
        << "\n";
  }
}

inline std::string serialize_game(const Game& v) {
  std::ostringstream out;
  serialize_game(v, out);
  return out.str();
}

}  // namespace pfg
