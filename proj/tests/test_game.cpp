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

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <random>
#include <sstream>

#include "pfg/axioms.hpp"
#include "pfg/game.hpp"
#include "pfg/rational.hpp"

namespace {

using pfg::Coalition;
using pfg::Game;
using pfg::Partition;
using pfg::Rational;

Game fixture_game() {
  std::ifstream in(std::string(PFG_FIXTURE_DIR) + "/three_player.game");
  REQUIRE(in);
  return pfg::parse_game(in, pfg::ParseMode::strict);
}

TEST_CASE("rational parsing and rendering", "[game]") {
  CHECK(pfg::to_string(Rational(26, 6)) == "13/3");
  CHECK(pfg::to_string(Rational(-3, 6)) == "-1/2");
  CHECK(pfg::to_string(Rational(4)) == "4");
  CHECK(pfg::to_string(Rational(0)) == "0");
  CHECK(pfg::parse_rational("26/6") == Rational(13, 3));
  CHECK(pfg::parse_rational("-7/2") == Rational(-7, 2));
  CHECK(pfg::parse_rational("+3") == Rational(3));
  CHECK(pfg::parse_rational("0") == Rational(0));
  CHECK_THROWS_AS(pfg::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(pfg::parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(pfg::parse_rational("/2"), std::invalid_argument);
  CHECK_THROWS_AS(pfg::parse_rational("1/-2"), std::invalid_argument);
  CHECK_THROWS_AS(pfg::parse_rational("a"), std::invalid_argument);
  CHECK_THROWS_AS(pfg::parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(pfg::parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("game lookups follow the conventions", "[game]") {
  const Game g = fixture_game();
  const Partition singles = Partition::singletons(3);
  const Partition two = Partition::of_blocks(3, {Coalition::of({0}), Coalition::of({1, 2})});
  CHECK(g.value(Coalition::of({0}), singles) == Rational(4));
  CHECK(g.value(Coalition::of({0}), two) == Rational(2));
  CHECK(g.value(Coalition::of({1, 2}), two) == Rational(5));
  CHECK(g.value(Coalition::full(3), Partition::grand(3)) == Rational(10));
  CHECK(g.grand_value() == Rational(10));

  // The empty coalition is worth 0 in any partition of the ground set.
  CHECK(g.value(Coalition(), singles) == Rational(0));
  CHECK(g.value(Coalition(), Partition::grand(3)) == Rational(0));

  // (S, P) must be a valid embedded coalition of the right ground set.
  CHECK_THROWS_AS(g.value(Coalition::of({0}), Partition::grand(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(g.value(Coalition::of({0}), Partition::singletons(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(g.value(Coalition(), Partition::singletons(2)),
                  std::invalid_argument);
}

TEST_CASE("games combine linearly", "[game]") {
  const Game g = fixture_game();
  const Game zero(3);
  CHECK(g + zero == g);
  CHECK(Rational(1) * g == g);
  CHECK(Rational(0) * g == zero);

  const Game doubled = pfg::linear_combine({{Rational(3), g}, {Rational(-1), g}});
  for (std::size_t i = 0; i < g.ec_count(); ++i) {
    CHECK(doubled.at(i) == 2 * g.at(i));
  }

  CHECK_THROWS_AS(pfg::linear_combine({}), std::invalid_argument);
  CHECK_THROWS_AS(pfg::linear_combine({{Rational(1), g}, {Rational(1), Game(2)}}),
                  std::invalid_argument);
}

TEST_CASE("characteristic games lift without externalities", "[game]") {
  pfg::CharacteristicGame v(3);
  v.set(Coalition::of({0}), Rational(1));
  v.set(Coalition::of({0, 1}), Rational(5));
  v.set(Coalition::full(3), Rational(9));
  CHECK_THROWS_AS(v.set(Coalition(), Rational(1)), std::invalid_argument);
  v.set(Coalition(), Rational(0));

  const Game lifted = pfg::lift_characteristic(v);
  CHECK_FALSE(pfg::has_externalities(lifted));
  CHECK(lifted.value(Coalition::of({0}), Partition::singletons(3)) == Rational(1));
  CHECK(lifted.value(Coalition::of({0}),
                     Partition::of_blocks(3, {Coalition::of({0}), Coalition::of({1, 2})})) ==
        Rational(1));
  CHECK(lifted.grand_value() == Rational(9));

  CHECK(pfg::has_externalities(fixture_game()));
  CHECK_FALSE(pfg::has_externalities(Game(3)));
}

TEST_CASE("permuting a game relabels its values", "[game]") {
  const Game g = fixture_game();
  const pfg::AgentPermutation swap12 = pfg::AgentPermutation::transposition(3, 1, 2);
  const Game h = pfg::permute_game(swap12, g);
  const Partition singles = Partition::singletons(3);
  CHECK(h.value(Coalition::of({1}), singles) == Rational(3));
  CHECK(h.value(Coalition::of({2}), singles) == Rational(2));
  // w(S, P) = v(sigma(S), sigma(P)): {1,2} in {{0},{1,2}} maps to {1,3}'s slot.
  CHECK(h.value(Coalition::of({0, 1}),
                Partition::of_blocks(3, {Coalition::of({0, 1}), Coalition::of({2})})) ==
        Rational(7));
  CHECK(pfg::permute_game(swap12, h) == g);

  const pfg::ValueVector x{Rational(1), Rational(2), Rational(3)};
  const pfg::AgentPermutation cycle({1, 2, 0});
  CHECK(pfg::permute_value_vector(cycle, x) ==
        pfg::ValueVector{Rational(2), Rational(3), Rational(1)});
}

TEST_CASE("formatting is 1-indexed", "[game]") {
  CHECK(pfg::format_coalition(Coalition::of({0, 2})) == "{1,3}");
  CHECK(pfg::format_coalition(Coalition()) == "{}");
  CHECK(pfg::format_partition(Partition::grand(3)) == "{1,2,3}");
  CHECK(pfg::format_partition(Partition::singletons(2)) == "{1}|{2}");
  CHECK(pfg::format_embedded(pfg::EmbeddedCoalition(
            Coalition::of({1, 2}),
            Partition::of_blocks(3, {Coalition::of({0}), Coalition::of({1, 2})}))) ==
        "{1}|{2,3} : {2,3}");
}

TEST_CASE("parsing accepts the documented format", "[game]") {
  const Game g = pfg::parse_game_text(
      "# comment\n"
      "agents 3\n"
      "\n"
      "{1}|{2,3} : {1} = -7/2   # trailing comment\n"
      "  {1,2,3} : {1,2,3} = 26/6\n");
  CHECK(g.value(Coalition::of({0}),
                Partition::of_blocks(3, {Coalition::of({0}), Coalition::of({1, 2})})) ==
        Rational(-7, 2));
  CHECK(g.grand_value() == Rational(13, 3));
  // Permissive mode defaults everything else to 0.
  CHECK(g.value(Coalition::of({0}), Partition::singletons(3)) == Rational(0));
}

TEST_CASE("parse errors carry line numbers", "[game]") {
  const auto line_of = [](const char* text) {
    try {
      pfg::parse_game_text(text);
    } catch (const pfg::parse_error& e) {
      return e.line;
    }
    return -1;
  };
  CHECK(line_of("{1} : {1} = 1\n") == 1);
  CHECK(line_of("agents 0\n") == 1);
  CHECK(line_of("agents 13\n") == 1);
  CHECK(line_of("agents x\n") == 1);
  CHECK(line_of("agents 2\nnot a line\n") == 2);
  CHECK(line_of("agents 2\n{1}|{2} : {1} = 1\n{2}|{1} : {1} = 1\n") == 3);
  CHECK(line_of("agents 2\n{1,2} : {1} = 1\n") == 2);
  CHECK(line_of("agents 2\n{1}|{2} : {1} = 1/0\n") == 2);
  CHECK(line_of("agents 2\n{1}|{2} : {1} = x\n") == 2);
  CHECK(line_of("agents 2\n{1,1}|{2} : {1} = 1\n") == 2);
  CHECK(line_of("agents 2\n{2,1} : {2,1} = 1\n") == 2);
  CHECK(line_of("agents 2\n{1}|{3} : {1} = 1\n") == 2);
  CHECK(line_of("agents 2\n{1}|{2} : {1} = 1\n{1}|{2} : {1} = 2\n") == 3);
  CHECK(line_of("agents 2\n{1}|{} : {1} = 1\n") == 2);
  CHECK(line_of("") == 0);
  CHECK(line_of("# only comments\n") == 1);

  // Duplicate detection is by embedded coalition, not by line text.
  try {
    pfg::parse_game_text("agents 2\n{1}|{2} : {1} = 1\n {1}|{2}:{1}=2\n");
    FAIL("expected parse_error");
  } catch (const pfg::parse_error& e) {
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }
}

TEST_CASE("strict mode requires every embedded coalition", "[game]") {
  const char* missing = "agents 2\n{1,2} : {1,2} = 3\n";
  CHECK_THROWS_AS(pfg::parse_game_text(missing, pfg::ParseMode::strict),
                  pfg::parse_error);
  const Game g = pfg::parse_game_text(missing);
  CHECK(g.grand_value() == Rational(3));

  const char* complete =
      "agents 2\n"
      "{1,2} : {1,2} = 3\n"
      "{1}|{2} : {1} = 1\n"
      "{1}|{2} : {2} = 2\n";
  CHECK_NOTHROW(pfg::parse_game_text(complete, pfg::ParseMode::strict));
}

TEST_CASE("serialization round-trips exactly", "[game]") {
  const Game g = fixture_game();
  const std::string text = pfg::serialize_game(g);
  const Game back = pfg::parse_game_text(text, pfg::ParseMode::strict);
  CHECK(back == g);
  CHECK(pfg::serialize_game(back) == text);

  std::mt19937_64 rng(7);
  for (int n = 2; n <= 4; ++n) {
    for (int t = 0; t < 5; ++t) {
      const Game random = pfg::random_game(n, rng);
      CHECK(pfg::parse_game_text(pfg::serialize_game(random),
                                 pfg::ParseMode::strict) == random);
    }
  }
}

TEST_CASE("the bundled fixture parses strictly", "[game]") {
  const Game g = fixture_game();
  CHECK(g.n() == 3);
  CHECK(g.ec_count() == 10);
}

}  // namespace
