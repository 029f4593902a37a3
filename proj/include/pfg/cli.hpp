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

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "pfg/axioms.hpp"
#include "pfg/game.hpp"
#include "pfg/marginality.hpp"
#include "pfg/partition.hpp"
#include "pfg/rational.hpp"
#include "pfg/values.hpp"

namespace pfg {

// The multi-party game: one agent per seat in `parties` blocks plus a final
// independent agent i. Against the background partition P of whole parties
// and {i}, party j is worth base[j]; it gains parties-1 when i joins it and
// loses 1 when i joins a rival; i alone is worth 0; every other embedded
// coalition is worth 0.
inline Game party_game(int parties, const std::vector<int>& sizes,
                       const std::vector<Rational>& bases) {
  if (parties < 1) {
    throw std::invalid_argument("party_game: need at least one party");
  }
  if (static_cast<int>(sizes.size()) != parties ||
      (!bases.empty() && static_cast<int>(bases.size()) != parties)) {
    throw std::invalid_argument(
        "party_game: need one size (and optionally one base value) per party");
  }
  int n = 1;
  for (int size : sizes) {
    if (size < 1) {
      throw std::invalid_argument("party_game: party sizes must be positive");
    }
    n += size;
  }
  if (n > kMaxAgents) {
    throw size_limit_error("party_game: more than 12 agents");
  }

  std::vector<Coalition> blocks;
  int next = 0;
  for (int size : sizes) {
    Coalition party;
    for (int k = 0; k < size; ++k) party = party.with(next++);
    blocks.push_back(party);
  }
  const int indep = next;
  std::vector<Coalition> background = blocks;
  background.push_back(Coalition::single(indep));
  const Partition p0 = Partition::of_blocks(n, background);

  Game out(n);
  for (int j = 0; j < parties; ++j) {
    const Rational base = bases.empty() ? Rational(0) : bases[static_cast<std::size_t>(j)];
    out.set(blocks[static_cast<std::size_t>(j)], p0, base);
    const Partition joined = transfer(p0, Coalition::single(indep),
                                      blocks[static_cast<std::size_t>(j)], indep);
    out.set(blocks[static_cast<std::size_t>(j)].with(indep), joined,
            base + (parties - 1));
    for (int k = 0; k < parties; ++k) {
      if (k == j) continue;
      out.set(blocks[static_cast<std::size_t>(k)], joined,
              (bases.empty() ? Rational(0) : bases[static_cast<std::size_t>(k)]) - 1);
    }
  }
  return out;
}

namespace cli_detail {

struct GameInput {
  std::string path;
  bool strict = false;

  Game load(std::istream& fallback) const {
    const ParseMode mode = strict ? ParseMode::strict : ParseMode::permissive;
    if (path.empty() || path == "-") {
      return parse_game(fallback, mode);
    }
    std::ifstream file(path);
    if (!file) {
      throw CLI::ValidationError("--input", "cannot open '" + path + "'");
    }
    return parse_game(file, mode);
  }
};

inline void add_game_input(CLI::App* sub, GameInput& input) {
  sub->add_option("--input", input.path,
                  "Game file to read (default: standard input)");
  sub->add_flag("--strict", input.strict,
                "Require every embedded coalition to be listed");
}

inline void print_payoffs(std::ostream& out, const ValueVector& phi,
                          bool rows) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (rows) {
      out << (i + 1) << '\t' << to_string(phi[i]) << '\n';
    } else {
      out << (i > 0 ? ", " : "") << (i + 1) << ": " << to_string(phi[i]);
    }
  }
  if (!rows) out << '\n';
}

inline WeightScheme make_scheme(const std::string& name, bool normalized) {
  if (name == "bolger") return WeightScheme::bolger(normalized);
  if (name == "free") return WeightScheme::externality_free(normalized);
  if (name == "steady") return WeightScheme::steady(normalized);
  if (name == "huyang") return WeightScheme::hu_yang(normalized);
  throw CLI::ValidationError("--scheme", "unknown scheme '" + name + "'");
}

}  // namespace cli_detail

// The command-line front end. `args` is the argument list without the
// program name, in natural order. Returns the process exit code: 0 on
// success, 1 when an axiom check fails, 2 on a game-format error, 64 on
// invalid usage.
inline int run_cli(std::vector<std::string> args, std::istream& in,
                   std::ostream& out, std::ostream& err) {
  CLI::App app{"Values of coalitional games with externalities"};
  app.require_subcommand(1);

  std::string format = "table";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "rows"}))
      ->capture_default_str();

  cli_detail::GameInput value_input;
  std::string value_method;
  CLI::App* value = app.add_subcommand(
      "value", "Per-agent value of a partition-function-form game");
  value->fallthrough();
  value->add_option("--method", value_method, "Value to compute")
      ->required()
      ->check(CLI::IsMember({"free", "mcquillin", "full-basis", "shapley-char"}));
  cli_detail::add_game_input(value, value_input);

  cli_detail::GameInput decompose_input;
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "Coordinates in the constant-coalition basis");
  decompose_cmd->fallthrough();
  cli_detail::add_game_input(decompose_cmd, decompose_input);

  cli_detail::GameInput mc_input;
  int mc_agent = 0;
  std::string mc_scheme;
  bool mc_normalized = false;
  CLI::App* mc = app.add_subcommand(
      "mc", "Marginal contributions of one agent under a weight scheme");
  mc->fallthrough();
  mc->add_option("--agent", mc_agent, "Agent (1-indexed)")->required();
  mc->add_option("--scheme", mc_scheme, "Weight scheme")
      ->required()
      ->check(CLI::IsMember({"bolger", "free", "steady", "huyang"}));
  mc->add_flag("--normalized", mc_normalized, "Divide by the total weight");
  cli_detail::add_game_input(mc, mc_input);

  cli_detail::GameInput compare_input;
  int compare_agent = 0;
  bool compare_normalized = false;
  CLI::App* compare = app.add_subcommand(
      "compare-marginality", "All four weight schemes side by side");
  compare->fallthrough();
  compare->add_option("--agent", compare_agent, "Agent (1-indexed)")->required();
  compare->add_flag("--normalized", compare_normalized,
                    "Divide by the total weight");
  cli_detail::add_game_input(compare, compare_input);

  int axioms_n = 3;
  int axioms_trials = 20;
  std::uint64_t axioms_seed = 1;
  CLI::App* axioms_cmd = app.add_subcommand(
      "check-axioms", "Run the axiom harness for the basis-built value");
  axioms_cmd->fallthrough();
  axioms_cmd->add_option("--n", axioms_n, "Ground set size")
      ->check(CLI::Range(1, kMaxAgents))
      ->capture_default_str();
  axioms_cmd->add_option("--trials", axioms_trials, "Random games to draw")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  axioms_cmd->add_option("--seed", axioms_seed, "Random seed")
      ->capture_default_str();

  int party_count = 0;
  std::vector<int> party_sizes;
  std::vector<std::string> party_bases;
  CLI::App* party = app.add_subcommand(
      "party-game", "Emit the multi-party example as a game file");
  party->fallthrough();
  party->add_option("--parties", party_count, "Number of parties")->required();
  party->add_option("--sizes", party_sizes, "Party sizes (default: all 1)")
      ->delimiter(',');
  party->add_option("--base", party_bases,
                    "Per-party base worth (default: all 0)")
      ->delimiter(',');

  int enum_n = 0;
  bool enum_embedded = false;
  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "List partitions or embedded coalitions");
  enumerate_cmd->fallthrough();
  enumerate_cmd->add_option("--n", enum_n, "Ground set size")->required();
  enumerate_cmd->add_flag("--embedded", enum_embedded,
                          "List embedded coalitions instead of partitions");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 64;
  }
  const bool rows = format == "rows";

  try {
    if (app.got_subcommand(value)) {
      const Game g = value_input.load(in);
      ValueVector phi;
      if (value_method == "free") {
        phi = value_extended(g, ExtensionMethod::externality_free);
      } else if (value_method == "mcquillin") {
        phi = value_extended(g, ExtensionMethod::mcquillin);
      } else if (value_method == "full-basis") {
        phi = value_full_basis(g);
      } else {
        if (has_externalities(g)) {
          err << "error: shapley-char requires a game without externalities\n";
          return 64;
        }
        phi = shapley(project_free(g));
      }
      cli_detail::print_payoffs(out, phi, rows);
      return 0;
    }

    if (app.got_subcommand(decompose_cmd)) {
      const Game g = decompose_input.load(in);
      const BasisCoefficients coeffs = decompose(g);
      const EmbeddedSpace& space = g.space();
      for (std::size_t i = 0; i < coeffs.alpha.size(); ++i) {
        if (coeffs.alpha[i] == 0) continue;
        out << format_embedded(space.ec(i)) << (rows ? "\t" : " = ")
            << to_string(coeffs.alpha[i]) << '\n';
      }
      return 0;
    }

    if (app.got_subcommand(mc)) {
      const Game g = mc_input.load(in);
      if (mc_agent < 1 || mc_agent > g.n()) {
        err << "error: --agent must be in 1.." << g.n() << "\n";
        return 64;
      }
      const WeightScheme scheme =
          cli_detail::make_scheme(mc_scheme, mc_normalized);
      const MarginalVector mv = mc_vector(g, mc_agent - 1, scheme);
      const EmbeddedSpace& space = g.space();
      for (const auto& [index, contribution] : mv.entries) {
        out << format_embedded(space.ec(index)) << (rows ? "\t" : " = ")
            << to_string(contribution) << '\n';
      }
      return 0;
    }

    if (app.got_subcommand(compare)) {
      const Game g = compare_input.load(in);
      if (compare_agent < 1 || compare_agent > g.n()) {
        err << "error: --agent must be in 1.." << g.n() << "\n";
        return 64;
      }
      static constexpr const char* kSchemes[] = {"bolger", "free", "steady",
                                                 "huyang"};
      std::vector<MarginalVector> columns;
      for (const char* name : kSchemes) {
        columns.push_back(mc_vector(
            g, compare_agent - 1,
            cli_detail::make_scheme(name, compare_normalized)));
      }
      const EmbeddedSpace& space = g.space();
      if (rows) {
        for (std::size_t row = 0; row < columns[0].entries.size(); ++row) {
          const std::string ec =
              format_embedded(space.ec(columns[0].entries[row].first));
          for (std::size_t c = 0; c < columns.size(); ++c) {
            out << kSchemes[c] << ' ' << ec << '\t'
                << to_string(columns[c].entries[row].second) << '\n';
          }
        }
        return 0;
      }
      std::vector<std::vector<std::string>> cells;
      std::vector<std::string> header{"embedded coalition"};
      for (const char* name : kSchemes) header.push_back(name);
      cells.push_back(header);
      for (std::size_t row = 0; row < columns[0].entries.size(); ++row) {
        std::vector<std::string> line{
            format_embedded(space.ec(columns[0].entries[row].first))};
        for (const MarginalVector& column : columns) {
          line.push_back(to_string(column.entries[row].second));
        }
        cells.push_back(std::move(line));
      }
      std::vector<std::size_t> widths(cells[0].size(), 0);
      for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          widths[c] = std::max(widths[c], line[c].size());
        }
      }
      for (const auto& line : cells) {
        for (std::size_t c = 0; c < line.size(); ++c) {
          out << line[c];
          if (c + 1 < line.size()) {
            out << std::string(widths[c] - line[c].size() + 2, ' ');
          }
        }
        out << '\n';
      }
      return 0;
    }

    if (app.got_subcommand(axioms_cmd)) {
      out << "# check-axioms n=" << axioms_n << " trials=" << axioms_trials
          << " seed=" << axioms_seed << '\n';
      bool all_passed = true;
      for (const AxiomReport& report :
           run_axiom_suite(axioms_n, axioms_trials, axioms_seed)) {
        out << format_report(report) << '\n';
        all_passed = all_passed && report.passed;
      }
      return all_passed ? 0 : 1;
    }

    if (app.got_subcommand(party)) {
      if (party_sizes.empty()) {
        party_sizes.assign(static_cast<std::size_t>(std::max(party_count, 0)), 1);
      }
      std::vector<Rational> bases;
      for (const std::string& text : party_bases) {
        bases.push_back(parse_rational(text));
      }
      serialize_game(party_game(party_count, party_sizes, bases), out);
      return 0;
    }

    if (app.got_subcommand(enumerate_cmd)) {
      if (enum_embedded) {
        const auto ecs = enumerate_embedded(enum_n);
        for (std::size_t i = 0; i < ecs.size(); ++i) {
          if (rows) out << (i + 1) << '\t';
          out << format_embedded(ecs[i]) << '\n';
        }
      } else {
        const auto partitions = enumerate_partitions(enum_n);
        for (std::size_t i = 0; i < partitions.size(); ++i) {
          if (rows) out << (i + 1) << '\t';
          out << format_partition(partitions[i]) << '\n';
        }
      }
      return 0;
    }
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 64;
  }
  return 64;
}

}  // namespace pfg
