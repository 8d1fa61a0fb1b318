#pragma once

// Command-line front end: verify, construct, game, bounds.
//
// Exit status: 0 success (verify: good), 1 negative result (verify: not
// good; game verify: greedy beaten; bounds: sandwich violated), 2 usage or
// parse error, 3 search budget exhausted.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "goodlabel/bounds.hpp"
#include "goodlabel/constructors.hpp"
#include "goodlabel/errors.hpp"
#include "goodlabel/game.hpp"
#include "goodlabel/gel.hpp"
#include "goodlabel/goodness.hpp"
#include "goodlabel/graph.hpp"

namespace goodlabel::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

inline Json to_json(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max()) {
    return Json(x.convert_to<std::int64_t>());
  }
  return Json(x.str());
}

inline Json to_json(const std::vector<BigInt>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const LabelledGraph& lg) {
  Json edges = Json::array();
  for (std::size_t i = 0; i < lg.edge_count(); ++i) {
    const auto [u, v] = lg.graph().edge(i);
    edges.push_back(Json::array({u, v, format_rational(lg.labels()[i])}));
  }
  return Json{{"n", lg.vertex_count()}, {"edges", std::move(edges)}};
}

namespace detail {

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

inline std::string array_text(const Json& j) {
  std::string out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i > 0) out += j[i].is_array() ? " | " : " ";
    out += j[i].is_array() ? array_text(j[i]) : scalar_text(j[i]);
  }
  return out;
}

inline void flatten(std::ostream& out, const std::string& key, const Json& j) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(out, key.empty() ? k : key + "." + k, v);
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(out, key + "[" + std::to_string(i) + "]", j[i]);
  } else if (j.is_array()) {
    out << key << ": " << array_text(j) << '\n';
  } else {
    out << key << ": " << scalar_text(j) << '\n';
  }
}

}  // namespace detail

/// Line-oriented "key: value" rendering of a report; nested keys are dotted.
inline void write_text(std::ostream& out, const Json& report) { detail::flatten(out, "", report); }

inline void emit(std::ostream& out, const Json& report, const std::string& format) {
  if (format == "json") {
    out << report.dump(2) << '\n';
  } else {
    write_text(out, report);
  }
}

inline LabelledGraph load_gel(const std::string& path, std::istream& in) {
  if (path == "-") return read_gel(in);
  std::ifstream file(path);
  if (!file) throw invalid_input("cannot open '" + path + "'");
  return read_gel(file);
}

inline std::vector<std::pair<Vertex, Vertex>> load_matching(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw invalid_input("cannot open '" + path + "'");
  std::vector<std::pair<Vertex, Vertex>> matching;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    const auto x = tokens.size() == 2 ? goodlabel::detail::parse_count(tokens[0]) : std::nullopt;
    const auto y = tokens.size() == 2 ? goodlabel::detail::parse_count(tokens[1]) : std::nullopt;
    if (!x || !y) throw gel_parse_error(line_no, "expected 'u v' matching pair");
    matching.emplace_back(static_cast<Vertex>(*x), static_cast<Vertex>(*y));
  }
  return matching;
}

inline Configuration parse_configuration(const std::string& text) {
  std::vector<BigInt> values;
  std::stringstream stream(text);
  for (std::string item; std::getline(stream, item, ',');) {
    const auto value = goodlabel::detail::parse_integer(item);
    if (!value || *value < 1) throw invalid_input("configuration entries must be positive integers: '" + item + "'");
    values.push_back(*value);
  }
  if (values.empty()) throw invalid_input("empty configuration");
  return Configuration(std::move(values));
}

inline Json certificate_json(const Certificate& cert) {
  if (const auto* pair = std::get_if<PairCertificate>(&cert)) {
    return Json{{"kind", "pair"},
                {"from", pair->from},
                {"to", pair->to},
                {"first", pair->first},
                {"second", pair->second}};
  }
  return Json{{"kind", "closed-walk"}, {"walk", std::get<ClosedWalkCertificate>(cert).walk}};
}

struct Options {
  std::string format = "text";
};

inline int cmd_verify(const std::string& path, const Options& options, std::istream& in, std::ostream& out) {
  const LabelledGraph lg = load_gel(path, in);
  const GoodnessVerdict verdict = is_good(lg);

  Json report;
  report["command"] = "verify";
  report["input"] = path;
  report["vertices"] = lg.vertex_count();
  report["edges"] = lg.edge_count();
  report["verdict"] = verdict.good ? "good" : "not-good";
  if (verdict.certificate) {
    report["certificate"] = certificate_json(*verdict.certificate);
    report["certificate"]["valid"] = validate_certificate(lg, *verdict.certificate);
  }

  const bool tied = has_ties(lg);
  const LabelledGraph strict = tied ? strictify(lg) : lg;
  const auto profiles = nice_walk_profile_incremental(strict);
  Json totals = Json::array();
  for (const auto& p : profiles) totals.push_back(to_json(p.total));
  const BigInt limit = BigInt(lg.vertex_count()) * lg.vertex_count();
  report["walks"] = Json{{"strictified", tied},
                         {"totals", std::move(totals)},
                         {"final_counts", to_json(profiles.back().counts)},
                         {"limit", to_json(limit)},
                         {"exceeds_limit", profiles.back().total > limit}};
  emit(out, report, options.format);
  return verdict.good ? kExitOk : kExitNegative;
}

inline int cmd_game(const std::string& config_text, std::size_t k, const std::string& mode,
                    std::optional<std::size_t> k_max, std::optional<std::size_t> max_states,
                    const Options& options, std::ostream& out) {
  const Configuration start = parse_configuration(config_text);
  SearchBudget budget;
  if (max_states) budget.max_states = *max_states;

  Json report;
  report["command"] = "game";
  report["mode"] = mode;
  report["configuration"] = to_json(start.values());
  int status = kExitOk;
  if (mode == "greedy") {
    report["k"] = k;
    const PlayTrace trace = greedy_play(start, k);
    Json moves = Json::array();
    for (const auto& m : trace.moves) moves.push_back(m.a.str() + "+" + m.b.str());
    report["moves"] = std::move(moves);
    report["sums"] = to_json(trace.sums);
    report["final_sum"] = to_json(trace.sums.empty() ? start.sum() : trace.sums.back());
  } else if (mode == "opt") {
    report["k"] = k;
    OptSolver solver(budget);
    report["value"] = to_json(solver.opt(start, k));
    report["states_explored"] = solver.states();
    report["budget"] = Json{{"max_steps", budget.max_steps}, {"max_size", budget.max_size},
                            {"max_states", budget.max_states}};
  } else {
    const std::size_t bound = k_max.value_or(k);
    report["k_max"] = bound;
    const PlayTrace trace = greedy_play(start, bound);
    OptSolver solver(budget);
    Json greedy_sums = Json::array();
    Json opt_sums = Json::array();
    std::optional<std::size_t> counterexample;
    for (std::size_t step = 1; step <= bound; ++step) {
      const BigInt best = solver.opt(start, step);
      greedy_sums.push_back(to_json(trace.sums[step - 1]));
      opt_sums.push_back(to_json(best));
      if (!counterexample && trace.sums[step - 1] != best) counterexample = step;
    }
    report["greedy_sums"] = std::move(greedy_sums);
    report["opt_sums"] = std::move(opt_sums);
    if (counterexample) {
      report["result"] = "greedy beaten at k=" + std::to_string(*counterexample);
      status = kExitNegative;
    } else {
      report["result"] = "greedy optimal up to k=" + std::to_string(bound);
    }
    report["note"] = "checked for k = 0.." + std::to_string(bound) + " only";
  }
  emit(out, report, options.format);
  return status;
}

inline const char* source_name(FSource s) {
  switch (s) {
    case FSource::search: return "search";
    case FSource::pinch: return "pinch";
    case FSource::none: break;
  }
  return "-";
}

inline void write_table(std::ostream& out, const BoundsReport& report) {
  out << std::setw(8) << "n" << std::setw(12) << "lower" << std::setw(12) << "b(n)" << std::setw(8)
      << "f(n)" << std::setw(8) << "source" << std::setw(12) << "budget" << std::setw(14) << "upper"
      << std::setw(9) << "sandwich" << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& row : report.rows) {
    out << std::setw(8) << row.n << std::setw(12) << row.lower << std::setw(12) << row.b.str()
        << std::setw(8) << (row.f ? std::to_string(*row.f) : "-") << std::setw(8) << source_name(row.source)
        << std::setw(12) << row.budget << std::setw(14) << row.upper << std::setw(9)
        << (row.sandwich_holds() ? "ok" : "FAIL") << '\n';
  }
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

inline int cmd_bounds(std::uint64_t n_max, std::uint64_t exact_up_to, bool long_running,
                      std::optional<std::uint64_t> max_orderings, const std::string& witness_dir,
                      const Options& options, std::ostream& out) {
  ExtremalSearchLimits limits;
  limits.long_running = long_running;
  if (max_orderings) limits.max_orderings = *max_orderings;
  const BoundsReport table = bound_table(n_max, exact_up_to, limits);

  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json r{{"n", row.n},
           {"b", to_json(row.b)},
           {"lower", row.lower},
           {"upper", row.upper},
           {"budget", row.budget},
           {"f", row.f ? Json(*row.f) : Json(nullptr)},
           {"source", source_name(row.source)},
           {"sandwich", row.sandwich_holds()}};
    if (row.witness && row.source == FSource::search) r["witness"] = to_json(*row.witness);
    if (row.error) r["error"] = *row.error;
    rows.push_back(std::move(r));
  }

  if (!witness_dir.empty()) {
    std::filesystem::create_directories(witness_dir);
    for (const auto& row : table.rows) {
      if (!row.witness) continue;
      std::ofstream file(std::filesystem::path(witness_dir) / ("f" + std::to_string(row.n) + ".gel"));
      file << "# witness for f(" << row.n << ") = " << *row.f << " (" << source_name(row.source) << ")\n";
      write_gel(file, *row.witness);
    }
  }

  const bool holds = table.sandwich_holds();
  const bool any_error = std::any_of(table.rows.begin(), table.rows.end(),
                                     [](const BoundsRow& r) { return r.error.has_value(); });
  Json summary{{"command", "bounds"},
               {"n_max", n_max},
               {"exact_up_to", exact_up_to},
               {"long_running", long_running},
               {"max_orderings", limits.max_orderings},
               {"sandwich", holds ? "holds on every row" : "violated"}};
  if (options.format == "json") {
    summary["rows"] = std::move(rows);
    emit(out, summary, options.format);
  } else {
    write_table(out, table);
    for (const auto& row : table.rows) {
      if (row.error) out << "row " << row.n << " error: " << *row.error << '\n';
    }
    write_text(out, summary);
  }
  if (!holds) return kExitNegative;
  return any_error ? kExitBudget : kExitOk;
}

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Good edge-labellings: verification, constructions, merge game, bounds", "goodlabel"};
  app.require_subcommand(1);
  Options options;
  app.add_option("--format", options.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check a .gel labelled graph for goodness");
  std::string verify_path;
  verify->add_option("path", verify_path, ".gel file, or - for standard input")->required();

  auto* construct = app.add_subcommand("construct", "Emit a good labelled graph as .gel");
  construct->require_subcommand(1);
  auto* cube = construct->add_subcommand("hypercube", "d-dimensional hypercube");
  unsigned dimension = 0;
  cube->add_option("d", dimension)->required();
  auto* gn = construct->add_subcommand("gn", "binary-prefix graph on n vertices");
  std::uint64_t gn_n = 0;
  gn->add_option("n", gn_n)->required()->check(CLI::PositiveNumber);
  auto* join = construct->add_subcommand("join", "matching join of two good graphs");
  std::string join_g;
  std::string join_h;
  std::string join_matching;
  join->add_option("first", join_g, "first .gel file")->required();
  join->add_option("second", join_h, "second .gel file")->required();
  join->add_option("matching", join_matching, "file of 'u v' lines (u in first, v in second)")->required();

  auto* game = app.add_subcommand("game", "Sheet-merging game");
  std::string config_text;
  std::size_t steps = 0;
  std::string mode;
  std::optional<std::size_t> k_max;
  std::optional<std::size_t> max_states;
  game->add_option("config", config_text, "comma-separated positive integers")->required();
  game->add_option("k", steps, "number of moves")->required();
  game->add_option("mode", mode)->required()->check(CLI::IsMember({"greedy", "opt", "verify"}));
  game->add_option("--kmax", k_max, "verify up to this k (defaults to k)");
  game->add_option("--budget", max_states, "maximum memoized search states");

  auto* bounds = app.add_subcommand("bounds", "Bounds table for n = 1..n_max");
  std::uint64_t n_max = 1;
  std::uint64_t exact_up_to = 0;
  bool long_running = false;
  std::optional<std::uint64_t> max_orderings;
  std::string witness_dir;
  bounds->add_option("n_max", n_max)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--exact-up-to", exact_up_to, "exhaustive f(n) search up to this n")
      ->check(CLI::Range(0, 6));
  bounds->add_flag("--long-running", long_running, "allow the n = 6 exhaustive search");
  bounds->add_option("--budget", max_orderings, "maximum edge orderings examined per search");
  bounds->add_option("--witness-dir", witness_dir, "write witness graphs as .gel files");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(verify_path, options, in, out);
    if (*cube) {
      write_gel(out, hypercube(dimension));
      return kExitOk;
    }
    if (*gn) {
      write_gel(out, binary_prefix_graph(gn_n));
      return kExitOk;
    }
    if (*join) {
      const auto g = load_gel(join_g, in);
      const auto h = load_gel(join_h, in);
      const auto matching = load_matching(join_matching);
      write_gel(out, matching_join(g, h, matching));
      return kExitOk;
    }
    if (*game) return cmd_game(config_text, steps, mode, k_max, max_states, options, out);
    if (*bounds) return cmd_bounds(n_max, exact_up_to, long_running, max_orderings, witness_dir, options, out);
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace goodlabel::cli
