#pragma once

// ".gel" labelled-graph text format:
//
//   # comment lines start with '#'
//   n m
//   u v label      (m lines, 0-based vertices; label is an exact decimal
//                   such as -1.25 or a rational p/q)
//
// Blank lines are ignored. The writer emits labels in lowest terms, as an
// integer when the denominator is 1 and as p/q otherwise.

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "goodlabel/errors.hpp"
#include "goodlabel/graph.hpp"

namespace goodlabel {

class gel_parse_error : public invalid_input {
 public:
  gel_parse_error(std::size_t line, const std::string& message)
      : invalid_input("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline std::optional<BigInt> parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!is_digits(s)) return std::nullopt;
  BigInt value{std::string(s)};
  if (negative) value = -value;
  return value;
}

inline std::optional<std::uint64_t> parse_count(std::string_view s) {
  if (!is_digits(s) || s.size() > 18) return std::nullopt;
  return std::stoull(std::string(s));
}

}  // namespace detail

/// Parses "p/q", "-12", "3.25" exactly. Returns nothing on malformed input
/// or a zero denominator.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto p = detail::parse_integer(text.substr(0, slash));
    const auto q = detail::parse_integer(text.substr(slash + 1));
    if (!p || !q || *q == 0) return std::nullopt;
    return Rational(*p, *q);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !detail::is_digits(whole)) return std::nullopt;
  if (!frac.empty() && !detail::is_digits(frac)) return std::nullopt;
  BigInt digits{std::string(whole) + std::string(frac)};
  BigInt scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
  Rational value(digits, scale);
  if (negative) value = -value;
  return value;
}

inline std::string format_rational(const Rational& x) {
  const BigInt p = numerator(x);
  const BigInt q = denominator(x);
  return q == 1 ? p.str() : p.str() + "/" + q.str();
}

inline LabelledGraph read_gel(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<Edge> edges;
  EdgeLabelling labels;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty() || tokens.front().front() == '#') continue;

    if (!header) {
      if (tokens.size() != 2) throw gel_parse_error(line_no, "expected header 'n m'");
      const auto n = detail::parse_count(tokens[0]);
      const auto m = detail::parse_count(tokens[1]);
      if (!n || !m) throw gel_parse_error(line_no, "header values must be nonnegative integers");
      if (*n > 0xFFFFFFFFull) throw gel_parse_error(line_no, "vertex count too large");
      header.emplace(*n, *m);
      continue;
    }
    if (edges.size() == header->second) throw gel_parse_error(line_no, "more edge lines than declared");
    if (tokens.size() != 3) throw gel_parse_error(line_no, "expected 'u v label'");
    const auto u = detail::parse_count(tokens[0]);
    const auto v = detail::parse_count(tokens[1]);
    if (!u || !v) throw gel_parse_error(line_no, "vertex ids must be nonnegative integers");
    if (*u >= header->first || *v >= header->first) throw gel_parse_error(line_no, "vertex id out of range");
    if (*u == *v) throw gel_parse_error(line_no, "self-loop");
    const auto label = parse_rational(tokens[2]);
    if (!label) throw gel_parse_error(line_no, "malformed label '" + tokens[2] + "'");
    edges.push_back({static_cast<Vertex>(*u), static_cast<Vertex>(*v)});
    labels.push_back(*label);
  }
  if (!header) throw gel_parse_error(line_no, "missing header");
  if (edges.size() != header->second) {
    throw gel_parse_error(line_no, "declared " + std::to_string(header->second) + " edges, found " +
                                       std::to_string(edges.size()));
  }
  try {
    return LabelledGraph(Graph(header->first, std::move(edges)), std::move(labels));
  } catch (const invalid_input& e) {
    throw gel_parse_error(line_no, e.what());
  }
}

inline LabelledGraph read_gel(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_gel(in);
}

inline void write_gel(std::ostream& out, const LabelledGraph& lg) {
  out << lg.vertex_count() << ' ' << lg.edge_count() << '\n';
  for (std::size_t i = 0; i < lg.edge_count(); ++i) {
    const auto [u, v] = lg.graph().edge(i);
    out << u << ' ' << v << ' ' << format_rational(lg.labels()[i]) << '\n';
  }
}

inline std::string to_gel(const LabelledGraph& lg) {
  std::ostringstream out;
  write_gel(out, lg);
  return out.str();
}

}  // namespace goodlabel
