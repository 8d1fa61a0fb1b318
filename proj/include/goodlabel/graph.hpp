#pragma once

// Simple undirected graphs carrying an exact rational edge labelling.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "goodlabel/errors.hpp"

namespace goodlabel {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Vertex = std::uint32_t;
using Rank = std::uint32_t;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Edge order is significant:
/// labellings index edges by their position in edges().
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t vertex_count, std::vector<Edge> edges = {})
      : n_(vertex_count), edges_(std::move(edges)) {
    std::vector<std::pair<Vertex, Vertex>> seen;
    seen.reserve(edges_.size());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto [u, v] = edges_[i];
      if (u >= n_ || v >= n_) {
        throw invalid_input("edge " + std::to_string(i) + " has an endpoint >= n");
      }
      if (u == v) {
        throw invalid_input("edge " + std::to_string(i) + " is a self-loop");
      }
      seen.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw invalid_input("graph has parallel edges");
    }
  }

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

using EdgeLabelling = std::vector<Rational>;

/// A graph plus one label per edge, indexed parallel to graph().edges().
class LabelledGraph {
 public:
  LabelledGraph() = default;

  LabelledGraph(Graph graph, EdgeLabelling labels)
      : graph_(std::move(graph)), labels_(std::move(labels)) {
    if (labels_.size() != graph_.edge_count()) {
      throw invalid_input("labelling has " + std::to_string(labels_.size()) +
                          " entries for " + std::to_string(graph_.edge_count()) +
                          " edges");
    }
  }

  const Graph& graph() const noexcept { return graph_; }
  const EdgeLabelling& labels() const noexcept { return labels_; }
  std::size_t vertex_count() const noexcept { return graph_.vertex_count(); }
  std::size_t edge_count() const noexcept { return graph_.edge_count(); }

  friend bool operator==(const LabelledGraph&, const LabelledGraph&) = default;

 private:
  Graph graph_;
  EdgeLabelling labels_;
};

using RankOrder = std::vector<Rank>;

/// Dense ranks starting at 1; equal labels share a rank.
inline RankOrder rank_order(std::span<const Rational> labels) {
  std::vector<Rational> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  RankOrder ranks;
  ranks.reserve(labels.size());
  for (const auto& x : labels) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), x);
    ranks.push_back(static_cast<Rank>(it - distinct.begin()) + 1);
  }
  return ranks;
}

inline RankOrder rank_order(const LabelledGraph& lg) { return rank_order(lg.labels()); }

inline bool has_ties(std::span<const Rank> ranks) {
  std::vector<Rank> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

inline bool has_ties(const LabelledGraph& lg) { return has_ties(rank_order(lg)); }

/// Breaks ties the way the upper-bound argument does: the smallest repeated
/// label L with multiplicity p is spread over L, L+1, ..., L+p-1 (ascending
/// edge index) and every label above L moves up by p. Repeats until strict.
inline LabelledGraph strictify(const LabelledGraph& lg) {
  EdgeLabelling labels = lg.labels();
  for (;;) {
    std::map<Rational, std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < labels.size(); ++i) classes[labels[i]].push_back(i);
    auto tied = std::find_if(classes.begin(), classes.end(),
                             [](const auto& c) { return c.second.size() > 1; });
    if (tied == classes.end()) break;

    const Rational base = tied->first;
    const auto& members = tied->second;
    const Rational shift(static_cast<long long>(members.size()));
    for (auto& x : labels) {
      if (x > base) x += shift;
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
      labels[members[j]] = base + Rational(static_cast<long long>(j));
    }
  }
  return LabelledGraph(lg.graph(), std::move(labels));
}

/// Replaces each label x by map(x), where the map is given as (x, image)
/// pairs. Every present label must be mapped, and the map must be strictly
/// increasing on the present labels.
inline LabelledGraph relabel_monotone(const LabelledGraph& lg,
                                      std::span<const std::pair<Rational, Rational>> map) {
  std::map<Rational, Rational> table;
  for (const auto& [x, y] : map) {
    auto [it, inserted] = table.emplace(x, y);
    if (!inserted && it->second != y) {
      throw invalid_input("relabel map assigns two images to one value");
    }
  }

  std::vector<Rational> present(lg.labels().begin(), lg.labels().end());
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  const Rational* previous = nullptr;
  for (const auto& x : present) {
    const auto it = table.find(x);
    if (it == table.end()) throw invalid_input("relabel map does not cover a present label");
    if (previous != nullptr && !(*previous < it->second)) {
      throw invalid_input("relabel map is not strictly increasing on the present labels");
    }
    previous = &it->second;
  }

  EdgeLabelling out;
  out.reserve(lg.edge_count());
  for (const auto& x : lg.labels()) out.push_back(table.at(x));
  return LabelledGraph(lg.graph(), std::move(out));
}

/// Convenience overload: evaluates `f` on every present label.
template <typename F>
  requires std::invocable<F, const Rational&>
LabelledGraph relabel_monotone(const LabelledGraph& lg, F&& f) {
  std::vector<std::pair<Rational, Rational>> pairs;
  for (const auto& x : lg.labels()) pairs.emplace_back(x, Rational(f(x)));
  return relabel_monotone(lg, std::span<const std::pair<Rational, Rational>>(pairs));
}

/// Keeps the edges whose indices are listed (in that order) with their labels.
inline LabelledGraph edge_subgraph(const LabelledGraph& lg, std::span<const std::size_t> keep) {
  std::vector<Edge> edges;
  EdgeLabelling labels;
  for (const auto i : keep) {
    edges.push_back(lg.graph().edge(i));
    labels.push_back(lg.labels().at(i));
  }
  return LabelledGraph(Graph(lg.vertex_count(), std::move(edges)), std::move(labels));
}

namespace detail {

struct Arc {
  Vertex to;
  std::size_t edge;
};

/// Neighbour lists sorted by neighbour id, so DFS visits vertex sequences
/// in lexicographic order.
inline std::vector<std::vector<Arc>> adjacency(const Graph& g) {
  std::vector<std::vector<Arc>> adj(g.vertex_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto [u, v] = g.edge(i);
    adj[u].push_back({v, i});
    adj[v].push_back({u, i});
  }
  for (auto& row : adj) {
    std::sort(row.begin(), row.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
  }
  return adj;
}

}  // namespace detail

}  // namespace goodlabel
