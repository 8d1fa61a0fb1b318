#pragma once

// Good graphs with explicit good labellings, and the binary digit sum b(n).

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "goodlabel/errors.hpp"
#include "goodlabel/goodness.hpp"
#include "goodlabel/graph.hpp"

namespace goodlabel {

inline constexpr unsigned kMaxHypercubeDimension = 20;

namespace detail {

// Vertices 0..n-1 of the infinite hypercube; edge {v, v | 2^i} carries label
// i. Edges are listed by (lower endpoint, bit).
inline LabelledGraph bit_flip_graph(std::uint64_t n) {
  std::vector<Edge> edges;
  EdgeLabelling labels;
  for (std::uint64_t v = 0; v < n; ++v) {
    for (unsigned bit = 0; (std::uint64_t{1} << bit) < n; ++bit) {
      const std::uint64_t w = v | (std::uint64_t{1} << bit);
      if (w == v || w >= n) continue;
      edges.push_back({static_cast<Vertex>(v), static_cast<Vertex>(w)});
      labels.emplace_back(bit);
    }
  }
  return LabelledGraph(Graph(n, std::move(edges)), std::move(labels));
}

}  // namespace detail

/// The d-dimensional hypercube; the edge flipping bit i is labelled i.
inline LabelledGraph hypercube(unsigned d) {
  if (d > kMaxHypercubeDimension) {
    throw invalid_input("hypercube dimension " + std::to_string(d) + " exceeds " +
                        std::to_string(kMaxHypercubeDimension));
  }
  return detail::bit_flip_graph(std::uint64_t{1} << d);
}

/// G_n: integers 0..n-1, adjacent when their binary expansions differ in one
/// digit, each edge labelled by that digit's position. It is the subgraph of
/// the hypercube induced by the first n vertices, so the labelling is good.
inline LabelledGraph binary_prefix_graph(std::uint64_t n) {
  if (n == 0) throw invalid_input("binary_prefix_graph needs n >= 1");
  if (n > (std::uint64_t{1} << kMaxHypercubeDimension)) {
    throw invalid_input("binary_prefix_graph size exceeds 2^20");
  }
  return detail::bit_flip_graph(n);
}

/// Disjoint union of g and h (h's vertices shifted by |V(g)|) plus the given
/// matching, whose edges are labelled M, M+1, ... in list order, with M one
/// more than the largest existing label (0 when both graphs are edgeless).
/// The result is good whenever g and h are.
inline LabelledGraph matching_join(const LabelledGraph& g, const LabelledGraph& h,
                                   std::span<const std::pair<Vertex, Vertex>> matching) {
  std::vector<char> used_g(g.vertex_count(), 0);
  std::vector<char> used_h(h.vertex_count(), 0);
  for (const auto& [x, y] : matching) {
    if (x >= g.vertex_count() || y >= h.vertex_count()) {
      throw invalid_input("matching endpoint out of range");
    }
    if (used_g[x]++ || used_h[y]++) throw invalid_input("matching reuses a vertex");
  }
  if (!is_good(g).good) throw invalid_input("matching_join: first graph is not good");
  if (!is_good(h).good) throw invalid_input("matching_join: second graph is not good");

  std::optional<Rational> top;
  for (const auto* part : {&g, &h}) {
    for (const auto& x : part->labels()) {
      if (!top || *top < x) top = x;
    }
  }
  const Rational base = top ? *top + 1 : Rational(0);

  const auto shift = static_cast<Vertex>(g.vertex_count());
  std::vector<Edge> edges = g.graph().edges();
  EdgeLabelling labels = g.labels();
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto [u, v] = h.graph().edge(i);
    edges.push_back({u + shift, v + shift});
    labels.push_back(h.labels()[i]);
  }
  for (std::size_t i = 0; i < matching.size(); ++i) {
    edges.push_back({matching[i].first, matching[i].second + shift});
    labels.push_back(base + Rational(static_cast<long long>(i)));
  }
  return LabelledGraph(Graph(g.vertex_count() + h.vertex_count(), std::move(edges)),
                       std::move(labels));
}

/// Total number of 1 bits over the binary expansions of 0..n-1, counted one
/// bit position at a time: position i is set in floor(n / 2^{i+1}) full
/// blocks of 2^i numbers plus max(0, n mod 2^{i+1} - 2^i) in the tail.
inline BigInt b(std::uint64_t n) {
  if (n == 0) throw invalid_input("b(n) needs n >= 1");
  BigInt total = 0;
  for (unsigned i = 0; i < 64 && (std::uint64_t{1} << i) < n; ++i) {
    const std::uint64_t half = std::uint64_t{1} << i;
    const BigInt period = BigInt(half) * 2;
    const BigInt full_blocks = BigInt(n) / period;
    const BigInt tail = BigInt(n) % period;
    total += full_blocks * half;
    if (tail > half) total += tail - half;
  }
  return total;
}

namespace detail {

/// t[n] = max over n1 + n2 = n of t[n1] + t[n2] + min(n1, n2), with t[1] = 0.
/// Values stay below n log2(n) / 2, far inside 64 bits for any n this
/// quadratic table can reach.
inline std::vector<std::uint64_t> max_split_table(std::uint64_t n) {
  std::vector<std::uint64_t> t(n + 1, 0);
  for (std::uint64_t k = 2; k <= n; ++k) {
    std::uint64_t best = 0;
    for (std::uint64_t small = 1; small <= k / 2; ++small) {
      best = std::max(best, t[small] + t[k - small] + small);
    }
    t[k] = best;
  }
  return t;
}

}  // namespace detail

/// b(n) via the split recursion b(n) = max b(n1) + b(n2) + min(n1, n2).
inline BigInt b_recursive(std::uint64_t n) {
  if (n == 0) throw invalid_input("b_recursive needs n >= 1");
  return BigInt(detail::max_split_table(n)[n]);
}

}  // namespace goodlabel
