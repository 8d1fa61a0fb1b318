#pragma once

// Goodness verification with certificates, and nice-walk counting.
//
// A nondecreasing path is a simple path with at least one edge whose labels
// never decrease. A labelling is good when every ordered pair of distinct
// vertices is joined by at most one such path. A nice walk may revisit
// vertices but never immediately backtracks, and its labels never decrease;
// a single vertex is a nice walk of length 0.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "goodlabel/errors.hpp"
#include "goodlabel/graph.hpp"

namespace goodlabel {

using VertexSequence = std::vector<Vertex>;

/// Two distinct nondecreasing paths from `from` to `to`.
struct PairCertificate {
  Vertex from = 0;
  Vertex to = 0;
  VertexSequence first;
  VertexSequence second;

  friend bool operator==(const PairCertificate&, const PairCertificate&) = default;
};

/// A nice walk v0..vt with t > 0 and v0 == vt.
struct ClosedWalkCertificate {
  VertexSequence walk;

  friend bool operator==(const ClosedWalkCertificate&, const ClosedWalkCertificate&) = default;
};

using Certificate = std::variant<PairCertificate, ClosedWalkCertificate>;

struct GoodnessVerdict {
  bool good = true;
  std::optional<Certificate> certificate;

  friend bool operator==(const GoodnessVerdict&, const GoodnessVerdict&) = default;
};

/// Number of nice walks ending at each vertex.
struct WalkProfile {
  std::vector<BigInt> counts;
  BigInt total;

  friend bool operator==(const WalkProfile&, const WalkProfile&) = default;
};

namespace detail {

inline std::map<std::pair<Vertex, Vertex>, std::size_t> edge_index(const Graph& g) {
  std::map<std::pair<Vertex, Vertex>, std::size_t> index;
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto [u, v] = g.edge(i);
    index[{std::min(u, v), std::max(u, v)}] = i;
  }
  return index;
}

inline void require_vertex(const Graph& g, Vertex v) {
  if (v >= g.vertex_count()) throw invalid_input("vertex " + std::to_string(v) + " out of range");
}

/// Lexicographic DFS over nondecreasing simple paths from one source.
class PathSearch {
 public:
  PathSearch(const Graph& g, std::span<const Rank> ranks)
      : adj_(adjacency(g)), ranks_(ranks), on_path_(g.vertex_count(), 0) {}

  /// Calls visit(path) for every nondecreasing path starting at source, in
  /// lexicographic order. visit returns true to stop the search.
  template <typename Visit>
  bool run(Vertex source, Visit&& visit) {
    path_.assign(1, source);
    on_path_[source] = 1;
    bool stopped = false;
    for (const auto& arc : adj_[source]) {
      if (extend(arc, visit)) {
        stopped = true;
        break;
      }
    }
    on_path_[source] = 0;
    return stopped;
  }

 private:
  template <typename Visit>
  bool extend(const Arc& arc, Visit& visit) {
    path_.push_back(arc.to);
    on_path_[arc.to] = 1;
    bool stop = visit(std::as_const(path_));
    if (!stop) {
      const Rank here = ranks_[arc.edge];
      for (const auto& next : adj_[arc.to]) {
        if (on_path_[next.to] || ranks_[next.edge] < here) continue;
        if (extend(next, visit)) {
          stop = true;
          break;
        }
      }
    }
    on_path_[arc.to] = 0;
    path_.pop_back();
    return stop;
  }

  std::vector<std::vector<Arc>> adj_;
  std::span<const Rank> ranks_;
  std::vector<char> on_path_;
  VertexSequence path_;
};

}  // namespace detail

/// All nondecreasing paths from u to v, lexicographic by vertex sequence.
inline std::vector<VertexSequence> nondecreasing_paths(const LabelledGraph& lg, Vertex u, Vertex v) {
  detail::require_vertex(lg.graph(), u);
  detail::require_vertex(lg.graph(), v);
  if (u == v) throw invalid_input("nondecreasing_paths needs distinct endpoints");
  const RankOrder ranks = rank_order(lg);
  std::vector<VertexSequence> found;
  detail::PathSearch search(lg.graph(), ranks);
  search.run(u, [&](const VertexSequence& path) {
    if (path.back() == v) found.push_back(path);
    return false;
  });
  return found;
}

/// Goodness of a graph under a weak order of its edges. Only comparisons of
/// ranks matter, so this is the workhorse behind every goodness query.
inline GoodnessVerdict is_good(const Graph& g, std::span<const Rank> ranks) {
  if (ranks.size() != g.edge_count()) throw invalid_input("rank count does not match edge count");
  detail::PathSearch search(g, ranks);
  std::vector<std::uint8_t> arrivals(g.vertex_count());
  std::vector<VertexSequence> first(g.vertex_count());
  for (Vertex source = 0; source < g.vertex_count(); ++source) {
    std::fill(arrivals.begin(), arrivals.end(), 0);
    std::optional<PairCertificate> cert;
    search.run(source, [&](const VertexSequence& path) {
      const Vertex target = path.back();
      if (arrivals[target]++ == 0) {
        first[target] = path;
        return false;
      }
      cert = PairCertificate{source, target, first[target], path};
      return true;
    });
    if (cert) return GoodnessVerdict{false, Certificate{std::move(*cert)}};
  }
  return GoodnessVerdict{};
}

inline GoodnessVerdict is_good(const LabelledGraph& lg) {
  const RankOrder ranks = rank_order(lg);
  return is_good(lg.graph(), ranks);
}

inline bool is_nondecreasing_path(const LabelledGraph& lg, std::span<const Vertex> path) {
  if (path.size() < 2) return false;
  const auto index = detail::edge_index(lg.graph());
  std::vector<Vertex> sorted(path.begin(), path.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  const Rational* previous = nullptr;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const auto it = index.find({std::min(path[i - 1], path[i]), std::max(path[i - 1], path[i])});
    if (it == index.end()) return false;
    const Rational& label = lg.labels()[it->second];
    if (previous != nullptr && label < *previous) return false;
    previous = &label;
  }
  return true;
}

inline bool is_nice_walk(const LabelledGraph& lg, std::span<const Vertex> walk) {
  if (walk.empty()) return false;
  for (const auto v : walk) {
    if (v >= lg.vertex_count()) return false;
  }
  const auto index = detail::edge_index(lg.graph());
  const Rational* previous = nullptr;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const auto it = index.find({std::min(walk[i - 1], walk[i]), std::max(walk[i - 1], walk[i])});
    if (it == index.end()) return false;
    if (i >= 2 && walk[i - 2] == walk[i]) return false;
    const Rational& label = lg.labels()[it->second];
    if (previous != nullptr && label < *previous) return false;
    previous = &label;
  }
  return true;
}

/// True when the certificate proves the labelling is not good.
inline bool validate_certificate(const LabelledGraph& lg, const Certificate& cert) {
  if (const auto* pair = std::get_if<PairCertificate>(&cert)) {
    const auto ends_ok = [&](const VertexSequence& p) {
      return !p.empty() && p.front() == pair->from && p.back() == pair->to;
    };
    return pair->from != pair->to && pair->first != pair->second && ends_ok(pair->first) &&
           ends_ok(pair->second) && is_nondecreasing_path(lg, pair->first) &&
           is_nondecreasing_path(lg, pair->second);
  }
  const auto& walk = std::get<ClosedWalkCertificate>(cert).walk;
  return walk.size() >= 2 && walk.front() == walk.back() && is_nice_walk(lg, walk);
}

namespace detail {

/// Arc id 2e means edges[e].u -> edges[e].v, 2e+1 the reverse.
struct ArcView {
  const Graph& g;
  Vertex tail(std::size_t a) const { return a % 2 == 0 ? g.edge(a / 2).u : g.edge(a / 2).v; }
  Vertex head(std::size_t a) const { return a % 2 == 0 ? g.edge(a / 2).v : g.edge(a / 2).u; }
};

/// A closed nice walk exists iff the arc-transition graph has a cycle; every
/// such cycle runs on equal labels, so only tied transitions are searched.
inline std::optional<VertexSequence> find_closed_nice_walk(const Graph& g,
                                                          std::span<const Rank> ranks) {
  const ArcView arcs{g};
  const auto adj = adjacency(g);
  const std::size_t arc_count = 2 * g.edge_count();
  std::vector<std::vector<std::size_t>> next(arc_count);
  for (std::size_t a = 0; a < arc_count; ++a) {
    const Vertex from = arcs.tail(a);
    const Vertex at = arcs.head(a);
    for (const auto& out : adj[at]) {
      if (out.to == from || ranks[out.edge] != ranks[a / 2]) continue;
      next[a].push_back(2 * out.edge + (g.edge(out.edge).u == at ? 0 : 1));
    }
  }

  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> colour(arc_count, kWhite);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> cursor(arc_count, 0);
  for (std::size_t root = 0; root < arc_count; ++root) {
    if (colour[root] != kWhite) continue;
    stack.assign(1, root);
    colour[root] = kGrey;
    while (!stack.empty()) {
      const std::size_t a = stack.back();
      if (cursor[a] == next[a].size()) {
        colour[a] = kBlack;
        stack.pop_back();
        continue;
      }
      const std::size_t b = next[a][cursor[a]++];
      if (colour[b] == kWhite) {
        colour[b] = kGrey;
        stack.push_back(b);
      } else if (colour[b] == kGrey) {
        const auto start = std::find(stack.begin(), stack.end(), b);
        VertexSequence walk{arcs.tail(*start)};
        for (auto it = start; it != stack.end(); ++it) walk.push_back(arcs.head(*it));
        return walk;
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Closed nice walk certificate, if the labelling admits one.
inline std::optional<ClosedWalkCertificate> closed_nice_walk(const LabelledGraph& lg) {
  const RankOrder ranks = rank_order(lg);
  if (auto walk = detail::find_closed_nice_walk(lg.graph(), ranks)) {
    return ClosedWalkCertificate{std::move(*walk)};
  }
  return std::nullopt;
}

/// Counts nice walks by listing every one of them. Exponential; meant as the
/// oracle for the incremental recurrence. Throws unbounded_walks when ties
/// allow a closed nice walk (the walk set is then infinite).
inline WalkProfile nice_walks_bruteforce(const LabelledGraph& lg) {
  const Graph& g = lg.graph();
  const RankOrder ranks = rank_order(lg);
  if (auto walk = detail::find_closed_nice_walk(g, ranks)) throw unbounded_walks(std::move(*walk));

  const auto adj = detail::adjacency(g);
  std::vector<std::uint64_t> counts(g.vertex_count(), 1);
  // Without closed walks every walk is a path in the arc DAG, so it has at
  // most 2m edges; the explicit cap keeps the recursion bounded regardless.
  const std::size_t max_length = 2 * g.edge_count();

  auto extend = [&](auto&& self, Vertex from, Vertex at, std::size_t edge, std::size_t length) -> void {
    ++counts[at];
    if (length == max_length) return;
    for (const auto& out : adj[at]) {
      if (out.to == from || ranks[out.edge] < ranks[edge]) continue;
      self(self, at, out.to, out.edge, length + 1);
    }
  };
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (const auto& out : adj[v]) extend(extend, v, out.to, out.edge, 1);
  }

  WalkProfile profile;
  for (const auto c : counts) {
    profile.counts.emplace_back(c);
    profile.total += c;
  }
  return profile;
}

/// Profiles after inserting the edges one at a time in increasing label
/// order; element 0 is the edgeless start (all ones). Requires distinct labels.
inline std::vector<WalkProfile> nice_walk_profile_incremental(const LabelledGraph& lg) {
  const RankOrder ranks = rank_order(lg);
  if (has_ties(ranks)) throw invalid_input("incremental walk profile needs pairwise distinct labels");

  std::vector<std::size_t> order(lg.edge_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ranks[a] < ranks[b]; });

  WalkProfile current;
  current.counts.assign(lg.vertex_count(), BigInt(1));
  current.total = BigInt(lg.vertex_count());
  std::vector<WalkProfile> profiles{current};
  for (const auto e : order) {
    const auto [u, v] = lg.graph().edge(e);
    const BigInt merged = current.counts[u] + current.counts[v];
    current.total += merged;  // a_u + a_v is added to the sum by each merge
    current.counts[u] = merged;
    current.counts[v] = merged;
    profiles.push_back(current);
  }
  return profiles;
}

/// True when the nice-walk total exceeds n^2, which rules out goodness.
inline bool walk_bound_reject(const LabelledGraph& lg) {
  const auto profiles = nice_walk_profile_incremental(lg);
  const BigInt n(lg.vertex_count());
  return profiles.back().total > n * n;
}

namespace detail {

/// Allocation-light form of walk_bound_reject for strict rank orders used in
/// the extremal search; `order` lists edge indices by increasing rank.
inline bool walk_bound_reject_fast(const Graph& g, std::span<const std::size_t> order,
                                   std::vector<std::uint64_t>& counts) {
  const std::uint64_t n = g.vertex_count();
  const std::uint64_t limit = n * n;
  counts.assign(n, 1);
  std::uint64_t total = n;
  for (const auto e : order) {
    const auto [u, v] = g.edge(e);
    const std::uint64_t merged = counts[u] + counts[v];
    total += merged;
    if (total > limit) return true;  // totals only grow
    counts[u] = merged;
    counts[v] = merged;
  }
  return false;
}

}  // namespace detail

}  // namespace goodlabel
