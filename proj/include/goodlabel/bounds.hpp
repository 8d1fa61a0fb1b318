#pragma once

// Bounds on f(n), the largest edge count of a good graph on n vertices:
//   (n/2) log2(3n/4) <= b(n) <= f(n) <= (n/2) log2(n),
// plus exact f(n) for tiny n by exhaustive search.
//
// Every accept/reject decision involving a logarithm reduces to comparing
// 2^a with c^p in integers. A long double estimate settles the comparison
// when it is far from a tie; anything inside the guard band is decided by
// exact big-integer arithmetic.

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "goodlabel/constructors.hpp"
#include "goodlabel/errors.hpp"
#include "goodlabel/game.hpp"
#include "goodlabel/goodness.hpp"
#include "goodlabel/graph.hpp"

namespace goodlabel {

namespace exact {

inline BigInt pow(const BigInt& base, std::uint64_t exponent) {
  BigInt result = 1;
  BigInt square = base;
  while (exponent > 0) {
    if (exponent & 1) result *= square;
    exponent >>= 1;
    if (exponent > 0) square *= square;
  }
  return result;
}

/// Sign of 2^exp2 - base^power, computed exactly (base >= 1).
inline int compare_pow2_power_exact(std::uint64_t exp2, std::uint64_t base, std::uint64_t power) {
  const BigInt lhs = BigInt(1) << exp2;
  const BigInt rhs = pow(BigInt(base), power);
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

/// Sign of 2^exp2 - base^power. Uses the floating estimate only when it
/// clears a guard band many orders of magnitude wider than its error.
inline int compare_pow2_power(std::uint64_t exp2, std::uint64_t base, std::uint64_t power) {
  if (base == 0) throw invalid_input("compare_pow2_power needs base >= 1");
  const long double estimate = static_cast<long double>(exp2) -
                               static_cast<long double>(power) * std::log2(static_cast<long double>(base));
  constexpr long double kGuard = 1e-6L;
  if (estimate > kGuard) return 1;
  if (estimate < -kGuard) return -1;
  return compare_pow2_power_exact(exp2, base, power);
}

}  // namespace exact

/// (n/2) log2(n) as a real number, for display.
inline double upper_bound(std::uint64_t n) {
  if (n == 0) throw invalid_input("upper_bound needs n >= 1");
  return static_cast<double>(n) / 2.0 * std::log2(static_cast<double>(n));
}

/// Largest integer m with m <= (n/2) log2(n), i.e. 2^(2m) <= n^n.
inline std::uint64_t upper_edge_budget(std::uint64_t n) {
  if (n == 0) throw invalid_input("upper_edge_budget needs n >= 1");
  if (std::has_single_bit(n)) {
    return static_cast<std::uint64_t>(std::countr_zero(n)) * n / 2;
  }
  const auto fits = [n](std::uint64_t m) { return exact::compare_pow2_power(2 * m, n, n) <= 0; };
  auto m = static_cast<std::uint64_t>(std::floor(upper_bound(n)));
  while (m > 0 && !fits(m)) --m;
  while (fits(m + 1)) ++m;
  return m;
}

/// (n/2) log2(3n/4), for display.
inline double lower_bound_formula(std::uint64_t n) {
  if (n == 0) throw invalid_input("lower_bound_formula needs n >= 1");
  const double x = static_cast<double>(n);
  return x / 2.0 * std::log2(3.0 * x / 4.0);
}

/// Exact test of (n/2) log2(3n/4) <= value, i.e. (3n)^n <= 2^(2 value + 2n).
inline bool lower_bound_formula_at_most(std::uint64_t n, const BigInt& value) {
  if (n == 0) throw invalid_input("lower_bound_formula_at_most needs n >= 1");
  if (value < 0) return false;
  const auto v = value.convert_to<std::uint64_t>();
  return exact::compare_pow2_power(2 * v + 2 * n, 3 * n, n) >= 0;
}

/// Exact test of r <= (n/2) log2(n) for a rational r = p/q, i.e. 2^(2p) <= n^(nq).
inline bool at_most_upper_bound(const Rational& r, std::uint64_t n) {
  if (n == 0) throw invalid_input("at_most_upper_bound needs n >= 1");
  const BigInt p = numerator(r);
  const BigInt q = denominator(r);
  if (p <= 0) return true;
  if (n == 1) return false;
  return exact::compare_pow2_power(2 * p.convert_to<std::uint64_t>(), n,
                                   n * q.convert_to<std::uint64_t>()) <= 0;
}

/// Exact test of h(x) = log2(x) - x + 1 >= 0 for a rational x = p/q >= 1,
/// i.e. 2^(p-q) q^q <= p^q.
inline bool log_gap_nonnegative(const Rational& x) {
  if (x < 1) throw invalid_input("log_gap_nonnegative needs x >= 1");
  const BigInt p = numerator(x);
  const BigInt q = denominator(x);
  const auto qq = q.convert_to<std::uint64_t>();
  const BigInt lhs = (BigInt(1) << (p - q).convert_to<std::uint64_t>()) * exact::pow(q, qq);
  return lhs <= exact::pow(p, qq);
}

/// The move-budget chain for even n: m0 <= formula <= (n/2) log2(n), with the
/// second step carried by h(n / 2^alpha) >= 0.
struct MoveBudgetChain {
  std::uint64_t m0 = 0;
  Rational formula;
  bool m0_within_formula = false;
  bool log_gap_holds = false;
  bool formula_within_upper = false;

  bool holds() const { return m0_within_formula && log_gap_holds && formula_within_upper; }
};

inline MoveBudgetChain move_budget_chain(std::uint64_t n) {
  MoveBudgetChain chain;
  chain.m0 = move_budget(n);
  chain.formula = move_budget_formula(n);
  chain.m0_within_formula = Rational(chain.m0) <= chain.formula;
  const unsigned alpha = static_cast<unsigned>(std::bit_width(n) - 1);
  chain.log_gap_holds = log_gap_nonnegative(Rational(BigInt(n), BigInt(1) << alpha));
  chain.formula_within_upper = at_most_upper_bound(chain.formula, n);
  return chain;
}

/// Value of the split recursion f(n) >= max f(n1) + f(n2) + min(n1, n2), f(1) = 0.
inline BigInt lower_bound_recursive(std::uint64_t n) {
  if (n == 0) throw invalid_input("lower_bound_recursive needs n >= 1");
  return BigInt(detail::max_split_table(n)[n]);
}

/// Bound on f(n), n odd, obtained from the even case at 2n and the join
/// inequality f(2n) >= 2 f(n) + n: f(n) <= floor((budget(2n) - n) / 2).
inline std::uint64_t odd_reduction_bound(std::uint64_t n) {
  if (n == 0 || n % 2 == 0) throw invalid_input("odd_reduction_bound needs an odd n >= 1");
  const std::uint64_t even_budget = upper_edge_budget(2 * n);
  return even_budget < n ? 0 : (even_budget - n) / 2;
}

/// The odd-n reduction lands inside the (n/2) log2(n) budget.
inline bool odd_upper_bound_check(std::uint64_t n) {
  if (n == 0 || n % 2 == 0) throw invalid_input("odd_upper_bound_check needs an odd n >= 1");
  // n log2(2n) = n log2(n) + n, so both sides are read off the same integer
  // comparison; the derived bound must not exceed the direct budget.
  return odd_reduction_bound(n) <= upper_edge_budget(n);
}

/// True iff g contains K3 or K_{2,3} as a (not necessarily induced) subgraph.
inline bool forbidden_subgraph_check(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : g.edges()) adjacent[u][v] = adjacent[v][u] = 1;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      std::size_t common = 0;
      for (std::size_t z = 0; z < n; ++z) {
        if (!adjacent[x][z] || !adjacent[y][z]) continue;
        if (adjacent[x][y]) return true;  // triangle xyz
        ++common;
      }
      if (common >= 3) return true;
    }
  }
  return false;
}

struct ExtremalSearchLimits {
  std::uint64_t max_n = 5;
  bool long_running = false;  // admits n = 6
  bool start_at_upper_bound = true;
  bool prune_forbidden = true;
  bool walk_filter = true;
  std::uint64_t max_orderings = 500'000'000;
  unsigned threads = 0;  // 0: hardware concurrency capped by GOODLABEL_THREADS
};

struct ExtremalResult {
  std::uint64_t value = 0;
  LabelledGraph witness;
  std::uint64_t graphs_examined = 0;
  std::uint64_t orderings_examined = 0;
};

/// Raised when f_exact_search stops early. Carries what was established:
/// a known good witness (from G_n) and the smallest edge count refuted.
class search_budget_error : public budget_exceeded {
 public:
  search_budget_error(const std::string& what, LabelledGraph best_witness,
                      std::optional<std::uint64_t> smallest_refuted)
      : budget_exceeded(what),
        best_witness_(std::move(best_witness)),
        smallest_refuted_(smallest_refuted) {}

  const LabelledGraph& best_witness() const noexcept { return best_witness_; }
  std::optional<std::uint64_t> smallest_refuted() const noexcept { return smallest_refuted_; }

 private:
  LabelledGraph best_witness_;
  std::optional<std::uint64_t> smallest_refuted_;
};

inline unsigned resolve_threads(unsigned requested) {
  unsigned threads = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("GOODLABEL_THREADS")) {
    const long value = std::strtol(cap, nullptr, 10);
    if (value >= 1) threads = std::min(threads, static_cast<unsigned>(value));
  }
  return std::max(1u, threads);
}

namespace detail {

inline std::vector<std::vector<std::size_t>> combinations(std::size_t universe, std::size_t choose) {
  std::vector<std::vector<std::size_t>> out;
  if (choose > universe) return out;
  std::vector<std::size_t> pick(choose);
  for (std::size_t i = 0; i < choose; ++i) pick[i] = i;
  for (;;) {
    out.push_back(pick);
    std::size_t i = choose;
    while (i > 0 && pick[i - 1] == universe - choose + i - 1) --i;
    if (i == 0) return out;
    ++pick[i - 1];
    for (std::size_t j = i; j < choose; ++j) pick[j] = pick[j - 1] + 1;
  }
}

/// First strict rank order (lexicographic over rank permutations) under which
/// g is good, or nothing. Counts orderings into `examined`.
inline std::optional<RankOrder> first_good_ordering(const Graph& g, bool walk_filter,
                                                    std::atomic<std::uint64_t>& examined,
                                                    std::uint64_t max_orderings,
                                                    const std::atomic<bool>& abort) {
  const std::size_t m = g.edge_count();
  RankOrder ranks(m);
  for (std::size_t i = 0; i < m; ++i) ranks[i] = static_cast<Rank>(i + 1);
  std::vector<std::size_t> order(m);
  std::vector<std::uint64_t> counts;
  do {
    if (abort.load(std::memory_order_relaxed)) return std::nullopt;
    if (examined.fetch_add(1, std::memory_order_relaxed) >= max_orderings) {
      throw budget_exceeded("search budget: ordering limit reached");
    }
    if (walk_filter) {
      for (std::size_t e = 0; e < m; ++e) order[ranks[e] - 1] = e;
      if (walk_bound_reject_fast(g, order, counts)) continue;
    }
    if (is_good(g, ranks).good) return ranks;
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  return std::nullopt;
}

}  // namespace detail

/// Exact f(n): scans edge counts downward, and for each m every graph on n
/// vertices with m edges (edge subsets in lexicographic order) and every
/// strict ordering of its edges. Strict orders suffice because breaking ties
/// preserves goodness. The first hit is the lexicographically smallest
/// witness, independent of the thread count.
inline ExtremalResult f_exact_search(std::uint64_t n, const ExtremalSearchLimits& limits = {}) {
  if (n == 0) throw invalid_input("f_exact_search needs n >= 1");
  const LabelledGraph fallback = binary_prefix_graph(n);
  const std::uint64_t allowed = limits.long_running ? std::max<std::uint64_t>(limits.max_n, 6) : limits.max_n;
  if (n > allowed) {
    throw search_budget_error("search budget: n = " + std::to_string(n) + " exceeds the limit " +
                                  std::to_string(allowed) + " (n = 6 needs long_running)",
                              fallback, std::nullopt);
  }

  std::vector<Edge> pairs;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) pairs.push_back({u, v});
  }
  const std::uint64_t top = limits.start_at_upper_bound
                                ? std::min<std::uint64_t>(upper_edge_budget(n), pairs.size())
                                : pairs.size();

  ExtremalResult result;
  std::atomic<std::uint64_t> orderings{0};
  std::optional<std::uint64_t> refuted;
  const unsigned threads = resolve_threads(limits.threads);

  for (std::uint64_t m = top;; --m) {
    if (m == 0) {
      result.value = 0;
      result.witness = LabelledGraph(Graph(n), {});
      break;
    }
    const auto subsets = detail::combinations(pairs.size(), m);
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{kNone};
    std::atomic<bool> abort{false};
    std::atomic<std::uint64_t> graphs{0};
    std::mutex guard;
    std::optional<RankOrder> best_ranks;
    std::exception_ptr failure;

    auto worker = [&] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= subsets.size() || i > best.load() || abort.load()) return;
          std::vector<Edge> edges;
          for (const auto p : subsets[i]) edges.push_back(pairs[p]);
          const Graph g(n, std::move(edges));
          graphs.fetch_add(1);
          if (limits.prune_forbidden && forbidden_subgraph_check(g)) continue;
          auto ranks = detail::first_good_ordering(g, limits.walk_filter, orderings,
                                                   limits.max_orderings, abort);
          if (!ranks) continue;
          std::lock_guard lock(guard);
          if (i < best.load()) {
            best.store(i);
            best_ranks = std::move(ranks);
          }
        }
      } catch (...) {
        std::lock_guard lock(guard);
        if (!failure) failure = std::current_exception();
        abort.store(true);
      }
    };

    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    result.graphs_examined += graphs.load();
    result.orderings_examined = orderings.load();

    if (failure) {
      try {
        std::rethrow_exception(failure);
      } catch (const budget_exceeded& e) {
        throw search_budget_error(e.what(), fallback, refuted);
      }
    }
    if (best.load() != kNone) {
      std::vector<Edge> edges;
      for (const auto p : subsets[best.load()]) edges.push_back(pairs[p]);
      EdgeLabelling labels;
      for (const auto r : *best_ranks) labels.emplace_back(r);
      result.value = m;
      result.witness = LabelledGraph(Graph(n, std::move(edges)), std::move(labels));
      break;
    }
    refuted = m;
  }
  return result;
}

enum class FSource { none, search, pinch };

struct BoundsRow {
  std::uint64_t n = 0;
  BigInt b;
  double lower = 0;
  double upper = 0;
  std::uint64_t budget = 0;
  bool lower_holds = false;  // exact: lower formula <= b(n)
  bool upper_holds = false;  // b(n) <= budget
  std::optional<std::uint64_t> f;
  FSource source = FSource::none;
  std::optional<LabelledGraph> witness;
  std::optional<std::string> error;

  bool sandwich_holds() const {
    if (!lower_holds || !upper_holds) return false;
    return !f || (b <= *f && *f <= budget);
  }
};

struct BoundsReport {
  std::vector<BoundsRow> rows;
  std::uint64_t exact_up_to = 0;

  bool sandwich_holds() const {
    return std::all_of(rows.begin(), rows.end(), [](const BoundsRow& r) { return r.sandwich_holds(); });
  }
};

/// Table for n = 1..n_max. Rows up to exact_up_to get f(n) by search; any
/// row where b(n) meets the integer budget gets f(n) by the pinch
/// b(n) <= f(n) <= budget, with G_n as witness. Search failures are
/// recorded per row. Witness graphs are kept only for n <= 64.
inline BoundsReport bound_table(std::uint64_t n_max, std::uint64_t exact_up_to,
                                const ExtremalSearchLimits& limits = {}) {
  if (n_max == 0) throw invalid_input("bound_table needs n_max >= 1");
  if (exact_up_to > 6) throw invalid_input("bound_table: exact_up_to must be <= 6");
  constexpr std::uint64_t kWitnessLimit = 64;
  BoundsReport report;
  report.exact_up_to = exact_up_to;
  report.rows.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    BoundsRow row;
    row.n = n;
    row.b = b(n);
    row.lower = lower_bound_formula(n);
    row.upper = upper_bound(n);
    row.budget = upper_edge_budget(n);
    row.lower_holds = lower_bound_formula_at_most(n, row.b);
    row.upper_holds = row.b <= row.budget;
    if (n <= exact_up_to) {
      try {
        auto found = f_exact_search(n, limits);
        row.f = found.value;
        row.source = FSource::search;
        row.witness = std::move(found.witness);
      } catch (const budget_exceeded& e) {
        row.error = e.what();
      }
    }
    if (!row.f && row.b == row.budget) {
      row.f = row.budget;
      row.source = FSource::pinch;
      if (n <= kWitnessLimit) row.witness = binary_prefix_graph(n);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace goodlabel
