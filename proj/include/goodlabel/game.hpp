#pragma once

// The sheet-merging game: n sheets carry positive integers; a move (a, b)
// erases a and b and writes a + b on both sheets. opt(S, k) is the smallest
// sum reachable after k moves, and greedy play (always merge the two
// smallest values) attains it.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "goodlabel/errors.hpp"
#include "goodlabel/graph.hpp"

namespace goodlabel {

/// Multiset of positive integers, stored sorted ascending.
class Configuration {
 public:
  Configuration() = default;

  explicit Configuration(std::vector<BigInt> values) : values_(std::move(values)) {
    for (const auto& x : values_) {
      if (x < 1) throw invalid_input("configuration values must be positive");
    }
    std::sort(values_.begin(), values_.end());
  }

  Configuration(std::initializer_list<long long> values)
      : Configuration(std::vector<BigInt>(values.begin(), values.end())) {}

  static Configuration ones(std::size_t n) { return Configuration(std::vector<BigInt>(n, BigInt(1))); }

  const std::vector<BigInt>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  BigInt sum() const {
    BigInt s = 0;
    for (const auto& x : values_) s += x;
    return s;
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration& a, const Configuration& b) {
    return a.values_ <=> b.values_;
  }

 private:
  std::vector<BigInt> values_;
};

/// A move names values, not sheets; (a, b) and (b, a) are the same move.
struct Move {
  BigInt a;
  BigInt b;

  friend bool operator==(const Move&, const Move&) = default;
};

struct PlayTrace {
  Configuration start;
  std::vector<Move> moves;
  std::vector<BigInt> sums;  // sum after each move
};

using CoefficientTuple = std::vector<std::uint64_t>;

/// Limits for the exhaustive searches. Exceeding any of them raises
/// budget_exceeded.
struct SearchBudget {
  std::size_t max_steps = 12;
  std::size_t max_size = 8;
  std::size_t max_states = 4'000'000;
};

inline Configuration apply_move(const Configuration& s, const Move& m) {
  std::vector<BigInt> values = s.values();
  for (const auto* x : {&m.a, &m.b}) {
    const auto it = std::find(values.begin(), values.end(), *x);
    if (it == values.end()) throw invalid_input("value not present: " + x->str());
    values.erase(it);
  }
  const BigInt merged = m.a + m.b;
  values.push_back(merged);
  values.push_back(merged);
  return Configuration(std::move(values));
}

inline PlayTrace greedy_play(const Configuration& s, std::size_t k) {
  if (k > 0 && s.size() < 2) throw invalid_input("greedy play needs at least two sheets");
  PlayTrace trace{s, {}, {}};
  Configuration current = s;
  BigInt sum = s.sum();
  for (std::size_t step = 0; step < k; ++step) {
    Move m{current.values()[0], current.values()[1]};
    sum += m.a + m.b;
    current = apply_move(current, m);
    trace.moves.push_back(std::move(m));
    trace.sums.push_back(sum);
  }
  return trace;
}

/// Exact opt(S, k) by depth-first search over value multisets, memoized on
/// (configuration, remaining moves). Reuse one solver to share the memo.
class OptSolver {
 public:
  explicit OptSolver(SearchBudget budget = {}) : budget_(budget) {}

  BigInt opt(const Configuration& s, std::size_t k) {
    if (k == 0) return s.sum();
    if (s.size() < 2) throw invalid_input("opt needs at least two sheets when k > 0");
    if (k > budget_.max_steps) {
      throw budget_exceeded("search budget: k = " + std::to_string(k) + " exceeds max_steps " +
                            std::to_string(budget_.max_steps));
    }
    if (s.size() > budget_.max_size) {
      throw budget_exceeded("search budget: size " + std::to_string(s.size()) +
                            " exceeds max_size " + std::to_string(budget_.max_size));
    }
    return search(s.values(), k);
  }

  std::size_t states() const noexcept { return memo_.size(); }

 private:
  BigInt search(const std::vector<BigInt>& values, std::size_t k) {
    if (k == 0) {
      BigInt s = 0;
      for (const auto& x : values) s += x;
      return s;
    }
    auto key = std::make_pair(values, k);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= budget_.max_states) {
      throw budget_exceeded("search budget: more than " + std::to_string(budget_.max_states) +
                            " memoized states");
    }

    std::optional<BigInt> best;
    std::vector<BigInt> child;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0 && values[i] == values[i - 1]) continue;
      for (std::size_t j = i + 1; j < values.size(); ++j) {
        if (j > i + 1 && values[j] == values[j - 1]) continue;
        child.clear();
        for (std::size_t x = 0; x < values.size(); ++x) {
          if (x != i && x != j) child.push_back(values[x]);
        }
        const BigInt merged = values[i] + values[j];
        child.insert(std::upper_bound(child.begin(), child.end(), merged), 2, merged);
        BigInt value = search(child, k - 1);
        if (!best || value < *best) best = std::move(value);
      }
    }
    memo_.emplace(std::move(key), *best);
    return *best;
  }

  SearchBudget budget_;
  std::map<std::pair<std::vector<BigInt>, std::size_t>, BigInt> memo_;
};

inline BigInt opt(const Configuration& s, std::size_t k, SearchBudget budget = {}) {
  return OptSolver(budget).opt(s, k);
}

/// Every coefficient tuple c such that some k-move strategy ends with sum
/// sum_i c_i s_i. Sheets are simulated symbolically: each holds a row of
/// coefficients over the starting values, a move replaces both rows by
/// their sum, and c is the column sum.
inline std::set<CoefficientTuple> enumerate_feasible(std::size_t n, std::size_t k,
                                                     SearchBudget budget = {}) {
  if (n < 2) throw invalid_input("enumerate_feasible needs n >= 2");
  if (n > budget.max_size || k > budget.max_steps || k >= 63) {
    throw budget_exceeded("search budget: enumerate_feasible(" + std::to_string(n) + ", " +
                          std::to_string(k) + ") is outside the configured limits");
  }
  using Row = std::vector<std::uint64_t>;
  using State = std::vector<Row>;

  State start(n, Row(n, 0));
  for (std::size_t i = 0; i < n; ++i) start[i][i] = 1;
  std::set<State> level{start};
  for (std::size_t step = 0; step < k; ++step) {
    std::set<State> next;
    for (const auto& state : level) {
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          State child = state;
          for (std::size_t c = 0; c < n; ++c) child[p][c] += child[q][c];
          child[q] = child[p];
          std::sort(child.begin(), child.end());
          next.insert(std::move(child));
          if (next.size() > budget.max_states) {
            throw budget_exceeded("search budget: more than " + std::to_string(budget.max_states) +
                                  " symbolic states");
          }
        }
      }
    }
    level = std::move(next);
  }

  std::set<CoefficientTuple> tuples;
  for (const auto& state : level) {
    CoefficientTuple c(n, 0);
    for (const auto& row : state) {
      for (std::size_t i = 0; i < n; ++i) c[i] += row[i];
    }
    tuples.insert(std::move(c));
  }
  return tuples;
}

/// opt(S, k) as a minimum of sum_i c_i s_i over k-feasible tuples. The tuple
/// set is closed under permutation, so s is taken in its sorted order.
inline BigInt opt_via_tuples(const Configuration& s, std::size_t k, SearchBudget budget = {}) {
  if (k == 0) return s.sum();
  std::optional<BigInt> best;
  for (const auto& c : enumerate_feasible(s.size(), k, budget)) {
    BigInt value = 0;
    for (std::size_t i = 0; i < c.size(); ++i) value += s.values()[i] * c[i];
    if (!best || value < *best) best = std::move(value);
  }
  return *best;
}

/// S <= T on the prefix k = 0..k_max: opt(S, k) <= opt(T, k) for each k.
inline bool dominates(const Configuration& s, const Configuration& t, std::size_t k_max,
                      SearchBudget budget = {}) {
  if (s.size() != t.size()) throw invalid_input("dominates needs configurations of equal size");
  OptSolver solver(budget);
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (solver.opt(s, k) > solver.opt(t, k)) return false;
  }
  return true;
}

/// Greedy sum equals opt for every k <= k_max.
inline bool verify_greedy(const Configuration& s, std::size_t k_max, SearchBudget budget = {}) {
  const PlayTrace trace = greedy_play(s, k_max);
  OptSolver solver(budget);
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (trace.sums[k - 1] != solver.opt(s, k)) return false;
  }
  return true;
}

/// Largest m with opt(all-ones of size n, m) <= n^2, found by greedy play.
inline std::uint64_t move_budget(std::uint64_t n) {
  if (n < 2 || n % 2 != 0) throw invalid_input("move_budget needs an even n >= 2");
  const BigInt limit = BigInt(n) * n;
  Configuration current = Configuration::ones(n);
  BigInt sum = n;
  std::uint64_t moves = 0;
  for (;;) {
    const Move m{current.values()[0], current.values()[1]};
    sum += m.a + m.b;
    if (sum > limit) return moves;
    current = apply_move(current, m);
    ++moves;
  }
}

/// alpha n / 2 + n (n - 2^alpha) / 2^(alpha + 1) with alpha = floor(log2 n).
inline Rational move_budget_formula(std::uint64_t n) {
  if (n < 2 || n % 2 != 0) throw invalid_input("move_budget_formula needs an even n >= 2");
  const unsigned alpha = static_cast<unsigned>(std::bit_width(n) - 1);
  const BigInt power = BigInt(1) << alpha;
  const Rational first = Rational(BigInt(alpha) * n, BigInt(2));
  const Rational second = Rational(BigInt(n) * (BigInt(n) - power), power * 2);
  return first + second;
}

}  // namespace goodlabel
