// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "goodlabel/bounds.hpp"
#include "goodlabel/constructors.hpp"
#include "goodlabel/game.hpp"
#include "goodlabel/goodness.hpp"
#include "support/generators.hpp"

namespace {

using namespace goodlabel;
namespace t = goodlabel::testing;

struct Check {
  std::string detail;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

// 1. b at powers of two, hypercubes good.
Check powers_of_two() {
  Check c;
  for (unsigned d = 1; d <= 20; ++d) {
    const BigInt expected = BigInt(d) << (d - 1);
    c.require(b(std::uint64_t{1} << d) == expected, "b(2^" + std::to_string(d) + ")");
  }
  for (unsigned d = 0; d <= 4; ++d) c.require(is_good(hypercube(d)).good, "hypercube " + std::to_string(d));
  c.detail = c.ok ? "b(2^d) = d 2^(d-1) for d <= 20; Q_0..Q_4 good" : c.detail;
  return c;
}

// 2. f(1..5) by search, f(6), f(8) by pinch.
Check extremal_values() {
  Check c;
  const std::vector<std::uint64_t> expected{0, 1, 2, 4, 5};
  for (std::uint64_t n = 1; n <= 5; ++n) {
    const auto r = f_exact_search(n);
    c.require(r.value == expected[n - 1], "f(" + std::to_string(n) + ") = " + std::to_string(r.value));
    c.require(r.witness.edge_count() == r.value && r.witness.vertex_count() == n && is_good(r.witness).good,
              "witness for f(" + std::to_string(n) + ")");
  }
  const auto table = bound_table(8, 0);
  c.require(table.rows[5].f == 7u && table.rows[5].source == FSource::pinch, "f(6) pinch");
  c.require(table.rows[7].f == 12u && table.rows[7].source == FSource::pinch, "f(8) pinch");
  c.detail = c.ok ? "f(1..5) = 0 1 2 4 5; f(6) = 7, f(8) = 12 pinched" : c.detail;
  return c;
}

void multisets(std::size_t size, long long lo, long long hi, std::vector<long long>& cur,
               const std::function<void(const std::vector<long long>&)>& visit) {
  if (cur.size() == size) {
    visit(cur);
    return;
  }
  for (long long v = cur.empty() ? lo : cur.back(); v <= hi; ++v) {
    cur.push_back(v);
    multisets(size, lo, hi, cur, visit);
    cur.pop_back();
  }
}

Configuration config(const std::vector<long long>& xs) {
  std::vector<BigInt> values(xs.begin(), xs.end());
  return Configuration(std::move(values));
}

// 3. greedy optimal on small multisets.
Check greedy_sweep() {
  Check c;
  std::size_t count = 0;
  for (std::size_t size = 2; size <= 5; ++size) {
    std::vector<long long> cur;
    multisets(size, 1, 4, cur, [&](const std::vector<long long>& xs) {
      ++count;
      std::string name;
      for (const auto x : xs) name += std::to_string(x) + ",";
      c.require(verify_greedy(config(xs), 6), "greedy beaten on " + name);
    });
  }
  if (c.ok) c.detail = std::to_string(count) + " multisets of size 2..5 over {1..4}, k <= 6";
  return c;
}

// 4. opt against feasible tuples.
Check tuple_oracle() {
  Check c;
  std::vector<long long> cur;
  multisets(4, 1, 3, cur, [&](const std::vector<long long>& xs) {
    for (std::size_t k = 0; k <= 4; ++k) {
      c.require(opt(config(xs), k) == opt_via_tuples(config(xs), k), "opt mismatch");
    }
  });
  c.require(enumerate_feasible(3, 1).size() == 3, "enumerate_feasible(3,1)");
  if (c.ok) c.detail = "15 multisets x k <= 4 agree; 3 one-move tuples for n = 3";
  return c;
}

// 5. incremental walk profile against brute force.
Check walk_oracle() {
  Check c;
  t::Rng rng(20261016);
  std::size_t good = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto lg = t::random_labelled(rng, 7, 9, true);
    const auto brute = nice_walks_bruteforce(lg);
    const auto profile = nice_walk_profile_incremental(lg);
    c.require(brute.total == profile.back().total && brute.counts == profile.back().counts,
              "profile mismatch at trial " + std::to_string(trial));
    if (is_good(lg).good) {
      ++good;
      c.require(!walk_bound_reject(lg), "rejected a good instance");
    }
  }
  const LabelledGraph p3(Graph(3, {{0, 1}, {1, 2}}), {Rational(1), Rational(2)});
  c.require(nice_walks_bruteforce(p3).total == 8 && nice_walk_profile_incremental(p3).back().total == 8, "P3");
  if (c.ok) c.detail = "1000 graphs agree (" + std::to_string(good) + " good, none rejected); P3 total 8";
  return c;
}

// 6. matching joins stay good.
Check joins() {
  Check c;
  t::Rng rng(6);
  int good = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = t::random_good(rng, 6);
    const auto h = t::random_good(rng, 6);
    const auto m = t::random_matching(rng, g.vertex_count(), h.vertex_count());
    if (is_good(matching_join(g, h, m)).good) ++good;
  }
  c.require(good == 500, std::to_string(good) + "/500 good");
  if (c.ok) c.detail = "500/500 joins good";
  return c;
}

// 7. pair exchange domination.
Check domination() {
  Check c;
  t::Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long long> w(4);
    for (auto& x : w) x = static_cast<long long>(t::uniform(rng, 1, 6));
    std::sort(w.begin(), w.end());
    const long long a = w[0], bb = w[1], cc = w[2], d = w[3];
    std::vector<long long> pad(t::uniform(rng, 0, 2));
    for (auto& x : pad) x = static_cast<long long>(t::uniform(rng, 1, 6));
    auto with_pad = [&](std::vector<long long> xs) {
      xs.insert(xs.end(), pad.begin(), pad.end());
      return config(xs);
    };
    const auto s = with_pad({a + bb, a + bb, cc + d, cc + d});
    const auto tt = with_pad({a + cc, a + cc, bb + d, bb + d});
    const auto u = with_pad({a + d, a + d, bb + cc, bb + cc});
    c.require(dominates(s, tt, 6) && dominates(s, u, 6), "trial " + std::to_string(trial));
  }
  if (c.ok) c.detail = "200 trials, S <= T and S <= U up to k = 6";
  return c;
}

// 8. sandwich sweep.
Check sandwich() {
  Check c;
  for (std::uint64_t n = 1; n <= 100000 && c.ok; ++n) {
    const BigInt bn = b(n);
    c.require(lower_bound_formula_at_most(n, bn), "lower bound at n = " + std::to_string(n));
    c.require(bn <= upper_edge_budget(n), "upper bound at n = " + std::to_string(n));
  }
  if (c.ok) c.detail = "n <= 100000";
  return c;
}

// 9. strictify and relabelling.
Check strictify_relabel() {
  Check c;
  t::Rng rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const auto lg = t::random_good(rng, 7);
    const auto s = strictify(lg);
    c.require(!has_ties(s) && is_good(s).good, "strictify trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 500; ++trial) {
    const auto lg = t::random_labelled(rng, 7, 10, (rng() & 1) != 0);
    const auto moved = relabel_monotone(lg, t::random_monotone_map(rng, lg));
    c.require(is_good(lg).good == is_good(moved).good, "relabel trial " + std::to_string(trial));
  }
  if (c.ok) c.detail = "500 strictify + 500 relabel trials";
  return c;
}

// 10. move budget chain.
Check move_budget_chain_check() {
  Check c;
  for (std::uint64_t n = 2; n <= 64; n += 2) {
    c.require(move_budget_chain(n).holds(), "n = " + std::to_string(n));
  }
  if (c.ok) c.detail = "even n <= 64";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Check (*)()>> criteria{
      {"AC1 powers of two", powers_of_two},       {"AC2 extremal values", extremal_values},
      {"AC3 greedy sweep", greedy_sweep},         {"AC4 tuple oracle", tuple_oracle},
      {"AC5 walk oracle", walk_oracle},           {"AC6 matching join", joins},
      {"AC7 domination", domination},             {"AC8 sandwich", sandwich},
      {"AC9 strictify/relabel", strictify_relabel}, {"AC10 move budget", move_budget_chain_check},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = run();
    } catch (const std::exception& e) {
      result.ok = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %-22s %9.1f ms  %s\n", result.ok ? "PASS" : "FAIL", name, ms, result.detail.c_str());
    if (!result.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
