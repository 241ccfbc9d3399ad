#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixpar/enumeration.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "oracles.hpp"

using fixpar::MultiGraph;
using fixpar::Rational;

namespace {

Rational rat(long long num, long long den) { return Rational(num, den); }

MultiGraph triangle() { return fixpar::make_multigraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

MultiGraph random_graph(std::mt19937_64& rng, int max_n, int max_m) {
  std::uniform_int_distribution<int> nd(2, max_n);
  int n = nd(rng);
  std::uniform_int_distribution<int> md(1, max_m);
  int m = md(rng);
  std::uniform_int_distribution<int> vd(0, n - 1);
  std::vector<MultiGraph::Edge> edges;
  for (int e = 0; e < m; ++e) {
    int a = vd(rng), b = vd(rng);
    while (b == a) b = vd(rng);
    edges.push_back({a, b});
  }
  return fixpar::make_multigraph(n, std::move(edges));
}

std::vector<int> odd_set_of(const MultiGraph& g, const fixpar::Orientation& o) {
  auto stats = fixpar::orientation_stats(g, o);
  std::vector<int> odd;
  for (int v = 0; v < g.vertex_count; ++v)
    if (stats.in_degree[static_cast<std::size_t>(v)] % 2 == 1) odd.push_back(v);
  return odd;
}

bool target_parity_feasible(const MultiGraph& g, const std::vector<int>& target) {
  std::vector<char> flag(static_cast<std::size_t>(g.vertex_count), 0);
  for (int v : target) flag[static_cast<std::size_t>(v)] = 1;
  for (const auto& comp : fixpar::connected_components(g)) {
    int odd_here = 0;
    for (int v : comp.vertices) odd_here += flag[static_cast<std::size_t>(v)];
    if ((odd_here + comp.graph.edge_count()) % 2 != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("targeted odd sets are hit exactly when parity allows") {
  std::mt19937_64 rng(600);
  std::vector<MultiGraph> graphs = {
      triangle(),
      fixpar::cycle_graph(4),
      fixpar::path_graph(4),
      fixpar::star_graph(5),
      fixpar::make_multigraph(2, {{0, 1}, {0, 1}}),
      fixpar::make_multigraph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}}),
      fixpar::tadpole_graph(3, 6),
  };
  for (int i = 0; i < 10; ++i) graphs.push_back(random_graph(rng, 6, 8));

  for (const auto& g : graphs) {
    const int n = g.vertex_count;
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
      std::vector<int> target;
      for (int v = 0; v < n; ++v)
        if (subset >> v & 1u) target.push_back(v);
      auto result = fixpar::t_odd_orientation(g, target);
      CHECK(result.has_value() == target_parity_feasible(g, target));
      if (result) CHECK(odd_set_of(g, *result) == target);
    }
  }

  CHECK_THROWS_AS(fixpar::t_odd_orientation(triangle(), {3}), fixpar::FixparError);
  CHECK_THROWS_AS(fixpar::t_odd_orientation(triangle(), {1, 1}), fixpar::FixparError);
}

TEST_CASE("orientation census matches the binomial bucket pattern") {
  auto tri = fixpar::even_count_orientation_census(triangle(), 22);
  CHECK(tri.counts == std::vector<std::uint64_t>{2, 0, 6, 0});
  CHECK(tri.formula_applies);
  CHECK(tri.formula_ok);

  auto c4 = fixpar::even_count_orientation_census(fixpar::cycle_graph(4), 22);
  CHECK(c4.counts == std::vector<std::uint64_t>{2, 0, 12, 0, 2});
  CHECK(c4.formula_ok);

  auto k2 = fixpar::even_count_orientation_census(fixpar::path_graph(2), 22);
  CHECK(k2.counts == std::vector<std::uint64_t>{0, 2, 0});
  CHECK(k2.formula_ok);

  auto p3 = fixpar::even_count_orientation_census(fixpar::path_graph(3), 22);
  CHECK(p3.counts == std::vector<std::uint64_t>{0, 3, 0, 1});
  CHECK(p3.formula_ok);

  auto star = fixpar::even_count_orientation_census(fixpar::star_graph(4), 22);
  CHECK(star.counts == std::vector<std::uint64_t>{0, 4, 0, 4, 0});
  CHECK(star.formula_ok);

  auto apart = fixpar::even_count_orientation_census(
      fixpar::make_multigraph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}}), 22);
  CHECK(!apart.formula_applies);
  std::uint64_t total = 0;
  for (auto c : apart.counts) total += c;
  CHECK(total == 16);
}

TEST_CASE("orientation census agrees with the fair-coin law route") {
  std::mt19937_64 rng(601);
  for (int i = 0; i < 12; ++i) {
    auto g = random_graph(rng, 6, 10);
    auto census = fixpar::even_count_orientation_census(g, 22);
    auto brute = oracles::orientation_masses<Rational>(g, rat(1, 2));
    const Rational scale = fixpar::pow_int<Rational>(Rational(2), static_cast<unsigned>(g.edge_count()));
    for (int t = 0; t <= g.vertex_count; ++t)
      CHECK(Rational(census.counts[static_cast<std::size_t>(t)]) ==
            brute.even_pmf[static_cast<std::size_t>(t)] * scale);
    if (fixpar::is_connected(g)) CHECK(census.formula_ok);
  }
}

TEST_CASE("labeled-graph buckets aggregate to the binomial pattern") {
  auto two = fixpar::labeled_graph_census(2);
  CHECK(two.totals_by_odd == std::vector<std::uint64_t>{1, 0, 1});
  CHECK(two.aggregate_formula_ok);

  auto three = fixpar::labeled_graph_census(3);
  CHECK(three.totals_by_odd == std::vector<std::uint64_t>{2, 0, 6, 0});
  CHECK(three.by_edges_and_odd[0] == std::vector<std::uint64_t>{1, 0, 0, 0});
  CHECK(three.by_edges_and_odd[1] == std::vector<std::uint64_t>{0, 0, 3, 0});
  CHECK(three.by_edges_and_odd[2] == std::vector<std::uint64_t>{0, 0, 3, 0});
  CHECK(three.by_edges_and_odd[3] == std::vector<std::uint64_t>{1, 0, 0, 0});
  CHECK(three.aggregate_formula_ok);

  for (int n = 4; n <= 6; ++n) {
    auto census = fixpar::labeled_graph_census(n);
    CHECK(census.aggregate_formula_ok);
    std::uint64_t total = 0;
    for (auto c : census.totals_by_odd) total += c;
    CHECK(total == (std::uint64_t(1) << (n * (n - 1) / 2)));
  }
  CHECK_THROWS_AS(fixpar::labeled_graph_census(8), fixpar::FixparError);
}

TEST_CASE("tree codes decode to the expected labeled trees") {
  auto pair = fixpar::tree_from_pruefer({});
  CHECK(pair.vertex_count == 2);
  REQUIRE(pair.edge_count() == 1);

  auto star0 = fixpar::tree_from_pruefer({0});
  CHECK(star0.degree(0) == 2);

  auto star2 = fixpar::tree_from_pruefer({2});
  CHECK(star2.degree(2) == 2);

  // All sixteen codes of length two decode to sixteen distinct labeled trees.
  std::set<std::set<std::pair<int, int>>> seen;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto t = fixpar::tree_from_pruefer({a, b});
      REQUIRE(t.edge_count() == 3);
      CHECK(fixpar::is_connected(t));
      std::set<std::pair<int, int>> key;
      for (const auto& e : t.edges)
        key.insert({std::min(e.tail, e.head), std::max(e.tail, e.head)});
      seen.insert(key);
    }
  CHECK(seen.size() == 16);

  CHECK_THROWS_AS(fixpar::tree_from_pruefer({4, 0}), fixpar::FixparError);
}

TEST_CASE("tree profiles match brute enumeration over every small tree") {
  for (int n = 2; n <= 6; ++n) {
    const int len = n - 2;
    std::vector<int> code(static_cast<std::size_t>(len), 0);
    while (true) {
      auto tree = fixpar::tree_from_pruefer(code);
      auto sink = fixpar::oriented_sink_counts(tree);
      auto brute = oracles::orientation_masses<Rational>(tree, rat(1, 2));
      const Rational scale =
          fixpar::pow_int<Rational>(Rational(2), static_cast<unsigned>(n - 1));
      for (int z = 0; z <= n; ++z)
        CHECK(Rational(sink[static_cast<std::size_t>(z)]) ==
              brute.zero_pmf[static_cast<std::size_t>(z)] * scale);

      auto sets = fixpar::independent_set_profile(tree);
      CHECK(sets == oracles::independent_set_counts(tree));

      int i = len - 1;
      while (i >= 0 && code[static_cast<std::size_t>(i)] == n - 1) {
        code[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
      ++code[static_cast<std::size_t>(i)];
    }
  }

  // A few bigger spot checks against the direct walks.
  std::mt19937_64 rng(602);
  for (int round = 0; round < 5; ++round) {
    const int n = 8;
    std::vector<int> code(static_cast<std::size_t>(n - 2));
    std::uniform_int_distribution<int> digit(0, n - 1);
    for (auto& d : code) d = digit(rng);
    auto tree = fixpar::tree_from_pruefer(code);
    auto sink = fixpar::oriented_sink_counts(tree);
    auto brute = oracles::orientation_masses<Rational>(tree, rat(1, 2));
    const Rational scale = fixpar::pow_int<Rational>(Rational(2), static_cast<unsigned>(n - 1));
    for (int z = 0; z <= n; ++z)
      CHECK(Rational(sink[static_cast<std::size_t>(z)]) ==
            brute.zero_pmf[static_cast<std::size_t>(z)] * scale);
    CHECK(fixpar::independent_set_profile(tree) == oracles::independent_set_counts(tree));
  }

  CHECK_THROWS_AS(fixpar::oriented_sink_counts(triangle()), fixpar::FixparError);
}

TEST_CASE("tree survey sweeps cleanly through seven vertices") {
  fixpar::TreeSurveyOptions opt;
  opt.max_vertices = 7;
  auto result = fixpar::survey_tree_unimodality(opt);
  CHECK(result.trees_checked == 18248);  // 1 + 3 + 16 + 125 + 1296 + 16807
  CHECK(result.complete);
  CHECK(result.sink_violations == 0);
  CHECK(result.set_violations == 0);
  CHECK(result.examples.empty());
}

TEST_CASE("tree survey respects budgets and thread splits") {
  fixpar::TreeSurveyOptions budgeted;
  budgeted.max_vertices = 7;
  budgeted.tree_budget = 100;
  auto cut = fixpar::survey_tree_unimodality(budgeted);
  CHECK(cut.trees_checked == 100);
  CHECK(!cut.complete);

  fixpar::TreeSurveyOptions split;
  split.max_vertices = 6;
  split.jobs = 2;
  auto threaded = fixpar::survey_tree_unimodality(split);
  CHECK(threaded.trees_checked == 1441);
  CHECK(threaded.complete);
  CHECK(threaded.sink_violations == 0);
  CHECK(threaded.set_violations == 0);

  fixpar::TreeSurveyOptions bad;
  bad.max_vertices = 11;
  CHECK_THROWS_AS(fixpar::survey_tree_unimodality(bad), fixpar::FixparError);
}

TEST_CASE("built-in graph catalog is well formed") {
  const auto& catalog = fixpar::builtin_catalog();
  CHECK(catalog.size() >= 200);

  std::set<std::string> names;
  bool has_parallel = false;
  bool has_disconnected = false;
  int balanced = 0;
  for (const auto& entry : catalog) {
    CHECK(names.insert(entry.name).second);
    CHECK(entry.connected == fixpar::is_connected(entry.graph));
    if (!entry.connected) has_disconnected = true;
    if (entry.graph.edge_count() == entry.graph.vertex_count) ++balanced;
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : entry.graph.edges) {
      auto key = std::make_pair(std::min(e.tail, e.head), std::max(e.tail, e.head));
      if (!pairs.insert(key).second) has_parallel = true;
    }
  }
  CHECK(has_parallel);
  CHECK(has_disconnected);
  CHECK(balanced >= 20);

  auto named = [&](const std::string& want) {
    for (const auto& entry : catalog)
      if (entry.name == want) return true;
    return false;
  };
  CHECK(named("cycle-10"));
  CHECK(named("tadpole-3-10"));
  CHECK(named("theta-2-2-2"));
  CHECK(named("union-triangle-square"));
  CHECK(named("complete-5"));

  // Every tail/head split of the doubled pair on two vertices is present.
  int doubled_pairs = 0;
  for (const auto& entry : catalog)
    if (entry.graph.vertex_count == 2 && entry.graph.edge_count() == 2) ++doubled_pairs;
  CHECK(doubled_pairs == 3);
}
