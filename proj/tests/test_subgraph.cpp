#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixpar/subgraph.hpp"

#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"

using fixpar::MultiGraph;
using fixpar::Pmf;
using fixpar::Rational;
using fixpar::Subgraph;
using fixpar::Verdict;

namespace {

Rational rat(long long num, long long den) { return Rational(num, den); }

MultiGraph triangle() { return fixpar::make_multigraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

MultiGraph cycle4() { return fixpar::make_multigraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

MultiGraph two_edges() { return fixpar::make_multigraph(4, {{0, 1}, {2, 3}}); }

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

}  // namespace

TEST_CASE("odd-degree count is computed per subset and is always even") {
  auto g = triangle();
  CHECK(fixpar::odd_degree_count(g, Subgraph{0, 0, 0}) == 0);
  CHECK(fixpar::odd_degree_count(g, Subgraph{1, 0, 0}) == 2);
  CHECK(fixpar::odd_degree_count(g, Subgraph{1, 1, 0}) == 2);
  CHECK(fixpar::odd_degree_count(g, Subgraph{1, 1, 1}) == 0);
  CHECK_THROWS_AS(fixpar::odd_degree_count(g, Subgraph{1, 0}), fixpar::FixparError);
  CHECK_THROWS_AS(fixpar::odd_degree_count(g, Subgraph{1, 0, 2}), fixpar::FixparError);

  std::mt19937_64 rng(500);
  for (int i = 0; i < 12; ++i) {
    auto h = random_graph(rng, 6, 9);
    auto sweep = fixpar::sweep_subgraph_invariants(h, 22);
    CHECK(sweep.subgraphs == (std::uint64_t(1) << h.edge_count()));
    CHECK(sweep.parity_failures == 0);
  }
}

TEST_CASE("gray-code subgraph tables match the direct subset walk") {
  std::mt19937_64 rng(501);
  std::vector<MultiGraph> graphs = {triangle(), cycle4(), two_edges()};
  for (int i = 0; i < 12; ++i) graphs.push_back(random_graph(rng, 5, 8));
  for (const auto& g : graphs) {
    for (const Rational& p : {rat(3, 10), rat(1, 2), rat(4, 5)}) {
      auto pmf = fixpar::exact_odd_degree_pmf<Rational>(g, p, 22);
      auto brute = oracles::subgraph_odd_degree_masses<Rational>(g, p);
      for (int k = 0; k <= g.vertex_count; ++k)
        CHECK(pmf.mass(k) == brute[static_cast<std::size_t>(k)]);
      auto glued = fixpar::odd_degree_pmf_by_component<Rational>(g, p, 22);
      for (int k = 0; k <= g.vertex_count; ++k) CHECK(glued.mass(k) == pmf.mass(k));
    }
  }
  auto g = cycle4();
  auto pmf = fixpar::exact_odd_degree_pmf<double>(g, 0.37, 22);
  auto brute = oracles::subgraph_odd_degree_masses<double>(g, 0.37);
  for (int k = 0; k <= g.vertex_count; ++k)
    CHECK(fixpar::approx_equal(pmf.mass(k), brute[static_cast<std::size_t>(k)], 1e-12));
}

TEST_CASE("triangle odd-degree law and its envelope") {
  auto pmf = fixpar::exact_odd_degree_pmf<Rational>(triangle(), rat(3, 10), 22);
  CHECK(pmf.mass(0) == rat(37, 100));
  CHECK(pmf.mass(2) == rat(63, 100));
  auto envelope = fixpar::odd_degree_envelope<Rational>(triangle(), rat(3, 10));
  CHECK(envelope.mass(0) == rat(49, 100));
  CHECK(envelope.mass(2) == rat(51, 100));
  CHECK(fixpar::stochastically_dominates<Rational>(pmf, envelope, rat(0, 1)).dominates);
}

TEST_CASE("the folded parameter drives the envelope above one half") {
  // Keeping edges with probability p or 1-p folds onto the same envelope.
  auto low = fixpar::odd_degree_envelope<Rational>(cycle4(), rat(3, 10));
  auto high = fixpar::odd_degree_envelope<Rational>(cycle4(), rat(7, 10));
  for (int k = 0; k <= 4; ++k) CHECK(low.mass(k) == high.mass(k));

  for (const Rational& p : {rat(3, 10), rat(7, 10), rat(9, 10)}) {
    auto report = fixpar::subgraph_dominance_check<Rational>(cycle4(), p, 22, {}, rat(0, 1));
    CHECK(report.dominance_ok);
    CHECK(report.verdict == Verdict::pass);
  }
}

TEST_CASE("fair-coin subgraphs hit the envelope exactly") {
  for (const auto& g : {triangle(), cycle4(), two_edges()}) {
    auto report = fixpar::subgraph_dominance_check<Rational>(g, rat(1, 2), 22, {}, rat(0, 1));
    CHECK(report.dominance_ok);
    CHECK(report.equal_at_half);
    CHECK(report.verdict == Verdict::pass);
  }
  // Binomial-coefficient masses over 2^(n-1) at the fair coin.
  auto pmf = fixpar::exact_odd_degree_pmf<Rational>(cycle4(), rat(1, 2), 22);
  CHECK(pmf.mass(0) == rat(1, 8));
  CHECK(pmf.mass(2) == rat(6, 8));
  CHECK(pmf.mass(4) == rat(1, 8));
}

TEST_CASE("dominance holds across graphs and retention probabilities") {
  std::mt19937_64 rng(502);
  for (int i = 0; i < 15; ++i) {
    auto g = random_graph(rng, 5, 8);
    for (const Rational& p : {rat(1, 10), rat(2, 5), rat(1, 2), rat(3, 5), rat(19, 20)}) {
      auto report = fixpar::subgraph_dominance_check<Rational>(g, p, 22, {}, rat(0, 1));
      CHECK(report.dominance_ok);
      CHECK(!report.statistical);
    }
  }
  CHECK_THROWS_AS(fixpar::subgraph_dominance_check<Rational>(triangle(), Rational(1)),
                  fixpar::FixparError);
}

TEST_CASE("sampling fallback produces banded statistical verdicts") {
  fixpar::SamplingOptions mc;
  mc.samples = 20000;
  mc.seed = 77;
  auto report = fixpar::subgraph_dominance_check<double>(cycle4(), 0.3, 3, mc);
  CHECK(report.statistical);
  CHECK(report.samples_used == 20000);
  CHECK(!report.odd_count_pmf.has_value());
  CHECK(report.verdict == Verdict::statistical_pass);
  REQUIRE(report.band_low.size() == 5);
  for (std::size_t t = 0; t < report.band_low.size(); ++t) {
    CHECK(report.band_low[t] <= report.empirical_ccdf[t]);
    CHECK(report.empirical_ccdf[t] <= report.band_high[t]);
  }
}

TEST_CASE("subgraph sampler tracks the retention probability") {
  auto g = triangle();
  std::mt19937_64 rng(503);
  const long long rounds = 30000;
  long long kept = 0, empty_rounds = 0;
  for (long long i = 0; i < rounds; ++i) {
    auto s = fixpar::sample_subgraph(g, 0.3, rng);
    for (auto bit : s) kept += bit;
    empty_rounds += fixpar::odd_degree_count(g, s) == 0;
  }
  CHECK(std::abs(static_cast<double>(kept) / (3 * rounds) - 0.3) < 0.008);
  CHECK(std::abs(static_cast<double>(empty_rounds) / rounds - 0.37) < 0.015);
}

TEST_CASE("enumeration cap throws instead of silently truncating") {
  CHECK_THROWS_AS(fixpar::enumerate_subgraph_counts(cycle4(), 3), fixpar::CapExceeded);
}
