#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixpar/orientation.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "oracles.hpp"

using fixpar::BoundSide;
using fixpar::MultiGraph;
using fixpar::Orientation;
using fixpar::Pmf;
using fixpar::Rational;
using fixpar::Verdict;

namespace {

Rational rat(long long num, long long den) { return Rational(num, den); }

MultiGraph triangle() { return fixpar::make_multigraph(3, {{0, 1}, {1, 2}, {2, 0}}); }

MultiGraph cycle4() { return fixpar::make_multigraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

// Same cycle, but every vertex is either tail of both its edges or head of both.
MultiGraph cycle4_alternating() {
  return fixpar::make_multigraph(4, {{0, 1}, {2, 1}, {2, 3}, {0, 3}});
}

MultiGraph doubled_edge() { return fixpar::make_multigraph(2, {{0, 1}, {0, 1}}); }

MultiGraph triangle_plus_edge() {
  return fixpar::make_multigraph(5, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
}

template <class S>
void check_masses(const Pmf<S>& d, const std::vector<S>& expected, const S& tol) {
  REQUIRE(d.masses().size() == expected.size());
  for (std::size_t k = 0; k < expected.size(); ++k)
    CHECK(fixpar::approx_equal<S>(d.masses()[k], expected[k], tol));
}

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

TEST_CASE("orientation stats count in-degrees and their classes") {
  auto g = triangle();
  auto all_tail = fixpar::orientation_stats(g, Orientation{1, 1, 1});
  CHECK(all_tail.in_degree == std::vector<int>{1, 1, 1});
  CHECK(all_tail.even_count == 0);
  CHECK(all_tail.odd_count == 3);
  CHECK(all_tail.zero_count == 0);
  CHECK(all_tail.positive_count == 3);

  auto mixed = fixpar::orientation_stats(g, Orientation{1, 0, 0});
  CHECK(mixed.in_degree == std::vector<int>{2, 0, 1});
  CHECK(mixed.even_count == 2);
  CHECK(mixed.zero_count == 1);
  CHECK(mixed.positive_count == 2);

  CHECK_THROWS_AS(fixpar::orientation_stats(g, Orientation{1, 0}), fixpar::FixparError);
  CHECK_THROWS_AS(fixpar::orientation_stats(g, Orientation{1, 0, 2}), fixpar::FixparError);
}

TEST_CASE("gray-code tables match the direct orientation walk") {
  std::mt19937_64 rng(404);
  std::vector<MultiGraph> graphs = {triangle(), cycle4(), cycle4_alternating(), doubled_edge(),
                                    triangle_plus_edge()};
  for (int i = 0; i < 12; ++i) graphs.push_back(random_graph(rng, 5, 8));

  for (const auto& g : graphs) {
    for (const Rational& p : {rat(3, 10), rat(1, 2), rat(9, 11)}) {
      auto dists = fixpar::exact_orientation_distributions<Rational>(g, p, 22);
      auto brute = oracles::orientation_masses<Rational>(g, p);
      CHECK(dists.orientations == (std::uint64_t(1) << g.edge_count()));
      for (int k = 0; k <= g.vertex_count; ++k) {
        CHECK(dists.even_count.mass(k) == brute.even_pmf[static_cast<std::size_t>(k)]);
        CHECK(dists.zero_count.mass(k) == brute.zero_pmf[static_cast<std::size_t>(k)]);
        CHECK(dists.positive_count.mass(k) == brute.positive_pmf[static_cast<std::size_t>(k)]);
      }
      // The component-glued route must agree with the single full walk.
      auto glued = fixpar::orientation_distributions_by_component<Rational>(g, p, 22);
      for (int k = 0; k <= g.vertex_count; ++k)
        CHECK(glued.even_count.mass(k) == dists.even_count.mass(k));
    }
    auto sweep = fixpar::sweep_orientation_invariants(g, 22);
    CHECK(sweep.orientations == (std::uint64_t(1) << g.edge_count()));
    CHECK(sweep.parity_failures == 0);
    CHECK(sweep.zero_floor_failures == 0);
    CHECK(sweep.zero_floor_tracked == (g.edge_count() == g.vertex_count));
  }
}

TEST_CASE("double backend stays within float tolerance of the exact walk") {
  auto g = cycle4_alternating();
  double p = 0.37;
  auto dists = fixpar::exact_orientation_distributions<double>(g, p, 22);
  auto brute = oracles::orientation_masses<double>(g, p);
  for (int k = 0; k <= g.vertex_count; ++k)
    CHECK(fixpar::approx_equal(dists.even_count.mass(k),
                               brute.even_pmf[static_cast<std::size_t>(k)], 1e-12));
}

TEST_CASE("triangle even-count law and its envelopes") {
  auto dists = fixpar::exact_orientation_distributions<Rational>(triangle(), rat(3, 10), 22);
  check_masses<Rational>(dists.even_count, {rat(37, 100), rat(0, 1), rat(63, 100), rat(0, 1)},
                         rat(0, 1));

  auto lower = fixpar::even_count_envelope<Rational>(triangle(), rat(3, 10), BoundSide::lower);
  auto upper = fixpar::even_count_envelope<Rational>(triangle(), rat(3, 10), BoundSide::upper);
  check_masses<Rational>(lower, {rat(49, 100), rat(0, 1), rat(51, 100), rat(0, 1)}, rat(0, 1));
  check_masses<Rational>(upper, {rat(9, 100), rat(0, 1), rat(91, 100), rat(0, 1)}, rat(0, 1));
  CHECK(fixpar::stochastically_dominates<Rational>(dists.even_count, lower, rat(0, 1)).dominates);
  CHECK(fixpar::stochastically_dominates<Rational>(upper, dists.even_count, rat(0, 1)).dominates);
}

TEST_CASE("four-cycle at a fair coin: sink counts and medians") {
  auto dists = fixpar::exact_orientation_distributions<Rational>(cycle4(), rat(1, 2), 22);
  check_masses<Rational>(dists.zero_count,
                         {rat(2, 16), rat(12, 16), rat(2, 16), rat(0, 1), rat(0, 1)}, rat(0, 1));
  auto med = fixpar::median_interval<Rational>(dists.positive_count, rat(0, 1));
  CHECK(med.first == 3);
  CHECK(med.second == 3);
}

TEST_CASE("closed-form vertex parity probability matches enumeration") {
  std::mt19937_64 rng(405);
  std::vector<MultiGraph> graphs = {triangle(), cycle4_alternating(), doubled_edge()};
  for (int i = 0; i < 8; ++i) graphs.push_back(random_graph(rng, 4, 6));
  for (const auto& g : graphs) {
    for (const Rational& p : {rat(3, 10), rat(1, 2), rat(4, 5)}) {
      for (int v = 0; v < g.vertex_count; ++v) {
        Rational brute = oracles::conditional_even_probability<Rational>(g, p, v, {}, 0);
        CHECK(fixpar::vertex_even_probability<Rational>(g, v, p) == brute);
      }
    }
  }
}

TEST_CASE("conditional parity probabilities stay between p and 1-p") {
  std::mt19937_64 rng(406);
  std::vector<MultiGraph> graphs = {triangle(), cycle4(), doubled_edge(), triangle_plus_edge()};
  for (int i = 0; i < 6; ++i) graphs.push_back(random_graph(rng, 4, 5));

  for (const auto& g : graphs) {
    const int m = g.edge_count();
    for (const Rational& p : {rat(3, 10), rat(2, 5)}) {
      auto order = fixpar::tree_last_edge_order(g);
      auto report = fixpar::conditional_parity_bounds<Rational>(g, p, order, rat(0, 1));
      CHECK(report.within_bounds);
      CHECK(report.lower == p);
      CHECK(report.upper == Rational(1) - p);
      CHECK(report.min_seen >= p);
      CHECK(report.max_seen <= Rational(1) - p);

      // Every conditional value reachable by fixing a reveal prefix must be
      // one the sweep considered, and must respect the bounds itself.
      for (int r = 0; r < m; ++r) {
        std::vector<int> prefix(order.begin(), order.begin() + r);
        for (std::uint64_t mask = 0; mask < (1ull << r); ++mask) {
          for (int v = 0; v < g.vertex_count; ++v) {
            int unrevealed = 0, unrevealed_head = 0, cnt_toward = 0, revealed_inc = 0;
            for (int e = 0; e < m; ++e) {
              auto pos = std::find(prefix.begin(), prefix.end(), e);
              const auto& edge = g.edges[static_cast<std::size_t>(e)];
              bool incident = edge.tail == v || edge.head == v;
              if (!incident) continue;
              if (pos == prefix.end()) {
                ++unrevealed;
                if (edge.head == v) ++unrevealed_head;
              } else {
                ++revealed_inc;
                bool at_tail = mask >> (pos - prefix.begin()) & 1ull;
                if ((at_tail ? edge.tail : edge.head) == v) ++cnt_toward;
              }
            }
            if (unrevealed == 0) continue;
            Rational brute = oracles::conditional_even_probability<Rational>(g, p, v, prefix, mask);
            Rational spread = fixpar::pow_int<Rational>(Rational(1) - 2 * p,
                                                        static_cast<unsigned>(unrevealed));
            if ((unrevealed_head + cnt_toward) % 2 != 0) spread = -spread;
            CHECK(brute == (Rational(1) + spread) / 2);
            CHECK(brute >= p);
            CHECK(brute <= Rational(1) - p);
            if (revealed_inc == 0) CHECK(cnt_toward == 0);
          }
        }
      }
    }
  }
}

TEST_CASE("conditional parity sweep validates its reveal order") {
  auto g = triangle();
  CHECK_THROWS_AS(fixpar::conditional_parity_bounds<Rational>(g, rat(3, 10), {0, 1}, rat(0, 1)),
                  fixpar::FixparError);
  CHECK_THROWS_AS(fixpar::conditional_parity_bounds<Rational>(g, rat(3, 10), {0, 1, 1}, rat(0, 1)),
                  fixpar::FixparError);
  CHECK_THROWS_AS(fixpar::conditional_parity_bounds<Rational>(g, Rational(1), rat(0, 1)),
                  fixpar::FixparError);
}

TEST_CASE("expected covered-vertex count and its product bound") {
  // Two parallel edges at a fair coin: both vertices are covered unless both
  // arrows agree, so the mean is 3/2 and the bound is tight.
  auto both = fixpar::expected_colors<Rational>(doubled_edge(), rat(1, 2), rat(0, 1));
  CHECK(both.expected_positive == rat(3, 2));
  REQUIRE(both.product_bound.has_value());
  CHECK(*both.product_bound == rat(3, 2));
  CHECK(both.bound_holds);

  auto cyclic_half = fixpar::expected_colors<Rational>(cycle4(), rat(1, 2), rat(0, 1));
  CHECK(cyclic_half.expected_positive == Rational(3));
  CHECK(*cyclic_half.product_bound == Rational(3));

  auto cyclic_third = fixpar::expected_colors<Rational>(cycle4(), rat(3, 10), rat(0, 1));
  CHECK(cyclic_third.expected_positive == rat(79, 25));
  CHECK(*cyclic_third.product_bound == rat(79, 25));

  // Unbalanced tail/head designations push the mean strictly under the bound.
  auto alternating = fixpar::expected_colors<Rational>(cycle4_alternating(), rat(3, 10), rat(0, 1));
  CHECK(alternating.expected_positive == rat(71, 25));
  CHECK(alternating.bound_holds);
  CHECK(alternating.expected_positive < *alternating.product_bound);

  // No bound when edge and vertex counts differ; the mean still matches the
  // exact law of the covered count.
  std::mt19937_64 rng(407);
  for (int i = 0; i < 10; ++i) {
    auto g = random_graph(rng, 5, 7);
    auto report = fixpar::expected_colors<Rational>(g, rat(2, 7), rat(0, 1));
    CHECK(report.product_bound.has_value() == (g.edge_count() == g.vertex_count));
    auto dists = fixpar::exact_orientation_distributions<Rational>(g, rat(2, 7), 22);
    CHECK(report.expected_positive == fixpar::expectation<Rational>(dists.positive_count));
    if (report.product_bound) CHECK(report.bound_holds);
  }
}

TEST_CASE("envelopes convolve per component with the right parity class") {
  auto g = triangle_plus_edge();
  auto lower = fixpar::even_count_envelope<Rational>(g, rat(3, 10), BoundSide::lower);
  // Triangle contributes the even-sum law on {0,2}; the lone edge always
  // leaves exactly one endpoint even, shifting everything by one.
  CHECK(lower.mass(1) == rat(49, 100));
  CHECK(lower.mass(3) == rat(51, 100));
  CHECK(lower.total_mass() == Rational(1));
  for (int k : {0, 2, 4, 5}) CHECK(lower.mass(k) == Rational(0));
}

TEST_CASE("even-count law sits between its envelopes") {
  std::mt19937_64 rng(408);
  std::vector<MultiGraph> graphs = {triangle(), cycle4(), cycle4_alternating(), doubled_edge(),
                                    triangle_plus_edge()};
  for (int i = 0; i < 10; ++i) graphs.push_back(random_graph(rng, 5, 8));
  for (const auto& g : graphs) {
    for (const Rational& p : {rat(1, 10), rat(3, 10), rat(1, 2)}) {
      auto report = fixpar::orientation_dominance_check<Rational>(g, p, 22, {}, rat(0, 1));
      CHECK(report.lower_ok);
      CHECK(report.upper_ok);
      CHECK(!report.statistical);
      CHECK(report.verdict == Verdict::pass);
      REQUIRE(report.even_pmf.has_value());
      if (p == rat(1, 2)) CHECK(report.equal_at_half);
    }
  }
  CHECK_THROWS_AS(
      fixpar::orientation_dominance_check<Rational>(triangle(), rat(7, 10), 22, {}, rat(0, 1)),
      fixpar::FixparError);
}

TEST_CASE("sampling fallback produces banded statistical verdicts") {
  fixpar::SamplingOptions mc;
  mc.samples = 20000;
  mc.seed = 99;
  auto report = fixpar::orientation_dominance_check<double>(cycle4(), 0.3, 3, mc);
  CHECK(report.statistical);
  CHECK(report.samples_used == 20000);
  CHECK(!report.even_pmf.has_value());
  CHECK(!report.equal_at_half);
  CHECK(report.verdict == Verdict::statistical_pass);
  REQUIRE(report.band_low.size() == 5);
  for (std::size_t t = 0; t < report.band_low.size(); ++t) {
    CHECK(report.band_low[t] <= report.empirical_ccdf[t]);
    CHECK(report.empirical_ccdf[t] <= report.band_high[t]);
  }
}

TEST_CASE("median control report on the four-cycle at a fair coin") {
  auto report = fixpar::median_bound_report<Rational>(cycle4(), rat(1, 2), 22, {}, rat(0, 1));
  CHECK(report.mean_even_bias == rat(1, 2));
  CHECK(report.triple_even_bias == rat(3, 4));
  CHECK(report.triple_odd_bias == rat(1, 4));
  CHECK(report.bias_algebra_ok);
  CHECK(report.general_bound == rat(15, 4));
  REQUIRE(report.connected_bound.has_value());
  CHECK(*report.connected_bound == rat(15, 4));
  CHECK(report.positive_median == std::pair<int, int>(3, 3));
  CHECK(report.general_ok);
  CHECK(report.connected_ok);
  CHECK(report.even_floor_ok);
  CHECK(report.verdict == Verdict::pass);
  CHECK(!report.statistical);
}

TEST_CASE("median control handles disconnected graphs and rejects misuse") {
  auto two_triangles = fixpar::make_multigraph(
      6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
  auto report = fixpar::median_bound_report<Rational>(two_triangles, rat(1, 2), 22, {}, rat(0, 1));
  CHECK(!report.connected_bound.has_value());
  CHECK(report.positive_median == std::pair<int, int>(4, 4));
  CHECK(report.even_median == std::pair<int, int>(4, 4));
  CHECK(report.general_bound == rat(21, 4));
  CHECK(report.verdict == Verdict::pass);

  CHECK_THROWS_AS(fixpar::median_bound_report<Rational>(triangle_plus_edge(), rat(1, 2)),
                  fixpar::FixparError);
  CHECK_THROWS_AS(fixpar::median_bound_report<Rational>(cycle4(), rat(3, 5)),
                  fixpar::FixparError);
}

TEST_CASE("median control sweeps cleanly over edge probabilities") {
  for (const auto& g : {cycle4(), cycle4_alternating()}) {
    for (int num = 1; num <= 5; ++num) {
      auto report = fixpar::median_bound_report<Rational>(g, rat(num, 10), 22, {}, rat(0, 1));
      CHECK(report.verdict == Verdict::pass);
    }
  }
}

TEST_CASE("tree-last edge order is a valid permutation") {
  std::mt19937_64 rng(409);
  for (const auto& g : {triangle(), cycle4(), triangle_plus_edge(), doubled_edge()}) {
    auto plain = fixpar::tree_last_edge_order(g);
    auto drawn = fixpar::tree_last_edge_order(g, &rng);
    for (auto* order : {&plain, &drawn}) {
      auto sorted = *order;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> expected(static_cast<std::size_t>(g.edge_count()));
      for (int e = 0; e < g.edge_count(); ++e) expected[static_cast<std::size_t>(e)] = e;
      CHECK(sorted == expected);
    }
    CHECK(plain == fixpar::tree_last_edge_order(g));
  }
}

TEST_CASE("both samplers draw from the same edge law") {
  auto g = triangle();
  const double p = 0.3;
  const long long rounds = 30000;
  std::mt19937_64 rng_a(77), rng_b(78);
  std::vector<long long> tail_hits_a(3, 0), tail_hits_b(3, 0);
  long long all_odd_a = 0, all_odd_b = 0;
  for (long long i = 0; i < rounds; ++i) {
    auto oa = fixpar::sample_orientation(g, p, rng_a);
    auto ob = fixpar::sample_orientation_tree_last(g, p, rng_b);
    for (int e = 0; e < 3; ++e) {
      tail_hits_a[static_cast<std::size_t>(e)] += oa[static_cast<std::size_t>(e)];
      tail_hits_b[static_cast<std::size_t>(e)] += ob[static_cast<std::size_t>(e)];
    }
    all_odd_a += fixpar::orientation_stats(g, oa).even_count == 0;
    all_odd_b += fixpar::orientation_stats(g, ob).even_count == 0;
  }
  // 0.3 per edge and 0.37 for the all-odd event, within generous 5-sigma bands.
  for (int e = 0; e < 3; ++e) {
    CHECK(std::abs(static_cast<double>(tail_hits_a[static_cast<std::size_t>(e)]) / rounds - 0.3) <
          0.014);
    CHECK(std::abs(static_cast<double>(tail_hits_b[static_cast<std::size_t>(e)]) / rounds - 0.3) <
          0.014);
  }
  CHECK(std::abs(static_cast<double>(all_odd_a) / rounds - 0.37) < 0.015);
  CHECK(std::abs(static_cast<double>(all_odd_b) / rounds - 0.37) < 0.015);

  std::mt19937_64 rng_c(77);
  auto replay = fixpar::sample_orientation(g, p, rng_c);
  std::mt19937_64 rng_d(77);
  CHECK(replay == fixpar::sample_orientation(g, p, rng_d));
}

TEST_CASE("enumeration cap throws instead of silently truncating") {
  CHECK_THROWS_AS(fixpar::enumerate_orientation_counts(cycle4(), 3), fixpar::CapExceeded);
}
