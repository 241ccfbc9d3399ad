#include "fixpar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "fixpar/catalog.hpp"
#include "fixpar/coupling.hpp"
#include "fixpar/enumeration.hpp"
#include "fixpar/orientation.hpp"
#include "fixpar/parity_trials.hpp"
#include "fixpar/subgraph.hpp"

namespace fixpar {
namespace {

using R = Rational;

R rat(long long num, long long den) { return R(num, den); }

R parse_bias(const VerifyContext& ctx) {
  R p = parse_scalar<R>(ctx.p_text);
  if (p <= R(0) || p >= R(1)) throw FixparError("bias must lie strictly between 0 and 1");
  return p;
}

BiasSet<R> random_bias_set(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> numerator(1, 19);
  std::vector<R> params;
  params.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) params.push_back(rat(numerator(rng), 20));
  return BiasSet<R>(std::move(params));
}

WeightVector<R> random_weights(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> numerator(1, 9);
  std::vector<R> raw;
  R total(0);
  for (int i = 0; i < n; ++i) {
    raw.push_back(R(numerator(rng)));
    total += raw.back();
  }
  for (R& w : raw) w /= total;
  return WeightVector<R>(std::move(raw));
}

bool same_law(const Pmf<R>& a, const Pmf<R>& b) {
  int top = std::max(a.max_outcome(), b.max_outcome());
  for (int k = 0; k <= top; ++k)
    if (a.mass(k) != b.mass(k)) return false;
  return true;
}

struct Tally {
  long long checks = 0;
  long long failures = 0;
  void note(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
};

VerifyOutcome finish(const std::string& name, const Tally& tally, std::string detail,
                     bool statistical = false) {
  VerifyOutcome out;
  out.name = name;
  out.checks = tally.checks;
  out.detail = std::move(detail);
  if (tally.failures > 0)
    out.verdict = Verdict::fail;
  else
    out.verdict = statistical ? Verdict::statistical_pass : Verdict::pass;
  return out;
}

std::string count_phrase(long long n, const char* noun) {
  std::ostringstream s;
  s << n << ' ' << noun;
  return s.str();
}

// ---------------------------------------------------------------------------
// Trial-level verifiers
// ---------------------------------------------------------------------------

VerifyOutcome check_parity_split(const VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.sampling.seed);
  Tally tally;
  int sets = 0;
  for (int n = 1; n <= 10; ++n)
    for (int round = 0; round < 20; ++round) {
      auto biases = random_bias_set(rng, n);
      auto law = poisson_binomial(biases);
      R even(0), odd(0);
      for (int k = 0; k <= law.max_outcome(); ++k)
        (k % 2 == 0 ? even : odd) += law.mass(k);
      auto split = parity_split(biases);
      tally.note(even == split.even);
      tally.note(odd == split.odd);
      ++sets;
    }
  return finish("parity-split", tally,
                count_phrase(sets, "bias sets: even/odd mass equals the product form"));
}

VerifyOutcome check_fair_coin_round(const VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.sampling.seed + 1);
  Tally tally;
  for (int n = 2; n <= 16; ++n) {
    const R scale = pow_int<R>(R(2), static_cast<unsigned>(n - 1));
    auto even = even_sum_toss(n, rat(1, 2));
    auto odd = odd_sum_toss(n, rat(1, 2));
    for (int k = 0; k <= n; ++k) {
      R expected = R(binomial_coefficient(n, k)) / scale;
      tally.note((k % 2 == 0 ? even : odd).mass(k) == expected);
      tally.note((k % 2 == 0 ? odd : even).mass(k) == R(0));
    }
  }
  // With identical biases the pick-a-coin weights cannot matter.
  for (int n = 2; n <= 8; ++n)
    for (const R& p : {rat(3, 10), rat(1, 2), rat(4, 5)}) {
      auto biases = BiasSet<R>::constant(n, p);
      auto uniform = WeightVector<R>::uniform(n);
      for (int round = 0; round < 5; ++round) {
        auto weights = random_weights(rng, n);
        for (Parity b : {Parity::even, Parity::odd})
          tally.note(same_law(fixed_parity_toss_pmf(biases, weights, b),
                              fixed_parity_toss_pmf(biases, uniform, b)));
      }
    }
  return finish("fair-coin-round", tally,
                "fair-coin rounds match halved binomial rows; weights drop out at constant bias");
}

VerifyOutcome check_round_symmetries(const VerifyContext&) {
  Tally tally;
  for (int n = 2; n <= 16; ++n) {
    // Swapping heads for tails reflects the outcome and flips the bias; the
    // landing parity class follows the parity of n.
    for (int num : {1, 5, 10, 15, 19}) {
      const R p = rat(num, 20);
      const R q = R(1) - p;
      auto reflected_even = even_sum_toss(n, p).reflected(n);
      auto reflected_odd = odd_sum_toss(n, p).reflected(n);
      tally.note(same_law(reflected_even,
                          n % 2 == 0 ? even_sum_toss(n, q) : odd_sum_toss(n, q)));
      tally.note(same_law(reflected_odd,
                          n % 2 == 0 ? odd_sum_toss(n, q) : even_sum_toss(n, q)));
    }
    // Only at fair bias do the locked rounds collapse onto the conditioned
    // binomials; the two laws split apart at every other grid point.
    tally.note(same_law(even_sum_toss(n, rat(1, 2)),
                        conditional_binomial(n, rat(1, 2), Parity::even)));
    tally.note(same_law(odd_sum_toss(n, rat(1, 2)),
                        conditional_binomial(n, rat(1, 2), Parity::odd)));
    tally.note(!same_law(even_sum_toss(n, rat(3, 10)),
                         conditional_binomial(n, rat(3, 10), Parity::even)));
  }
  return finish("round-symmetries", tally,
                "reflection flips the bias; fair bias is the only overlap with conditioning");
}

VerifyOutcome check_mixture_representation(const VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.sampling.seed + 2);
  Tally tally;
  for (int n = 2; n <= 7; ++n)
    for (int round = 0; round < 10; ++round) {
      auto biases = random_bias_set(rng, n);
      auto weights = random_weights(rng, n);
      for (Parity b : {Parity::even, Parity::odd})
        tally.note(verify_mixture_representation(biases, weights, b));
    }
  return finish("mixture-representation", tally,
                "two-stage draw (pick coin, condition the rest) reproduces each locked round");
}

VerifyOutcome check_partition_mixture(const VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.sampling.seed + 3);
  Tally tally;
  for (int n = 2; n <= 8; ++n)
    for (int round = 0; round < 10; ++round) {
      auto biases = random_bias_set(rng, n);
      std::uniform_int_distribution<int> cut(1, n - 1);
      int size = cut(rng);
      std::vector<int> indices(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) indices[static_cast<std::size_t>(i)] = i;
      std::shuffle(indices.begin(), indices.end(), rng);
      indices.resize(static_cast<std::size_t>(size));
      for (Parity b : {Parity::even, Parity::odd})
        tally.note(verify_partition_mixture(biases, indices, b));
    }
  return finish("partition-mixture", tally,
                "conditioned law of a split set mixes the two matching block convolutions");
}

VerifyOutcome check_rescaled_coins(const VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.sampling.seed + 4);
  Tally tally;
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; b <= 9; ++b) {
      BiasSet<R> pair({rat(a, 10), rat(b, 10)});
      for (Parity parity : {Parity::even, Parity::odd})
        tally.note(same_law(rescaled_coin_form(pair, parity),
                            conditional_parity_pmf(pair, parity)));
    }
  for (int a = 1; a <= 9; a += 2)
    for (int b = 1; b <= 9; b += 2)
      for (int c = 1; c <= 9; c += 2) {
        BiasSet<R> triple({rat(a, 10), rat(b, 10), rat(c, 10)});
        for (Parity parity : {Parity::even, Parity::odd})
          tally.note(same_law(rescaled_coin_form(triple, parity),
                              conditional_parity_pmf(triple, parity)));
      }
  for (int n = 4; n <= 7; ++n)
    for (int round = 0; round < 8; ++round) {
      auto biases = random_bias_set(rng, n);
      for (Parity parity : {Parity::even, Parity::odd})
        tally.note(same_law(iterated_parity_decomposition(biases, parity),
                            conditional_parity_pmf(biases, parity)));
    }
  return finish("rescaled-coins", tally,
                "pair/triple conditioned laws collapse to single rescaled coins; peeling iterates");
}

VerifyOutcome check_interleaved_tails(const VerifyContext&) {
  Tally tally;
  for (int n = 2; n <= 30; ++n)
    for (int num = 1; num <= 9; ++num)
      tally.note(verify_conditional_binomial_inequalities(n, rat(num, 10)));
  return finish("interleaved-tails", tally,
                "even/odd conditioned tails interleave for every n<=30 on the bias grid");
}

VerifyOutcome check_composite_dominance(const VerifyContext&) {
  Tally tally;
  for (int n = 2; n <= 12; ++n)
    for (int num : {1, 3, 5, 7, 9})
      for (CompositeMode mode : {CompositeMode::direct, CompositeMode::flipped})
        for (int step = 0; step < 5; ++step) {
          const R p = rat(num, 10);
          auto lower = composite_parity_sum(rat(step, 5), n, p, mode);
          auto upper = composite_parity_sum(rat(step + 1, 5), n, p, mode);
          tally.note(stochastically_dominates(upper, lower).dominates);
        }
  return finish("composite-dominance", tally,
                "coin-plus-conditioned-binomial laws grow stochastically with the coin bias");
}

VerifyOutcome check_median_floor(const VerifyContext&) {
  Tally tally;
  for (int n = 2; n <= 50; ++n)
    for (int num = 1; num <= 9; ++num)
      tally.note(median_lower_bound_check(n, rat(num, 10)).holds);
  return finish("median-floor", tally,
                "all medians of both locked rounds sit at or above (n-1)p - 1");
}

VerifyOutcome check_window_bound(const VerifyContext& ctx) {
  std::mt19937_64 rng(ctx.sampling.seed + 5);
  Tally tally;
  for (int n = 2; n <= 12; ++n)
    for (int round = 0; round < 8; ++round) {
      auto biases = random_bias_set(rng, n);
      const R mean_total = biases.sum();
      for (int b = 0; b <= n; ++b) {
        if (R(b) > mean_total) break;
        for (int c = n; c >= b; --c) {
          if (R(c) < mean_total) break;
          tally.note(hoeffding_interval_bound(biases, b, c).holds);
        }
      }
    }
  return finish("window-bound", tally,
                "mean-bias binomial never beats the heterogeneous round on mean-bracketing windows");
}

VerifyOutcome check_coupling(const VerifyContext& ctx) {
  Tally tally;
  for (const R& p : {rat(1, 10), rat(3, 10), rat(1, 2), rat(7, 10)}) {
    for (int length = 1; length <= 4; ++length) {
      ConditionalTrialProcess<R> above;
      above.length = length;
      above.success_probability = [p](int, std::span<const std::uint8_t> history) {
        int heads = 0;
        for (auto h : history) heads += h;
        return p + (R(1) - p) / R(2 + heads);
      };
      tally.note(check_coupling_exact(above, p, CouplingDirection::lower).all_ok());

      ConditionalTrialProcess<R> below;
      below.length = length;
      below.success_probability = [p](int, std::span<const std::uint8_t> history) {
        int heads = 0;
        for (auto h : history) heads += h;
        return p - p / R(2 + heads);
      };
      tally.note(check_coupling_exact(below, p, CouplingDirection::upper).all_ok());
    }
  }
  // Pathwise ordering on sampled long runs.
  std::mt19937_64 rng(ctx.sampling.seed + 6);
  ConditionalTrialProcess<double> sampled;
  sampled.length = 30;
  sampled.success_probability = [](int, std::span<const std::uint8_t> history) {
    int heads = 0;
    for (auto h : history) heads += h;
    return 0.3 + 0.7 / (2.0 + heads);
  };
  bool ordered = true;
  for (int round = 0; round < 2000; ++round) {
    auto draw = coupled_sample(sampled, 0.3, CouplingDirection::lower, rng);
    for (int i = 0; i < sampled.length; ++i)
      if (draw.bernoulli[static_cast<std::size_t>(i)] > draw.process[static_cast<std::size_t>(i)])
        ordered = false;
  }
  tally.note(ordered);
  return finish("coupling", tally,
                "joint draws keep the independent chain on the dominated side, atom-exactly");
}

// ---------------------------------------------------------------------------
// Graph-level verifiers
// ---------------------------------------------------------------------------

VerifyOutcome check_orientation_invariants(const VerifyContext& ctx) {
  Tally tally;
  long long orientations = 0;
  long long subgraphs = 0;
  for (const auto& entry : builtin_catalog()) {
    if (entry.graph.edge_count() > ctx.cap) continue;
    auto osweep = sweep_orientation_invariants(entry.graph, ctx.cap);
    tally.note(osweep.ok());
    orientations += static_cast<long long>(osweep.orientations);
    auto ssweep = sweep_subgraph_invariants(entry.graph, ctx.cap);
    tally.note(ssweep.ok());
    subgraphs += static_cast<long long>(ssweep.subgraphs);
  }
  std::ostringstream detail;
  detail << orientations << " orientations + " << subgraphs
         << " subgraphs swept with zero parity/floor violations";
  return finish("orientation-invariants", tally, detail.str());
}

VerifyOutcome check_conditional_parity(const VerifyContext& ctx) {
  const R p = parse_bias(ctx);
  const R q = R(1) - p;
  Tally tally;
  for (const auto& entry : builtin_catalog()) {
    const auto& g = entry.graph;
    const int m = g.edge_count();
    if (m > 12 || m == 0) continue;
    auto report = conditional_parity_bounds<R>(g, p);
    tally.note(report.within_bounds);
    if (m <= 8) {
      // Independent route: full enumeration of the unconditioned chances.
      std::vector<R> tail_weight(static_cast<std::size_t>(m) + 1);
      for (int k = 0; k <= m; ++k)
        tail_weight[static_cast<std::size_t>(k)] =
            pow_int<R>(p, static_cast<unsigned>(k)) *
            pow_int<R>(q, static_cast<unsigned>(m - k));
      std::vector<R> even_weight(static_cast<std::size_t>(g.vertex_count), R(0));
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::vector<int> indeg(static_cast<std::size_t>(g.vertex_count), 0);
        int tails = 0;
        for (int e = 0; e < m; ++e) {
          bool at_tail = (mask >> e) & 1u;
          tails += at_tail;
          const auto& edge = g.edges[static_cast<std::size_t>(e)];
          ++indeg[static_cast<std::size_t>(at_tail ? edge.tail : edge.head)];
        }
        for (int v = 0; v < g.vertex_count; ++v)
          if (indeg[static_cast<std::size_t>(v)] % 2 == 0)
            even_weight[static_cast<std::size_t>(v)] += tail_weight[static_cast<std::size_t>(tails)];
      }
      for (int v = 0; v < g.vertex_count; ++v)
        tally.note(even_weight[static_cast<std::size_t>(v)] == vertex_even_probability(g, v, p));
    }
  }
  return finish("conditional-parity", tally,
                "per-vertex parity chances match enumeration and stay inside the reveal bounds");
}

VerifyOutcome check_expected_colors(const VerifyContext& ctx) {
  const R p = parse_bias(ctx);
  Tally tally;
  int bounded = 0;
  for (const auto& entry : builtin_catalog()) {
    const auto& g = entry.graph;
    auto report = expected_colors<R>(g, p);
    if (report.product_bound) {
      tally.note(report.bound_holds);
      ++bounded;
    }
    if (g.edge_count() <= 12 && g.edge_count() <= ctx.cap) {
      auto dists = orientation_distributions_by_component<R>(g, p, ctx.cap);
      tally.note(expectation(dists.positive_count) == report.expected_positive);
    }
  }
  std::ostringstream detail;
  detail << "closed-form mean matches enumeration; " << bounded
         << " balanced graphs obey the product bound";
  return finish("expected-colors", tally, detail.str());
}

VerifyOutcome check_even_dominance(const VerifyContext& ctx) {
  R p = parse_bias(ctx);
  if (p > rat(1, 2)) p = R(1) - p;
  Tally tally;
  bool statistical = false;
  for (const auto& entry : builtin_catalog()) {
    auto report = orientation_dominance_check<R>(entry.graph, p, ctx.cap, ctx.sampling);
    tally.note(report.verdict == Verdict::pass || report.verdict == Verdict::statistical_pass);
    if (report.verdict == Verdict::statistical_pass) statistical = true;
    if (!report.statistical && p == rat(1, 2)) tally.note(report.equal_at_half);
  }
  std::ostringstream detail;
  detail << "even-count law sits between its per-part envelopes on "
         << builtin_catalog().size() << " graphs";
  return finish("even-dominance", tally, detail.str(), statistical);
}

VerifyOutcome check_orientation_median(const VerifyContext& ctx) {
  R p = parse_bias(ctx);
  if (p > rat(1, 2)) p = R(1) - p;
  Tally tally;
  int balanced = 0;
  bool statistical = false;
  for (const auto& entry : builtin_catalog()) {
    if (entry.graph.edge_count() != entry.graph.vertex_count) continue;
    auto report = median_bound_report<R>(entry.graph, p, ctx.cap, ctx.sampling);
    tally.note(report.verdict == Verdict::pass || report.verdict == Verdict::statistical_pass);
    if (report.verdict == Verdict::statistical_pass) statistical = true;
    ++balanced;
  }
  return finish("orientation-median", tally,
                count_phrase(balanced, "balanced graphs: color-count medians obey the bias bounds"),
                statistical);
}

VerifyOutcome check_subgraph_dominance(const VerifyContext& ctx) {
  const R p = parse_bias(ctx);
  Tally tally;
  bool statistical = false;
  for (const auto& entry : builtin_catalog()) {
    auto report = subgraph_dominance_check<R>(entry.graph, p, ctx.cap, ctx.sampling);
    tally.note(report.verdict == Verdict::pass || report.verdict == Verdict::statistical_pass);
    if (report.verdict == Verdict::statistical_pass) statistical = true;
    if (!report.statistical && p == rat(1, 2)) tally.note(report.equal_at_half);
  }
  std::ostringstream detail;
  detail << "odd-degree count dominates its folded-bias envelope on "
         << builtin_catalog().size() << " graphs";
  return finish("subgraph-dominance", tally, detail.str(), statistical);
}

VerifyOutcome check_orientation_census(const VerifyContext& ctx) {
  Tally tally;
  for (const auto& entry : builtin_catalog()) {
    if (entry.graph.edge_count() > ctx.cap) continue;
    auto census = even_count_orientation_census(entry.graph, ctx.cap);
    if (entry.connected) {
      tally.note(census.formula_applies);
      tally.note(census.formula_ok);
    } else {
      tally.note(!census.formula_applies);
    }
  }
  for (int n = 2; n <= 6; ++n)
    tally.note(labeled_graph_census(n).aggregate_formula_ok);
  return finish("orientation-census", tally,
                "even-vertex counts bucket binomially per graph and across all labeled graphs");
}

VerifyOutcome check_odd_target_orientation(const VerifyContext&) {
  Tally tally;
  for (const auto& entry : builtin_catalog()) {
    const auto& g = entry.graph;
    if (g.vertex_count > 6) continue;
    auto components = connected_components(g);
    for (std::uint32_t subset = 0; subset < (1u << g.vertex_count); ++subset) {
      std::vector<int> target;
      for (int v = 0; v < g.vertex_count; ++v)
        if (subset >> v & 1u) target.push_back(v);
      bool feasible = true;
      for (const auto& comp : components) {
        int odd_here = 0;
        for (int v : comp.vertices) odd_here += (subset >> v) & 1u;
        if ((odd_here + comp.graph.edge_count()) % 2 != 0) feasible = false;
      }
      auto result = t_odd_orientation(g, target);
      tally.note(result.has_value() == feasible);
      if (result) {
        auto stats = orientation_stats(g, *result);
        std::vector<int> odd;
        for (int v = 0; v < g.vertex_count; ++v)
          if (stats.in_degree[static_cast<std::size_t>(v)] % 2 == 1) odd.push_back(v);
        tally.note(odd == target);
      }
    }
  }
  return finish("odd-target-orientation", tally,
                "every parity-feasible odd set is realized exactly; the rest are refused");
}

VerifyOutcome check_tree_survey(const VerifyContext& ctx) {
  TreeSurveyOptions opt;
  opt.max_vertices = std::clamp(ctx.max_tree_vertices, 2, 10);
  opt.jobs = std::max(1, ctx.jobs);
  auto result = survey_tree_unimodality(opt);
  Tally tally;
  tally.note(result.complete);
  tally.note(result.sink_violations == 0);
  tally.note(result.set_violations == 0);
  std::ostringstream detail;
  detail << result.trees_checked << " trees through " << opt.max_vertices
         << " vertices: every profile unimodal";
  auto out = finish("tree-survey", tally, detail.str());
  out.checks = static_cast<long long>(result.trees_checked);
  return out;
}

template <class Fn>
VerifierEntry entry(std::string name, std::string summary, Fn fn) {
  VerifierEntry e;
  e.name = std::move(name);
  e.summary = std::move(summary);
  e.run = [fn](const VerifyContext& ctx) {
    auto start = std::chrono::steady_clock::now();
    VerifyOutcome out = fn(ctx);
    out.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    return out;
  };
  return e;
}

}  // namespace

const std::vector<VerifierEntry>& verifier_registry() {
  static const std::vector<VerifierEntry> table = [] {
    std::vector<VerifierEntry> t;
    t.push_back(entry("parity-split",
                      "even/odd total mass of independent trials equals the product form",
                      check_parity_split));
    t.push_back(entry("fair-coin-round",
                      "fair-coin locked rounds are halved binomial rows, independent of weights",
                      check_fair_coin_round));
    t.push_back(entry("round-symmetries",
                      "reflection/bias-flip symmetries of the parity-locked rounds",
                      check_round_symmetries));
    t.push_back(entry("mixture-representation",
                      "locked rounds decompose as pick-a-coin two-stage mixtures",
                      check_mixture_representation));
    t.push_back(entry("partition-mixture",
                      "conditioned laws split across any partition into block mixtures",
                      check_partition_mixture));
    t.push_back(entry("rescaled-coins",
                      "pair/triple conditioned laws are single rescaled coins; peeling iterates",
                      check_rescaled_coins));
    t.push_back(entry("interleaved-tails",
                      "tail chances of the two conditioned binomials interleave",
                      check_interleaved_tails));
    t.push_back(entry("composite-dominance",
                      "coin-plus-conditioned-binomial is stochastically monotone in the coin",
                      check_composite_dominance));
    t.push_back(entry("median-floor",
                      "medians of locked rounds never fall below (n-1)p - 1",
                      check_median_floor));
    t.push_back(entry("window-bound",
                      "mean-bracketing windows favor the heterogeneous round",
                      check_window_bound));
    t.push_back(entry("coupling",
                      "monotone joint draws order history-dependent trials against fair ones",
                      check_coupling));
    t.push_back(entry("orientation-invariants",
                      "orientation/subgraph parity invariants hold on every catalog graph",
                      check_orientation_invariants));
    t.push_back(entry("conditional-parity",
                      "per-vertex parity chances match enumeration and reveal-prefix bounds",
                      check_conditional_parity));
    t.push_back(entry("expected-colors",
                      "expected distinct-color count matches enumeration and its product bound",
                      check_expected_colors));
    t.push_back(entry("even-dominance",
                      "even-vertex count is sandwiched by per-part locked-round envelopes",
                      check_even_dominance));
    t.push_back(entry("orientation-median",
                      "balanced-graph color medians obey the rescaled-bias bounds",
                      check_orientation_median));
    t.push_back(entry("subgraph-dominance",
                      "odd-degree counts dominate the folded-bias envelope",
                      check_subgraph_dominance));
    t.push_back(entry("orientation-census",
                      "even-vertex orientation counts bucket binomially, per graph and in aggregate",
                      check_orientation_census));
    t.push_back(entry("odd-target-orientation",
                      "odd-degree target sets are achievable exactly when parity permits",
                      check_odd_target_orientation));
    t.push_back(entry("tree-survey",
                      "sink and independence profiles of labeled trees are unimodal",
                      check_tree_survey));
    return t;
  }();
  return table;
}

const VerifierEntry* find_verifier(const std::string& name) {
  for (const auto& e : verifier_registry())
    if (e.name == name) return &e;
  return nullptr;
}

VerifyOutcome run_verifier(const std::string& name, const VerifyContext& ctx) {
  const VerifierEntry* e = find_verifier(name);
  if (!e) throw FixparError("unknown verifier: " + name);
  return e->run(ctx);
}

std::vector<VerifyOutcome> run_all_verifiers(const VerifyContext& ctx) {
  std::vector<VerifyOutcome> results;
  results.reserve(verifier_registry().size());
  for (const auto& e : verifier_registry()) results.push_back(e.run(ctx));
  return results;
}

}  // namespace fixpar
