#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "fixpar/errors.hpp"
#include "fixpar/graph.hpp"
#include "fixpar/numeric.hpp"
#include "fixpar/parity_trials.hpp"
#include "fixpar/pmf.hpp"
#include "fixpar/verdict.hpp"

namespace fixpar {

// A random orientation points edge e at its tail with probability p,
// independently across edges. orientation[e] == 1 means "points at tail".
using Orientation = std::vector<std::uint8_t>;

struct OrientationStats {
  std::vector<int> in_degree;
  int even_count = 0;      // vertices of even in-degree (0 included)
  int odd_count = 0;
  int zero_count = 0;      // sinks of the reversed picture: in-degree 0
  int positive_count = 0;  // vertices with at least one incoming edge
};

inline OrientationStats orientation_stats(const MultiGraph& g, const Orientation& o) {
  if (static_cast<int>(o.size()) != g.edge_count())
    throw FixparError("orientation length does not match edge count");
  OrientationStats s;
  s.in_degree.assign(static_cast<std::size_t>(g.vertex_count), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (o[static_cast<std::size_t>(e)] > 1) throw FixparError("orientation entries must be 0 or 1");
    int target = o[static_cast<std::size_t>(e)] ? g.edges[static_cast<std::size_t>(e)].tail
                                                : g.edges[static_cast<std::size_t>(e)].head;
    ++s.in_degree[static_cast<std::size_t>(target)];
  }
  for (int v = 0; v < g.vertex_count; ++v) {
    int d = s.in_degree[static_cast<std::size_t>(v)];
    if (d % 2 == 0) ++s.even_count; else ++s.odd_count;
    if (d == 0) ++s.zero_count; else ++s.positive_count;
  }
  return s;
}

inline Orientation sample_orientation(const MultiGraph& g, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Orientation o(static_cast<std::size_t>(g.edge_count()), 0);
  for (auto& bit : o) bit = unif(rng) < p ? 1 : 0;
  return o;
}

// Edge order that reveals, per component, all non-tree edges first and then a
// spanning tree in an order whose step i settles vertex v_i for good. With an
// rng the tree, its final edge and the endpoint swap are drawn at random;
// without one the choice is deterministic.
inline std::vector<int> tree_last_edge_order(const MultiGraph& g, std::mt19937_64* rng = nullptr) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(g.edge_count()));
  for (const auto& comp : connected_components(g)) {
    int local_m = comp.graph.edge_count();
    if (local_m == 0) continue;
    int seed_edge = 0;
    if (rng) seed_edge = static_cast<int>(std::uniform_int_distribution<int>(0, local_m - 1)(*rng));
    auto tree = spanning_tree_containing(comp.graph, seed_edge);
    int final_edge = seed_edge;
    bool swap_last = false;
    if (rng) {
      final_edge = tree[static_cast<std::size_t>(
          std::uniform_int_distribution<int>(0, static_cast<int>(tree.size()) - 1)(*rng))];
      swap_last = std::uniform_int_distribution<int>(0, 1)(*rng) == 1;
    }
    auto labeling = good_labeling(comp.graph, tree, final_edge, swap_last);
    std::vector<char> in_tree(static_cast<std::size_t>(local_m), 0);
    for (int e : tree) in_tree[static_cast<std::size_t>(e)] = 1;
    for (int e = 0; e < local_m; ++e)
      if (!in_tree[static_cast<std::size_t>(e)]) order.push_back(comp.edge_ids[static_cast<std::size_t>(e)]);
    for (int e : labeling.edge_order) order.push_back(comp.edge_ids[static_cast<std::size_t>(e)]);
  }
  return order;
}

// Same edge-marginal law as sample_orientation; the tosses are merely made in
// tree-last order. Exists so order-invariance can be demonstrated empirically.
inline Orientation sample_orientation_tree_last(const MultiGraph& g, double p,
                                                std::mt19937_64& rng) {
  auto order = tree_last_edge_order(g, &rng);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Orientation o(static_cast<std::size_t>(g.edge_count()), 0);
  for (int e : order) o[static_cast<std::size_t>(e)] = unif(rng) < p ? 1 : 0;
  return o;
}

// Exhaustive orientation walk in Gray-code order. Counts are integers keyed by
// the number of tail-pointing edges, so one walk serves every edge probability.
struct OrientationCountTables {
  int vertex_count = 0;
  int edge_count = 0;
  std::uint64_t orientations = 0;
  // [tail-pointing edges][statistic value] -> number of orientations
  std::vector<std::vector<std::uint64_t>> even_by_tails;
  std::vector<std::vector<std::uint64_t>> zero_by_tails;
  std::uint64_t parity_failures = 0;      // even_count parity must match m - n
  std::uint64_t zero_floor_failures = 0;  // m == n only: 2 * zero_count >= even_count
  bool zero_floor_tracked = false;
};

inline OrientationCountTables enumerate_orientation_counts(const MultiGraph& g, int cap = 22) {
  const int n = g.vertex_count;
  const int m = g.edge_count();
  if (m > cap)
    throw CapExceeded("orientation enumeration needs 2^" + std::to_string(m) +
                      " states, above the cap of 2^" + std::to_string(cap));
  if (m > 30) throw CapExceeded("orientation enumeration capped at 30 edges");

  OrientationCountTables t;
  t.vertex_count = n;
  t.edge_count = m;
  t.zero_floor_tracked = (m == n);
  t.even_by_tails.assign(static_cast<std::size_t>(m) + 1,
                         std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));
  t.zero_by_tails.assign(static_cast<std::size_t>(m) + 1,
                         std::vector<std::uint64_t>(static_cast<std::size_t>(n) + 1, 0));

  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges) ++indeg[static_cast<std::size_t>(e.head)];
  int even = 0, zero = 0, tails = 0;
  for (int v = 0; v < n; ++v) {
    even += indeg[static_cast<std::size_t>(v)] % 2 == 0;
    zero += indeg[static_cast<std::size_t>(v)] == 0;
  }

  auto adjust = [&](int v, int delta) {
    int& d = indeg[static_cast<std::size_t>(v)];
    even -= d % 2 == 0;
    zero -= d == 0;
    d += delta;
    even += d % 2 == 0;
    zero += d == 0;
  };
  auto record = [&]() {
    ++t.even_by_tails[static_cast<std::size_t>(tails)][static_cast<std::size_t>(even)];
    ++t.zero_by_tails[static_cast<std::size_t>(tails)][static_cast<std::size_t>(zero)];
    ++t.orientations;
    if ((even + m + n) % 2 != 0) ++t.parity_failures;
    if (t.zero_floor_tracked && 2 * zero < even) ++t.zero_floor_failures;
  };

  record();
  const std::uint64_t total = std::uint64_t(1) << m;
  for (std::uint64_t i = 1; i < total; ++i) {
    int j = __builtin_ctzll(i);
    std::uint64_t gray = i ^ (i >> 1);
    bool now_tail = (gray >> j) & 1u;
    const auto& e = g.edges[static_cast<std::size_t>(j)];
    tails += now_tail ? 1 : -1;
    adjust(now_tail ? e.tail : e.head, +1);
    adjust(now_tail ? e.head : e.tail, -1);
    record();
  }
  return t;
}

struct OrientationInvariantSweep {
  std::uint64_t orientations = 0;
  std::uint64_t parity_failures = 0;
  std::uint64_t zero_floor_failures = 0;
  bool zero_floor_tracked = false;
  bool ok() const { return parity_failures == 0 && zero_floor_failures == 0; }
};

inline OrientationInvariantSweep sweep_orientation_invariants(const MultiGraph& g, int cap = 22) {
  auto t = enumerate_orientation_counts(g, cap);
  return {t.orientations, t.parity_failures, t.zero_floor_failures, t.zero_floor_tracked};
}

// Mixes an integer count table with tail-probability weights p^k (1-p)^(m-k).
template <class S>
Pmf<S> pmf_from_count_table(const std::vector<std::vector<std::uint64_t>>& table, int edge_count,
                            const S& p) {
  const S q = S(1) - p;
  std::size_t width = 0;
  for (const auto& row : table) width = std::max(width, row.size());
  std::vector<S> masses(width, S(0));
  for (int k = 0; k <= edge_count; ++k) {
    const auto& row = table[static_cast<std::size_t>(k)];
    S weight = pow_int<S>(p, static_cast<unsigned>(k)) *
               pow_int<S>(q, static_cast<unsigned>(edge_count - k));
    for (std::size_t v = 0; v < row.size(); ++v)
      if (row[v] != 0) masses[v] += S(row[v]) * weight;
  }
  return Pmf<S>::from_masses(std::move(masses));
}

template <class S>
struct OrientationDistributions {
  Pmf<S> even_count;
  Pmf<S> zero_count;
  Pmf<S> positive_count;
  std::uint64_t orientations = 0;
};

// Single Gray-code walk over the whole edge set.
template <class S>
OrientationDistributions<S> exact_orientation_distributions(const MultiGraph& g, const S& p,
                                                            int cap = 22) {
  auto t = enumerate_orientation_counts(g, cap);
  OrientationDistributions<S> d;
  d.even_count = pmf_from_count_table<S>(t.even_by_tails, t.edge_count, p);
  d.zero_count = pmf_from_count_table<S>(t.zero_by_tails, t.edge_count, p);
  d.positive_count = d.zero_count.reflected(g.vertex_count);
  d.orientations = t.orientations;
  return d;
}

// Component-wise enumeration glued by convolution; the cap applies per
// component, which reaches far larger graphs when components are small.
template <class S>
OrientationDistributions<S> orientation_distributions_by_component(const MultiGraph& g, const S& p,
                                                                   int cap = 22) {
  OrientationDistributions<S> d;
  d.even_count = Pmf<S>::delta(0);
  d.zero_count = Pmf<S>::delta(0);
  d.orientations = 1;
  for (const auto& comp : connected_components(g)) {
    auto part = exact_orientation_distributions<S>(comp.graph, p, cap);
    d.even_count = convolve(d.even_count, part.even_count);
    d.zero_count = convolve(d.zero_count, part.zero_count);
    d.orientations *= part.orientations;
  }
  d.positive_count = d.zero_count.reflected(g.vertex_count);
  return d;
}

// P[in-degree of v is even] in closed form: half of 1 +/- (1-2p)^deg(v), the
// sign set by the parity of v's head incidences.
template <class S>
S vertex_even_probability(const MultiGraph& g, int v, const S& p) {
  if (v < 0 || v >= g.vertex_count) throw FixparError("vertex out of range");
  S spread = pow_int<S>(S(1) - S(2) * p, static_cast<unsigned>(g.degree(v)));
  if (g.head_count(v) % 2 == 0) return (S(1) + spread) / S(2);
  return (S(1) - spread) / S(2);
}

// Conditional parity sweep. Condition the parity of any vertex on the states
// of the first r revealed edges, for every r that leaves at least one of the
// vertex's incidences unrevealed: the conditional probability of an even
// in-degree can only be half of 1 +/- (1-2p)^u with u >= 1 unrevealed
// incidences, so it stays inside [min(p,1-p), max(p,1-p)]. The sweep walks
// every achievable conditional value.
template <class S>
struct ConditionalParityReport {
  S lower{0};
  S upper{0};
  S min_seen{0};
  S max_seen{0};
  long long cases_checked = 0;
  bool within_bounds = true;
};

template <class S>
ConditionalParityReport<S> conditional_parity_bounds(
    const MultiGraph& g, const S& p, const std::vector<int>& reveal_order,
    const S& tol = scalar_traits<S>::verdict_tol()) {
  const int m = g.edge_count();
  if (static_cast<int>(reveal_order.size()) != m)
    throw FixparError("reveal order must list every edge exactly once");
  std::vector<char> seen(static_cast<std::size_t>(m), 0);
  for (int e : reveal_order) {
    if (e < 0 || e >= m || seen[static_cast<std::size_t>(e)])
      throw FixparError("reveal order must list every edge exactly once");
    seen[static_cast<std::size_t>(e)] = 1;
  }
  if (!(p > S(0) && p < S(1))) throw FixparError("edge probability must lie strictly inside (0,1)");

  ConditionalParityReport<S> report;
  report.lower = std::min(p, S(1) - p);
  report.upper = std::max(p, S(1) - p);
  bool first_value = true;

  const int n = g.vertex_count;
  std::vector<int> unrevealed(static_cast<std::size_t>(n), 0);
  std::vector<int> unrevealed_head(static_cast<std::size_t>(n), 0);
  std::vector<int> revealed_inc(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    unrevealed[static_cast<std::size_t>(v)] = g.degree(v);
    unrevealed_head[static_cast<std::size_t>(v)] = g.head_count(v);
  }

  auto consider = [&](const S& value) {
    ++report.cases_checked;
    if (first_value || value < report.min_seen) report.min_seen = value;
    if (first_value || value > report.max_seen) report.max_seen = value;
    first_value = false;
    if (value < report.lower - tol || value > report.upper + tol) report.within_bounds = false;
  };

  for (int r = 0; r < m; ++r) {
    for (int v = 0; v < n; ++v) {
      int u = unrevealed[static_cast<std::size_t>(v)];
      if (u == 0) continue;
      S spread = pow_int<S>(S(1) - S(2) * p, static_cast<unsigned>(u));
      if (unrevealed_head[static_cast<std::size_t>(v)] % 2 != 0) spread = -spread;
      // Conditioning fixes the parity of the already-revealed incoming edges;
      // both parities occur as soon as one incidence of v has been revealed.
      consider((S(1) + spread) / S(2));
      if (revealed_inc[static_cast<std::size_t>(v)] > 0) consider((S(1) - spread) / S(2));
    }
    const auto& e = g.edges[static_cast<std::size_t>(reveal_order[static_cast<std::size_t>(r)])];
    --unrevealed[static_cast<std::size_t>(e.tail)];
    --unrevealed[static_cast<std::size_t>(e.head)];
    --unrevealed_head[static_cast<std::size_t>(e.head)];
    ++revealed_inc[static_cast<std::size_t>(e.tail)];
    ++revealed_inc[static_cast<std::size_t>(e.head)];
  }
  return report;
}

template <class S>
ConditionalParityReport<S> conditional_parity_bounds(
    const MultiGraph& g, const S& p, const S& tol = scalar_traits<S>::verdict_tol()) {
  return conditional_parity_bounds<S>(g, p, tree_last_edge_order(g), tol);
}

// Expected number of vertices that receive at least one edge. When the graph
// has exactly as many edges as vertices the sum is at most n(1 - p + p^2) by
// the AM-GM inequality applied to the per-vertex miss probabilities.
template <class S>
struct ColorExpectationReport {
  S expected_positive{0};
  std::optional<S> product_bound;
  bool bound_holds = true;
};

template <class S>
ColorExpectationReport<S> expected_colors(const MultiGraph& g, const S& p,
                                          const S& tol = scalar_traits<S>::verdict_tol()) {
  if (!(p > S(0) && p < S(1))) throw FixparError("edge probability must lie strictly inside (0,1)");
  ColorExpectationReport<S> report;
  const S q = S(1) - p;
  for (int v = 0; v < g.vertex_count; ++v) {
    S miss = pow_int<S>(q, static_cast<unsigned>(g.tail_count(v))) *
             pow_int<S>(p, static_cast<unsigned>(g.head_count(v)));
    report.expected_positive += S(1) - miss;
  }
  if (g.edge_count() == g.vertex_count) {
    report.product_bound = S(g.vertex_count) * (S(1) - p + p * p);
    report.bound_holds = geq_within<S>(*report.product_bound, report.expected_positive, tol);
  }
  return report;
}

// Per-component parity-locked toss laws, convolved. With k_i the component
// sizes, the even-count law of the whole graph sits between the p and 1-p
// versions in the usual stochastic order (and equals both at p = 1/2).
enum class BoundSide { lower, upper };

template <class S>
Pmf<S> even_count_envelope(const MultiGraph& g, const S& p, BoundSide side) {
  const S param = side == BoundSide::lower ? p : S(1) - p;
  Pmf<S> out = Pmf<S>::delta(0);
  for (const auto& comp : connected_components(g)) {
    int ni = comp.graph.vertex_count;
    int mi = comp.graph.edge_count();
    Pmf<S> part = (mi - ni) % 2 == 0 ? even_sum_toss<S>(ni, param) : odd_sum_toss<S>(ni, param);
    out = convolve(out, part);
  }
  return out;
}

template <class S>
struct OrientationDominanceReport {
  Pmf<S> lower_envelope;
  Pmf<S> upper_envelope;
  std::optional<Pmf<S>> even_pmf;  // exact law when enumeration fits the cap
  bool lower_ok = false;
  bool upper_ok = false;
  bool equal_at_half = false;  // only claimed on exact runs at p = 1/2
  bool statistical = false;
  long long samples_used = 0;
  Verdict verdict = Verdict::unverified;
  // Per-threshold data on the sampling path: 95% bands around the sampled
  // upper tail of the even count.
  std::vector<double> empirical_ccdf;
  std::vector<double> band_low;
  std::vector<double> band_high;
};

template <class S>
OrientationDominanceReport<S> orientation_dominance_check(
    const MultiGraph& g, const S& p, int cap = 22, const SamplingOptions& mc = {},
    const S& tol = scalar_traits<S>::verdict_tol()) {
  if (!(p > S(0)) || p > S(1) / S(2))
    throw FixparError("dominance envelopes need 0 < p <= 1/2");
  OrientationDominanceReport<S> report;
  report.lower_envelope = even_count_envelope<S>(g, p, BoundSide::lower);
  report.upper_envelope = even_count_envelope<S>(g, p, BoundSide::upper);
  try {
    auto dists = orientation_distributions_by_component<S>(g, p, cap);
    report.even_pmf = dists.even_count;
    auto low = stochastically_dominates<S>(dists.even_count, report.lower_envelope, tol);
    auto high = stochastically_dominates<S>(report.upper_envelope, dists.even_count, tol);
    report.lower_ok = low.dominates;
    report.upper_ok = high.dominates;
    if (p == S(1) / S(2))
      report.equal_at_half = low.equal_in_distribution && high.equal_in_distribution;
    report.verdict = (report.lower_ok && report.upper_ok) ? Verdict::pass : Verdict::fail;
    return report;
  } catch (const CapExceeded&) {
    // fall through to sampling
  }
  report.statistical = true;
  report.samples_used = mc.samples;
  std::mt19937_64 rng(mc.seed);
  const int n = g.vertex_count;
  std::vector<long long> even_hist(static_cast<std::size_t>(n) + 1, 0);
  const double pd = to_double<S>(p);
  for (long long i = 0; i < mc.samples; ++i) {
    auto o = sample_orientation(g, pd, rng);
    auto stats = orientation_stats(g, o);
    ++even_hist[static_cast<std::size_t>(stats.even_count)];
  }
  report.lower_ok = true;
  report.upper_ok = true;
  long long tail = mc.samples;
  for (int t = 0; t <= n; ++t) {
    if (t > 0) tail -= even_hist[static_cast<std::size_t>(t - 1)];
    auto band = wilson_interval(tail, mc.samples);
    report.empirical_ccdf.push_back(static_cast<double>(tail) / static_cast<double>(mc.samples));
    report.band_low.push_back(band.first);
    report.band_high.push_back(band.second);
    double lower_tail = to_double<S>(ccdf(report.lower_envelope, t));
    double upper_tail = to_double<S>(ccdf(report.upper_envelope, t));
    if (lower_tail > band.second) report.lower_ok = false;
    if (upper_tail < band.first) report.upper_ok = false;
  }
  report.verdict = (report.lower_ok && report.upper_ok) ? Verdict::statistical_pass : Verdict::fail;
  return report;
}

// Median control for graphs with as many edges as vertices. The three bias
// values are the success probabilities of the rescaled two- and three-toss
// coins at a common edge probability; the bound chain needs the two algebraic
// floors on them, and the positive-count median then sits below
// n - n * mean_even_bias / 2 + 3/4 (sharper n - (n-1)p/2 + 1/2 if connected).
template <class S>
struct MedianBoundReport {
  int vertex_count = 0;
  bool connected = false;
  S mean_even_bias{0};    // doubleton coin: 2p^2 / (1 + (1-2p)^2)
  S triple_even_bias{0};  // tripleton even coin: 6p^2(1-p) / (1 + (1-2p)^3)
  S triple_odd_bias{0};   // tripleton odd coin: 2p^3 / (1 - (1-2p)^3)
  bool bias_algebra_ok = false;
  S general_bound{0};
  std::optional<S> connected_bound;
  S even_median_floor{0};  // n * mean_even_bias - 3/2
  std::pair<int, int> positive_median{0, 0};
  std::pair<int, int> even_median{0, 0};
  bool general_ok = false;
  bool connected_ok = true;      // vacuous when the graph is disconnected
  bool even_floor_ok = false;
  bool statistical = false;
  long long samples_used = 0;
  Verdict verdict = Verdict::unverified;
};

template <class S>
MedianBoundReport<S> median_bound_report(const MultiGraph& g, const S& p, int cap = 22,
                                         const SamplingOptions& mc = {},
                                         const S& tol = scalar_traits<S>::verdict_tol()) {
  const int n = g.vertex_count;
  if (g.edge_count() != n)
    throw FixparError("median bound needs as many edges as vertices");
  if (!(p > S(0)) || p > S(1) / S(2))
    throw FixparError("median bound needs 0 < p <= 1/2");

  MedianBoundReport<S> report;
  report.vertex_count = n;
  report.connected = is_connected(g);
  const S w = S(1) - S(2) * p;
  const S w2 = w * w;
  const S w3 = w2 * w;
  report.mean_even_bias = S(2) * p * p / (S(1) + w2);
  report.triple_even_bias = S(6) * p * p * (S(1) - p) / (S(1) + w3);
  report.triple_odd_bias = S(2) * p * p * p / (S(1) - w3);
  const S three_halves_mean = S(3) * report.mean_even_bias / S(2);
  report.bias_algebra_ok =
      geq_within<S>(report.triple_even_bias, three_halves_mean, tol) &&
      geq_within<S>(report.triple_odd_bias, three_halves_mean - S(1) / S(2), tol);
  report.general_bound = S(n) - S(n) * report.mean_even_bias / S(2) + S(3) / S(4);
  if (report.connected)
    report.connected_bound = S(n) - S(n - 1) * p / S(2) + S(1) / S(2);
  report.even_median_floor = S(n) * report.mean_even_bias - S(3) / S(2);

  try {
    auto dists = orientation_distributions_by_component<S>(g, p, cap);
    report.positive_median = median_interval<S>(dists.positive_count, tol);
    report.even_median = median_interval<S>(dists.even_count, tol);
  } catch (const CapExceeded&) {
    report.statistical = true;
    report.samples_used = mc.samples;
    std::mt19937_64 rng(mc.seed);
    std::vector<double> pos_mass(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> even_mass(static_cast<std::size_t>(n) + 1, 0.0);
    const double pd = to_double<S>(p);
    for (long long i = 0; i < mc.samples; ++i) {
      auto stats = orientation_stats(g, sample_orientation(g, pd, rng));
      pos_mass[static_cast<std::size_t>(stats.positive_count)] += 1.0;
      even_mass[static_cast<std::size_t>(stats.even_count)] += 1.0;
    }
    for (auto& x : pos_mass) x /= static_cast<double>(mc.samples);
    for (auto& x : even_mass) x /= static_cast<double>(mc.samples);
    report.positive_median = median_interval<double>(Pmf<double>::trusted(std::move(pos_mass)));
    report.even_median = median_interval<double>(Pmf<double>::trusted(std::move(even_mass)));
  }

  report.general_ok = geq_within<S>(report.general_bound, S(report.positive_median.second), tol);
  if (report.connected_bound)
    report.connected_ok =
        geq_within<S>(*report.connected_bound, S(report.positive_median.second), tol);
  report.even_floor_ok = geq_within<S>(S(report.even_median.first), report.even_median_floor, tol);
  bool all = report.general_ok && report.connected_ok && report.even_floor_ok &&
             report.bias_algebra_ok;
  report.verdict = all ? (report.statistical ? Verdict::statistical_pass : Verdict::pass)
                       : Verdict::fail;
  return report;
}

}  // namespace fixpar
