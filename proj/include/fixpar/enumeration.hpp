#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "fixpar/catalog.hpp"
#include "fixpar/errors.hpp"
#include "fixpar/graph.hpp"
#include "fixpar/numeric.hpp"
#include "fixpar/orientation.hpp"
#include "fixpar/subgraph.hpp"

namespace fixpar {

// Builds an orientation whose odd-in-degree vertex set is exactly the given
// set, or reports that none exists. Feasibility is a pure parity matter: each
// component must contain an even total of requested-odd vertices and edges.
// Construction walks a spanning tree in good-label order, fixing one vertex
// per step with its last incident edge; the final vertex comes out right
// because parities over a component always sum to the edge count.
inline std::optional<Orientation> t_odd_orientation(const MultiGraph& g,
                                                    const std::vector<int>& odd_vertices) {
  const int n = g.vertex_count;
  std::vector<char> want_odd(static_cast<std::size_t>(n), 0);
  for (int v : odd_vertices) {
    if (v < 0 || v >= n) throw FixparError("vertex out of range");
    if (want_odd[static_cast<std::size_t>(v)]) throw FixparError("duplicate vertex in target set");
    want_odd[static_cast<std::size_t>(v)] = 1;
  }

  auto components = connected_components(g);
  for (const auto& comp : components) {
    int odd_here = 0;
    for (int v : comp.vertices) odd_here += want_odd[static_cast<std::size_t>(v)];
    if ((odd_here + comp.graph.edge_count()) % 2 != 0) return std::nullopt;
  }

  Orientation o(static_cast<std::size_t>(g.edge_count()), 0);
  for (const auto& comp : components) {
    const auto& cg = comp.graph;
    const int local_m = cg.edge_count();
    if (local_m == 0) continue;
    auto tree = spanning_tree_containing(cg, 0);
    auto labeling = good_labeling(cg, tree, tree.front());
    std::vector<char> in_tree(static_cast<std::size_t>(local_m), 0);
    for (int e : tree) in_tree[static_cast<std::size_t>(e)] = 1;

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(local_m), 0);
    std::vector<int> indeg(static_cast<std::size_t>(cg.vertex_count), 0);
    for (int e = 0; e < local_m; ++e)
      if (!in_tree[static_cast<std::size_t>(e)]) {
        bits[static_cast<std::size_t>(e)] = 1;  // point non-tree edges at their tails
        ++indeg[static_cast<std::size_t>(cg.edges[static_cast<std::size_t>(e)].tail)];
      }

    for (std::size_t i = 0; i < labeling.edge_order.size(); ++i) {
      int e = labeling.edge_order[i];
      int v = labeling.vertex_order[i];
      const auto& edge = cg.edges[static_cast<std::size_t>(e)];
      int other = edge.tail == v ? edge.head : edge.tail;
      bool now_odd = indeg[static_cast<std::size_t>(v)] % 2 == 1;
      bool point_at_v = now_odd != (want_odd[static_cast<std::size_t>(comp.vertices[
                                        static_cast<std::size_t>(v)])] != 0);
      int target = point_at_v ? v : other;
      bits[static_cast<std::size_t>(e)] = edge.tail == target ? 1 : 0;
      ++indeg[static_cast<std::size_t>(target)];
    }

    int last = labeling.vertex_order.back();
    if ((indeg[static_cast<std::size_t>(last)] % 2 == 1) !=
        (want_odd[static_cast<std::size_t>(comp.vertices[static_cast<std::size_t>(last)])] != 0))
      throw FixparError("parity construction failed");
    for (int e = 0; e < local_m; ++e)
      o[static_cast<std::size_t>(comp.edge_ids[static_cast<std::size_t>(e)])] =
          bits[static_cast<std::size_t>(e)];
  }
  return o;
}

// Orientation counts bucketed by the even-in-degree vertex count. For a
// connected graph the bucket sizes follow a binomial pattern: the count at t
// is 2^(m-n+1) * C(n,t) on the reachable parity class and 0 elsewhere.
struct EvenCountCensus {
  int vertex_count = 0;
  int edge_count = 0;
  std::vector<std::uint64_t> counts;  // [t] -> orientations with t even vertices
  bool formula_applies = false;
  bool formula_ok = false;
};

inline EvenCountCensus even_count_orientation_census(const MultiGraph& g, int cap = 22) {
  auto tables = enumerate_orientation_counts(g, cap);
  EvenCountCensus census;
  census.vertex_count = g.vertex_count;
  census.edge_count = g.edge_count();
  census.counts.assign(static_cast<std::size_t>(g.vertex_count) + 1, 0);
  for (const auto& row : tables.even_by_tails)
    for (std::size_t t = 0; t < row.size(); ++t) census.counts[t] += row[t];
  census.formula_applies = is_connected(g);
  if (census.formula_applies) {
    const int n = g.vertex_count;
    const int m = g.edge_count();
    census.formula_ok = true;
    BigInt scale = pow_int<BigInt>(BigInt(2), static_cast<unsigned>(m - n + 1));
    for (int t = 0; t <= n; ++t) {
      BigInt expected = (t + m + n) % 2 == 0 ? scale * binomial_coefficient(n, t) : BigInt(0);
      if (BigInt(census.counts[static_cast<std::size_t>(t)]) != expected)
        census.formula_ok = false;
    }
  }
  return census;
}

// Every labeled simple graph on n vertices is an edge subset of the complete
// graph, so one subgraph walk buckets them all by edge count and odd-degree
// vertex count. Aggregated over edge counts the buckets are binomial:
// C(n,t) * 2^(C(n,2)-n+1) graphs have exactly t odd vertices.
struct LabeledGraphCensus {
  int vertex_count = 0;
  std::vector<std::vector<std::uint64_t>> by_edges_and_odd;  // [m][t]
  std::vector<std::uint64_t> totals_by_odd;                  // [t]
  bool aggregate_formula_ok = false;
};

inline LabeledGraphCensus labeled_graph_census(int n) {
  if (n < 2 || n > 7) throw FixparError("labeled census covers 2..7 vertices");
  auto tables = enumerate_subgraph_counts(complete_graph(n), 24);
  LabeledGraphCensus census;
  census.vertex_count = n;
  census.by_edges_and_odd = tables.odd_by_kept;
  census.totals_by_odd.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& row : census.by_edges_and_odd)
    for (std::size_t t = 0; t < row.size(); ++t) census.totals_by_odd[t] += row[t];
  const int pair_count = n * (n - 1) / 2;
  BigInt scale = pow_int<BigInt>(BigInt(2), static_cast<unsigned>(pair_count - n + 1));
  census.aggregate_formula_ok = true;
  for (int t = 0; t <= n; ++t) {
    BigInt expected = t % 2 == 0 ? scale * binomial_coefficient(n, t) : BigInt(0);
    if (BigInt(census.totals_by_odd[static_cast<std::size_t>(t)]) != expected)
      census.aggregate_formula_ok = false;
  }
  return census;
}

namespace detail {

// Scratch space reused across trees in the survey hot loop. Capacity covers
// the survey range with room to spare.
struct TreeBuffers {
  static constexpr int cap_n = 12;
  int n = 0;
  int head[cap_n];
  int next_slot[2 * cap_n];
  int to[2 * cap_n];
  int slot_count = 0;
  int parent[cap_n];
  int order[cap_n];  // children before parents
  std::uint32_t tab[cap_n][cap_n + 1][2];
  std::uint32_t tmp[cap_n + 1][2];
  std::uint64_t sink_counts[cap_n + 1];
  std::uint64_t set_counts[cap_n + 1];
  int deg[cap_n];
};

inline void add_tree_edge(TreeBuffers& b, int u, int v) {
  b.to[b.slot_count] = v;
  b.next_slot[b.slot_count] = b.head[u];
  b.head[u] = b.slot_count++;
  b.to[b.slot_count] = u;
  b.next_slot[b.slot_count] = b.head[v];
  b.head[v] = b.slot_count++;
}

// Classic linear decode: degrees start at one plus code multiplicity, and a
// moving pointer tracks the smallest unused leaf.
inline void decode_pruefer_into(const int* code, int len, TreeBuffers& b) {
  const int n = len + 2;
  b.n = n;
  b.slot_count = 0;
  for (int i = 0; i < n; ++i) {
    b.head[i] = -1;
    b.deg[i] = 1;
  }
  for (int i = 0; i < len; ++i) ++b.deg[code[i]];
  int ptr = 0;
  while (b.deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int i = 0; i < len; ++i) {
    int v = code[i];
    add_tree_edge(b, leaf, v);
    if (--b.deg[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (b.deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  add_tree_edge(b, leaf, n - 1);
}

inline void build_traversal(TreeBuffers& b) {
  int stack[TreeBuffers::cap_n];
  int pre[TreeBuffers::cap_n];
  int sp = 0, pi = 0;
  stack[sp++] = 0;
  b.parent[0] = -1;
  while (sp) {
    int v = stack[--sp];
    pre[pi++] = v;
    for (int e = b.head[v]; e >= 0; e = b.next_slot[e]) {
      int u = b.to[e];
      if (u != b.parent[v]) {
        b.parent[u] = v;
        stack[sp++] = u;
      }
    }
  }
  for (int i = 0; i < b.n; ++i) b.order[i] = pre[b.n - 1 - i];
}

// Orientation-count profile by number of in-degree-zero vertices, all tree
// edge orientations weighted equally. Two-state subtree tables: has the
// subtree root received an arrow yet.
inline void run_sink_profile(TreeBuffers& b) {
  int size[TreeBuffers::cap_n];
  for (int i = 0; i < b.n; ++i) {
    int v = b.order[i];
    auto& f = b.tab[v];
    size[v] = 1;
    f[0][0] = 1;
    f[0][1] = 0;
    for (int e = b.head[v]; e >= 0; e = b.next_slot[e]) {
      int c = b.to[e];
      if (c == b.parent[v]) continue;
      auto& g = b.tab[c];
      const int zv = size[v], zc = size[c];
      for (int z = 0; z < zv + zc; ++z) b.tmp[z][0] = b.tmp[z][1] = 0;
      for (int z = 0; z < zv; ++z) {
        const std::uint32_t f0 = f[z][0], f1 = f[z][1];
        if (!f0 && !f1) continue;
        for (int y = 0; y < zc; ++y) {
          const std::uint32_t g0 = g[y][0], g1 = g[y][1];
          const std::uint32_t toward_c = g0 + g1;
          if (toward_c) {
            b.tmp[z + y][0] += f0 * toward_c;
            b.tmp[z + y][1] += f1 * toward_c;
          }
          if (g0) b.tmp[z + y + 1][1] += (f0 + f1) * g0;
          if (g1) b.tmp[z + y][1] += (f0 + f1) * g1;
        }
      }
      size[v] += zc;
      for (int z = 0; z < size[v]; ++z) {
        f[z][0] = b.tmp[z][0];
        f[z][1] = b.tmp[z][1];
      }
    }
  }
  for (int z = 0; z <= b.n; ++z) b.sink_counts[z] = 0;
  const int root = 0;
  auto& fr = b.tab[root];
  for (int z = 0; z < size[root]; ++z) {
    b.sink_counts[z + 1] += fr[z][0];
    b.sink_counts[z] += fr[z][1];
  }
}

// Independent-set counts by size; two-state subtree tables: is the subtree
// root in the set.
inline void run_set_profile(TreeBuffers& b) {
  int size[TreeBuffers::cap_n];
  for (int i = 0; i < b.n; ++i) {
    int v = b.order[i];
    auto& f = b.tab[v];
    size[v] = 1;
    f[0][0] = 1;
    f[0][1] = 0;
    f[1][0] = 0;
    f[1][1] = 1;
    for (int e = b.head[v]; e >= 0; e = b.next_slot[e]) {
      int c = b.to[e];
      if (c == b.parent[v]) continue;
      auto& g = b.tab[c];
      const int jv = size[v], jc = size[c];
      for (int j = 0; j <= jv + jc; ++j) b.tmp[j][0] = b.tmp[j][1] = 0;
      for (int j = 0; j <= jv; ++j) {
        const std::uint32_t f0 = f[j][0], f1 = f[j][1];
        if (!f0 && !f1) continue;
        for (int y = 0; y <= jc; ++y) {
          const std::uint32_t g0 = g[y][0], g1 = g[y][1];
          if (f0 && (g0 || g1)) b.tmp[j + y][0] += f0 * (g0 + g1);
          if (f1 && g0) b.tmp[j + y][1] += f1 * g0;
        }
      }
      size[v] += jc;
      for (int j = 0; j <= size[v]; ++j) {
        f[j][0] = b.tmp[j][0];
        f[j][1] = b.tmp[j][1];
      }
    }
  }
  for (int j = 0; j <= b.n; ++j) b.set_counts[j] = 0;
  auto& fr = b.tab[0];
  for (int j = 0; j <= size[0]; ++j) b.set_counts[j] = fr[j][0] + fr[j][1];
}

inline bool unimodal_profile(const std::uint64_t* a, int len) {
  bool falling = false;
  std::uint64_t prev = 0;
  bool have = false;
  for (int i = 0; i < len; ++i) {
    const std::uint64_t v = a[i];
    if (!v) continue;
    if (have) {
      if (v < prev) falling = true;
      else if (falling && v > prev) return false;
    }
    prev = v;
    have = true;
  }
  return true;
}

}  // namespace detail

// Decodes a standard tree code into its edge list: digit i names the
// neighbour that absorbs the smallest current leaf.
inline MultiGraph tree_from_pruefer(const std::vector<int>& code) {
  const int n = static_cast<int>(code.size()) + 2;
  if (n > detail::TreeBuffers::cap_n) throw CapExceeded("tree decoding capped at 12 vertices");
  for (int d : code)
    if (d < 0 || d >= n) throw FixparError("code digit out of range");
  detail::TreeBuffers b;
  detail::decode_pruefer_into(code.data(), static_cast<int>(code.size()), b);
  std::vector<MultiGraph::Edge> edges;
  for (int slot = 0; slot < b.slot_count; slot += 2)
    edges.push_back({b.to[slot + 1], b.to[slot]});
  return make_multigraph(n, std::move(edges));
}

namespace detail {

inline void require_small_tree(const MultiGraph& g) {
  if (g.vertex_count > TreeBuffers::cap_n) throw CapExceeded("tree profiles capped at 12 vertices");
  if (g.edge_count() != g.vertex_count - 1 || !is_connected(g))
    throw FixparError("graph is not a tree");
}

inline void load_graph(const MultiGraph& g, TreeBuffers& b) {
  b.n = g.vertex_count;
  b.slot_count = 0;
  for (int i = 0; i < b.n; ++i) b.head[i] = -1;
  for (const auto& e : g.edges) add_tree_edge(b, e.tail, e.head);
}

}  // namespace detail

// Fair-coin orientation counts of a tree, bucketed by the number of
// in-degree-zero vertices. Entries sum to 2^(n-1).
inline std::vector<std::uint64_t> oriented_sink_counts(const MultiGraph& tree) {
  detail::require_small_tree(tree);
  detail::TreeBuffers b;
  detail::load_graph(tree, b);
  detail::build_traversal(b);
  detail::run_sink_profile(b);
  std::vector<std::uint64_t> counts(b.sink_counts, b.sink_counts + tree.vertex_count + 1);
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total != (std::uint64_t(1) << (tree.vertex_count - 1)))
    throw FixparError("sink profile total mismatch");
  return counts;
}

// Independent-set counts of a tree by set size.
inline std::vector<std::uint64_t> independent_set_profile(const MultiGraph& tree) {
  detail::require_small_tree(tree);
  detail::TreeBuffers b;
  detail::load_graph(tree, b);
  detail::build_traversal(b);
  detail::run_set_profile(b);
  return std::vector<std::uint64_t>(b.set_counts, b.set_counts + tree.vertex_count + 1);
}

// Exhaustive sweep over all labeled trees checking two unimodality
// conjectures per tree: of the fair-coin sink-count profile and of the
// independent-set size profile. Counterexamples are collected (up to a cap)
// as decodable codes.
struct TreeSurveyOptions {
  int min_vertices = 2;
  int max_vertices = 10;
  int jobs = 1;
  std::uint64_t tree_budget = 0;  // stop after this many trees; 0 = no limit
  int max_examples = 16;
};

struct TreeSurveyCounterexample {
  int vertex_count = 0;
  std::vector<int> pruefer_code;
  bool sink_profile_ok = true;
  bool set_profile_ok = true;
};

struct TreeSurveyResult {
  std::uint64_t trees_checked = 0;
  std::uint64_t sink_violations = 0;
  std::uint64_t set_violations = 0;
  std::vector<TreeSurveyCounterexample> examples;
  bool complete = true;
  double wall_seconds = 0.0;
};

namespace detail {

struct SurveyShard {
  std::uint64_t trees = 0;
  std::uint64_t sink_bad = 0;
  std::uint64_t set_bad = 0;
  std::vector<TreeSurveyCounterexample> examples;
};

// Walks every code of the given length whose leading digit falls in
// [first_digit, last_digit]; n = len + 2. Stops early once budget trees have
// been processed (budget == 0 means unlimited).
inline void survey_block(int n, int first_digit, int last_digit, std::uint64_t budget,
                         int max_examples, SurveyShard& shard) {
  const int len = n - 2;
  TreeBuffers b;
  int code[TreeBuffers::cap_n];
  for (int i = 0; i < len; ++i) code[i] = 0;
  if (len > 0) code[0] = first_digit;

  while (true) {
    if (budget && shard.trees >= budget) return;
    decode_pruefer_into(code, len, b);
    build_traversal(b);
    run_sink_profile(b);
    const bool sink_ok = unimodal_profile(b.sink_counts, n + 1);
    run_set_profile(b);
    const bool set_ok = unimodal_profile(b.set_counts, n + 1);
    ++shard.trees;
    if (!sink_ok) ++shard.sink_bad;
    if (!set_ok) ++shard.set_bad;
    if ((!sink_ok || !set_ok) && static_cast<int>(shard.examples.size()) < max_examples) {
      TreeSurveyCounterexample ex;
      ex.vertex_count = n;
      ex.pruefer_code.assign(code, code + len);
      ex.sink_profile_ok = sink_ok;
      ex.set_profile_ok = set_ok;
      shard.examples.push_back(std::move(ex));
    }
    if (len == 0) return;
    int i = len - 1;
    while (true) {
      if (i == 0) {
        if (code[0] == last_digit) return;
        ++code[0];
        break;
      }
      if (++code[i] < n) break;
      code[i] = 0;
      --i;
    }
  }
}

}  // namespace detail

inline TreeSurveyResult survey_tree_unimodality(const TreeSurveyOptions& opt = {}) {
  if (opt.min_vertices < 2 || opt.max_vertices > detail::TreeBuffers::cap_n - 2 ||
      opt.min_vertices > opt.max_vertices)
    throw FixparError("survey range must sit inside [2, 10]");
  const auto start = std::chrono::steady_clock::now();
  TreeSurveyResult result;

  for (int n = opt.min_vertices; n <= opt.max_vertices && result.complete; ++n) {
    const int len = n - 2;
    std::uint64_t remaining = 0;
    if (opt.tree_budget) {
      if (result.trees_checked >= opt.tree_budget) {
        result.complete = false;
        break;
      }
      remaining = opt.tree_budget - result.trees_checked;
    }

    const int jobs = len > 0 ? std::max(1, std::min(opt.jobs, n)) : 1;
    std::vector<detail::SurveyShard> shards(static_cast<std::size_t>(jobs));
    if (jobs == 1) {
      detail::survey_block(n, 0, n - 1, remaining, opt.max_examples, shards[0]);
    } else {
      // Leading-digit blocks; shard order keeps the merge deterministic.
      std::vector<std::thread> workers;
      for (int w = 0; w < jobs; ++w) {
        int lo = static_cast<int>((static_cast<long long>(n) * w) / jobs);
        int hi = static_cast<int>((static_cast<long long>(n) * (w + 1)) / jobs) - 1;
        if (lo > hi) continue;
        workers.emplace_back([n, lo, hi, remaining, &opt, &shards, w]() {
          detail::survey_block(n, lo, hi, remaining, opt.max_examples,
                               shards[static_cast<std::size_t>(w)]);
        });
      }
      for (auto& t : workers) t.join();
    }

    std::uint64_t n_trees = 0;
    for (auto& shard : shards) {
      n_trees += shard.trees;
      result.sink_violations += shard.sink_bad;
      result.set_violations += shard.set_bad;
      for (auto& ex : shard.examples)
        if (static_cast<int>(result.examples.size()) < opt.max_examples)
          result.examples.push_back(std::move(ex));
    }
    result.trees_checked += n_trees;
    std::uint64_t full_count = 1;
    for (int i = 0; i < len; ++i) full_count *= static_cast<std::uint64_t>(n);
    if (n_trees < full_count) result.complete = false;
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace fixpar
