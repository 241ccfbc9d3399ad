#include "fixpar/catalog.hpp"

#include <utility>

#include "fixpar/errors.hpp"

namespace fixpar {

MultiGraph path_graph(int n) {
  if (n < 1) throw FixparError("path needs at least one vertex");
  std::vector<MultiGraph::Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return make_multigraph(n, std::move(edges));
}

MultiGraph cycle_graph(int n) {
  if (n < 2) throw FixparError("cycle needs at least two vertices");
  std::vector<MultiGraph::Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return make_multigraph(n, std::move(edges));
}

MultiGraph star_graph(int n) {
  if (n < 2) throw FixparError("star needs at least two vertices");
  std::vector<MultiGraph::Edge> edges;
  for (int i = 1; i < n; ++i) edges.push_back({0, i});
  return make_multigraph(n, std::move(edges));
}

MultiGraph complete_graph(int n) {
  if (n < 1) throw FixparError("complete graph needs at least one vertex");
  std::vector<MultiGraph::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  return make_multigraph(n, std::move(edges));
}

MultiGraph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw FixparError("both sides need at least one vertex");
  std::vector<MultiGraph::Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.push_back({i, a + j});
  return make_multigraph(a + b, std::move(edges));
}

MultiGraph tadpole_graph(int cycle_len, int n) {
  if (cycle_len < 2 || cycle_len > n) throw FixparError("tadpole cycle must fit the vertex count");
  if (cycle_len == n) return cycle_graph(n);
  std::vector<MultiGraph::Edge> edges;
  for (int i = 0; i < cycle_len; ++i) edges.push_back({i, (i + 1) % cycle_len});
  edges.push_back({0, cycle_len});
  for (int i = cycle_len; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return make_multigraph(n, std::move(edges));
}

namespace {

void add_entry(std::vector<CatalogEntry>& out, std::string name, MultiGraph g) {
  bool connected = is_connected(g);
  out.push_back({std::move(name), std::move(g), connected});
}

// All multisets of vertex pairs of the given size, continuing from pair index
// `from`; for each connected multiset, every tail/head designation. Parallel
// copies with the same designation are interchangeable, so designations are
// enumerated as per-pair tail counts rather than per-copy bits.
void expand_designations(std::vector<CatalogEntry>& out, int n,
                         const std::vector<std::pair<int, int>>& pairs,
                         const std::vector<int>& multiplicity, int& serial) {
  const int p = static_cast<int>(pairs.size());
  std::vector<int> toward_first(static_cast<std::size_t>(p), 0);
  while (true) {
    std::vector<MultiGraph::Edge> edges;
    for (int i = 0; i < p; ++i) {
      for (int c = 0; c < toward_first[static_cast<std::size_t>(i)]; ++c)
        edges.push_back({pairs[static_cast<std::size_t>(i)].first,
                         pairs[static_cast<std::size_t>(i)].second});
      for (int c = toward_first[static_cast<std::size_t>(i)];
           c < multiplicity[static_cast<std::size_t>(i)]; ++c)
        edges.push_back({pairs[static_cast<std::size_t>(i)].second,
                         pairs[static_cast<std::size_t>(i)].first});
    }
    int m = static_cast<int>(edges.size());
    add_entry(out,
              "small-n" + std::to_string(n) + "-m" + std::to_string(m) + "-" +
                  std::to_string(serial++),
              make_multigraph(n, std::move(edges)));
    int i = 0;
    while (i < p && toward_first[static_cast<std::size_t>(i)] ==
                        multiplicity[static_cast<std::size_t>(i)]) {
      toward_first[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == p) break;
    ++toward_first[static_cast<std::size_t>(i)];
  }
}

void enumerate_multisets(std::vector<CatalogEntry>& out, int n,
                         const std::vector<std::pair<int, int>>& pairs,
                         std::vector<int>& multiplicity, int from, int remaining, int& serial) {
  if (remaining == 0) {
    std::vector<MultiGraph::Edge> probe;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (int c = 0; c < multiplicity[i]; ++c)
        probe.push_back({pairs[i].first, pairs[i].second});
    if (probe.empty()) return;
    if (!is_connected(make_multigraph(n, std::move(probe)))) return;
    expand_designations(out, n, pairs, multiplicity, serial);
    return;
  }
  if (from == static_cast<int>(pairs.size())) return;
  for (int take = 0; take <= remaining; ++take) {
    multiplicity[static_cast<std::size_t>(from)] = take;
    enumerate_multisets(out, n, pairs, multiplicity, from + 1, remaining - take, serial);
  }
  multiplicity[static_cast<std::size_t>(from)] = 0;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;

  for (int n = 2; n <= 4; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    int serial = 0;
    std::vector<int> multiplicity(pairs.size(), 0);
    for (int m = 1; m <= 5; ++m)
      enumerate_multisets(out, n, pairs, multiplicity, 0, m, serial);
  }

  for (int n = 5; n <= 10; ++n) add_entry(out, "cycle-" + std::to_string(n), cycle_graph(n));
  for (int n = 6; n <= 9; ++n) add_entry(out, "path-" + std::to_string(n), path_graph(n));
  for (int n = 6; n <= 9; ++n) add_entry(out, "star-" + std::to_string(n), star_graph(n));
  add_entry(out, "complete-4", complete_graph(4));
  add_entry(out, "complete-5", complete_graph(5));
  add_entry(out, "bipartite-2-3", complete_bipartite(2, 3));
  add_entry(out, "bipartite-2-4", complete_bipartite(2, 4));
  add_entry(out, "bipartite-3-3", complete_bipartite(3, 3));
  for (int n = 5; n <= 10; ++n)
    for (int c = 3; c <= 4; ++c) add_entry(out, "tadpole-" + std::to_string(c) + "-" +
                                                    std::to_string(n),
                                           tadpole_graph(c, n));

  // Doubled cycles: every edge of a small cycle in both designations.
  for (int n = 3; n <= 5; ++n) {
    std::vector<MultiGraph::Edge> edges;
    for (int i = 0; i < n; ++i) {
      edges.push_back({i, (i + 1) % n});
      edges.push_back({(i + 1) % n, i});
    }
    add_entry(out, "doubled-cycle-" + std::to_string(n), make_multigraph(n, std::move(edges)));
  }

  // Theta shape: two hub vertices joined by three internally disjoint
  // two-edge paths.
  {
    std::vector<MultiGraph::Edge> edges = {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 4}, {4, 1}};
    add_entry(out, "theta-2-2-2", make_multigraph(5, std::move(edges)));
  }

  // Disconnected unions with as many edges as vertices.
  {
    std::vector<MultiGraph::Edge> edges = {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
    add_entry(out, "union-triangle-triangle", make_multigraph(6, std::move(edges)));
  }
  {
    std::vector<MultiGraph::Edge> edges = {{0, 1}, {1, 2}, {2, 0},
                                           {3, 4}, {4, 5}, {5, 6}, {6, 3}};
    add_entry(out, "union-triangle-square", make_multigraph(7, std::move(edges)));
  }
  {
    std::vector<MultiGraph::Edge> edges = {{0, 1}, {0, 1}, {2, 3}, {3, 4}, {4, 2}};
    add_entry(out, "union-doubled-edge-triangle", make_multigraph(5, std::move(edges)));
  }

  return out;
}

}  // namespace

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = build_catalog();
  return catalog;
}

}  // namespace fixpar
