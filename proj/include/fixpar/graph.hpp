#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fixpar/errors.hpp"

namespace fixpar {

// Loop-free multigraph. Parallel edges are distinct entries in `edges`, and an
// edge's identity is its index in that vector. Each edge carries a fixed
// tail/head designation: random orientations point an edge at its tail with
// probability p and at its head otherwise.
struct MultiGraph {
  struct Edge {
    int tail = 0;
    int head = 0;
  };

  int vertex_count = 0;
  std::vector<Edge> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }

  int degree(int v) const {
    int d = 0;
    for (const auto& e : edges) d += (e.tail == v) + (e.head == v);
    return d;
  }
  // Incidences where v is the tail (oriented towards v with probability p).
  int tail_count(int v) const {
    int d = 0;
    for (const auto& e : edges) d += e.tail == v;
    return d;
  }
  // Incidences where v is the head (oriented towards v with probability 1-p).
  int head_count(int v) const {
    int d = 0;
    for (const auto& e : edges) d += e.head == v;
    return d;
  }
};

// Validates vertex range and looplessness.
MultiGraph make_multigraph(int vertex_count, std::vector<MultiGraph::Edge> edges);

// Text format: first contentful line "n m", then m lines "tail head" with
// 1-based vertex indices. Blank lines and lines starting with '#' are ignored.
MultiGraph parse_graph(std::string_view text);
std::string format_graph(const MultiGraph& g);

// incidence(g)[v] lists (edge id, other endpoint) for every edge at v;
// a parallel edge appears once per copy.
std::vector<std::vector<std::pair<int, int>>> incidence(const MultiGraph& g);

struct GraphComponent {
  std::vector<int> vertices;  // original vertex ids, ascending
  std::vector<int> edge_ids;  // original edge ids, ascending
  MultiGraph graph;           // relabelled copy (vertex i = vertices[i])
};

std::vector<GraphComponent> connected_components(const MultiGraph& g);
bool is_connected(const MultiGraph& g);

// Edge ids of a spanning tree that contains the given edge. Parallel copies
// are distinguished by id, so the requested copy itself lands in the tree.
std::vector<int> spanning_tree_containing(const MultiGraph& g, int edge_id);

// Orderings v_1..v_n / e_1..e_{n-1} of a spanning tree such that e_i is
// incident to v_i, and no later-ordered edge is. vertex_order[i] and
// edge_order[i] hold v_{i+1} and e_{i+1}; edge_order.back() is the designated
// final edge, whose endpoints are the last two vertices.
struct GoodLabeling {
  std::vector<int> vertex_order;
  std::vector<int> edge_order;
};

// `tree_edges` must be a spanning tree of g containing `final_edge_id`.
// `swap_last_pair` exchanges which endpoint of the final edge comes last;
// both variants are valid labelings.
GoodLabeling good_labeling(const MultiGraph& g, const std::vector<int>& tree_edges,
                           int final_edge_id, bool swap_last_pair = false);

// Literal check of the defining property; used by tests and the t-odd walk.
bool verify_good_labeling(const MultiGraph& g, const GoodLabeling& labeling);

}  // namespace fixpar
