#pragma once

#include <string>
#include <vector>

#include "fixpar/graph.hpp"

namespace fixpar {

// Shape builders. Vertex 0 is the centre of stars and the attachment point of
// tadpole tails; edges are listed tail-first in construction order.
MultiGraph path_graph(int n);
MultiGraph cycle_graph(int n);  // n >= 2; n == 2 gives a doubled edge
MultiGraph star_graph(int n);
MultiGraph complete_graph(int n);
MultiGraph complete_bipartite(int a, int b);
// Cycle through 0..cycle_len-1 plus a pendant path, sized so that the edge
// count equals the vertex count.
MultiGraph tadpole_graph(int cycle_len, int n);

struct CatalogEntry {
  std::string name;
  MultiGraph graph;
  bool connected = false;
};

// Fixed test-bed of graphs: every connected loopless multigraph on 2..4
// vertices with at most 5 edges under every tail/head designation, plus a
// spread of larger named shapes and a few disconnected edge-balanced unions.
const std::vector<CatalogEntry>& builtin_catalog();

}  // namespace fixpar
