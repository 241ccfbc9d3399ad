#include "fixpar/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace fixpar {

MultiGraph make_multigraph(int vertex_count, std::vector<MultiGraph::Edge> edges) {
  if (vertex_count < 1) throw FixparError("graph needs at least one vertex");
  for (const auto& e : edges) {
    if (e.tail < 0 || e.tail >= vertex_count || e.head < 0 || e.head >= vertex_count)
      throw FixparError("edge endpoint out of range");
    if (e.tail == e.head) throw FixparError("loops are not allowed");
  }
  return MultiGraph{vertex_count, std::move(edges)};
}

MultiGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int n = -1, m = -1;
  std::vector<MultiGraph::Edge> edges;

  auto is_blank_or_comment = [](const std::string& s) {
    for (char c : s) {
      if (c == '#') return true;
      if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::istringstream fields(line);
    if (n < 0) {
      if (!(fields >> n >> m) || n < 1 || m < 0)
        throw ParseError(line_no, "expected header 'n m' with n >= 1, m >= 0");
      std::string trailing;
      if (fields >> trailing) throw ParseError(line_no, "unexpected token '" + trailing + "'");
      continue;
    }
    if (static_cast<int>(edges.size()) == m)
      throw ParseError(line_no, "more than the declared " + std::to_string(m) + " edges");
    int a = 0, b = 0;
    if (!(fields >> a >> b)) throw ParseError(line_no, "expected edge 'tail head'");
    std::string trailing;
    if (fields >> trailing) throw ParseError(line_no, "unexpected token '" + trailing + "'");
    if (a < 1 || a > n || b < 1 || b > n)
      throw ParseError(line_no, "vertex index out of range 1.." + std::to_string(n));
    if (a == b) throw ParseError(line_no, "loop edge " + std::to_string(a) + " " + std::to_string(b));
    edges.push_back({a - 1, b - 1});
  }
  if (n < 0) throw ParseError(line_no + 1, "missing header 'n m'");
  if (static_cast<int>(edges.size()) != m)
    throw ParseError(line_no + 1, "expected " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
  return MultiGraph{n, std::move(edges)};
}

std::string format_graph(const MultiGraph& g) {
  std::ostringstream out;
  out << g.vertex_count << ' ' << g.edge_count() << '\n';
  for (const auto& e : g.edges) out << e.tail + 1 << ' ' << e.head + 1 << '\n';
  return out.str();
}

std::vector<std::vector<std::pair<int, int>>> incidence(const MultiGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> at(static_cast<std::size_t>(g.vertex_count));
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    at[static_cast<std::size_t>(edge.tail)].emplace_back(e, edge.head);
    at[static_cast<std::size_t>(edge.head)].emplace_back(e, edge.tail);
  }
  return at;
}

std::vector<GraphComponent> connected_components(const MultiGraph& g) {
  auto adj = incidence(g);
  std::vector<int> label(static_cast<std::size_t>(g.vertex_count), -1);
  int component_count = 0;
  for (int start = 0; start < g.vertex_count; ++start) {
    if (label[static_cast<std::size_t>(start)] >= 0) continue;
    std::queue<int> frontier;
    frontier.push(start);
    label[static_cast<std::size_t>(start)] = component_count;
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (auto [e, w] : adj[static_cast<std::size_t>(v)]) {
        if (label[static_cast<std::size_t>(w)] < 0) {
          label[static_cast<std::size_t>(w)] = component_count;
          frontier.push(w);
        }
      }
    }
    ++component_count;
  }

  std::vector<GraphComponent> components(static_cast<std::size_t>(component_count));
  std::vector<int> local(static_cast<std::size_t>(g.vertex_count), -1);
  for (int v = 0; v < g.vertex_count; ++v) {
    auto& comp = components[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])];
    local[static_cast<std::size_t>(v)] = static_cast<int>(comp.vertices.size());
    comp.vertices.push_back(v);
  }
  for (auto& comp : components) comp.graph.vertex_count = static_cast<int>(comp.vertices.size());
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    auto& comp = components[static_cast<std::size_t>(label[static_cast<std::size_t>(edge.tail)])];
    comp.edge_ids.push_back(e);
    comp.graph.edges.push_back({local[static_cast<std::size_t>(edge.tail)],
                                local[static_cast<std::size_t>(edge.head)]});
  }
  return components;
}

bool is_connected(const MultiGraph& g) { return connected_components(g).size() == 1; }

std::vector<int> spanning_tree_containing(const MultiGraph& g, int edge_id) {
  if (edge_id < 0 || edge_id >= g.edge_count()) throw FixparError("edge id out of range");
  auto adj = incidence(g);
  std::vector<char> visited(static_cast<std::size_t>(g.vertex_count), 0);
  std::vector<int> tree = {edge_id};
  std::queue<int> frontier;
  const auto& seed = g.edges[static_cast<std::size_t>(edge_id)];
  visited[static_cast<std::size_t>(seed.tail)] = 1;
  visited[static_cast<std::size_t>(seed.head)] = 1;
  frontier.push(seed.tail);
  frontier.push(seed.head);
  while (!frontier.empty()) {
    int v = frontier.front();
    frontier.pop();
    for (auto [e, w] : adj[static_cast<std::size_t>(v)]) {
      if (visited[static_cast<std::size_t>(w)]) continue;
      visited[static_cast<std::size_t>(w)] = 1;
      tree.push_back(e);
      frontier.push(w);
    }
  }
  if (static_cast<int>(tree.size()) != g.vertex_count - 1)
    throw FixparError("graph is not connected: no spanning tree exists");
  return tree;
}

GoodLabeling good_labeling(const MultiGraph& g, const std::vector<int>& tree_edges,
                           int final_edge_id, bool swap_last_pair) {
  const int n = g.vertex_count;
  if (static_cast<int>(tree_edges.size()) != n - 1)
    throw FixparError("tree edge set must have exactly n-1 edges");
  if (std::find(tree_edges.begin(), tree_edges.end(), final_edge_id) == tree_edges.end())
    throw FixparError("final edge must belong to the tree");

  // Alive incidence restricted to the tree edges.
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (int e : tree_edges) {
    if (e < 0 || e >= g.edge_count()) throw FixparError("edge id out of range");
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    adj[static_cast<std::size_t>(edge.tail)].emplace_back(e, edge.head);
    adj[static_cast<std::size_t>(edge.head)].emplace_back(e, edge.tail);
  }
  std::vector<int> alive_degree(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    alive_degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
  for (int v = 0; v < n; ++v)
    if (alive_degree[static_cast<std::size_t>(v)] == 0)
      throw FixparError("tree edge set does not span the graph");

  const auto& final_edge = g.edges[static_cast<std::size_t>(final_edge_id)];
  int second_last = swap_last_pair ? final_edge.head : final_edge.tail;
  int last = swap_last_pair ? final_edge.tail : final_edge.head;

  GoodLabeling out;
  out.vertex_order.reserve(static_cast<std::size_t>(n));
  out.edge_order.reserve(static_cast<std::size_t>(n - 1));
  std::vector<char> vertex_dead(static_cast<std::size_t>(n), 0);
  std::vector<char> edge_dead(static_cast<std::size_t>(g.edge_count()), 0);

  // Peel the smallest-id leaf that is not a reserved endpoint of the final
  // edge; its unique alive edge gets the same position.
  for (int peeled = 0; peeled < n - 2; ++peeled) {
    int leaf = -1;
    for (int v = 0; v < n; ++v) {
      if (vertex_dead[static_cast<std::size_t>(v)] || v == last || v == second_last) continue;
      if (alive_degree[static_cast<std::size_t>(v)] == 1) {
        leaf = v;
        break;
      }
    }
    if (leaf < 0) throw FixparError("tree edge set contains a cycle");
    int leaf_edge = -1, neighbour = -1;
    for (auto [e, w] : adj[static_cast<std::size_t>(leaf)]) {
      if (edge_dead[static_cast<std::size_t>(e)] || vertex_dead[static_cast<std::size_t>(w)]) continue;
      leaf_edge = e;
      neighbour = w;
      break;
    }
    out.vertex_order.push_back(leaf);
    out.edge_order.push_back(leaf_edge);
    vertex_dead[static_cast<std::size_t>(leaf)] = 1;
    edge_dead[static_cast<std::size_t>(leaf_edge)] = 1;
    --alive_degree[static_cast<std::size_t>(leaf)];
    --alive_degree[static_cast<std::size_t>(neighbour)];
  }
  if (alive_degree[static_cast<std::size_t>(second_last)] != 1 ||
      alive_degree[static_cast<std::size_t>(last)] != 1)
    throw FixparError("tree edge set contains a cycle");
  out.vertex_order.push_back(second_last);
  out.edge_order.push_back(final_edge_id);
  out.vertex_order.push_back(last);
  return out;
}

bool verify_good_labeling(const MultiGraph& g, const GoodLabeling& labeling) {
  const int n = g.vertex_count;
  if (static_cast<int>(labeling.vertex_order.size()) != n) return false;
  if (static_cast<int>(labeling.edge_order.size()) != n - 1) return false;
  auto incident = [&](int e, int v) {
    const auto& edge = g.edges[static_cast<std::size_t>(e)];
    return edge.tail == v || edge.head == v;
  };
  for (int i = 0; i < n - 1; ++i) {
    int v = labeling.vertex_order[static_cast<std::size_t>(i)];
    if (!incident(labeling.edge_order[static_cast<std::size_t>(i)], v)) return false;
    for (int j = i + 1; j < n - 1; ++j)
      if (incident(labeling.edge_order[static_cast<std::size_t>(j)], v)) return false;
  }
  // Final edge joins the last two vertices.
  const auto& f = g.edges[static_cast<std::size_t>(labeling.edge_order.back())];
  int a = labeling.vertex_order[static_cast<std::size_t>(n - 2)];
  int b = labeling.vertex_order[static_cast<std::size_t>(n - 1)];
  return (f.tail == a && f.head == b) || (f.tail == b && f.head == a);
}

}  // namespace fixpar
