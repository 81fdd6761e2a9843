#include "adca/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>

namespace adca {

void DirectedGraph::add_edge(Node u, Node v) {
  if (u >= size() || v >= size()) throw GraphError("edge endpoint out of range");
  auto& out = successors_[u];
  const auto it = std::lower_bound(out.begin(), out.end(), v);
  if (it == out.end() || *it != v) out.insert(it, v);
}

bool DirectedGraph::has_edge(Node u, Node v) const {
  const auto& out = successors_.at(u);
  return std::binary_search(out.begin(), out.end(), v);
}

std::vector<std::pair<Node, Node>> DirectedGraph::edges() const {
  std::vector<std::pair<Node, Node>> all;
  for (Node u = 0; u < size(); ++u)
    for (Node v : successors_[u]) all.emplace_back(u, v);
  return all;
}

std::size_t DirectedGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& out : successors_) count += out.size();
  return count;
}

DirectedGraph build_graph(const SquareMatrix& a) {
  DirectedGraph g(a.size());
  for (Node i = 0; i < a.size(); ++i)
    for (Node j = 0; j < a.size(); ++j)
      if (a(i, j) > 0.0) g.add_edge(j, i);
  return g;
}

DirectedGraph build_graph(const StochasticMatrix& a) { return build_graph(a.entries()); }

std::vector<NodeSet> scc_decomposition(const DirectedGraph& g) {
  using BoostGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  BoostGraph bg(g.size());
  for (const auto& [u, v] : g.edges()) boost::add_edge(u, v, bg);

  std::vector<int> component_of(g.size());
  const int count = g.size() == 0 ? 0 : boost::strong_components(bg, component_of.data());

  std::vector<NodeSet> components(static_cast<std::size_t>(count));
  for (Node v = 0; v < g.size(); ++v) components[component_of[v]].push_back(v);

  // Kahn's algorithm on the condensation; the ready component with the
  // smallest member goes first.
  std::vector<std::vector<int>> dag(components.size());
  std::vector<int> indegree(components.size(), 0);
  for (const auto& [u, v] : g.edges()) {
    const int cu = component_of[u];
    const int cv = component_of[v];
    if (cu == cv) continue;
    auto& out = dag[cu];
    if (std::find(out.begin(), out.end(), cv) == out.end()) {
      out.push_back(cv);
      ++indegree[cv];
    }
  }
  const auto later = [&](int x, int y) { return components[x].front() > components[y].front(); };
  std::priority_queue<int, std::vector<int>, decltype(later)> ready(later);
  for (int c = 0; c < count; ++c)
    if (indegree[c] == 0) ready.push(c);

  std::vector<NodeSet> ordered;
  ordered.reserve(components.size());
  while (!ready.empty()) {
    const int c = ready.top();
    ready.pop();
    ordered.push_back(components[c]);
    for (int d : dag[c])
      if (--indegree[d] == 0) ready.push(d);
  }
  return ordered;
}

RootReport roots(const DirectedGraph& g) {
  RootReport report;
  const auto components = scc_decomposition(g);

  std::vector<bool> has_incoming(components.size(), false);
  std::vector<std::size_t> index_of(g.size());
  for (std::size_t c = 0; c < components.size(); ++c)
    for (Node v : components[c]) index_of[v] = c;
  for (const auto& [u, v] : g.edges())
    if (index_of[u] != index_of[v]) has_incoming[index_of[v]] = true;

  std::vector<std::size_t> sources;
  for (std::size_t c = 0; c < components.size(); ++c)
    if (!has_incoming[c]) sources.push_back(c);

  // Every node is reachable from some source component, so the graph is rooted
  // exactly when the source is unique; its members are then the roots.
  if (sources.size() == 1) {
    report.roots = components[sources.front()];
    report.rooted = true;
    report.chi = report.roots;
  }
  return report;
}

namespace {

/// BFS restricted to `allowed`; parents recorded from the first discoverer,
/// successors scanned in ascending order.
std::vector<long> bfs_parents(const DirectedGraph& g, Node source, const std::vector<bool>& allowed) {
  std::vector<long> parent(g.size(), -2);
  std::queue<Node> frontier;
  parent[source] = -1;
  frontier.push(source);
  while (!frontier.empty()) {
    const Node u = frontier.front();
    frontier.pop();
    for (Node v : g.successors(u)) {
      if (!allowed[v] || parent[v] != -2) continue;
      parent[v] = static_cast<long>(u);
      frontier.push(v);
    }
  }
  return parent;
}

std::vector<bool> membership(std::size_t n, const NodeSet& nodes) {
  std::vector<bool> in(n, false);
  for (Node v : nodes) {
    if (v >= n) throw GraphError("node " + std::to_string(v + 1) + " out of range");
    in[v] = true;
  }
  return in;
}

}  // namespace

bool is_strongly_connected(const DirectedGraph& g, const NodeSet& nodes) {
  if (nodes.empty()) return false;
  const auto in = membership(g.size(), nodes);
  const auto forward = bfs_parents(g, nodes.front(), in);
  DirectedGraph reversed(g.size());
  for (const auto& [u, v] : g.edges()) reversed.add_edge(v, u);
  const auto backward = bfs_parents(reversed, nodes.front(), in);
  return std::all_of(nodes.begin(), nodes.end(),
                     [&](Node v) { return forward[v] != -2 && backward[v] != -2; });
}

std::size_t component_period(const DirectedGraph& g, const NodeSet& component) {
  if (component.empty()) return 0;
  const auto in = membership(g.size(), component);
  std::vector<long> depth(g.size(), -1);
  std::queue<Node> frontier;
  depth[component.front()] = 0;
  frontier.push(component.front());
  while (!frontier.empty()) {
    const Node u = frontier.front();
    frontier.pop();
    for (Node v : g.successors(u)) {
      if (!in[v] || depth[v] != -1) continue;
      depth[v] = depth[u] + 1;
      frontier.push(v);
    }
  }
  long period = 0;
  for (Node u : component) {
    for (Node v : g.successors(u)) {
      if (!in[v] || depth[u] < 0 || depth[v] < 0) continue;
      period = std::gcd(period, std::abs(depth[u] + 1 - depth[v]));
    }
  }
  return static_cast<std::size_t>(period);
}

bool is_sia(const StochasticMatrix& a) {
  // Closed classes of the chain are the source components of G(A), whose
  // edges point against the transitions.
  const DirectedGraph g = build_graph(a);
  const RootReport report = roots(g);
  return report.rooted && component_period(g, report.roots) == 1;
}

LabelledCycle::LabelledCycle(std::vector<Node> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw GraphError("labelled cycle must have at least one position");
}

LabelledCycle build_labelled_cycle(const DirectedGraph& g, const NodeSet& component) {
  NodeSet members = component;
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) throw GraphError("empty component");
  if (members.size() == 1) {
    if (!g.has_edge(members.front(), members.front())) {
      throw GraphError("singleton component without self-loop does not carry a cycle");
    }
    return LabelledCycle({members.front()});
  }
  if (!is_strongly_connected(g, members)) throw GraphError("component is not strongly connected");

  const auto in = membership(g.size(), members);
  std::vector<Node> labels;
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Node from = members[k];
    const Node to = members[(k + 1) % members.size()];
    const auto parent = bfs_parents(g, from, in);
    std::vector<Node> path;
    for (Node v = to; v != from; v = static_cast<Node>(parent[v])) path.push_back(v);
    path.push_back(from);
    // path runs to -> ... -> from; emit from and the interior, leaving `to`
    // for the next segment.
    for (auto it = path.rbegin(); it + 1 != path.rend(); ++it) labels.push_back(*it);
  }
  return LabelledCycle(std::move(labels));
}

}  // namespace adca
