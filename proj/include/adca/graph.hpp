#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adca/matrix.hpp"

namespace adca {

/// Zero-based node index. Reports and files use one-based labels.
using Node = std::size_t;
/// Sorted, duplicate-free node list.
using NodeSet = std::vector<Node>;

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DirectedGraph {
 public:
  DirectedGraph() = default;
  explicit DirectedGraph(std::size_t n) : successors_(n) {}

  std::size_t size() const { return successors_.size(); }

  /// Adds u -> v; repeated insertions are ignored.
  void add_edge(Node u, Node v);
  bool has_edge(Node u, Node v) const;
  const std::vector<Node>& successors(Node u) const { return successors_.at(u); }
  std::vector<std::pair<Node, Node>> edges() const;
  std::size_t edge_count() const;

 private:
  std::vector<std::vector<Node>> successors_;
};

/// G(A): edge j -> i iff a_ij > 0.
DirectedGraph build_graph(const StochasticMatrix& a);
DirectedGraph build_graph(const SquareMatrix& a);

struct RootReport {
  NodeSet roots;
  bool rooted = false;
  /// Strongly connected component inside `roots`; the one holding the
  /// smallest node index when several qualify. Empty when not rooted.
  NodeSet chi;
};

RootReport roots(const DirectedGraph& g);

/// Maximal strongly connected components in a topological order of the
/// condensation; ties broken by smallest member.
std::vector<NodeSet> scc_decomposition(const DirectedGraph& g);

/// Strongly connected when restricted to the induced subgraph on `nodes`.
bool is_strongly_connected(const DirectedGraph& g, const NodeSet& nodes);

/// gcd of cycle lengths inside a strongly connected node set; 0 when the set
/// carries no cycle (a single node without self-loop).
std::size_t component_period(const DirectedGraph& g, const NodeSet& component);

/// Stochastic, indecomposable, aperiodic: the chain with transition matrix A
/// has exactly one closed class and that class is aperiodic.
bool is_sia(const StochasticMatrix& a);

/// Directed cycle on positions 0..l-1 (edge p -> p+1, l-1 -> 0), each position
/// labelled with a node of the source graph. Labels may repeat.
class LabelledCycle {
 public:
  LabelledCycle() = default;
  explicit LabelledCycle(std::vector<Node> labels);

  std::size_t length() const { return labels_.size(); }
  Node label(std::size_t position) const { return labels_.at(position); }
  const std::vector<Node>& labels() const { return labels_; }
  std::size_t successor(std::size_t position) const { return (position + 1) % length(); }
  std::size_t predecessor(std::size_t position) const {
    return (position + length() - 1) % length();
  }

 private:
  std::vector<Node> labels_;
};

/// Concatenates BFS shortest paths c_1 -> c_2 -> ... -> c_m -> c_1 through the
/// component (members in ascending order, lowest-index tie-breaking).
LabelledCycle build_labelled_cycle(const DirectedGraph& g, const NodeSet& component);

}  // namespace adca
