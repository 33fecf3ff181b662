#pragma once

#include <compare>
#include <vector>

#include "menger/metric.hpp"

namespace menger {

/// Unordered edge, stored with a < b.
struct Edge {
  Index a{0};
  Index b{0};

  Edge() = default;
  Edge(Index u, Index v) : a(u < v ? u : v), b(u < v ? v : u) {}

  [[nodiscard]] bool touches(Index v) const noexcept { return a == v || b == v; }
  [[nodiscard]] Index other(Index v) const noexcept { return v == a ? b : a; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on a subset of the ambient indices. Edge order is
/// preserved as given (cycles keep their traversal order).
class IndexedGraph {
 public:
  IndexedGraph() = default;
  /// Throws ValidationError on self-loops, duplicate edges, or endpoints
  /// outside `vertices`.
  IndexedGraph(IndexSet vertices, std::vector<Edge> edges);

  [[nodiscard]] const IndexSet& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] std::size_t degree(Index v) const;
  /// Neighbour lists indexed by vertex position, each sorted ascending.
  [[nodiscard]] std::vector<std::vector<Index>> adjacency() const;
  [[nodiscard]] bool is_connected() const;

 private:
  IndexSet vertices_;
  std::vector<Edge> edges_;
};

/// Tree whose vertex set contains the terminals. Non-terminal vertices are
/// Steiner points.
class SteinerTree {
 public:
  SteinerTree() = default;
  /// Throws ValidationError unless the graph is a tree containing every terminal.
  SteinerTree(IndexedGraph graph, IndexSet terminals);

  [[nodiscard]] const IndexedGraph& graph() const noexcept { return graph_; }
  [[nodiscard]] const IndexSet& terminals() const noexcept { return terminals_; }
  [[nodiscard]] const IndexSet& vertices() const noexcept { return graph_.vertices(); }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return graph_.edges(); }
  [[nodiscard]] IndexSet steiner_points() const;

 private:
  IndexedGraph graph_;
  IndexSet terminals_;
};

/// Path x_1..x_n inside a tree.
struct Chain {
  std::vector<Index> path;
};

struct ChainCut {
  std::vector<Chain> pieces;
  std::vector<Edge> excluded;
};

struct MstResult {
  SteinerTree tree;
  ExtLength length{0.0};
};

ExtLength graph_length(const MetricSpace& space, const IndexedGraph& g);
ExtLength tree_length(const MetricSpace& space, const SteinerTree& t);
ExtLength chain_length(const MetricSpace& space, const Chain& c);

MstResult mst(const MetricSpace& space, const IndexSet& p);

/// Kruskal over the given edges (sorted by length, then by endpoints).
/// Returns a spanning forest of `vertices`.
IndexedGraph kruskal(const MetricSpace& space, const IndexSet& vertices, std::vector<Edge> edges);

bool is_proper(const SteinerTree& tree);
/// Strips degree-1 Steiner points until none are left.
SteinerTree make_proper(const MetricSpace& space, const SteinerTree& tree);
std::vector<Chain> maximal_chains(const SteinerTree& tree);
/// Replaces every maximal chain by a single edge between its endpoints.
SteinerTree reduce_tree(const MetricSpace& space, const SteinerTree& tree);
/// Subtree made of all tree paths between pairs of `keep` points.
SteinerTree prune_to(const SteinerTree& tree, const IndexSet& keep);

/// Greedy cutting of a chain into pieces of length <= t. Consecutive pieces
/// share their cut vertex; an edge longer than t separates the pieces on its
/// two sides and is reported in `excluded`.
ChainCut cut_chain(const MetricSpace& space, const Chain& c, double t);

/// Cycle through exactly the terminals with length <= 2 * tree length. Edges
/// are returned in traversal order.
IndexedGraph tree_to_cycle(const MetricSpace& space, const SteinerTree& tree);
/// Drops the longest cycle edge (first one in traversal order on ties).
IndexedGraph cycle_longest_edge_removal(const MetricSpace& space, const IndexedGraph& cycle);

}  // namespace menger
