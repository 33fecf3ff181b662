#include "menger/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "menger/kernels.hpp"

namespace menger {

namespace {

using AdjMap = std::map<Index, std::set<Index>>;

AdjMap adjacency_map(const IndexedGraph& g) {
  AdjMap adj;
  for (Index v : g.vertices()) adj[v];
  for (const Edge& e : g.edges()) {
    adj[e.a].insert(e.b);
    adj[e.b].insert(e.a);
  }
  return adj;
}

IndexedGraph graph_from_map(const AdjMap& adj) {
  std::vector<Index> verts;
  std::vector<Edge> edges;
  for (const auto& [v, nbrs] : adj) {
    verts.push_back(v);
    for (Index u : nbrs)
      if (v < u) edges.emplace_back(v, u);
  }
  return IndexedGraph(IndexSet(std::move(verts)), std::move(edges));
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

// ------------------------------------------------------------ IndexedGraph

IndexedGraph::IndexedGraph(IndexSet vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::set<Edge> seen;
  for (const Edge& e : edges_) {
    if (e.a == e.b) throw ValidationError("graph has a self-loop at " + std::to_string(e.a));
    if (!vertices_.contains(e.a) || !vertices_.contains(e.b)) {
      std::ostringstream os;
      os << "edge {" << e.a << ", " << e.b << "} has an endpoint outside the vertex set";
      throw ValidationError(os.str());
    }
    if (!seen.insert(e).second) {
      std::ostringstream os;
      os << "duplicate edge {" << e.a << ", " << e.b << "}";
      throw ValidationError(os.str());
    }
  }
}

std::size_t IndexedGraph::degree(Index v) const {
  return static_cast<std::size_t>(
      std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.touches(v); }));
}

std::vector<std::vector<Index>> IndexedGraph::adjacency() const {
  std::vector<std::vector<Index>> adj(vertices_.size());
  for (const Edge& e : edges_) {
    adj[vertices_.position(e.a)].push_back(e.b);
    adj[vertices_.position(e.b)].push_back(e.a);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

bool IndexedGraph::is_connected() const {
  if (vertices_.empty()) return true;
  const auto adj = adjacency();
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const std::size_t at = stack.back();
    stack.pop_back();
    for (Index u : adj[at]) {
      const std::size_t pu = vertices_.position(u);
      if (!seen[pu]) {
        seen[pu] = 1;
        ++count;
        stack.push_back(pu);
      }
    }
  }
  return count == vertices_.size();
}

// ------------------------------------------------------------- SteinerTree

SteinerTree::SteinerTree(IndexedGraph graph, IndexSet terminals)
    : graph_(std::move(graph)), terminals_(std::move(terminals)) {
  if (!terminals_.is_subset_of(graph_.vertices()))
    throw ValidationError("steiner tree: some terminal is not a vertex");
  if (graph_.vertices().empty()) throw ValidationError("steiner tree has no vertices");
  if (graph_.edges().size() + 1 != graph_.vertices().size())
    throw ValidationError("steiner tree: |E| != |V| - 1");
  if (!graph_.is_connected()) throw ValidationError("steiner tree is not connected");
}

IndexSet SteinerTree::steiner_points() const { return set_difference(vertices(), terminals_); }

// ----------------------------------------------------------------- lengths

ExtLength graph_length(const MetricSpace& space, const IndexedGraph& g) {
  g.vertices().check_bounds(space.size());
  double s = 0.0;
  for (const Edge& e : g.edges()) s += space(e.a, e.b);
  return s;
}

ExtLength tree_length(const MetricSpace& space, const SteinerTree& t) {
  return graph_length(space, t.graph());
}

ExtLength chain_length(const MetricSpace& space, const Chain& c) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < c.path.size(); ++i) s += space.dist(c.path[i], c.path[i + 1]);
  return s;
}

// --------------------------------------------------------------------- mst

MstResult mst(const MetricSpace& space, const IndexSet& p) {
  if (p.empty()) throw ValidationError("mst of an empty set");
  p.check_bounds(space.size());
  const std::size_t n = p.size();
  const auto dmat = kernels::omp::distance_matrix(space, p.span());
  const auto parent = kernels::omp::prim(dmat, n);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  double len = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    edges.emplace_back(p[parent[i]], p[i]);
    len += dmat[parent[i] * n + i];
  }
  return {SteinerTree(IndexedGraph(p, std::move(edges)), p), len};
}

IndexedGraph kruskal(const MetricSpace& space, const IndexSet& vertices, std::vector<Edge> edges) {
  std::vector<std::pair<double, Edge>> weighted;
  weighted.reserve(edges.size());
  for (const Edge& e : edges) weighted.emplace_back(space.dist(e.a, e.b), e);
  std::sort(weighted.begin(), weighted.end());
  weighted.erase(std::unique(weighted.begin(), weighted.end(),
                             [](const auto& x, const auto& y) { return x.second == y.second; }),
                 weighted.end());
  DisjointSets dsu(vertices.size());
  std::vector<Edge> kept;
  for (const auto& [w, e] : weighted) {
    const std::size_t pa = vertices.position(e.a);
    const std::size_t pb = vertices.position(e.b);
    if (pa == vertices.size() || pb == vertices.size())
      throw ValidationError("kruskal: edge endpoint outside the vertex set");
    if (dsu.unite(pa, pb)) kept.push_back(e);
  }
  return IndexedGraph(vertices, std::move(kept));
}

// ------------------------------------------------------------ properness

bool is_proper(const SteinerTree& tree) {
  const auto adj = tree.graph().adjacency();
  const auto& verts = tree.vertices();
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (!tree.terminals().contains(verts[i]) && adj[i].size() < 2) return false;
  return true;
}

SteinerTree make_proper(const MetricSpace& space, const SteinerTree& tree) {
  (void)space;
  AdjMap adj = adjacency_map(tree.graph());
  const IndexSet& terms = tree.terminals();
  std::vector<Index> leaves;
  for (const auto& [v, nbrs] : adj)
    if (!terms.contains(v) && nbrs.size() <= 1) leaves.push_back(v);
  while (!leaves.empty() && adj.size() > 1) {
    const Index v = leaves.back();
    leaves.pop_back();
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (Index u : it->second) {
      auto& nu = adj[u];
      nu.erase(v);
      if (!terms.contains(u) && nu.size() <= 1) leaves.push_back(u);
    }
    adj.erase(it);
  }
  return SteinerTree(graph_from_map(adj), terms);
}

// ----------------------------------------------------------------- chains

std::vector<Chain> maximal_chains(const SteinerTree& tree) {
  if (tree.terminals().size() < 2) throw ValidationError("maximal chains need at least two terminals");
  if (!is_proper(tree)) throw ValidationError("maximal chains need a proper steiner tree");
  const auto& verts = tree.vertices();
  const auto adj = tree.graph().adjacency();
  auto breakpoint = [&](Index v) {
    return tree.terminals().contains(v) || adj[verts.position(v)].size() != 2;
  };
  std::set<Edge> used;
  std::vector<Chain> chains;
  for (Index s : verts) {
    if (!breakpoint(s)) continue;
    for (Index first : adj[verts.position(s)]) {
      if (used.count(Edge(s, first))) continue;
      Chain c{{s}};
      Index prev = s;
      Index at = first;
      used.insert(Edge(s, first));
      c.path.push_back(at);
      while (!breakpoint(at)) {
        const auto& nb = adj[verts.position(at)];
        const Index next = nb[0] == prev ? nb[1] : nb[0];
        used.insert(Edge(at, next));
        prev = at;
        at = next;
        c.path.push_back(at);
      }
      chains.push_back(std::move(c));
    }
  }
  return chains;
}

SteinerTree reduce_tree(const MetricSpace& space, const SteinerTree& tree) {
  (void)space;
  if (tree.terminals().size() < 2) {
    if (!is_proper(tree)) throw ValidationError("reduce_tree needs a proper steiner tree");
    return tree;
  }
  const auto chains = maximal_chains(tree);
  std::vector<Index> verts;
  std::vector<Edge> edges;
  for (const Chain& c : chains) {
    verts.push_back(c.path.front());
    verts.push_back(c.path.back());
    edges.emplace_back(c.path.front(), c.path.back());
  }
  return SteinerTree(IndexedGraph(IndexSet(std::move(verts)), std::move(edges)), tree.terminals());
}

SteinerTree prune_to(const SteinerTree& tree, const IndexSet& keep) {
  if (keep.empty()) throw ValidationError("prune_to needs a non-empty keep set");
  if (!keep.is_subset_of(tree.vertices())) throw ValidationError("prune_to: keep set not in tree");
  AdjMap adj = adjacency_map(tree.graph());
  std::vector<Index> leaves;
  for (const auto& [v, nbrs] : adj)
    if (!keep.contains(v) && nbrs.size() <= 1) leaves.push_back(v);
  while (!leaves.empty()) {
    const Index v = leaves.back();
    leaves.pop_back();
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (Index u : it->second) {
      auto& nu = adj[u];
      nu.erase(v);
      if (!keep.contains(u) && nu.size() <= 1) leaves.push_back(u);
    }
    adj.erase(it);
  }
  return SteinerTree(graph_from_map(adj), keep);
}

ChainCut cut_chain(const MetricSpace& space, const Chain& c, double t) {
  if (!(t > 0.0)) throw ValidationError("cut_chain threshold must be positive");
  if (c.path.empty()) throw ValidationError("cut_chain on an empty chain");
  ChainCut out;
  Chain cur{{c.path.front()}};
  double cur_len = 0.0;
  for (std::size_t i = 0; i + 1 < c.path.size(); ++i) {
    const Index x = c.path[i];
    const Index y = c.path[i + 1];
    const double w = space.dist(x, y);
    if (w > t) {
      out.pieces.push_back(std::move(cur));
      out.excluded.emplace_back(x, y);
      cur = Chain{{y}};
      cur_len = 0.0;
    } else if (cur_len + w <= t) {
      cur.path.push_back(y);
      cur_len += w;
    } else {
      out.pieces.push_back(std::move(cur));
      cur = Chain{{x, y}};
      cur_len = w;
    }
  }
  out.pieces.push_back(std::move(cur));
  return out;
}

// ------------------------------------------------------------------ cycles

namespace {

// Induction on a reduced tree: peel a Steiner point joined to two terminal
// leaves, recurse, then splice the two leaves back in place of the point.
std::optional<std::vector<Index>> peel(const MetricSpace& space, AdjMap adj, std::set<Index> terms) {
  if (terms.size() == 3) return std::vector<Index>(terms.begin(), terms.end());
  auto leaf_terminal = [&](Index v) { return terms.count(v) && adj.at(v).size() == 1; };
  std::optional<Index> pick;
  for (const auto& [v, nbrs] : adj) {
    if (leaf_terminal(v)) continue;
    std::size_t inner = 0;
    for (Index u : nbrs)
      if (!leaf_terminal(u)) ++inner;
    if (inner <= 1) {
      pick = v;
      break;
    }
  }
  if (!pick || terms.count(*pick)) return std::nullopt;
  const Index v = *pick;
  std::vector<Index> leaves;
  for (Index u : adj.at(v))
    if (leaf_terminal(u)) leaves.push_back(u);
  if (leaves.size() < 2) return std::nullopt;
  const Index p1 = leaves[0];
  const Index p2 = leaves[1];
  adj.at(v).erase(p1);
  adj.at(v).erase(p2);
  adj.erase(p1);
  adj.erase(p2);
  terms.erase(p1);
  terms.erase(p2);
  terms.insert(v);
  auto sub = peel(space, std::move(adj), std::move(terms));
  if (!sub) return std::nullopt;
  auto& tour = *sub;
  const auto at = static_cast<std::size_t>(std::find(tour.begin(), tour.end(), v) - tour.begin());
  const Index u = tour[(at + tour.size() - 1) % tour.size()];
  const Index w = tour[(at + 1) % tour.size()];
  const double forward = space(u, p1) + space(p2, w);
  const double backward = space(u, p2) + space(p1, w);
  tour[at] = forward <= backward ? p1 : p2;
  tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(at) + 1, forward <= backward ? p2 : p1);
  return tour;
}

std::vector<Index> preorder_terminals(const SteinerTree& tree) {
  const auto& verts = tree.vertices();
  const auto adj = tree.graph().adjacency();
  std::vector<Index> out;
  std::vector<char> seen(verts.size(), 0);
  std::vector<Index> stack{tree.terminals()[0]};
  while (!stack.empty()) {
    const Index v = stack.back();
    stack.pop_back();
    const std::size_t pv = verts.position(v);
    if (seen[pv]) continue;
    seen[pv] = 1;
    if (tree.terminals().contains(v)) out.push_back(v);
    const auto& nb = adj[pv];
    for (auto it = nb.rbegin(); it != nb.rend(); ++it)
      if (!seen[verts.position(*it)]) stack.push_back(*it);
  }
  return out;
}

}  // namespace

IndexedGraph tree_to_cycle(const MetricSpace& space, const SteinerTree& tree) {
  if (tree.terminals().size() < 3) throw ValidationError("tree_to_cycle needs at least 3 terminals");
  const SteinerTree reduced = reduce_tree(space, make_proper(space, tree));
  const auto& t = reduced.terminals();
  auto tour = peel(space, adjacency_map(reduced.graph()), std::set<Index>(t.begin(), t.end()));
  std::vector<Index> order = tour ? *tour : preorder_terminals(reduced);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < order.size(); ++i) edges.emplace_back(order[i], order[(i + 1) % order.size()]);
  return IndexedGraph(t, std::move(edges));
}

IndexedGraph cycle_longest_edge_removal(const MetricSpace& space, const IndexedGraph& cycle) {
  const auto& verts = cycle.vertices();
  if (verts.size() < 3 || cycle.edges().size() != verts.size() || !cycle.is_connected())
    throw ValidationError("input is not a cycle");
  const auto adj = cycle.adjacency();
  for (const auto& nb : adj)
    if (nb.size() != 2) throw ValidationError("input is not a cycle");
  std::size_t worst = 0;
  for (std::size_t i = 1; i < cycle.edges().size(); ++i)
    if (space.dist(cycle.edges()[i].a, cycle.edges()[i].b) >
        space.dist(cycle.edges()[worst].a, cycle.edges()[worst].b))
      worst = i;
  const Edge cut = cycle.edges()[worst];
  std::vector<Edge> path;
  Index prev = cut.a;
  Index at = cut.b;
  while (at != cut.a) {
    const auto& nb = adj[verts.position(at)];
    const Index next = nb[0] == prev ? nb[1] : nb[0];
    path.emplace_back(at, next);
    prev = at;
    at = next;
  }
  return IndexedGraph(verts, std::move(path));
}

}  // namespace menger
