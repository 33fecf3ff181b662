#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "menger/length.hpp"

namespace menger {

JoinTree cover_join_tree(const MetricSpace& space, const Cover& cover, const IndexSet& p) {
  if (p.size() < 2) throw ValidationError("cover_join_tree needs |P| >= 2");
  p.check_bounds(space.size());
  const std::size_t m = cover.elements.size();
  std::vector<double> width(m);
  for (std::size_t i = 0; i < m; ++i) {
    cover.elements[i].check_bounds(space.size());
    width[i] = diam(space, cover.elements[i]);
    if (width[i] > cover.delta) {
      std::ostringstream os;
      os << "cover element " << i << " has diameter " << width[i] << " > delta " << cover.delta;
      throw ValidationError(os.str());
    }
  }

  // Element holding each point of P (lowest index).
  std::set<std::size_t> required;
  for (Index x : p) {
    std::size_t at = m;
    for (std::size_t i = 0; i < m && at == m; ++i)
      if (cover.elements[i].contains(x)) at = i;
    if (at == m) throw ValidationError("point " + std::to_string(x) + " of P lies in no cover element");
    required.insert(at);
  }

  // BFS tree of the intersection graph from the first required element.
  std::vector<std::vector<std::size_t>> adj(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (!set_intersection(cover.elements[i], cover.elements[j]).empty()) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  const std::size_t root = *required.begin();
  std::vector<std::size_t> parent(m, m);
  std::vector<char> seen(m, 0);
  std::deque<std::size_t> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        parent[j] = i;
        queue.push_back(j);
      }
  }
  for (std::size_t i : required)
    if (!seen[i])
      throw ValidationError("cover intersection graph is disconnected; the sample does not look connected");

  // Minimal subtree: prune non-required leaves.
  std::vector<std::set<std::size_t>> tree(m);
  for (std::size_t j = 0; j < m; ++j)
    if (seen[j] && j != root) {
      tree[j].insert(parent[j]);
      tree[parent[j]].insert(j);
    }
  std::vector<char> alive(seen);
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < m; ++i)
    if (alive[i] && !required.count(i) && tree[i].size() <= 1) leaves.push_back(i);
  while (!leaves.empty()) {
    const std::size_t i = leaves.back();
    leaves.pop_back();
    if (!alive[i]) continue;
    alive[i] = 0;
    for (std::size_t j : tree[i]) {
      tree[j].erase(i);
      if (!required.count(j) && tree[j].size() <= 1) leaves.push_back(j);
    }
    tree[i].clear();
  }

  // Junction points and the vertex sets V_i.
  std::vector<std::set<Index>> vsets(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!alive[i]) continue;
    for (Index x : cover.elements[i])
      if (p.contains(x)) vsets[i].insert(x);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (!alive[i]) continue;
    for (std::size_t j : tree[i]) {
      if (j < i) continue;
      const IndexSet common = set_difference(set_intersection(cover.elements[i], cover.elements[j]), p);
      if (common.empty()) {
        std::ostringstream os;
        os << "cover elements " << i << " and " << j << " meet only in points of P; no junction point";
        throw ValidationError(os.str());
      }
      vsets[i].insert(common[0]);
      vsets[j].insert(common[0]);
    }
  }

  JoinTree out;
  std::vector<Index> verts(p.begin(), p.end());
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i) {
    if (!alive[i] || vsets[i].empty()) continue;
    const std::vector<Index> vi(vsets[i].begin(), vsets[i].end());
    out.element_bound += static_cast<double>(vi.size() - 1) * width[i];
    for (std::size_t k = 0; k < vi.size(); ++k) {
      verts.push_back(vi[k]);
      if (k > 0) edges.emplace_back(vi[k - 1], vi[k]);
    }
  }
  for (double w : width) out.cover_bound += w;
  out.cover_bound += cover.delta * (static_cast<double>(p.size()) - 2.0);
  IndexedGraph g = kruskal(space, IndexSet(std::move(verts)), std::move(edges));
  out.tree = make_proper(space, SteinerTree(std::move(g), p));
  out.length = tree_length(space, out.tree);
  return out;
}

}  // namespace menger
