#include <algorithm>
#include <bit>
#include <sstream>

#include "menger/kernels.hpp"
#include "menger/steiner.hpp"

namespace menger {

namespace {

void collect(const kernels::SteinerDpTables& t, const std::vector<Index>& nodes, std::size_t mask,
             std::size_t v, std::vector<Edge>& out) {
  const std::size_t n = t.n;
  if (std::popcount(mask) == 1) {
    const auto term = static_cast<std::size_t>(std::countr_zero(mask));
    if (nodes[term] != nodes[v]) out.emplace_back(nodes[term], nodes[v]);
    return;
  }
  const std::size_t u = t.parent[mask * n + v];
  if (nodes[u] != nodes[v]) out.emplace_back(nodes[u], nodes[v]);
  const std::size_t sub = t.split[mask * n + u];
  collect(t, nodes, sub, u, out);
  collect(t, nodes, mask ^ sub, u, out);
}

}  // namespace

SmtResult smt_restricted(const MetricSpace& space, const IndexSet& p, const IndexSet& candidates) {
  if (p.empty()) throw ValidationError("steiner tree of an empty terminal set");
  if (p.size() > kDpTerminalCap) {
    std::ostringstream os;
    os << "terminal cap exceeded: " << p.size() << " terminals, the exact DP allows " << kDpTerminalCap;
    throw CapExceeded(os.str());
  }
  p.check_bounds(space.size());
  candidates.check_bounds(space.size());
  SmtResult r;
  r.method = SmtMethod::dp_exact;
  r.base_size = space.size();
  if (p.size() == 1) {
    r.tree = SteinerTree(IndexedGraph(p, {}), p);
    return r;
  }
  std::vector<Index> nodes(p.begin(), p.end());
  for (Index c : candidates)
    if (!p.contains(c)) nodes.push_back(c);
  const std::size_t n = nodes.size();
  const std::size_t k = p.size();
  const auto dmat = kernels::omp::distance_matrix(space, nodes);
  const auto tables = kernels::omp::steiner_dp(dmat, n, k);

  std::vector<Edge> edges;
  collect(tables, nodes, (std::size_t{1} << (k - 1)) - 1, k - 1, edges);
  std::vector<Index> verts(p.begin(), p.end());
  for (const Edge& e : edges) {
    verts.push_back(e.a);
    verts.push_back(e.b);
  }
  IndexSet vset(std::move(verts));
  IndexedGraph g = kruskal(space, vset, std::move(edges));
  r.tree = make_proper(space, SteinerTree(std::move(g), p));
  r.length = tree_length(space, r.tree);
  r.lower = r.length;
  r.upper = r.length;
  return r;
}

}  // namespace menger
