#include "menger/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "menger/kernels.hpp"

namespace menger {

std::string_view to_string(SmtMethod m) noexcept {
  switch (m) {
    case SmtMethod::dp_exact: return "dp_exact";
    case SmtMethod::topology_exact: return "topology_exact";
    case SmtMethod::mst_upper: return "mst_upper";
    case SmtMethod::moore_lower: return "moore_lower";
    case SmtMethod::heuristic_upper: return "heuristic_upper";
  }
  return "unknown";
}

MetricSpace SmtResult::extended(const MetricSpace& base) const {
  if (steiner_coords.empty()) return base;
  return base.appended(steiner_coords);
}

namespace {

double moore_lower(double mst_len, std::size_t k) {
  if (k < 2) return 0.0;
  return mst_len * static_cast<double>(k) / (2.0 * static_cast<double>(k - 1));
}

struct GridShape {
  std::vector<double> lo;
  std::vector<std::size_t> steps;
  double count{1.0};
};

GridShape grid_shape(const MetricSpace& space, const IndexSet& p, double pitch) {
  const std::size_t dim = space.dim();
  GridShape g;
  g.lo.assign(dim, kInfinity);
  std::vector<double> hi(dim, -kInfinity);
  for (Index i : p) {
    const auto c = space.point(i);
    for (std::size_t d = 0; d < dim; ++d) {
      g.lo[d] = std::min(g.lo[d], c[d]);
      hi[d] = std::max(hi[d], c[d]);
    }
  }
  g.steps.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    g.steps[d] = static_cast<std::size_t>(std::floor((hi[d] - g.lo[d]) / pitch + 1e-9)) + 1;
    g.count *= static_cast<double>(g.steps[d]);
  }
  return g;
}

}  // namespace

SmtResult smt_bounds(const MetricSpace& space, const IndexSet& p) {
  const auto m = mst(space, p);
  SmtResult r;
  r.tree = m.tree;
  r.length = m.length;
  r.method = SmtMethod::mst_upper;
  r.base_size = space.size();
  r.lower = moore_lower(m.length, p.size());
  r.upper = m.length;
  return r;
}

SmtResult smt_grid(const MetricSpace& space, const IndexSet& p, double pitch) {
  if (!space.is_euclidean()) throw ValidationError("grid candidates need a euclidean space");
  if (!(pitch > 0.0)) throw ValidationError("grid pitch must be positive");
  if (p.empty()) throw ValidationError("steiner tree of an empty terminal set");
  p.check_bounds(space.size());
  const std::size_t dim = space.dim();
  const GridShape shape = grid_shape(space, p, pitch);
  const auto& lo = shape.lo;
  const auto& steps = shape.steps;
  const double count = shape.count;
  if (count > static_cast<double>(kGridPointCap)) {
    std::ostringstream os;
    os << "grid cap exceeded: pitch " << pitch << " needs " << count << " points, the cap is " << kGridPointCap;
    throw CapExceeded(os.str());
  }
  std::vector<double> grid;
  std::vector<std::size_t> at(dim, 0);
  for (std::size_t g = 0; g < static_cast<std::size_t>(count); ++g) {
    for (std::size_t d = 0; d < dim; ++d) grid.push_back(lo[d] + static_cast<double>(at[d]) * pitch);
    for (std::size_t d = 0; d < dim && ++at[d] == steps[d]; ++d) at[d] = 0;
  }
  const MetricSpace ext = space.appended(grid);
  const SmtResult dp = smt_restricted(ext, p, IndexSet::range(space.size(), ext.size()));

  // Renumber the grid points the tree uses.
  SmtResult r;
  r.method = SmtMethod::dp_exact;
  r.base_size = space.size();
  std::map<Index, Index> remap;
  for (Index v : dp.tree.vertices()) {
    if (v < space.size()) continue;
    remap[v] = space.size() + remap.size();
    const auto c = ext.point(v);
    r.steiner_coords.insert(r.steiner_coords.end(), c.begin(), c.end());
  }
  auto rn = [&](Index v) { return v < space.size() ? v : remap.at(v); };
  std::vector<Index> verts;
  for (Index v : dp.tree.vertices()) verts.push_back(rn(v));
  std::vector<Edge> edges;
  for (const Edge& e : dp.tree.edges()) edges.emplace_back(rn(e.a), rn(e.b));
  r.tree = SteinerTree(IndexedGraph(IndexSet(std::move(verts)), std::move(edges)), p);
  r.length = dp.length;
  r.upper = dp.length;
  r.lower = moore_lower(mst(space, p).length, p.size());
  return r;
}

SteinerTree augment_tree(const MetricSpace& space, const SteinerTree& tree_q, const IndexSet& p) {
  if (p.empty()) throw ValidationError("augment_tree needs a non-empty P");
  p.check_bounds(space.size());
  const IndexSet& q = tree_q.terminals();
  if (q.empty()) throw ValidationError("augment_tree needs a tree with terminals");
  std::vector<Index> verts(tree_q.vertices().begin(), tree_q.vertices().end());
  std::vector<Edge> edges(tree_q.edges());
  for (Index x : p) {
    if (tree_q.vertices().contains(x)) continue;
    Index best = q[0];
    double bd = space(x, best);
    for (Index y : q)
      if (space(x, y) < bd) {
        bd = space(x, y);
        best = y;
      }
    verts.push_back(x);
    edges.emplace_back(x, best);
  }
  return SteinerTree(IndexedGraph(IndexSet(std::move(verts)), std::move(edges)), p);
}

SmtResult best_smt(const MetricSpace& space, const IndexSet& p, const SmtEngine& engine) {
  if (p.empty()) throw ValidationError("steiner tree of an empty terminal set");
  p.check_bounds(space.size());
  if (p.size() <= 2) return smt_restricted(space, p, {});
  if (space.is_euclidean() && space.dim() == 2 && p.size() <= 4) return smt_euclidean_small(space, p);

  const auto bounds = smt_bounds(space, p);
  SmtResult best = bounds;
  auto consider = [&](SmtResult r) {
    if (r.length < best.length) best = std::move(r);
  };
  if (space.is_euclidean()) consider(smt_heuristic(space, p));
  if (p.size() <= kDpTerminalCap) {
    if (engine.candidates == CandidateKind::sample) {
      const IndexSet cand = set_difference(engine.sample, p);
      if (kernels::steiner_dp_work(p.size() + cand.size(), p.size()) <= engine.dp_budget) {
        SmtResult dp = smt_restricted(space, p, cand);
        // Over every point of a finite space the DP value is the exact smt.
        if (!space.is_euclidean() && cand.size() + p.size() == space.size()) dp.lower = dp.length;
        consider(std::move(dp));
      }
    } else if (engine.candidates == CandidateKind::grid && space.is_euclidean() && engine.grid_pitch > 0.0) {
      const double count = grid_shape(space, p, engine.grid_pitch).count;
      if (count <= static_cast<double>(kGridPointCap) &&
          kernels::steiner_dp_work(p.size() + static_cast<std::size_t>(count), p.size()) <= engine.dp_budget)
        consider(smt_grid(space, p, engine.grid_pitch));
    }
  }
  best.lower = std::max(best.lower, bounds.lower);
  best.upper = best.length;
  return best;
}

}  // namespace menger
