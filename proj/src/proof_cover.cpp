#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "menger/kernels.hpp"
#include "menger/length.hpp"

namespace menger {

namespace {

// Sample points of `a` strictly within `radius` of some center; distances
// are taken in `ext`, which holds `a` at the same indices.
IndexSet fatten(const MetricSpace& ext, const IndexSet& a, const std::vector<Index>& centers, double radius) {
  const auto hit = kernels::omp::within_radius(ext, a.span(), centers, radius);
  std::vector<Index> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (hit[i]) out.push_back(a[i]);
  return IndexSet(std::move(out));
}

struct Component {
  std::vector<Index> vertices;
  std::vector<Edge> edges;
  double length{0.0};
};

}  // namespace

ProofCover proof_cover(const MetricSpace& space, const IndexSet& a, double delta,
                       const std::vector<double>& eps_schedule, std::uint64_t seed) {
  if (!(delta > 0.0 && delta < 0.125)) throw ValidationError("delta must lie in (0, 1/8)");
  if (a.empty()) throw ValidationError("proof_cover of an empty set");
  a.check_bounds(space.size());

  ProofCover out;
  out.cover.delta = delta;
  auto finish = [&]() {
    out.sum = cover_sum(space, out.cover, a);
    out.bound = (1.0 + 16.0 * delta) * (out.lmc_est + delta / 4.0) + 9.0 * delta;
    return out;
  };
  if (a.size() == 1) {
    out.cover.elements.push_back(a);
    out.net_size = out.extended_net_size = 1;
    out.engine = "trivial";
    return finish();
  }

  // P: the best net found by the L_MC estimator.
  const auto est = L_MC_estimate(space, a, eps_schedule, {CandidateKind::sample, 0.0}, seed);
  const IndexSet& p = est.witness_net;
  out.net_size = p.size();
  const double eps = std::min({min_pairwise_distance(space, p), delta * delta,
                               delta / static_cast<double>(p.size())});
  out.eps = eps;

  // P' and a near-optimal proper tree T' on it.
  const IndexSet p_ext = extend_eps_separated(space, a, p, eps);
  out.extended_net_size = p_ext.size();
  // Steiner points stay in the sample: exact DP when affordable, otherwise
  // the spanning tree of P'.
  SmtResult best;
  const IndexSet others = set_difference(a, p_ext);
  if (space.is_euclidean() && space.dim() == 2 && p_ext.size() <= 4)
    best = smt_euclidean_small(space, p_ext);
  else if (p_ext.size() <= kDpTerminalCap &&
           kernels::steiner_dp_work(a.size(), p_ext.size()) <= SmtEngine{}.dp_budget)
    best = smt_restricted(space, p_ext, others);
  else
    best = smt_bounds(space, p_ext);
  out.engine = std::string(to_string(best.method));
  const MetricSpace ext = best.extended(space);
  const SteinerTree t_full = make_proper(ext, best.tree);
  const double t_full_len = tree_length(ext, t_full);
  out.lmc_est = std::max(est.value, t_full_len);

  // T: union of the tree paths between points of P.
  const SteinerTree t = prune_to(t_full, p);
  std::set<Edge> t_edges(t.edges().begin(), t.edges().end());

  // Components of T' minus the edges of T, one per vertex of T.
  std::map<Index, std::vector<Index>> rest;
  for (const Edge& e : t_full.edges())
    if (!t_edges.count(e)) {
      rest[e.a].push_back(e.b);
      rest[e.b].push_back(e.a);
    }
  std::vector<Component> large;
  for (Index v : t.vertices()) {
    if (!rest.count(v)) continue;
    Component c;
    std::set<Index> seen{v};
    std::vector<Index> stack{v};
    while (!stack.empty()) {
      const Index x = stack.back();
      stack.pop_back();
      c.vertices.push_back(x);
      for (Index y : rest[x])
        if (seen.insert(y).second) {
          c.edges.emplace_back(x, y);
          c.length += ext(x, y);
          stack.push_back(y);
        }
    }
    if (c.length >= eps) large.push_back(std::move(c));
  }
  out.large_components = large.size();

  // Chain pieces of T, fattened by 2 eps.
  std::vector<Chain> pieces;
  if (p.size() >= 2) {
    const auto chains = maximal_chains(t);
    out.chains = chains.size();
    for (const Chain& c : chains) {
      auto cut = cut_chain(ext, c, delta / 2.0);
      for (auto& piece : cut.pieces) pieces.push_back(std::move(piece));
    }
  } else {
    pieces.push_back(Chain{{p[0]}});
  }
  out.pieces = pieces.size();
  for (const Chain& c : pieces) {
    IndexSet u = fatten(ext, a, c.path, 2.0 * eps);
    if (!u.empty()) out.cover.elements.push_back(std::move(u));
  }

  // Large components fattened by eps. A component too long for a single
  // element is cut along its own chains instead.
  for (const Component& c : large) {
    IndexSet u = fatten(ext, a, c.vertices, eps);
    if (diam(space, u) <= delta) {
      if (!u.empty()) out.cover.elements.push_back(std::move(u));
      continue;
    }
    std::vector<Index> terms{c.vertices.front()};
    for (Index x : c.vertices)
      if (p_ext.contains(x)) terms.push_back(x);
    const SteinerTree sub(IndexedGraph(IndexSet(c.vertices), c.edges), IndexSet(std::move(terms)));
    for (const Chain& ch : maximal_chains(make_proper(ext, sub)))
      for (const Chain& piece : cut_chain(ext, ch, delta / 2.0).pieces) {
        IndexSet w = fatten(ext, a, piece.path, 2.0 * eps);
        if (!w.empty()) out.cover.elements.push_back(std::move(w));
      }
    ++out.split_components;
  }
  return finish();
}

}  // namespace menger
