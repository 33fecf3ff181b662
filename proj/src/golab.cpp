#include "menger/golab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace menger {

Ensemble make_ensemble(const SampledShape& limit, const std::vector<SampledShape>& sequence) {
  const std::size_t dim = limit.space.dim();
  std::vector<double> flat(limit.space.coords().begin(), limit.space.coords().end());
  Ensemble ens{MetricSpace::euclidean(dim, flat), IndexSet::range(0, limit.space.size()), {},
               limit.true_length, {}};
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const auto& s = sequence[k];
    if (!s.space.is_euclidean() || s.space.dim() != dim) {
      std::ostringstream os;
      os << "inconsistent ambient space: step " << k << " has dimension " << s.space.dim() << ", the limit " << dim;
      throw ValidationError(os.str());
    }
    const Index first = flat.size() / dim;
    flat.insert(flat.end(), s.space.coords().begin(), s.space.coords().end());
    ens.sequence.push_back(IndexSet::range(first, first + s.space.size()));
    ens.true_lengths.push_back(s.true_length);
  }
  ens.space = MetricSpace::euclidean(dim, std::move(flat));
  return ens;
}

namespace {

void finish_verdict(ConvergenceReport& rep, const ExperimentConfig& cfg) {
  const std::size_t n = rep.steps.size();
  if (n == 0) {
    rep.verdict = "inconclusive";
    rep.note = "empty sequence";
    return;
  }
  const std::size_t tail = std::min(std::max<std::size_t>(cfg.tail, 1), n);
  rep.liminf_estimate = kInfinity;
  for (std::size_t k = n - tail; k < n; ++k) rep.liminf_estimate = std::min(rep.liminf_estimate, rep.steps[k].lmc_lower);
  rep.semicontinuity_gap = rep.liminf_estimate - rep.limit_lmc_lower;
  rep.tolerance = cfg.rel_tol * rep.limit_lmc_lower;
  rep.verdict = rep.limit_lmc_lower <= rep.liminf_estimate + rep.tolerance ? "consistent" : "inconclusive";
}

}  // namespace

ConvergenceReport convergence_experiment(const Ensemble& ens, const ExperimentConfig& cfg) {
  ConvergenceReport rep;
  const auto lim = L_MC_estimate(ens.space, ens.limit, cfg.eps_schedule, cfg.source, cfg.seed);
  rep.limit_lmc_lower = lim.value;
  rep.limit_lmc_certified = lim.params.extra.at("certified_lower");
  rep.limit_eps = lim.params.eps;
  for (std::size_t k = 0; k < ens.sequence.size(); ++k) {
    const auto est = L_MC_estimate(ens.space, ens.sequence[k], cfg.eps_schedule, cfg.source, cfg.seed);
    StepRecord r;
    r.step = k + 1;
    r.excess = excess(ens.space, ens.limit, ens.sequence[k]);
    r.hausdorff = hausdorff(ens.space, ens.limit, ens.sequence[k]);
    r.lmc_lower = est.value;
    r.lmc_certified = est.params.extra.at("certified_lower");
    r.true_length = ens.true_lengths[k];
    r.lstar = ens.true_lengths[k];
    r.eps = est.params.eps;
    rep.steps.push_back(r);
  }
  finish_verdict(rep, cfg);
  if (rep.verdict == "consistent" && rep.semicontinuity_gap > rep.tolerance)
    rep.note = "strict drop: the limit estimate lies below the sequence";
  return rep;
}

ConvergenceReport counterexample_disconnected(int n, const ExperimentConfig& cfg, std::size_t limit_samples) {
  if (n < 1) throw ValidationError("counterexample needs n >= 1");
  ShapeSpec seg;
  seg.kind = ShapeKind::segment;
  seg.samples = limit_samples;
  std::vector<SampledShape> grids;
  for (int m = 1; m <= n; ++m) {
    std::vector<double> flat;
    for (int k = 1; k <= m; ++k) {
      flat.push_back(static_cast<double>(k) / static_cast<double>(m));
      flat.push_back(0.0);
    }
    grids.push_back(SampledShape{MetricSpace::euclidean(2, std::move(flat)), {}, 0.0, {}});
  }
  const Ensemble ens = make_ensemble(generate(seg), grids);
  ConvergenceReport rep = convergence_experiment(ens, cfg);
  for (auto& s : rep.steps) s.lstar = 0.0;
  std::ostringstream os;
  os.precision(12);
  os << "finite grids have L* = 0 at every step while the limit estimate is " << rep.limit_lmc_lower
     << "; L* is not lower semicontinuous without connectedness";
  rep.note = os.str();
  return rep;
}

HitCollection hit_collection(const MetricSpace& space, const IndexSet& a, double eps, const ExperimentConfig& cfg) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  const auto est = L_MC_estimate(space, a, cfg.eps_schedule, cfg.source, cfg.seed);
  HitCollection hc;
  hc.centers = est.witness_net;
  hc.eps = eps;
  hc.radius = eps / (2.0 * static_cast<double>(hc.centers.size()));
  hc.smt_centers = est.value;
  hc.smt_centers_lower = est.witness_tree ? est.witness_tree->lower : 0.0;
  return hc;
}

bool check_hits(const MetricSpace& space, const IndexSet& b, const HitCollection& hc) {
  b.check_bounds(space.size());
  for (Index c : hc.centers) {
    bool hit = false;
    for (Index x : b)
      if (space(c, x) < hc.radius) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

HitContract hit_contract(const MetricSpace& space, const IndexSet& b, const HitCollection& hc) {
  HitContract out;
  out.hit = check_hits(space, b, hc);
  if (!out.hit) return out;
  std::vector<Index> wit;
  for (Index c : hc.centers)
    for (Index x : b)
      if (space(c, x) < hc.radius) {
        wit.push_back(x);
        break;
      }
  out.witnesses = IndexSet(std::move(wit));
  const SmtResult t = best_smt(space, out.witnesses);
  out.smt_witnesses = t.length;
  const MetricSpace ext = t.extended(space);
  out.augmented = tree_length(ext, augment_tree(ext, t.tree, hc.centers));
  out.holds = out.augmented < out.smt_witnesses + hc.eps / 2.0 && hc.smt_centers_lower <= out.augmented + 1e-9;
  return out;
}

namespace {

// Tree with terminals `terms` obtained by attaching every missing point to the nearest terminal.
double augmented_length(const MetricSpace& space, const SmtResult& r, const IndexSet& to, const IndexSet& terms) {
  const MetricSpace ext = r.extended(space);
  const SteinerTree aug = augment_tree(ext, r.tree, to);
  return tree_length(ext, SteinerTree(aug.graph(), terms));
}

}  // namespace

ClosureReport closure_check(const MetricSpace& space, const IndexSet& a, const IndexSet& extra, double resolution,
                            const ExperimentConfig& cfg) {
  if (a.empty()) throw ValidationError("closure_check needs a non-empty A");
  extra.check_bounds(space.size());
  for (Index x : extra) {
    const double d = dist_to_set(space, x, a);
    if (d > resolution * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "extra point " << x << " is too far from A: distance " << d << " > resolution " << resolution;
      throw ValidationError(os.str());
    }
  }
  ClosureReport rep;
  rep.slack = extra.empty() ? 0.0 : static_cast<double>(extra.size()) * excess(space, extra, a);
  const IndexSet added = set_difference(extra, a);
  const IndexSet uni = set_union(a, added);
  const auto nets = schedule_nets(space, uni, cfg.eps_schedule, cfg.seed);
  bool first = true;
  for (const IndexSet& pu : nets) {
    // Q: the net with every added point moved to its nearest point of A.
    std::vector<Index> q;
    for (Index x : pu) {
      if (!added.contains(x)) {
        q.push_back(x);
        continue;
      }
      Index best = a[0];
      for (Index y : a)
        if (space(x, y) < space(x, best)) best = y;
      q.push_back(best);
    }
    const IndexSet qs(std::move(q));
    const SmtResult tu = best_smt(space, pu);
    const SmtResult tq = best_smt(space, qs);
    const double est_u = std::min(tu.length, augmented_length(space, tq, pu, pu));
    const double est_q = std::min(tq.length, augmented_length(space, tu, set_union(pu, qs), qs));
    rep.lmc_union = first ? est_u : std::max(rep.lmc_union, est_u);
    rep.lmc_a = first ? est_q : std::max(rep.lmc_a, est_q);
    first = false;
  }
  rep.difference = std::abs(rep.lmc_union - rep.lmc_a);
  rep.within_slack = rep.difference <= rep.slack + 1e-12;
  return rep;
}

LowerLimitReport lower_limit_experiment(const Ensemble& ens, const std::vector<double>& radii,
                                        const ExperimentConfig& cfg) {
  LowerLimitReport rep;
  rep.limit_points = discrete_lower_limit(ens.space, ens.sequence, radii, ens.limit);
  rep.coverage = static_cast<double>(rep.limit_points.size()) / static_cast<double>(ens.limit.size());
  if (!rep.limit_points.empty())
    rep.lmc_lower = L_MC_estimate(ens.space, rep.limit_points, cfg.eps_schedule, cfg.source, cfg.seed).value;
  const std::size_t n = ens.sequence.size();
  const std::size_t tail = std::min(std::max<std::size_t>(cfg.tail, 1), n);
  rep.liminf_lmc = kInfinity;
  for (std::size_t k = n - tail; k < n; ++k)
    rep.liminf_lmc = std::min(rep.liminf_lmc,
                              L_MC_estimate(ens.space, ens.sequence[k], cfg.eps_schedule, cfg.source, cfg.seed).value);
  return rep;
}

}  // namespace menger
