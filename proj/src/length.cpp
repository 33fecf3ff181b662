#include "menger/length.hpp"

#include <algorithm>
#include <sstream>

namespace menger {

std::string_view to_string(Functional f) noexcept {
  switch (f) {
    case Functional::L_M: return "L_M";
    case Functional::L_MC: return "L_MC";
    case Functional::L_IM: return "L_IM";
    case Functional::Lstar_delta_upper: return "Lstar_delta_upper";
  }
  return "unknown";
}

std::string_view to_string(Direction d) noexcept {
  switch (d) {
    case Direction::lower: return "lower";
    case Direction::upper: return "upper";
    case Direction::exact: return "exact";
  }
  return "unknown";
}

namespace {

void check_schedule(const std::vector<double>& eps) {
  if (eps.empty()) throw ValidationError("eps schedule must be non-empty");
  for (std::size_t k = 0; k < eps.size(); ++k) {
    if (!(eps[k] > 0.0)) throw ValidationError("eps schedule entries must be positive");
    if (k > 0 && eps[k] > eps[k - 1]) throw ValidationError("eps schedule must be decreasing");
  }
}

LengthEstimate blank(Functional f, const MetricSpace& space, const IndexSet& a, std::uint64_t seed) {
  if (a.empty()) throw ValidationError("length estimate of an empty set");
  a.check_bounds(space.size());
  LengthEstimate est;
  est.functional = f;
  est.direction = Direction::lower;
  est.params.seed = seed;
  return est;
}

void keep_best(LengthEstimate& est, const LevelRecord& rec, const IndexSet& net,
               std::optional<SmtResult> tree) {
  const bool first = est.levels.empty();
  est.levels.push_back(rec);
  if (first || rec.value > est.value) {
    est.value = rec.value;
    est.params.eps = rec.eps;
    est.witness_net = net;
    est.witness_tree = std::move(tree);
  }
}

}  // namespace

std::vector<IndexSet> schedule_nets(const MetricSpace& space, const IndexSet& a,
                                    const std::vector<double>& eps_schedule, std::uint64_t seed) {
  check_schedule(eps_schedule);
  const auto perm = greedy_permutation(space, a, seed);
  std::vector<IndexSet> nets;
  nets.reserve(eps_schedule.size());
  for (double eps : eps_schedule) nets.push_back(net_from_permutation(perm, eps));
  return nets;
}

LengthEstimate L_M_estimate(const MetricSpace& space, const IndexSet& a,
                            const std::vector<double>& eps_schedule, std::uint64_t seed) {
  LengthEstimate est = blank(Functional::L_M, space, a, seed);
  const auto nets = schedule_nets(space, a, eps_schedule, seed);
  for (std::size_t k = 0; k < nets.size(); ++k) {
    const auto m = mst(space, nets[k]);
    SmtResult tree;
    tree.tree = m.tree;
    tree.length = m.length;
    tree.method = SmtMethod::mst_upper;
    tree.lower = tree.upper = m.length;
    tree.base_size = space.size();
    keep_best(est, {eps_schedule[k], nets[k].size(), m.length, m.length, "mst"}, nets[k], tree);
  }
  return est;
}

LengthEstimate L_MC_estimate(const MetricSpace& space, const IndexSet& a,
                             const std::vector<double>& eps_schedule, const CandidateSource& source,
                             std::uint64_t seed) {
  LengthEstimate est = blank(Functional::L_MC, space, a, seed);
  est.params.grid_pitch = source.kind == CandidateKind::grid ? source.grid_pitch : 0.0;
  SmtEngine engine;
  engine.candidates = source.kind;
  engine.grid_pitch = source.grid_pitch;
  if (source.kind == CandidateKind::sample) engine.sample = a;
  const auto nets = schedule_nets(space, a, eps_schedule, seed);
  double certified = 0.0;
  for (std::size_t k = 0; k < nets.size(); ++k) {
    SmtResult r = best_smt(space, nets[k], engine);
    // Nets are nested, so a lower bound of a coarser level still holds here.
    certified = std::max(certified, r.lower);
    LevelRecord rec{eps_schedule[k], nets[k].size(), r.length, certified, std::string(to_string(r.method))};
    keep_best(est, rec, nets[k], std::move(r));
  }
  est.params.extra["certified_lower"] = certified;
  est.params.extra["net_size"] = static_cast<double>(est.witness_net.size());
  return est;
}

LengthEstimate L_IM_estimate(const MetricSpace& space, const IndexSet& a,
                             const std::vector<double>& eps_schedule, std::uint64_t seed) {
  LengthEstimate est = blank(Functional::L_IM, space, a, seed);
  const auto nets = schedule_nets(space, a, eps_schedule, seed);
  for (std::size_t k = 0; k < nets.size(); ++k) {
    if (nets[k].size() > kDpTerminalCap) {
      std::ostringstream os;
      os << "terminal cap exceeded at eps " << eps_schedule[k] << ": net has " << nets[k].size()
         << " points, the exact DP allows " << kDpTerminalCap;
      throw CapExceeded(os.str());
    }
    SmtResult r = smt_restricted(space, nets[k], set_difference(a, nets[k]));
    LevelRecord rec{eps_schedule[k], nets[k].size(), r.length, r.length, "dp_exact"};
    keep_best(est, rec, nets[k], std::move(r));
  }
  est.params.extra["net_size"] = static_cast<double>(est.witness_net.size());
  // Steiner points range over A and smt_A is monotone, so the full set is exact.
  if (!nets.empty() && nets.back().size() == a.size()) est.direction = Direction::exact;
  return est;
}

bool separated_bound_check(const MetricSpace& space, const IndexSet& a, double eps, ExtLength lmc_upper,
                           std::size_t seeds) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  if (a.empty()) return true;
  const double bound = std::max(2.0 * lmc_upper / eps, 1.0);
  for (std::uint64_t s = 0; s < seeds; ++s)
    if (static_cast<double>(max_eps_separated(space, a, eps, s).size()) > bound + 1e-9) return false;
  return true;
}

void validate_cover(const MetricSpace& space, const Cover& cover, const IndexSet& a) {
  if (!(cover.delta > 0.0)) throw ValidationError("cover delta must be positive");
  a.check_bounds(space.size());
  std::vector<char> hit(space.size(), 0);
  for (std::size_t i = 0; i < cover.elements.size(); ++i) {
    const auto& u = cover.elements[i];
    u.check_bounds(space.size());
    const double d = diam(space, u);
    if (d > cover.delta) {
      std::ostringstream os;
      os << "cover element " << i << " has diameter " << d << " > delta " << cover.delta;
      throw ValidationError(os.str());
    }
    for (Index x : u) hit[x] = 1;
  }
  for (Index x : a)
    if (!hit[x]) {
      std::ostringstream os;
      os << "cover misses point " << x;
      throw ValidationError(os.str());
    }
}

ExtLength cover_sum(const MetricSpace& space, const Cover& cover, const IndexSet& a) {
  validate_cover(space, cover, a);
  double s = 0.0;
  for (const auto& u : cover.elements) s += diam(space, u);
  return s;
}

}  // namespace menger
