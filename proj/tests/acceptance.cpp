// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "menger/golab.hpp"
#include "menger/length.hpp"
#include "menger/shapes.hpp"
#include "menger/steiner.hpp"
#include "oracles.hpp"

using namespace menger;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

// Collects failed checks of one criterion and a short summary.
struct Outcome {
  bool ok{true};
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << " failed:";
      detail << ' ' << what << ';';
      ok = false;
    }
  }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

MetricSpace points(std::vector<double> flat) { return MetricSpace::euclidean(2, std::move(flat)); }

IndexSet range_set(std::size_t n) { return IndexSet::range(0, n); }

std::vector<double> halving(double from, double to) {
  std::vector<double> s;
  for (double e = from; e >= to * (1 - 1e-12); e /= 2) s.push_back(e);
  return s;
}

SampledShape shape(ShapeKind kind, int n, std::size_t samples) {
  ShapeSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.samples = samples;
  return generate(spec);
}

// ---------------------------------------------------------------------------

void constants(Outcome& o) {
  const auto tri = points({0, 0, 1, 0, 0.5, kSqrt3 / 2});
  const auto sq = points({0, 0, 1, 0, 1, 1, 0, 1});
  const auto sqc = points({0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5});
  const double s_tri = smt_euclidean_small(tri, tri.all()).length;
  const double s_sq = smt_euclidean_small(sq, sq.all()).length;
  const double m_sq = mst(sq, sq.all()).length;
  const double m_sqc = mst(sqc, sqc.all()).length;
  const double im_sq = L_IM_estimate(sq, sq.all(), {0.1}, 0).value;
  const double im_sqc = L_IM_estimate(sqc, sqc.all(), {0.1}, 0).value;
  o.expect(std::abs(s_tri - kSqrt3) <= 1e-6, "smt(triangle) = " + num(s_tri));
  o.expect(std::abs(s_sq - (1 + kSqrt3)) <= 1e-6, "smt(square) = " + num(s_sq));
  o.expect(std::abs(m_sq - 3) <= 1e-9, "mst(corners) = " + num(m_sq));
  o.expect(std::abs(m_sqc - 2 * kSqrt2) <= 1e-9, "mst(corners+center) = " + num(m_sqc));
  o.expect(std::abs(im_sq - 3) <= 1e-9, "L_IM(corners) = " + num(im_sq));
  o.expect(std::abs(im_sqc - 2 * kSqrt2) <= 1e-9, "L_IM(corners+center) = " + num(im_sqc));
  o.detail << " smt(tri)=" << num(s_tri) << " smt(sq)=" << num(s_sq) << " mst=" << num(m_sq) << "/" << num(m_sqc)
           << " L_IM=" << num(im_sq) << "/" << num(im_sqc);
}

void diagonals(Outcome& o) {
  const auto d = shape(ShapeKind::square_diagonals, 0, 201);
  const double pitch = kSqrt2 / 200;
  const IndexSet all = d.space.all();
  const std::vector<double> sched{1.0, 0.5, 0.2, 0.1, 0.05, 0.025};
  const auto lm = L_M_estimate(d.space, all, sched, 0);
  const auto lmc = L_MC_estimate(d.space, all, sched, {CandidateKind::sample, 0.0}, 0);
  // L_M is a supremum over nets; mst itself drops when the center joins the net.
  double running = 0.0;
  for (const auto& lvl : lm.levels) running = std::max(running, lvl.value);
  o.expect(pitch <= 0.01, "pitch " + num(pitch));
  o.expect(running == lm.value, "L_M is not the running maximum of its levels");
  o.expect(std::abs(lm.value - 3) <= 0.02, "L_M = " + num(lm.value));
  o.expect(std::abs(lmc.value - 2 * kSqrt2) <= 0.02, "L_MC = " + num(lmc.value));
  o.detail << " pitch=" << num(pitch) << " L_M=" << num(lm.value) << " (mst of finest net "
           << num(lm.levels.back().value) << ") L_MC=" << num(lmc.value);
}

void semicircles(Outcome& o) {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const double len = polyline_length(shape(ShapeKind::semicircle_chain, n, 10000));
    worst = std::max(worst, std::abs(len - kPi));
  }
  o.expect(worst <= 1e-4, "polyline error " + num(worst));

  ShapeSpec lim;
  lim.kind = ShapeKind::segment;
  lim.samples = 2001;
  lim.vertices = {{-1.0, 0.0}, {1.0, 0.0}};
  std::vector<SampledShape> seq;
  for (int n = 1; n <= 6; ++n) seq.push_back(shape(ShapeKind::semicircle_chain, n, 512));
  ExperimentConfig cfg;
  cfg.eps_schedule = halving(0.2, 0.000390625);
  cfg.source = {CandidateKind::sample, 0.0};
  const auto rep = convergence_experiment(make_ensemble(generate(lim), seq), cfg);
  const double target = kPi - 2;
  o.expect(rep.limit_lmc_lower >= 1.98, "limit L_MC = " + num(rep.limit_lmc_lower));
  o.expect(std::abs(rep.semicontinuity_gap - target) <= 0.05 * kPi, "gap " + num(rep.semicontinuity_gap));
  o.detail << " max|len-pi|=" << num(worst) << " limit=" << num(rep.limit_lmc_lower)
           << " liminf=" << num(rep.liminf_estimate) << " gap=" << num(rep.semicontinuity_gap)
           << " (pi-2=" << num(target) << ")";
}

void koch(Outcome& o) {
  double worst = 0.0;
  for (int n = 0; n <= 6; ++n) {
    const double want = std::pow(4.0 / 3.0, n);
    const double len = polyline_length(shape(ShapeKind::koch, n, 2));
    worst = std::max(worst, std::abs(len - want) / want);
  }
  o.expect(worst <= 1e-12, "relative polyline error " + num(worst));
  int pairs = 0;
  for (int n = 0; n <= 6; ++n)
    for (int m = n + 1; m <= 6; ++m) {
      o.expect(koch_vertex_persistence(n, m), "persistence " + std::to_string(n) + "<" + std::to_string(m));
      ++pairs;
    }
  const auto k6 = shape(ShapeKind::koch, 6, 2);
  const auto est = L_MC_estimate(k6.space, k6.space.all(), halving(0.2, 0.00625), {CandidateKind::sample, 0.0}, 0);
  o.expect(est.value >= std::pow(4.0 / 3.0, 4), "L_MC(koch 6) = " + num(est.value));
  o.detail << " rel err=" << num(worst) << " pairs=" << pairs << " L_MC(koch6)=" << num(est.value)
           << " >= " << num(std::pow(4.0 / 3.0, 4));
}

// Exact Steiner length in the finite space itself.
double smt_in(const MetricSpace& s, const IndexSet& p) { return smt_restricted(s, p, s.all()).length; }

void properties(Outcome& o) {
  constexpr int kInstances = 500;
  constexpr double tol = 1e-9;
  std::mt19937_64 rng(20240601);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  int bad_steiner2 = 0, bad_moore = 0, bad_moore2 = 0, bad_chain2 = 0, bad_chain1 = 0, bad_tb = 0;

  for (int i = 0; i < kInstances; ++i) {
    const auto s = oracle::random_points(rng, 10);
    const IndexSet p = oracle::random_subset(rng, 10, pick(1, 5));
    const IndexSet q = oracle::random_subset(rng, 10, pick(1, 5));
    if (smt_in(s, p) > smt_in(s, q) + static_cast<double>(p.size()) * excess(s, p, q) + tol) ++bad_steiner2;
  }

  for (int i = 0; i < kInstances; ++i) {
    const auto s = oracle::random_points(rng, 10);
    const IndexSet p = oracle::random_subset(rng, 10, pick(2, 6));
    const double n = static_cast<double>(p.size());
    const double m = oracle::mst_kruskal(s, p.values());
    if (m > 2 * (n - 1) / n * smt_in(s, p) + tol) ++bad_moore;
  }

  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = pick(3, 14);
    const auto s = oracle::random_points(rng, n);
    SteinerTree t = oracle::random_proper_tree(rng, n);
    if (t.terminals().size() < 3) {
      // Only the two leaves of a path are terminals; add an inner vertex.
      std::vector<Index> terms(t.terminals().begin(), t.terminals().end());
      for (Index v : t.vertices())
        if (!t.terminals().contains(v)) {
          terms.push_back(v);
          break;
        }
      t = SteinerTree(t.graph(), IndexSet(std::move(terms)));
    }
    const auto cyc = tree_to_cycle(s, t);
    const auto adj = cyc.adjacency();
    bool fine = cyc.vertices() == t.terminals() && cyc.edges().size() == t.terminals().size() && cyc.is_connected();
    for (const auto& nb : adj) fine = fine && nb.size() == 2;
    fine = fine && graph_length(s, cyc) <= 2 * tree_length(s, t) + tol;
    if (!fine) ++bad_moore2;
  }

  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = pick(2, 12);
    std::vector<double> flat;
    for (std::size_t k = 0; k < n; ++k) {
      flat.push_back(std::uniform_real_distribution<double>(0, 1)(rng));
      flat.push_back(std::uniform_real_distribution<double>(0, 1)(rng));
    }
    const auto s = points(flat);
    Chain c;
    for (std::size_t k = 0; k < n; ++k) c.path.push_back(k);
    const double len = chain_length(s, c);
    const double t = std::uniform_real_distribution<double>(0.05, 1.5)(rng);
    const auto cut = cut_chain(s, c, t);
    bool fine = static_cast<double>(cut.pieces.size()) < 1 + 2 * len / t + tol;
    std::vector<int> seen(n, 0);
    std::set<Edge> inside;
    for (const Chain& piece : cut.pieces) {
      fine = fine && chain_length(s, piece) <= t + tol;
      for (std::size_t k = 0; k < piece.path.size(); ++k) {
        ++seen[piece.path[k]];
        if (k) inside.emplace(piece.path[k - 1], piece.path[k]);
      }
    }
    // Every chain vertex lies in a piece; only cut vertices are shared, by two consecutive pieces.
    for (std::size_t k = 0; k < n; ++k) fine = fine && seen[k] >= 1 && seen[k] <= 2;
    for (std::size_t k = 1; k < cut.pieces.size(); ++k) {
      const auto& prev = cut.pieces[k - 1].path;
      const auto& next = cut.pieces[k].path;
      fine = fine && (prev.back() == next.front() || prev.back() + 1 == next.front());
    }
    for (std::size_t k = 1; k < n; ++k) {
      const Edge e(k - 1, k);
      if (!inside.count(e)) fine = fine && s(k - 1, k) > t;
    }
    if (!fine) ++bad_chain2;
  }

  for (int i = 0; i < kInstances; ++i) {
    const std::size_t n = pick(2, 40);
    const SteinerTree t = oracle::random_proper_tree(rng, n, std::uniform_real_distribution<double>(0, 0.6)(rng));
    if (t.terminals().size() < 2) continue;
    const double k = static_cast<double>(maximal_chains(t).size());
    if (k > 2 * static_cast<double>(t.terminals().size()) - 3 + tol) ++bad_chain1;
  }

  for (int i = 0; i < kInstances; ++i) {
    const double eps = std::uniform_real_distribution<double>(0.02, 0.5)(rng);
    if (i % 2 == 0) {
      // Point cloud: mst(A) bounds L_MC(A) from above.
      const auto s = oracle::random_points(rng, pick(1, 40));
      if (!separated_bound_check(s, s.all(), eps, mst(s, s.all()).length, 100)) ++bad_tb;
    } else {
      // Samples of a random polyline: the polyline is a tree through them.
      const std::size_t nv = pick(2, 6);
      ShapeSpec spec;
      spec.kind = ShapeKind::polyline;
      spec.samples = pick(2, 12);
      for (std::size_t k = 0; k < nv; ++k)
        spec.vertices.push_back({std::uniform_real_distribution<double>(0, 1)(rng),
                                 std::uniform_real_distribution<double>(0, 1)(rng)});
      const auto sh = generate(spec);
      if (!separated_bound_check(sh.space, sh.space.all(), eps, sh.true_length, 100)) ++bad_tb;
    }
  }

  o.expect(bad_steiner2 == 0, "steiner2 x" + std::to_string(bad_steiner2));
  o.expect(bad_moore == 0, "moore x" + std::to_string(bad_moore));
  o.expect(bad_moore2 == 0, "moore2 x" + std::to_string(bad_moore2));
  o.expect(bad_chain2 == 0, "chain2 x" + std::to_string(bad_chain2));
  o.expect(bad_chain1 == 0, "chain1 x" + std::to_string(bad_chain1));
  o.expect(bad_tb == 0, "totallybounded x" + std::to_string(bad_tb));
  o.detail << " 6 suites x " << kInstances << " instances";
}

void pipeline(Outcome& o) {
  const std::vector<std::pair<std::string, SampledShape>> cases{
      {"segment", shape(ShapeKind::segment, 0, 401)},
      {"koch4", shape(ShapeKind::koch, 4, 3)},
      {"diagonals", shape(ShapeKind::square_diagonals, 0, 201)}};
  for (const auto& [name, sh] : cases)
    for (double delta : {0.1, 0.05, 0.025}) {
      const IndexSet all = sh.space.all();
      const auto pc = proof_cover(sh.space, all, delta);
      bool valid = true;
      try {
        validate_cover(sh.space, pc.cover, all);
      } catch (const ValidationError&) {
        valid = false;
      }
      o.expect(valid, name + "@" + num(delta) + " invalid cover");
      o.expect(pc.within_bound(), name + "@" + num(delta) + " sum " + num(pc.sum) + " > " + num(pc.bound));
      o.detail << ' ' << name << "@" << num(delta) << "=" << num(pc.sum) << "/" << num(pc.bound);
    }
}

void oracle_equivalence(Outcome& o) {
  std::mt19937_64 rng(7);
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  int bad_dp = 0, bad_mst = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t np = pick(1, 4), nc = pick(0, 4);
    const auto s = oracle::random_points(rng, np + nc);
    const IndexSet p = range_set(np);
    const IndexSet c = IndexSet::range(np, np + nc);
    const double got = smt_restricted(s, p, c).length;
    const double want = oracle::smt_by_subsets(s, p, c);
    worst = std::max(worst, std::abs(got - want));
    if (std::abs(got - want) > 1e-9) ++bad_dp;
  }
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = pick(1, 6);
    const auto s = oracle::random_points(rng, n, pick(1, 3));
    const double got = mst(s, s.all()).length;
    const double want = oracle::mst_by_enumeration(s, s.all());
    worst = std::max(worst, std::abs(got - want));
    if (std::abs(got - want) > 1e-9) ++bad_mst;
  }
  o.expect(bad_dp == 0, "dp mismatches " + std::to_string(bad_dp));
  o.expect(bad_mst == 0, "mst mismatches " + std::to_string(bad_mst));
  o.detail << " 200+200 draws, max diff=" << num(worst);
}

void sandwich(Outcome& o) {
  // Sample pitch below delta/2 at the finest delta, so pieces stay connected.
  const std::vector<std::pair<std::string, SampledShape>> cases{
      {"segment", shape(ShapeKind::segment, 0, 401)}, {"koch3", shape(ShapeKind::koch, 3, 5)}};
  const auto sched = halving(0.2, 0.003125);
  for (const auto& [name, sh] : cases) {
    const IndexSet all = sh.space.all();
    const double truth = sh.true_length;
    const auto lmc = L_MC_estimate(sh.space, all, sched, {CandidateKind::sample, 0.0}, 0);
    const double lower = lmc.value;
    const double certified = lmc.params.extra.at("certified_lower");
    double width = 0.0, upper = 0.0;
    for (double delta : {0.1, 0.05, 0.025}) {
      upper = proof_cover(sh.space, all, delta, sched).sum;
      o.expect(upper >= truth - 1e-9, name + " upper " + num(upper) + " < true at " + num(delta));
      width = upper - lower;
    }
    o.expect(certified <= lower + 1e-12 && lower <= truth + 1e-9, name + " lower " + num(lower) + " > true");
    o.expect(width < 0.05 * truth, name + " width " + num(width / truth));
    o.detail << ' ' << name << ": " << num(lower) << " <= " << num(truth) << " <= " << num(upper)
             << " width=" << num(100 * width / truth) << "%";
  }
}

void disconnected(Outcome& o) {
  ExperimentConfig cfg;
  cfg.eps_schedule = halving(0.2, 0.00625);
  cfg.source = {CandidateKind::sample, 0.0};
  const auto rep = counterexample_disconnected(20, cfg);
  bool zero = true;
  for (const auto& s : rep.steps) zero = zero && s.lstar == 0.0;
  o.expect(zero, "nonzero L* step");
  o.expect(rep.limit_lmc_lower >= 0.95, "limit " + num(rep.limit_lmc_lower));
  o.detail << " steps=" << rep.steps.size() << " L*=0, limit=" << num(rep.limit_lmc_lower);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void determinism(Outcome& o) {
  const fs::path dir = fs::temp_directory_path() / ("menger_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const std::string cli = MENGER_CLI_PATH;
  const std::string pts = (dir / "koch.json").string();
  auto sh = [&](const std::string& args, const fs::path& out) {
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + out.string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  sh("shape --kind koch --n 3 --samples 3 --out \"" + pts + "\"", dir / "shape.log");
  const std::vector<std::string> runs{
      "shape --kind semicircle --n 3 --samples 32",
      "smt --points \"" + pts + "\" --terminals 0,5,10,20",
      "mst --points \"" + pts + "\"",
      "lmc --points \"" + pts + "\" --seed 3",
      "lm --points \"" + pts + "\"",
      "cover --points \"" + pts + "\" --delta 0.05",
      "golab --family semicircle --steps 3 --samples 32",
      "golab --family disconnected --steps 5 --format json"};
  int idx = 0;
  for (const auto& args : runs) {
    const fs::path a = dir / ("a" + std::to_string(idx) + ".out");
    const fs::path b = dir / ("b" + std::to_string(idx) + ".out");
    const int ra = sh(args, a), rb = sh(args, b);
    const std::string ta = slurp(a), tb = slurp(b);
    o.expect(ra == 0 && rb == 0, "'" + args + "' exit status");
    o.expect(!ta.empty() && ta == tb, "'" + args + "' differs");
    ++idx;
  }
  fs::remove_all(dir);
  o.detail << ' ' << runs.size() << " commands run twice";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"reference constants", constants},
      {"diagonals split L_M / L_MC", diagonals},
      {"semicircle family", semicircles},
      {"koch curves", koch},
      {"property suites", properties},
      {"proof pipeline bound", pipeline},
      {"oracle equivalence", oracle_equivalence},
      {"sandwich convergence", sandwich},
      {"disconnected counterexample", disconnected},
      {"determinism", determinism}};
  int failed = 0;
  int k = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %-30s %s (%.1fs)%s\n", k++, name.c_str(), o.ok ? "PASS" : "FAIL", secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
