#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "menger/steiner.hpp"

namespace menger {

namespace {

using Pt = std::array<double, 2>;

constexpr double kMoveTol = 1e-10;
constexpr int kMaxSweeps = 10000;
constexpr double kMergeTol = 1e-9;

double norm(const Pt& a, const Pt& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

// Prufer decoding of a labelled tree on `n` nodes.
std::vector<std::pair<std::size_t, std::size_t>> prufer_tree(const std::vector<std::size_t>& seq,
                                                            std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t x : seq) ++degree[x];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t x : seq) {
    for (std::size_t leaf = 0; leaf < n; ++leaf)
      if (degree[leaf] == 1) {
        edges.emplace_back(leaf, x);
        --degree[leaf];
        --degree[x];
        break;
      }
  }
  std::size_t u = n;
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 1) {
      if (u == n) {
        u = v;
      } else {
        edges.emplace_back(u, v);
        break;
      }
    }
  return edges;
}

struct Layout {
  std::vector<Pt> pos;  // terminals first, then Steiner points
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  double length{std::numeric_limits<double>::infinity()};
};

// Gauss-Seidel geometric-median sweeps over the free points.
void relax(Layout& lay, std::size_t k) {
  const std::size_t n = lay.pos.size();
  std::vector<std::vector<std::size_t>> nb(n);
  for (auto [a, b] : lay.edges) {
    nb[a].push_back(b);
    nb[b].push_back(a);
  }
  for (std::size_t s = k; s < n; ++s) {
    Pt c{0.0, 0.0};
    std::size_t cnt = 0;
    for (std::size_t u : nb[s])
      if (u < k) {
        c[0] += lay.pos[u][0];
        c[1] += lay.pos[u][1];
        ++cnt;
      }
    if (cnt == 0)
      for (std::size_t u = 0; u < k; ++u) {
        c[0] += lay.pos[u][0];
        c[1] += lay.pos[u][1];
        ++cnt;
      }
    lay.pos[s] = {c[0] / static_cast<double>(cnt), c[1] / static_cast<double>(cnt)};
  }
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double moved = 0.0;
    for (std::size_t s = k; s < n; ++s) {
      double wx = 0.0, wy = 0.0, w = 0.0;
      bool stuck = false;
      for (std::size_t u : nb[s]) {
        const double d = norm(lay.pos[s], lay.pos[u]);
        if (d < 1e-15) {
          stuck = true;
          break;
        }
        wx += lay.pos[u][0] / d;
        wy += lay.pos[u][1] / d;
        w += 1.0 / d;
      }
      if (stuck) continue;
      const Pt next{wx / w, wy / w};
      moved = std::max(moved, norm(next, lay.pos[s]));
      lay.pos[s] = next;
    }
    if (moved < kMoveTol) break;
  }
  lay.length = 0.0;
  for (auto [a, b] : lay.edges) lay.length += norm(lay.pos[a], lay.pos[b]);
}

}  // namespace

SmtResult smt_euclidean_small(const MetricSpace& space, const IndexSet& p) {
  if (!space.is_euclidean() || space.dim() != 2)
    throw ValidationError("euclidean-small steiner trees need a planar euclidean space");
  if (p.empty()) throw ValidationError("steiner tree of an empty terminal set");
  if (p.size() > 4) throw CapExceeded("euclidean-small steiner trees allow at most 4 terminals");
  p.check_bounds(space.size());
  const std::size_t k = p.size();

  SmtResult r;
  r.method = SmtMethod::topology_exact;
  r.base_size = space.size();
  if (k <= 2) {
    const auto m = mst(space, p);
    r.tree = m.tree;
    r.length = m.length;
    r.lower = std::max(0.0, m.length - 1e-8);
    r.upper = m.length;
    return r;
  }

  std::vector<Pt> term(k);
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = space.point(p[i]);
    term[i] = {c[0], c[1]};
  }

  Layout best;
  for (std::size_t s = 0; s + 2 <= k; ++s) {
    const std::size_t n = k + s;
    const std::size_t len = n - 2;
    std::vector<std::size_t> seq(len, 0);
    while (true) {
      bool ok = true;
      for (std::size_t j = k; j < n && ok; ++j)
        if (std::count(seq.begin(), seq.end(), j) < 2) ok = false;
      if (ok) {
        Layout lay;
        lay.pos = term;
        lay.pos.resize(n, Pt{0.0, 0.0});
        lay.edges = prufer_tree(seq, n);
        relax(lay, k);
        if (lay.length < best.length) best = std::move(lay);
      }
      std::size_t at = 0;
      while (at < len && ++seq[at] == n) seq[at++] = 0;
      if (at == len) break;
    }
  }

  // Merge free points that collapsed onto a terminal or onto each other.
  const std::size_t n = best.pos.size();
  std::vector<std::size_t> rep(n);
  for (std::size_t v = 0; v < n; ++v) {
    rep[v] = v;
    if (v < k) continue;
    for (std::size_t u = 0; u < v; ++u)
      if (rep[u] == u && norm(best.pos[u], best.pos[v]) < kMergeTol) {
        rep[v] = u;
        break;
      }
  }
  std::vector<double> coords;
  std::vector<Index> id(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (v < k) {
      id[v] = p[v];
    } else if (rep[v] == v) {
      id[v] = space.size() + coords.size() / 2;
      coords.push_back(best.pos[v][0]);
      coords.push_back(best.pos[v][1]);
    }
  }
  for (std::size_t v = k; v < n; ++v) id[v] = id[rep[v]];
  std::vector<Edge> edges;
  std::vector<Index> verts(p.begin(), p.end());
  for (auto [a, b] : best.edges)
    if (id[a] != id[b]) {
      edges.emplace_back(id[a], id[b]);
      verts.push_back(id[a]);
      verts.push_back(id[b]);
    }
  r.steiner_coords = std::move(coords);
  const MetricSpace ext = r.extended(space);
  IndexedGraph g = kruskal(ext, IndexSet(std::move(verts)), std::move(edges));
  r.tree = make_proper(ext, SteinerTree(std::move(g), p));
  r.length = tree_length(ext, r.tree);
  r.lower = std::max(0.0, r.length - 1e-8);
  r.upper = r.length;
  return r;
}

}  // namespace menger
