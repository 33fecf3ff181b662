#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's algorithms beyond MetricSpace distances.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "menger/graph.hpp"

namespace oracle {

using menger::Edge;
using menger::Index;
using menger::IndexSet;
using menger::MetricSpace;

inline MetricSpace random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim = 2) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> flat(n * dim);
  for (double& x : flat) x = u(rng);
  return MetricSpace::euclidean(dim, std::move(flat));
}

inline IndexSet random_subset(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(k);
  return IndexSet(std::move(all));
}

// Edges of the labelled tree on 0..n-1 with the given Pruefer code.
inline std::vector<std::pair<std::size_t, std::size_t>> pruefer_tree(const std::vector<std::size_t>& code,
                                                                     std::size_t n) {
  std::vector<std::size_t> deg(n, 1);
  for (auto c : code) ++deg[c];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto c : code) {
    for (std::size_t leaf = 0; leaf < n; ++leaf)
      if (deg[leaf] == 1) {
        edges.emplace_back(leaf, c);
        --deg[leaf];
        --deg[c];
        break;
      }
  }
  std::size_t u = n, w = n;
  for (std::size_t i = 0; i < n; ++i)
    if (deg[i] == 1) (u == n ? u : w) = i;
  edges.emplace_back(u, w);
  return edges;
}

// Minimum over all n^(n-2) spanning trees (Cayley enumeration).
inline double mst_by_enumeration(const MetricSpace& s, const IndexSet& p) {
  const std::size_t n = p.size();
  if (n <= 1) return 0.0;
  if (n == 2) return s.dist(p[0], p[1]);
  std::vector<std::size_t> code(n - 2, 0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    double len = 0.0;
    for (auto [a, b] : pruefer_tree(code, n)) len += s.dist(p[a], p[b]);
    best = std::min(best, len);
    std::size_t i = 0;
    while (i < code.size() && ++code[i] == n) code[i++] = 0;
    if (i == code.size()) break;
  }
  return best;
}

// Plain Kruskal with its own union-find.
inline double mst_kruskal(const MetricSpace& s, const std::vector<Index>& v) {
  struct E {
    double w;
    std::size_t a, b;
  };
  std::vector<E> es;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) es.push_back({s.dist(v[i], v[j]), i, j});
  std::sort(es.begin(), es.end(), [](const E& x, const E& y) { return x.w < y.w; });
  std::vector<std::size_t> up(v.size());
  std::iota(up.begin(), up.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  };
  double len = 0.0;
  for (const E& e : es) {
    const auto ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      up[ra] = rb;
      len += e.w;
    }
  }
  return len;
}

// Steiner tree with Steiner points from `cand`: the best tree on P u S is a
// spanning tree of P u S, so minimise mst over all subsets S.
inline double smt_by_subsets(const MetricSpace& s, const IndexSet& p, const IndexSet& cand) {
  std::vector<Index> extra;
  for (Index c : cand)
    if (!p.contains(c)) extra.push_back(c);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << extra.size()); ++mask) {
    std::vector<Index> v(p.begin(), p.end());
    for (std::size_t i = 0; i < extra.size(); ++i)
      if (mask >> i & 1) v.push_back(extra[i]);
    best = std::min(best, mst_kruskal(s, v));
  }
  return best;
}

// Euclidean Steiner length of a planar triangle in closed form.
inline double triangle_smt(const double* a, const double* b, const double* c) {
  auto d = [](const double* x, const double* y) { return std::hypot(x[0] - y[0], x[1] - y[1]); };
  const double ab = d(a, b), bc = d(b, c), ca = d(c, a);
  auto angle = [](double opp, double s1, double s2) {
    return std::acos(std::clamp((s1 * s1 + s2 * s2 - opp * opp) / (2 * s1 * s2), -1.0, 1.0));
  };
  const double pi = std::acos(-1.0);
  const double big = 2 * pi / 3;
  if (angle(bc, ab, ca) >= big) return ab + ca;
  if (angle(ca, ab, bc) >= big) return ab + bc;
  if (angle(ab, bc, ca) >= big) return bc + ca;
  const double area = std::abs((b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1])) / 2;
  return std::sqrt((ab * ab + bc * bc + ca * ca) / 2 + 2 * std::sqrt(3.0) * area);
}

// Random labelled tree on vertices 0..n-1 whose terminals are all leaves plus
// a random extra set; proper by construction.
inline menger::SteinerTree random_proper_tree(std::mt19937_64& rng, std::size_t n, double extra_prob = 0.3) {
  std::vector<std::size_t> code(n >= 2 ? n - 2 : 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (auto& c : code) c = pick(rng);
  std::vector<Edge> edges;
  std::vector<std::size_t> deg(n, 0);
  for (auto [a, b] : pruefer_tree(code, n)) {
    edges.emplace_back(a, b);
    ++deg[a];
    ++deg[b];
  }
  std::bernoulli_distribution coin(extra_prob);
  std::vector<Index> terms;
  for (std::size_t v = 0; v < n; ++v)
    if (deg[v] <= 1 || coin(rng)) terms.push_back(v);
  std::vector<Index> verts(n);
  std::iota(verts.begin(), verts.end(), Index{0});
  return menger::SteinerTree(menger::IndexedGraph(IndexSet(std::move(verts)), std::move(edges)),
                             IndexSet(std::move(terms)));
}

}  // namespace oracle
