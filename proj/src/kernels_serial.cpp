#include <algorithm>
#include <bit>
#include <limits>

#include "menger/kernels.hpp"

namespace menger::kernels {

double steiner_dp_work(std::size_t n, std::size_t k) {
  if (k <= 1) return 0.0;
  double subsets = 1.0;
  double merges = 1.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    subsets *= 2.0;
    merges *= 3.0;
  }
  const double nn = static_cast<double>(n);
  return 0.5 * merges * nn + subsets * nn * nn;
}

namespace serial {

std::vector<double> distance_matrix(const MetricSpace& space, std::span<const Index> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = space(nodes[i], nodes[j]);
      d[i * n + j] = v;
      d[j * n + i] = v;
    }
  return d;
}

double excess(const MetricSpace& space, std::span<const Index> a, std::span<const Index> b) {
  double worst = 0.0;
  for (Index x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (Index y : b) best = std::min(best, space(x, y));
    worst = std::max(worst, best);
  }
  return worst;
}

double diameter(const MetricSpace& space, std::span<const Index> a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) best = std::max(best, space(a[i], a[j]));
  return best;
}

std::vector<std::size_t> prim(std::span<const double> dmat, std::size_t n) {
  std::vector<std::size_t> parent(n, 0);
  if (n == 0) return parent;
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  key[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && (u == n || key[v] < key[u])) u = v;
    done[u] = 1;
    const double* row = dmat.data() + u * n;
    for (std::size_t v = 0; v < n; ++v)
      if (!done[v] && row[v] < key[v]) {
        key[v] = row[v];
        parent[v] = u;
      }
  }
  return parent;
}

std::size_t farthest_update(const MetricSpace& space, std::span<const Index> nodes, Index center,
                            std::span<double> mind) {
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    mind[i] = std::min(mind[i], space(nodes[i], center));
    if (mind[i] > mind[best]) best = i;
  }
  return best;
}

std::vector<char> within_radius(const MetricSpace& space, std::span<const Index> targets,
                                std::span<const Index> centers, double radius) {
  std::vector<char> hit(targets.size(), 0);
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (Index c : centers)
      if (space(targets[i], c) < radius) {
        hit[i] = 1;
        break;
      }
  return hit;
}

SteinerDpTables steiner_dp(std::span<const double> dmat, std::size_t n, std::size_t k) {
  SteinerDpTables t;
  t.n = n;
  t.k = k;
  if (k <= 1) return t;
  const std::size_t m = k - 1;
  const std::size_t masks = std::size_t{1} << m;
  const double inf = std::numeric_limits<double>::infinity();
  t.cost.assign(masks * n, inf);
  t.split.assign(masks * n, 0);
  t.parent.assign(masks * n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t mask = std::size_t{1} << i;
    for (std::size_t v = 0; v < n; ++v) {
      t.cost[mask * n + v] = dmat[i * n + v];
      t.parent[mask * n + v] = static_cast<std::uint32_t>(v);
    }
  }
  std::vector<double> merged(n);
  for (std::size_t mask = 1; mask < masks; ++mask) {
    if (std::popcount(mask) < 2) continue;
    const std::size_t low = mask & (~mask + 1);
    for (std::size_t v = 0; v < n; ++v) {
      double best = inf;
      std::uint32_t arg = 0;
      for (std::size_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
        if (!(sub & low)) continue;
        const double c = t.cost[sub * n + v] + t.cost[(mask ^ sub) * n + v];
        if (c < best) {
          best = c;
          arg = static_cast<std::uint32_t>(sub);
        }
      }
      merged[v] = best;
      t.split[mask * n + v] = arg;
    }
    for (std::size_t v = 0; v < n; ++v) {
      double best = inf;
      std::uint32_t arg = 0;
      for (std::size_t u = 0; u < n; ++u) {
        const double c = merged[u] + dmat[u * n + v];
        if (c < best) {
          best = c;
          arg = static_cast<std::uint32_t>(u);
        }
      }
      t.cost[mask * n + v] = best;
      t.parent[mask * n + v] = arg;
    }
  }
  t.optimum = t.cost[(masks - 1) * n + (k - 1)];
  return t;
}

}  // namespace serial
}  // namespace menger::kernels
