#include <algorithm>
#include <bit>
#include <limits>

#include "menger/kernels.hpp"

#ifdef MENGER_HAVE_OPENMP
#include <omp.h>
#endif

namespace menger::kernels {

void set_max_threads(int threads) {
#ifdef MENGER_HAVE_OPENMP
  omp_set_num_threads(threads > 0 ? threads : omp_get_num_procs());
#else
  (void)threads;
#endif
}

bool openmp_enabled() noexcept {
#ifdef MENGER_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

namespace omp {

#ifndef MENGER_HAVE_OPENMP

std::vector<double> distance_matrix(const MetricSpace& space, std::span<const Index> nodes) {
  return serial::distance_matrix(space, nodes);
}
double excess(const MetricSpace& space, std::span<const Index> a, std::span<const Index> b) {
  return serial::excess(space, a, b);
}
double diameter(const MetricSpace& space, std::span<const Index> a) {
  return serial::diameter(space, a);
}
std::vector<std::size_t> prim(std::span<const double> dmat, std::size_t n) {
  return serial::prim(dmat, n);
}
std::size_t farthest_update(const MetricSpace& space, std::span<const Index> nodes, Index center,
                            std::span<double> mind) {
  return serial::farthest_update(space, nodes, center, mind);
}
std::vector<char> within_radius(const MetricSpace& space, std::span<const Index> targets,
                                std::span<const Index> centers, double radius) {
  return serial::within_radius(space, targets, centers, radius);
}
SteinerDpTables steiner_dp(std::span<const double> dmat, std::size_t n, std::size_t k) {
  return serial::steiner_dp(dmat, n, k);
}

#else

namespace {

// Loops shorter than this stay on one thread; the fork cost dominates.
constexpr std::ptrdiff_t kMinParallel = 256;

struct ArgBest {
  double value;
  std::size_t index;
};

}  // namespace

std::vector<double> distance_matrix(const MetricSpace& space, std::span<const Index> nodes) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
  std::vector<double> d(nodes.size() * nodes.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 16) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = 0; j < n; ++j)
      if (i != j) d[i * n + j] = space(nodes[i], nodes[j]);
  return d;
}

double excess(const MetricSpace& space, std::span<const Index> a, std::span<const Index> b) {
  const auto na = static_cast<std::ptrdiff_t>(a.size());
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst) if (na >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < na; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (Index y : b) best = std::min(best, space(a[i], y));
    worst = std::max(worst, best);
  }
  return worst;
}

double diameter(const MetricSpace& space, std::span<const Index> a) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  double best = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    for (std::ptrdiff_t j = i + 1; j < n; ++j) best = std::max(best, space(a[i], a[j]));
  return best;
}

std::vector<std::size_t> prim(std::span<const double> dmat, std::size_t n) {
  std::vector<std::size_t> parent(n, 0);
  if (n == 0) return parent;
  std::vector<double> key(n, std::numeric_limits<double>::infinity());
  std::vector<char> done(n, 0);
  key[0] = 0.0;
  const auto sn = static_cast<std::ptrdiff_t>(n);
  for (std::size_t step = 0; step < n; ++step) {
    ArgBest best{std::numeric_limits<double>::infinity(), n};
#pragma omp parallel if (sn >= kMinParallel)
    {
      ArgBest local{std::numeric_limits<double>::infinity(), n};
#pragma omp for nowait
      for (std::ptrdiff_t v = 0; v < sn; ++v)
        if (!done[v] && (local.index == n || key[v] < local.value)) local = {key[v], static_cast<std::size_t>(v)};
#pragma omp critical
      if (local.index != n &&
          (best.index == n || local.value < best.value ||
           (local.value == best.value && local.index < best.index)))
        best = local;
    }
    const std::size_t u = best.index;
    done[u] = 1;
    const double* row = dmat.data() + u * n;
#pragma omp parallel for if (sn >= kMinParallel)
    for (std::ptrdiff_t v = 0; v < sn; ++v)
      if (!done[v] && row[v] < key[v]) {
        key[v] = row[v];
        parent[v] = u;
      }
  }
  return parent;
}

std::size_t farthest_update(const MetricSpace& space, std::span<const Index> nodes, Index center,
                            std::span<double> mind) {
  const auto n = static_cast<std::ptrdiff_t>(nodes.size());
#pragma omp parallel for if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) mind[i] = std::min(mind[i], space(nodes[i], center));
  std::size_t best = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i)
    if (mind[i] > mind[best]) best = i;
  return best;
}

std::vector<char> within_radius(const MetricSpace& space, std::span<const Index> targets,
                                std::span<const Index> centers, double radius) {
  const auto n = static_cast<std::ptrdiff_t>(targets.size());
  std::vector<char> hit(targets.size(), 0);
#pragma omp parallel for schedule(dynamic, 32) if (n >= kMinParallel)
  for (std::ptrdiff_t i = 0; i < n; ++i)
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
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const bool wide = sn >= 64;
  for (std::size_t mask = 1; mask < masks; ++mask) {
    if (std::popcount(mask) < 2) continue;
    const std::size_t low = mask & (~mask + 1);
#pragma omp parallel if (wide)
    {
#pragma omp for schedule(static)
      for (std::ptrdiff_t v = 0; v < sn; ++v) {
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
#pragma omp for schedule(static)
      for (std::ptrdiff_t v = 0; v < sn; ++v) {
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
  }
  t.optimum = t.cost[(masks - 1) * n + (k - 1)];
  return t;
}

#endif

}  // namespace omp
}  // namespace menger::kernels
