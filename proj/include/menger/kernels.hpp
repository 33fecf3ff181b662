#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: `serial::` is the reference implementation used by the tests,
// `omp::` is the OpenMP version the library calls. Without OpenMP the omp::
// entry points forward to serial::.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "menger/metric.hpp"

namespace menger::kernels {

/// Tables of a Dreyfus-Wagner run over `n` nodes whose first `k` nodes are
/// the terminals. Subsets range over the first k-1 terminals; the last
/// terminal is the root.
struct SteinerDpTables {
  std::size_t n{0};
  std::size_t k{0};
  /// cost[mask * n + v]: shortest tree spanning the terminals in mask and v.
  std::vector<double> cost;
  /// split[mask * n + v]: best split at v (a proper submask of mask).
  std::vector<std::uint32_t> split;
  /// parent[mask * n + v]: node u whose merged cost plus d(u, v) is optimal.
  std::vector<std::uint32_t> parent;
  /// Length of the optimal tree.
  double optimum{0.0};
};

/// Approximate operation count of steiner_dp for n nodes and k terminals.
double steiner_dp_work(std::size_t n, std::size_t k);

namespace serial {

/// Row-major n x n matrix of distances between nodes[i] and nodes[j].
std::vector<double> distance_matrix(const MetricSpace& space, std::span<const Index> nodes);
double excess(const MetricSpace& space, std::span<const Index> a, std::span<const Index> b);
double diameter(const MetricSpace& space, std::span<const Index> a);
/// Dense Prim over an n x n matrix rooted at node 0. parent[0] = 0. Ties go
/// to the lowest node index.
std::vector<std::size_t> prim(std::span<const double> dmat, std::size_t n);
/// mind[i] = min(mind[i], d(nodes[i], center)); returns argmax_i mind[i]
/// (lowest index on ties).
std::size_t farthest_update(const MetricSpace& space, std::span<const Index> nodes, Index center,
                            std::span<double> mind);
/// For each target, whether some center lies strictly within `radius`.
std::vector<char> within_radius(const MetricSpace& space, std::span<const Index> targets,
                                std::span<const Index> centers, double radius);
SteinerDpTables steiner_dp(std::span<const double> dmat, std::size_t n, std::size_t k);

}  // namespace serial

namespace omp {

std::vector<double> distance_matrix(const MetricSpace& space, std::span<const Index> nodes);
double excess(const MetricSpace& space, std::span<const Index> a, std::span<const Index> b);
double diameter(const MetricSpace& space, std::span<const Index> a);
std::vector<std::size_t> prim(std::span<const double> dmat, std::size_t n);
std::size_t farthest_update(const MetricSpace& space, std::span<const Index> nodes, Index center,
                            std::span<double> mind);
std::vector<char> within_radius(const MetricSpace& space, std::span<const Index> targets,
                                std::span<const Index> centers, double radius);
SteinerDpTables steiner_dp(std::span<const double> dmat, std::size_t n, std::size_t k);

}  // namespace omp

/// Caps the OpenMP thread count (0 restores the runtime default).
void set_max_threads(int threads);
/// True when the omp:: kernels are really parallel.
bool openmp_enabled() noexcept;

}  // namespace menger::kernels
