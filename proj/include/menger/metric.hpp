#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace menger {

using Index = std::size_t;

/// Length in [0, +inf]. Infinity only arises from the empty-set conventions
/// (inf of the empty set); the supremum of the empty set is 0.
using ExtLength = double;
inline constexpr ExtLength kInfinity = std::numeric_limits<double>::infinity();

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition or malformed input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A hard size cap (terminal cap, grid size) was exceeded.
class CapExceeded : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Sorted, duplicate-free list of point indices.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<Index> init);
  /// Sorts and removes duplicates.
  explicit IndexSet(std::vector<Index> indices);

  /// [first, last)
  static IndexSet range(Index first, Index last);

  [[nodiscard]] std::size_t size() const noexcept { return idx_.size(); }
  [[nodiscard]] bool empty() const noexcept { return idx_.empty(); }
  [[nodiscard]] Index operator[](std::size_t k) const { return idx_[k]; }
  [[nodiscard]] auto begin() const noexcept { return idx_.begin(); }
  [[nodiscard]] auto end() const noexcept { return idx_.end(); }
  [[nodiscard]] const std::vector<Index>& values() const noexcept { return idx_; }
  [[nodiscard]] std::span<const Index> span() const noexcept { return idx_; }
  [[nodiscard]] bool contains(Index i) const noexcept;
  /// Position of `i` in the set, or size() if absent.
  [[nodiscard]] std::size_t position(Index i) const noexcept;
  [[nodiscard]] bool is_subset_of(const IndexSet& other) const noexcept;

  /// Throws ValidationError if any index is >= n.
  void check_bounds(std::size_t n) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<Index> idx_;
};

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);

/// Finite ambient sample: either Euclidean coordinates or an explicit
/// distance matrix. Immutable after construction.
class MetricSpace {
 public:
  enum class Mode { euclidean, matrix };

  static MetricSpace euclidean(std::size_t dim, std::vector<double> flat_coords);
  static MetricSpace euclidean(const std::vector<std::vector<double>>& points);
  /// Validates symmetry, zero diagonal, non-negativity and the triangle
  /// inequality, each within `tol`. Invalid matrices are rejected, never repaired.
  static MetricSpace from_matrix(const std::vector<std::vector<double>>& matrix,
                                 double tol = 1e-9);

  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] bool is_euclidean() const noexcept { return mode_ == Mode::euclidean; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] IndexSet all() const { return IndexSet::range(0, n_); }

  /// Coordinates of point i (Euclidean mode only).
  [[nodiscard]] std::span<const double> point(Index i) const;
  [[nodiscard]] std::span<const double> coords() const noexcept { return data_; }

  /// Range-checked distance.
  [[nodiscard]] ExtLength dist(Index i, Index j) const;

  /// Unchecked distance for inner loops.
  [[nodiscard]] double operator()(Index i, Index j) const noexcept {
    if (mode_ == Mode::matrix) return data_[i * n_ + j];
    const double* a = data_.data() + i * dim_;
    const double* b = data_.data() + j * dim_;
    double s = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double d = a[k] - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  }

  /// New Euclidean space with `flat_coords` appended after the existing points.
  [[nodiscard]] MetricSpace appended(std::span<const double> flat_coords) const;

 private:
  MetricSpace() = default;

  Mode mode_{Mode::euclidean};
  std::size_t dim_{0};
  std::size_t n_{0};
  std::vector<double> data_;
};

ExtLength diam(const MetricSpace& space, const IndexSet& a);
ExtLength dist_to_set(const MetricSpace& space, Index i, const IndexSet& b);
ExtLength excess(const MetricSpace& space, const IndexSet& a, const IndexSet& b);
ExtLength hausdorff(const MetricSpace& space, const IndexSet& a, const IndexSet& b);

/// Smallest distance between distinct members; +inf for fewer than two points.
ExtLength min_pairwise_distance(const MetricSpace& space, const IndexSet& a);

/// Greedy maximal eps-separated subset of `a`. Points are visited in a
/// permutation keyed by `seed`; a point is accepted iff it is at distance
/// >= eps from every accepted point. The result is also an eps-net of `a`.
IndexSet max_eps_separated(const MetricSpace& space, const IndexSet& a, double eps,
                           std::uint64_t seed);

/// Extends `seed_set` (which must itself be eps-separated) greedily in index
/// order to a maximal eps-separated subset of `a`.
IndexSet extend_eps_separated(const MetricSpace& space, const IndexSet& a,
                              const IndexSet& seed_set, double eps);

/// Farthest-first traversal of `a`.
struct GreedyPermutation {
  std::vector<Index> order;
  /// radius[k] = distance of order[k] to {order[0..k-1]}; radius[0] = +inf.
  std::vector<double> radius;
};

/// The traversal starts at the point of `a` farthest from a[seed % |a|], so
/// the first points are extreme points of the sample.
GreedyPermutation greedy_permutation(const MetricSpace& space, const IndexSet& a,
                                     std::uint64_t seed);

/// Prefix of a greedy permutation whose insertion radii are >= eps. It is a
/// maximal eps-separated subset, and the nets for decreasing eps are nested.
IndexSet net_from_permutation(const GreedyPermutation& perm, double eps);

/// Points of `probe` that, for every radius r_k, meet B(x, r_k) in every set
/// of the tail of the sequence assigned to r_k. Tail k starts at
/// min(floor((k+1) N / (2K)), max(N-2, 0)), so smaller radii look further out
/// and the last tail always holds at least two sets when N >= 2.
IndexSet discrete_lower_limit(const MetricSpace& space, const std::vector<IndexSet>& sequence,
                              const std::vector<double>& radii, const IndexSet& probe);

}  // namespace menger
