#include "menger/metric.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "menger/kernels.hpp"

namespace menger {

// ---------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::initializer_list<Index> init) : IndexSet(std::vector<Index>(init)) {}

IndexSet::IndexSet(std::vector<Index> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

IndexSet IndexSet::range(Index first, Index last) {
  IndexSet s;
  if (last > first) {
    s.idx_.resize(last - first);
    std::iota(s.idx_.begin(), s.idx_.end(), first);
  }
  return s;
}

bool IndexSet::contains(Index i) const noexcept {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

std::size_t IndexSet::position(Index i) const noexcept {
  const auto it = std::lower_bound(idx_.begin(), idx_.end(), i);
  if (it == idx_.end() || *it != i) return idx_.size();
  return static_cast<std::size_t>(it - idx_.begin());
}

bool IndexSet::is_subset_of(const IndexSet& other) const noexcept {
  return std::includes(other.idx_.begin(), other.idx_.end(), idx_.begin(), idx_.end());
}

void IndexSet::check_bounds(std::size_t n) const {
  if (!idx_.empty() && idx_.back() >= n) {
    std::ostringstream os;
    os << "index " << idx_.back() << " out of range for a space of " << n << " points";
    throw ValidationError(os.str());
  }
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out));
}

// ------------------------------------------------------------- MetricSpace

MetricSpace MetricSpace::euclidean(std::size_t dim, std::vector<double> flat_coords) {
  if (dim == 0) throw ValidationError("euclidean space needs dim >= 1");
  if (flat_coords.size() % dim != 0)
    throw ValidationError("coordinate count is not a multiple of dim");
  if (flat_coords.empty()) throw ValidationError("a metric space needs at least one point");
  for (double c : flat_coords)
    if (!std::isfinite(c)) throw ValidationError("non-finite coordinate");
  MetricSpace s;
  s.mode_ = Mode::euclidean;
  s.dim_ = dim;
  s.n_ = flat_coords.size() / dim;
  s.data_ = std::move(flat_coords);
  return s;
}

MetricSpace MetricSpace::euclidean(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw ValidationError("a metric space needs at least one point");
  const std::size_t dim = points.front().size();
  std::vector<double> flat;
  flat.reserve(points.size() * dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      std::ostringstream os;
      os << "point " << i << " has " << points[i].size() << " coordinates, expected " << dim;
      throw ValidationError(os.str());
    }
    flat.insert(flat.end(), points[i].begin(), points[i].end());
  }
  return euclidean(dim, std::move(flat));
}

MetricSpace MetricSpace::from_matrix(const std::vector<std::vector<double>>& matrix, double tol) {
  const std::size_t n = matrix.size();
  if (n == 0) throw ValidationError("a metric space needs at least one point");
  std::vector<double> flat(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw ValidationError("distance matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix[i][j];
      if (!std::isfinite(v) || v < 0.0)
        throw ValidationError("distance matrix entries must be finite and non-negative");
      flat[i * n + j] = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(flat[i * n + i]) > tol) throw ValidationError("distance matrix diagonal is not zero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(flat[i * n + j] - flat[j * n + i]) > tol)
        throw ValidationError("distance matrix is not symmetric");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (flat[i * n + j] > flat[i * n + k] + flat[k * n + j] + tol) {
          std::ostringstream os;
          os << "triangle inequality violated for (" << i << ", " << j << ") via " << k;
          throw ValidationError(os.str());
        }
  MetricSpace s;
  s.mode_ = Mode::matrix;
  s.n_ = n;
  s.data_ = std::move(flat);
  return s;
}

std::span<const double> MetricSpace::point(Index i) const {
  if (mode_ != Mode::euclidean) throw ValidationError("matrix-mode spaces have no coordinates");
  if (i >= n_) throw ValidationError("point index out of range");
  return std::span<const double>(data_).subspan(i * dim_, dim_);
}

ExtLength MetricSpace::dist(Index i, Index j) const {
  if (i >= n_ || j >= n_) {
    std::ostringstream os;
    os << "index out of range: (" << i << ", " << j << ") with n = " << n_;
    throw ValidationError(os.str());
  }
  return (*this)(i, j);
}

MetricSpace MetricSpace::appended(std::span<const double> flat_coords) const {
  if (mode_ != Mode::euclidean)
    throw ValidationError("points can only be appended to a euclidean space");
  std::vector<double> flat(data_);
  flat.insert(flat.end(), flat_coords.begin(), flat_coords.end());
  return euclidean(dim_, std::move(flat));
}

// -------------------------------------------------------------- set metrics

ExtLength diam(const MetricSpace& space, const IndexSet& a) {
  a.check_bounds(space.size());
  if (a.size() < 2) return 0.0;
  return kernels::omp::diameter(space, a.span());
}

ExtLength dist_to_set(const MetricSpace& space, Index i, const IndexSet& b) {
  if (i >= space.size()) throw ValidationError("query index out of range");
  b.check_bounds(space.size());
  double best = kInfinity;
  for (Index j : b) best = std::min(best, space(i, j));
  return best;
}

ExtLength excess(const MetricSpace& space, const IndexSet& a, const IndexSet& b) {
  a.check_bounds(space.size());
  b.check_bounds(space.size());
  if (a.empty()) return 0.0;
  if (b.empty()) return kInfinity;
  return kernels::omp::excess(space, a.span(), b.span());
}

ExtLength hausdorff(const MetricSpace& space, const IndexSet& a, const IndexSet& b) {
  return std::max(excess(space, a, b), excess(space, b, a));
}

ExtLength min_pairwise_distance(const MetricSpace& space, const IndexSet& a) {
  a.check_bounds(space.size());
  double best = kInfinity;
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x + 1; y < a.size(); ++y) best = std::min(best, space(a[x], a[y]));
  return best;
}

// ----------------------------------------------------------- nets

namespace {

bool separated_from(const MetricSpace& space, Index p, const std::vector<Index>& accepted,
                    double eps) {
  for (Index q : accepted)
    if (space(p, q) < eps) return false;
  return true;
}

}  // namespace

IndexSet max_eps_separated(const MetricSpace& space, const IndexSet& a, double eps,
                           std::uint64_t seed) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  a.check_bounds(space.size());
  std::vector<Index> order(a.values());
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Index> accepted;
  for (Index p : order)
    if (separated_from(space, p, accepted, eps)) accepted.push_back(p);
  return IndexSet(std::move(accepted));
}

IndexSet extend_eps_separated(const MetricSpace& space, const IndexSet& a,
                              const IndexSet& seed_set, double eps) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  a.check_bounds(space.size());
  seed_set.check_bounds(space.size());
  if (min_pairwise_distance(space, seed_set) < eps)
    throw ValidationError("seed set is not eps-separated");
  std::vector<Index> accepted(seed_set.values());
  for (Index p : a) {
    if (seed_set.contains(p)) continue;
    if (separated_from(space, p, accepted, eps)) accepted.push_back(p);
  }
  return IndexSet(std::move(accepted));
}

GreedyPermutation greedy_permutation(const MetricSpace& space, const IndexSet& a,
                                     std::uint64_t seed) {
  a.check_bounds(space.size());
  GreedyPermutation out;
  if (a.empty()) return out;
  const std::size_t m = a.size();
  std::vector<double> mind(m, kInfinity);
  // Start from the point farthest from a seed-chosen anchor.
  const Index anchor = a[static_cast<std::size_t>(seed % m)];
  std::size_t next = kernels::omp::farthest_update(space, a.span(), anchor, mind);
  std::fill(mind.begin(), mind.end(), kInfinity);
  out.order.reserve(m);
  out.radius.reserve(m);
  double radius = kInfinity;
  for (std::size_t step = 0; step < m; ++step) {
    out.order.push_back(a[next]);
    out.radius.push_back(radius);
    mind[next] = -1.0;  // chosen points never win the argmax again
    const std::size_t far = kernels::omp::farthest_update(space, a.span(), a[next], mind);
    if (step + 1 == m) break;
    next = far;
    radius = mind[far];
  }
  return out;
}

IndexSet net_from_permutation(const GreedyPermutation& perm, double eps) {
  if (!(eps > 0.0)) throw ValidationError("eps must be positive");
  std::vector<Index> out;
  for (std::size_t k = 0; k < perm.order.size() && perm.radius[k] >= eps; ++k)
    out.push_back(perm.order[k]);
  return IndexSet(std::move(out));
}

// ---------------------------------------------------------- lower limits

IndexSet discrete_lower_limit(const MetricSpace& space, const std::vector<IndexSet>& sequence,
                              const std::vector<double>& radii, const IndexSet& probe) {
  if (sequence.empty()) throw ValidationError("lower limit of an empty sequence");
  if (probe.empty()) throw ValidationError("probe set must be non-empty");
  if (radii.empty()) throw ValidationError("radius schedule must be non-empty");
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0)) throw ValidationError("radii must be positive");
    if (k > 0 && !(radii[k] < radii[k - 1]))
      throw ValidationError("radii must be strictly decreasing");
  }
  probe.check_bounds(space.size());
  for (const auto& s : sequence) s.check_bounds(space.size());

  const std::size_t n = sequence.size();
  const std::size_t kk = radii.size();
  const std::size_t cap = n >= 2 ? n - 2 : 0;
  std::vector<Index> out;
  for (Index x : probe) {
    bool limit_point = true;
    for (std::size_t k = 0; k < kk && limit_point; ++k) {
      const std::size_t start = std::min((k + 1) * n / (2 * kk), cap);
      for (std::size_t s = start; s < n && limit_point; ++s)
        if (!(dist_to_set(space, x, sequence[s]) < radii[k])) limit_point = false;
    }
    if (limit_point) out.push_back(x);
  }
  return IndexSet(std::move(out));
}

}  // namespace menger
