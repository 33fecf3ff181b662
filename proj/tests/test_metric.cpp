#include <doctest.h>

#include <cmath>

#include "menger/metric.hpp"
#include "oracles.hpp"

using namespace menger;

TEST_SUITE("metric") {

TEST_CASE("index sets are sorted and unique") {
  const IndexSet s{3, 1, 3, 2};
  CHECK(s.values() == std::vector<Index>{1, 2, 3});
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(0));
  CHECK(set_union(IndexSet{1, 4}, IndexSet{2, 4}).values() == std::vector<Index>{1, 2, 4});
  CHECK(set_difference(IndexSet{1, 2, 3}, IndexSet{2}).values() == std::vector<Index>{1, 3});
  CHECK(set_intersection(IndexSet{1, 2, 3}, IndexSet{2, 3, 5}).values() == std::vector<Index>{2, 3});
  CHECK_THROWS_AS(IndexSet({0, 9}).check_bounds(3), ValidationError);
}

TEST_CASE("euclidean and matrix spaces") {
  const auto s = MetricSpace::euclidean(2, {0, 0, 3, 4});
  CHECK(s.dist(0, 1) == doctest::Approx(5.0));
  CHECK_THROWS_AS((void)s.dist(0, 2), ValidationError);
  CHECK_THROWS_AS(MetricSpace::euclidean(2, {0, 0, 1}), ValidationError);

  const auto m = MetricSpace::from_matrix({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  CHECK(m.dist(0, 2) == 2.0);
  CHECK_FALSE(m.is_euclidean());
  CHECK_THROWS_AS(MetricSpace::from_matrix({{0, 1}, {2, 0}}), ValidationError);
  CHECK_THROWS_AS(MetricSpace::from_matrix({{0, -1}, {-1, 0}}), ValidationError);
  CHECK_THROWS_AS(MetricSpace::from_matrix({{1, 1}, {1, 0}}), ValidationError);
}

TEST_CASE("diam, excess and hausdorff") {
  // 1-D points 0, 0.4, 1
  const auto s = MetricSpace::euclidean(1, {0.0, 0.4, 1.0});
  CHECK(diam(s, s.all()) == doctest::Approx(1.0));
  CHECK(diam(s, IndexSet{1}) == 0.0);
  CHECK(dist_to_set(s, 1, IndexSet{0, 2}) == doctest::Approx(0.4));
  CHECK(excess(s, IndexSet{0, 1, 2}, IndexSet{0, 2}) == doctest::Approx(0.4));
  CHECK(excess(s, IndexSet{0, 2}, IndexSet{0, 1, 2}) == 0.0);
  CHECK(hausdorff(s, IndexSet{0}, IndexSet{2}) == doctest::Approx(1.0));
  CHECK(std::isinf(min_pairwise_distance(s, IndexSet{1})));
}

TEST_CASE("eps-separated sets are nets") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const auto s = oracle::random_points(rng, 60);
    const double eps = 0.05 + 0.3 * std::uniform_real_distribution<double>(0, 1)(rng);
    const IndexSet net = max_eps_separated(s, s.all(), eps, static_cast<std::uint64_t>(rep));
    CHECK(min_pairwise_distance(s, net) >= eps);
    CHECK(excess(s, s.all(), net) < eps);
  }
}

TEST_CASE("greedy permutation nets are nested and maximal") {
  std::mt19937_64 rng(11);
  const auto s = oracle::random_points(rng, 200);
  const auto perm = greedy_permutation(s, s.all(), 3);
  CHECK(perm.order.size() == 200);
  IndexSet prev;
  for (double eps : {0.4, 0.2, 0.1, 0.05}) {
    const IndexSet net = net_from_permutation(perm, eps);
    CHECK(prev.is_subset_of(net));
    CHECK(min_pairwise_distance(s, net) >= eps);
    CHECK(excess(s, s.all(), net) < eps);
    prev = net;
  }
}

TEST_CASE("extension keeps the seed set") {
  const auto s = MetricSpace::euclidean(1, {0.0, 0.05, 0.1, 0.5, 0.55, 1.0});
  const IndexSet e = extend_eps_separated(s, s.all(), IndexSet{1}, 0.3);
  CHECK(e.contains(1));
  CHECK(min_pairwise_distance(s, e) >= 0.3);
  CHECK(excess(s, s.all(), e) < 0.3);
  CHECK_THROWS_AS(extend_eps_separated(s, s.all(), IndexSet{0, 1}, 0.3), ValidationError);
}

TEST_CASE("discrete lower limit") {
  // Sequence of points converging to 0 in 1-D, probe {0, 1}.
  std::vector<double> flat{0.0, 1.0};
  std::vector<IndexSet> seq;
  for (int n = 1; n <= 8; ++n) {
    flat.push_back(1.0 / (1 << n));
    seq.push_back(IndexSet{static_cast<Index>(flat.size() - 1)});
  }
  const auto s = MetricSpace::euclidean(1, flat);
  const IndexSet li = discrete_lower_limit(s, seq, {0.5, 0.2, 0.05}, IndexSet{0, 1});
  CHECK(li.values() == std::vector<Index>{0});
}

}
