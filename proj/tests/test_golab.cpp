#include <doctest.h>

#include <cmath>

#include "menger/golab.hpp"
#include "oracles.hpp"

using namespace menger;

namespace {

SampledShape segment(std::size_t samples, Point2 a = {0, 0}, Point2 b = {1, 0}) {
  return generate(ShapeSpec{ShapeKind::segment, 0, samples, 1.0, {a, b}});
}

}  // namespace

TEST_SUITE("golab") {

TEST_CASE("constant sequence has no gap") {
  const auto ens = make_ensemble(segment(101), {segment(101), segment(101), segment(101)});
  const auto rep = convergence_experiment(ens);
  CHECK(rep.verdict == "consistent");
  CHECK(std::abs(rep.semicontinuity_gap) < 1e-9);
  for (const auto& s : rep.steps) CHECK(s.excess == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
  SampledShape odd{MetricSpace::euclidean(3, {0, 0, 0}), {}, 0.0, {}};
  CHECK_THROWS_AS(make_ensemble(segment(5), {odd}), ValidationError);
}

TEST_CASE("disconnected grids") {
  const auto rep = counterexample_disconnected(4);
  REQUIRE(rep.steps.size() == 4);
  CHECK(rep.steps[3].lmc_lower == doctest::Approx(0.75));
  CHECK(rep.steps[0].lmc_lower == 0.0);
  for (const auto& s : rep.steps) CHECK(s.lstar == 0.0);
  CHECK_THROWS_AS(counterexample_disconnected(0), ValidationError);
}

TEST_CASE("hit collections") {
  const auto seg = segment(201);
  // B: the same segment lifted by 1e-4, appended to the sample.
  std::vector<double> flat(seg.space.coords().begin(), seg.space.coords().end());
  const std::size_t n = seg.space.size();
  for (std::size_t i = 0; i < n; ++i) {
    flat.push_back(seg.space.point(i)[0]);
    flat.push_back(1e-4);
  }
  const auto space = MetricSpace::euclidean(2, flat);
  const IndexSet a = IndexSet::range(0, n);
  const IndexSet b = IndexSet::range(n, 2 * n);
  const auto hc = hit_collection(space, a, 0.1);
  CHECK(hc.radius == doctest::Approx(0.1 / (2.0 * hc.centers.size())));
  CHECK(check_hits(space, a, hc));
  CHECK(check_hits(space, b, hc));
  CHECK_FALSE(check_hits(space, IndexSet{}, hc));
  const auto con = hit_contract(space, b, hc);
  CHECK(con.hit);
  CHECK(con.holds);
  // Drop the witnesses near the first center.
  std::vector<Index> partial;
  for (Index x : b)
    if (space(x, hc.centers[0]) >= hc.radius) partial.push_back(x);
  CHECK_FALSE(hit_contract(space, IndexSet(partial), hc).hit);

  // A point at exactly the radius does not hit.
  const auto line = MetricSpace::euclidean(1, {0.0, 0.25});
  HitCollection one{IndexSet{0}, 0.25, 1.0, 0.0, 0.0};
  CHECK_FALSE(check_hits(line, IndexSet{1}, one));
}

TEST_CASE("closure check") {
  // Interior grid of a segment plus its endpoints as extra points.
  const auto seg = segment(41);
  const IndexSet inner = IndexSet::range(1, 40);
  const IndexSet ends{0, 40};
  const double pitch = 1.0 / 40;
  const auto rep = closure_check(seg.space, inner, ends, pitch);
  CHECK(rep.within_slack);
  CHECK(rep.difference <= 2 * pitch + 1e-12);
  const auto none = closure_check(seg.space, inner, IndexSet{}, pitch);
  CHECK(none.difference == 0.0);
  const auto inside = closure_check(seg.space, inner, IndexSet{3, 7}, pitch);
  CHECK(inside.difference == 0.0);
  CHECK_THROWS_AS(closure_check(seg.space, IndexSet::range(0, 20), IndexSet{40}, pitch), ValidationError);
}

TEST_CASE("discrete lower limit experiment") {
  std::vector<SampledShape> seq;
  for (int k = 1; k <= 6; ++k) seq.push_back(segment(101, {0, 1.0 / (1 << k)}, {1, 1.0 / (1 << k)}));
  const auto ens = make_ensemble(segment(101), seq);
  const auto rep = lower_limit_experiment(ens, {0.6, 0.3, 0.1});
  CHECK(rep.coverage == doctest::Approx(1.0));
  CHECK(rep.lmc_lower <= rep.liminf_lmc + 0.02);
}

}
