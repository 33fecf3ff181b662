#include <doctest.h>

#include <cmath>
#include <numbers>

#include "menger/shapes.hpp"

using namespace menger;

TEST_SUITE("shapes") {

TEST_CASE("koch lengths and vertex persistence") {
  for (int n = 0; n <= 6; ++n) {
    ShapeSpec k{ShapeKind::koch, n, 2, 1.0, {}};
    const auto s = generate(k);
    CHECK(std::abs(polyline_length(s) - std::pow(4.0 / 3.0, n)) < 1e-9);
    CHECK(s.true_length == doctest::Approx(std::pow(4.0 / 3.0, n)));
  }
  CHECK(koch_vertices(2).size() == 17);
  CHECK(koch_vertex_persistence(1, 3));
  CHECK_THROWS_AS(koch_vertices(kKochDepthCap + 1), ValidationError);
}

TEST_CASE("semicircle chains have length pi") {
  for (int n = 1; n <= 4; ++n) {
    const auto s = generate(ShapeSpec{ShapeKind::semicircle_chain, n, 2000, 1.0, {}});
    CHECK(std::abs(polyline_length(s) - std::numbers::pi) < 1e-4);
    CHECK(s.meta.at("arcs") == double(1 << (n - 1)));
  }
  CHECK_THROWS_AS(generate(ShapeSpec{ShapeKind::semicircle_chain, 0, 10, 1.0, {}}), ValidationError);
}

TEST_CASE("shrunk koch") {
  for (int n = 1; n <= 5; ++n) {
    const auto s = generate(ShapeSpec{ShapeKind::shrunk_koch, n, 2, 1.0, {}});
    CHECK(std::abs(polyline_length(s) - s.true_length) < 1e-9);
    CHECK(s.true_length > std::pow(16.0 / 15.0, n));
  }
}

TEST_CASE("square diagonals") {
  const auto s = generate(ShapeSpec{ShapeKind::square_diagonals, 0, 201, 1.0, {}});
  CHECK(s.components.size() == 2);
  CHECK(polyline_length(s) == doctest::Approx(2 * std::numbers::sqrt2));
  CHECK(s.meta.at("pitch") <= 0.01);
  CHECK(s.space.dist(0, 4) == doctest::Approx(std::numbers::sqrt2 / 2));
}

TEST_CASE("segments and polylines") {
  const auto seg = generate(ShapeSpec{ShapeKind::segment, 0, 11, 1.0, {{0, 0}, {3, 4}}});
  CHECK(seg.space.size() == 11);
  CHECK(polyline_length(seg) == doctest::Approx(5.0));
  const auto pl = generate(ShapeSpec{ShapeKind::polyline, 0, 3, 1.0, {{0, 0}, {1, 0}, {1, 1}}});
  CHECK(pl.space.size() == 5);
  CHECK(pl.true_length == doctest::Approx(2.0));
  CHECK_THROWS_AS(generate(ShapeSpec{ShapeKind::segment, 0, 1, 1.0, {}}), ValidationError);
  CHECK(shape_kind_from_string("diagonals") == ShapeKind::square_diagonals);
  CHECK_THROWS_AS(shape_kind_from_string("spiral"), ValidationError);
}

}
