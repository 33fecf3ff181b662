#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "menger/metric.hpp"

namespace menger {

enum class ShapeKind { segment, polyline, semicircle_chain, koch, shrunk_koch, square_diagonals };

std::string_view to_string(ShapeKind k) noexcept;
ShapeKind shape_kind_from_string(std::string_view s);

using Point2 = std::array<double, 2>;

inline constexpr int kKochDepthCap = 8;

struct ShapeSpec {
  ShapeKind kind{ShapeKind::segment};
  /// Iteration depth (semicircle_chain, koch, shrunk_koch).
  int n{0};
  /// Points per piece including both ends: per arc, per polyline segment, per
  /// diagonal, or in total for a segment.
  std::size_t samples{2};
  /// Base length for koch.
  double base_length{1.0};
  /// Vertices for polyline; endpoints for segment (default (0,0)-(1,0)).
  std::vector<Point2> vertices;
};

struct SampledShape {
  MetricSpace space;
  /// Polylines of consecutive sample indices.
  std::vector<std::vector<Index>> components;
  ExtLength true_length{0.0};
  std::map<std::string, double> meta;
};

SampledShape generate(const ShapeSpec& spec);
ExtLength polyline_length(const SampledShape& shape);

/// Vertices of the depth-n Koch polyline on (0,0)-(base,0).
std::vector<Point2> koch_vertices(int n, double base_length = 1.0);
/// Whether every point of `coarse` lies within `tol` of some point of `fine`.
bool vertices_persist(const std::vector<Point2>& coarse, const std::vector<Point2>& fine, double tol = 1e-12);
bool koch_vertex_persistence(int n, int m);

}  // namespace menger
