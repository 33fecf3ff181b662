#include "menger/shapes.hpp"

#include <cmath>
#include <numbers>

namespace menger {

std::string_view to_string(ShapeKind k) noexcept {
  switch (k) {
    case ShapeKind::segment: return "segment";
    case ShapeKind::polyline: return "polyline";
    case ShapeKind::semicircle_chain: return "semicircle";
    case ShapeKind::koch: return "koch";
    case ShapeKind::shrunk_koch: return "shrunk_koch";
    case ShapeKind::square_diagonals: return "diagonals";
  }
  return "unknown";
}

ShapeKind shape_kind_from_string(std::string_view s) {
  if (s == "segment") return ShapeKind::segment;
  if (s == "polyline") return ShapeKind::polyline;
  if (s == "semicircle" || s == "semicircle_chain") return ShapeKind::semicircle_chain;
  if (s == "koch") return ShapeKind::koch;
  if (s == "shrunk_koch" || s == "shrunk-koch") return ShapeKind::shrunk_koch;
  if (s == "diagonals" || s == "square_diagonals") return ShapeKind::square_diagonals;
  throw ValidationError("unknown shape kind '" + std::string(s) + "'");
}

namespace {

double norm(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

std::vector<Point2> koch_refine(const std::vector<Point2>& pts) {
  const double c = 0.5;
  const double s = std::sqrt(3.0) / 2.0;
  std::vector<Point2> out;
  out.reserve(4 * pts.size());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Point2 p = pts[i];
    const Point2 q = pts[i + 1];
    const Point2 d{(q[0] - p[0]) / 3.0, (q[1] - p[1]) / 3.0};
    const Point2 a{p[0] + d[0], p[1] + d[1]};
    const Point2 b{p[0] + 2.0 * d[0], p[1] + 2.0 * d[1]};
    const Point2 peak{a[0] + c * d[0] - s * d[1], a[1] + s * d[0] + c * d[1]};
    out.push_back(p);
    out.push_back(a);
    out.push_back(peak);
    out.push_back(b);
  }
  out.push_back(pts.back());
  return out;
}

// Appends the polyline through `verts`, each segment split into `per - 1`
// equal parts. Returns the component's index list.
std::vector<Index> emit_polyline(const std::vector<Point2>& verts, std::size_t per, std::vector<double>& flat) {
  std::vector<Index> comp;
  auto push = [&](const Point2& x) {
    comp.push_back(flat.size() / 2);
    flat.push_back(x[0]);
    flat.push_back(x[1]);
  };
  push(verts.front());
  for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
    const Point2 p = verts[i];
    const Point2 q = verts[i + 1];
    for (std::size_t j = 1; j < per; ++j) {
      const double t = static_cast<double>(j) / static_cast<double>(per - 1);
      push(j + 1 == per ? q : Point2{p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return comp;
}

double vertex_length(const std::vector<Point2>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) s += norm(v[i], v[i + 1]);
  return s;
}

void check_depth(int n, int lo) {
  if (n < lo || n > kKochDepthCap)
    throw ValidationError("depth n must lie in [" + std::to_string(lo) + ", " + std::to_string(kKochDepthCap) + "]");
}

}  // namespace

std::vector<Point2> koch_vertices(int n, double base_length) {
  check_depth(n, 0);
  if (!(base_length > 0.0)) throw ValidationError("koch base length must be positive");
  std::vector<Point2> v{{0.0, 0.0}, {base_length, 0.0}};
  for (int i = 0; i < n; ++i) v = koch_refine(v);
  return v;
}

bool vertices_persist(const std::vector<Point2>& coarse, const std::vector<Point2>& fine, double tol) {
  for (const Point2& x : coarse) {
    bool found = false;
    for (const Point2& y : fine)
      if (norm(x, y) <= tol) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool koch_vertex_persistence(int n, int m) {
  if (n < 0 || m <= n || m > kKochDepthCap) throw ValidationError("need 0 <= n < m <= depth cap");
  return vertices_persist(koch_vertices(n), koch_vertices(m));
}

SampledShape generate(const ShapeSpec& spec) {
  if (spec.samples < 2) throw ValidationError("sample counts must be >= 2");
  std::vector<double> flat;
  std::vector<std::vector<Index>> comps;
  double true_length = 0.0;
  std::map<std::string, double> meta;

  switch (spec.kind) {
    case ShapeKind::segment: {
      std::vector<Point2> ends = spec.vertices;
      if (ends.empty()) ends = {{0.0, 0.0}, {1.0, 0.0}};
      if (ends.size() != 2) throw ValidationError("a segment needs exactly two endpoints");
      comps.push_back(emit_polyline(ends, spec.samples, flat));
      true_length = norm(ends[0], ends[1]);
      break;
    }
    case ShapeKind::polyline: {
      if (spec.vertices.size() < 2) throw ValidationError("a polyline needs at least two vertices");
      comps.push_back(emit_polyline(spec.vertices, spec.samples, flat));
      true_length = vertex_length(spec.vertices);
      break;
    }
    case ShapeKind::semicircle_chain: {
      if (spec.n < 1 || spec.n > 16) throw ValidationError("semicircle depth n must lie in [1, 16]");
      const std::size_t arcs = std::size_t{1} << (spec.n - 1);
      const double r = std::ldexp(1.0, 1 - spec.n);
      std::vector<Index> comp;
      for (std::size_t k = 0; k < arcs; ++k) {
        const double cx = -1.0 + r * static_cast<double>(2 * k + 1);
        for (std::size_t j = (k == 0 ? 0 : 1); j < spec.samples; ++j) {
          const double theta = std::numbers::pi * (1.0 - static_cast<double>(j) / static_cast<double>(spec.samples - 1));
          comp.push_back(flat.size() / 2);
          flat.push_back(j + 1 == spec.samples ? cx + r : (j == 0 ? cx - r : cx + r * std::cos(theta)));
          flat.push_back(j == 0 || j + 1 == spec.samples ? 0.0 : r * std::sin(theta));
        }
      }
      comps.push_back(std::move(comp));
      true_length = std::numbers::pi;
      meta["radius"] = r;
      meta["arcs"] = static_cast<double>(arcs);
      break;
    }
    case ShapeKind::koch: {
      const auto v = koch_vertices(spec.n, spec.base_length);
      comps.push_back(emit_polyline(v, spec.samples, flat));
      true_length = spec.base_length * std::pow(4.0 / 3.0, spec.n);
      meta["vertices"] = static_cast<double>(v.size());
      break;
    }
    case ShapeKind::shrunk_koch: {
      check_depth(spec.n, 1);
      const double s = std::pow(0.8, spec.n - 1);
      auto v = koch_vertices(spec.n, 2.0 * s);
      for (auto& x : v) x[0] -= s;
      std::vector<Point2> all{{-1.0, 0.0}};
      if (s < 1.0) all.insert(all.end(), v.begin(), v.end());
      else all.insert(all.end(), v.begin() + 1, v.end() - 1);
      all.push_back({1.0, 0.0});
      comps.push_back(emit_polyline(all, spec.samples, flat));
      true_length = 2.0 - 2.0 * s + 2.0 * s * std::pow(4.0 / 3.0, spec.n);
      meta["scale"] = s;
      meta["end_segment"] = 1.0 - s;
      break;
    }
    case ShapeKind::square_diagonals: {
      const std::size_t half = std::max<std::size_t>(1, (spec.samples - 1) / 2);
      const Point2 corner[4] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
      const Point2 center{0.5, 0.5};
      for (const auto& c : corner) {
        flat.push_back(c[0]);
        flat.push_back(c[1]);
      }
      flat.push_back(center[0]);
      flat.push_back(center[1]);
      std::vector<std::vector<Index>> legs(4);
      for (std::size_t k = 0; k < 4; ++k) {
        legs[k].push_back(k);
        for (std::size_t j = 1; j < half; ++j) {
          const double t = static_cast<double>(j) / static_cast<double>(half);
          legs[k].push_back(flat.size() / 2);
          flat.push_back(corner[k][0] + t * (center[0] - corner[k][0]));
          flat.push_back(corner[k][1] + t * (center[1] - corner[k][1]));
        }
        legs[k].push_back(4);
      }
      for (std::size_t k : {0u, 1u}) {
        std::vector<Index> comp = legs[k];
        for (auto it = legs[k + 2].rbegin() + 1; it != legs[k + 2].rend(); ++it) comp.push_back(*it);
        comps.push_back(std::move(comp));
      }
      true_length = 2.0 * std::numbers::sqrt2;
      meta["pitch"] = std::numbers::sqrt2 / 2.0 / static_cast<double>(half);
      break;
    }
  }
  return SampledShape{MetricSpace::euclidean(2, std::move(flat)), std::move(comps), true_length, std::move(meta)};
}

ExtLength polyline_length(const SampledShape& shape) {
  double s = 0.0;
  for (const auto& comp : shape.components)
    for (std::size_t i = 0; i + 1 < comp.size(); ++i) s += shape.space.dist(comp[i], comp[i + 1]);
  return s;
}

}  // namespace menger
