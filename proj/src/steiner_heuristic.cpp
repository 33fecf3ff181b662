#include <algorithm>
#include <cmath>
#include <set>

#include "menger/steiner.hpp"

namespace menger {

namespace {

class FreeTree {
 public:
  FreeTree(std::size_t dim, std::size_t fixed) : dim_(dim), fixed_(fixed) {}

  std::size_t add(std::span<const double> x) {
    pos_.insert(pos_.end(), x.begin(), x.end());
    adj_.emplace_back();
    alive_.push_back(1);
    return adj_.size() - 1;
  }
  void link(std::size_t a, std::size_t b) {
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
  void unlink(std::size_t a, std::size_t b) {
    adj_[a].erase(b);
    adj_[b].erase(a);
  }
  [[nodiscard]] std::size_t size() const { return adj_.size(); }
  [[nodiscard]] bool alive(std::size_t v) const { return alive_[v] != 0; }
  [[nodiscard]] bool is_free(std::size_t v) const { return v >= fixed_; }
  [[nodiscard]] const std::set<std::size_t>& nbrs(std::size_t v) const { return adj_[v]; }
  [[nodiscard]] std::span<const double> at(std::size_t v) const {
    return std::span<const double>(pos_).subspan(v * dim_, dim_);
  }
  void move_to(std::size_t v, std::span<const double> x) {
    std::copy(x.begin(), x.end(), pos_.begin() + static_cast<std::ptrdiff_t>(v * dim_));
  }
  void kill(std::size_t v) {
    for (std::size_t u : std::vector<std::size_t>(adj_[v].begin(), adj_[v].end())) unlink(u, v);
    alive_[v] = 0;
  }

  [[nodiscard]] double dist(std::size_t a, std::size_t b) const { return norm(at(a), at(b)); }
  static double norm(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
  }

  [[nodiscard]] double length() const {
    double s = 0.0;
    for (std::size_t v = 0; v < size(); ++v)
      if (alive(v))
        for (std::size_t u : adj_[v])
          if (v < u) s += dist(v, u);
    return s;
  }

  std::size_t dim_;
  std::size_t fixed_;

 private:
  std::vector<double> pos_;
  std::vector<std::set<std::size_t>> adj_;
  std::vector<char> alive_;
};

// Geometric median of the given points by Weiszfeld iteration.
std::vector<double> median(const std::vector<std::span<const double>>& pts, std::size_t dim) {
  std::vector<double> x(dim, 0.0);
  for (const auto& p : pts)
    for (std::size_t i = 0; i < dim; ++i) x[i] += p[i] / static_cast<double>(pts.size());
  std::vector<double> next(dim);
  for (int it = 0; it < 2000; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    double w = 0.0;
    for (const auto& p : pts) {
      const double d = FreeTree::norm(x, p);
      if (d < 1e-15) return std::vector<double>(p.begin(), p.end());
      for (std::size_t i = 0; i < dim; ++i) next[i] += p[i] / d;
      w += 1.0 / d;
    }
    for (double& c : next) c /= w;
    const double moved = FreeTree::norm(next, x);
    x.swap(next);
    if (moved < 1e-14) break;
  }
  return x;
}

// One Gauss-Seidel sweep; returns the largest displacement.
double sweep(FreeTree& t) {
  double moved = 0.0;
  std::vector<double> next(t.dim_);
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (!t.alive(v) || !t.is_free(v)) continue;
    std::fill(next.begin(), next.end(), 0.0);
    double w = 0.0;
    bool stuck = false;
    for (std::size_t u : t.nbrs(v)) {
      const double d = t.dist(u, v);
      if (d < 1e-15) {
        stuck = true;
        break;
      }
      const auto pu = t.at(u);
      for (std::size_t i = 0; i < t.dim_; ++i) next[i] += pu[i] / d;
      w += 1.0 / d;
    }
    if (stuck || w == 0.0) continue;
    for (double& c : next) c /= w;
    moved = std::max(moved, FreeTree::norm(next, t.at(v)));
    t.move_to(v, next);
  }
  return moved;
}

// Removes free points of degree <= 2 and free points sitting on a neighbour.
void tidy(FreeTree& t, double merge_tol) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < t.size(); ++v) {
      if (!t.alive(v) || !t.is_free(v)) continue;
      const std::vector<std::size_t> nb(t.nbrs(v).begin(), t.nbrs(v).end());
      std::size_t twin = t.size();
      for (std::size_t u : nb)
        if (t.dist(u, v) < merge_tol) {
          twin = u;
          break;
        }
      if (nb.size() <= 2 || twin != t.size()) {
        t.kill(v);
        if (twin != t.size()) {
          for (std::size_t u : nb)
            if (u != twin) t.link(twin, u);
        } else if (nb.size() == 2) {
          t.link(nb[0], nb[1]);
        }
        changed = true;
      }
    }
  }
}

}  // namespace

SmtResult smt_heuristic(const MetricSpace& space, const IndexSet& p) {
  if (!space.is_euclidean()) throw ValidationError("the steiner heuristic needs a euclidean space");
  if (p.empty()) throw ValidationError("steiner tree of an empty terminal set");
  p.check_bounds(space.size());
  const auto m = mst(space, p);
  const std::size_t dim = space.dim();
  const std::size_t k = p.size();

  FreeTree t(dim, k);
  for (Index i : p) t.add(space.point(i));
  for (const Edge& e : m.tree.edges()) t.link(p.position(e.a), p.position(e.b));

  double scale = 0.0;
  for (const Edge& e : m.tree.edges()) scale = std::max(scale, space(e.a, e.b));
  const double gain_tol = 1e-12 * std::max(scale, 1e-300);
  const double merge_tol = 1e-9 * std::max(scale, 1e-300);

  for (int pass = 0; pass < 200; ++pass) {
    bool improved = false;
    const std::size_t current = t.size();
    for (std::size_t x = 0; x < current; ++x) {
      if (!t.alive(x) || t.nbrs(x).size() < 2) continue;
      const std::vector<std::size_t> nb(t.nbrs(x).begin(), t.nbrs(x).end());
      double best_gain = gain_tol;
      std::size_t by = 0, bz = 0;
      std::vector<double> best_f;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
          const double dy = t.dist(x, nb[i]);
          const double dz = t.dist(x, nb[j]);
          if (dy == 0.0 || dz == 0.0) continue;
          const auto px = t.at(x), py = t.at(nb[i]), pz = t.at(nb[j]);
          double dot = 0.0;
          for (std::size_t c = 0; c < dim; ++c) dot += (py[c] - px[c]) * (pz[c] - px[c]);
          if (dot / (dy * dz) <= -0.5) continue;
          auto f = median({px, py, pz}, dim);
          const double gain = dy + dz - (FreeTree::norm(f, px) + FreeTree::norm(f, py) + FreeTree::norm(f, pz));
          if (gain > best_gain) {
            best_gain = gain;
            by = nb[i];
            bz = nb[j];
            best_f = std::move(f);
          }
        }
      if (best_f.empty()) continue;
      const std::size_t s = t.add(best_f);
      t.unlink(x, by);
      t.unlink(x, bz);
      t.link(s, x);
      t.link(s, by);
      t.link(s, bz);
      improved = true;
    }
    for (int it = 0; it < 500; ++it)
      if (sweep(t) < 1e-10 * std::max(scale, 1e-300)) break;
    tidy(t, merge_tol);
    if (!improved) break;
  }

  SmtResult r;
  r.method = SmtMethod::heuristic_upper;
  r.base_size = space.size();
  std::vector<Index> id(t.size());
  std::vector<Index> verts(p.begin(), p.end());
  for (std::size_t v = 0; v < t.size(); ++v) {
    if (v < k) {
      id[v] = p[v];
    } else if (t.alive(v)) {
      id[v] = space.size() + r.steiner_coords.size() / dim;
      const auto c = t.at(v);
      r.steiner_coords.insert(r.steiner_coords.end(), c.begin(), c.end());
      verts.push_back(id[v]);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t v = 0; v < t.size(); ++v)
    if (t.alive(v))
      for (std::size_t u : t.nbrs(v))
        if (v < u) edges.emplace_back(id[v], id[u]);
  r.tree = SteinerTree(IndexedGraph(IndexSet(std::move(verts)), std::move(edges)), p);
  const MetricSpace ext = r.extended(space);
  r.length = tree_length(ext, r.tree);
  if (r.length > m.length) {
    r.tree = m.tree;
    r.length = m.length;
    r.steiner_coords.clear();
  }
  r.upper = r.length;
  r.lower = k >= 2 ? m.length * static_cast<double>(k) / (2.0 * static_cast<double>(k - 1)) : 0.0;
  return r;
}

}  // namespace menger
