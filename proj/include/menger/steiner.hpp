#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "menger/graph.hpp"

namespace menger {

enum class SmtMethod { dp_exact, topology_exact, mst_upper, moore_lower, heuristic_upper };

std::string_view to_string(SmtMethod m) noexcept;

/// Steiner tree result. Free Euclidean Steiner points are not part of the
/// input space: they are stored in `steiner_coords` and tree indices
/// >= base_size refer to them in order. Use extended() to measure the tree.
struct SmtResult {
  SteinerTree tree;
  ExtLength length{0.0};
  SmtMethod method{SmtMethod::mst_upper};
  ExtLength lower{0.0};
  ExtLength upper{0.0};
  std::size_t base_size{0};
  std::vector<double> steiner_coords;

  /// Input space plus the free Steiner points (the input itself when there are none).
  [[nodiscard]] MetricSpace extended(const MetricSpace& base) const;
};

inline constexpr std::size_t kDpTerminalCap = 12;
inline constexpr std::size_t kGridPointCap = 4096;

/// Exact Steiner tree on P with Steiner points drawn from `candidates`
/// (Dreyfus-Wagner on the metric closure).
SmtResult smt_restricted(const MetricSpace& space, const IndexSet& p, const IndexSet& candidates);

/// Exact planar Euclidean Steiner tree for |P| <= 4: every labelled topology
/// with Steiner degree >= 3 is optimised by geometric-median sweeps.
SmtResult smt_euclidean_small(const MetricSpace& space, const IndexSet& p);

/// Interval from the mst: [mst |P| / (2(|P|-1)), mst].
SmtResult smt_bounds(const MetricSpace& space, const IndexSet& p);

/// Steiner points restricted to a square grid of pitch h over the bounding
/// box of P. Certificate [moore lower bound, grid value].
SmtResult smt_grid(const MetricSpace& space, const IndexSet& p, double pitch);

/// Euclidean local improvement of the mst: Fermat points are inserted at
/// vertices whose two incident edges meet at less than 120 degrees, then all
/// free points are relaxed by geometric-median sweeps. Upper bound only.
SmtResult smt_heuristic(const MetricSpace& space, const IndexSet& p);

/// Attaches every p in P that is not yet a tree vertex to its nearest
/// terminal of tree_q (lowest index on ties).
SteinerTree augment_tree(const MetricSpace& space, const SteinerTree& tree_q, const IndexSet& p);

enum class CandidateKind { none, sample, grid };

struct SmtEngine {
  CandidateKind candidates{CandidateKind::none};
  /// Candidate set when candidates == sample.
  IndexSet sample;
  double grid_pitch{0.0};
  /// Dreyfus-Wagner runs only when its estimated work is below this.
  double dp_budget{2.0e8};
};

/// Best value over the applicable engines: topology_exact for planar |P| <= 4,
/// otherwise the minimum of the heuristic (Euclidean) and a DP over the
/// configured candidates when affordable. Certificate lower end is the
/// largest certified lower bound available.
SmtResult best_smt(const MetricSpace& space, const IndexSet& p, const SmtEngine& engine = {});

}  // namespace menger
