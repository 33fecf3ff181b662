#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "menger/steiner.hpp"

namespace menger {

enum class Functional { L_M, L_MC, L_IM, Lstar_delta_upper };
enum class Direction { lower, upper, exact };

std::string_view to_string(Functional f) noexcept;
std::string_view to_string(Direction d) noexcept;

/// Finite family of index sets, each meant to have diameter <= delta.
struct Cover {
  std::vector<IndexSet> elements;
  double delta{0.0};
};

struct EstimateParams {
  double eps{0.0};
  double delta{0.0};
  double grid_pitch{0.0};
  std::uint64_t seed{0};
  /// Further named numbers (bounds, slack, sizes) in a stable order.
  std::map<std::string, double> extra;
};

/// One resolution level of a net-based estimate.
struct LevelRecord {
  double eps{0.0};
  std::size_t net_size{0};
  double value{0.0};
  double lower{0.0};
  std::string method;
};

struct LengthEstimate {
  Functional functional{Functional::L_MC};
  ExtLength value{0.0};
  Direction direction{Direction::lower};
  EstimateParams params;
  std::vector<LevelRecord> levels;
  /// Net of the level that produced the value, and its tree.
  IndexSet witness_net;
  std::optional<SmtResult> witness_tree;
};

struct CandidateSource {
  CandidateKind kind{CandidateKind::none};
  double grid_pitch{0.0};
};

/// Nets used by the estimators: prefixes of one greedy permutation, so the
/// nets are nested along a decreasing schedule.
std::vector<IndexSet> schedule_nets(const MetricSpace& space, const IndexSet& a,
                                    const std::vector<double>& eps_schedule, std::uint64_t seed);

LengthEstimate L_M_estimate(const MetricSpace& space, const IndexSet& a,
                            const std::vector<double>& eps_schedule, std::uint64_t seed);
LengthEstimate L_MC_estimate(const MetricSpace& space, const IndexSet& a,
                             const std::vector<double>& eps_schedule, const CandidateSource& source,
                             std::uint64_t seed);
/// Exact DP per level with Steiner points restricted to A. Throws CapExceeded
/// naming the level's eps when a net is too large.
LengthEstimate L_IM_estimate(const MetricSpace& space, const IndexSet& a,
                             const std::vector<double>& eps_schedule, std::uint64_t seed);

/// Every maximal eps-separated subset found for seeds 0..seeds-1 has at most
/// max(2 L / eps, 1) points.
bool separated_bound_check(const MetricSpace& space, const IndexSet& a, double eps, ExtLength lmc_upper,
                           std::size_t seeds = 100);

/// Throws ValidationError when an element is too wide or `a` is not covered.
void validate_cover(const MetricSpace& space, const Cover& cover, const IndexSet& a);
/// Sum of element diameters; validates first.
ExtLength cover_sum(const MetricSpace& space, const Cover& cover, const IndexSet& a);

struct ProofCover {
  Cover cover;
  ExtLength sum{0.0};
  /// (1 + 16 delta)(lmc_est + delta / 4) + 9 delta
  double bound{0.0};
  double lmc_est{0.0};
  double eps{0.0};
  std::size_t net_size{0};
  std::size_t extended_net_size{0};
  std::size_t chains{0};
  std::size_t pieces{0};
  std::size_t large_components{0};
  /// Large components that had to be cut into chain pieces.
  std::size_t split_components{0};
  std::string engine;
  [[nodiscard]] bool within_bound() const { return sum <= bound; }
};

ProofCover proof_cover(const MetricSpace& space, const IndexSet& a, double delta,
                       const std::vector<double>& eps_schedule = {0.2, 0.1, 0.05, 0.025},
                       std::uint64_t seed = 0);

struct JoinTree {
  SteinerTree tree;
  ExtLength length{0.0};
  /// sum over used elements of (|V_i| - 1) diam(U_i)
  double element_bound{0.0};
  /// sum of all element diameters + delta (|P| - 2)
  double cover_bound{0.0};
};

/// Steiner tree on P with Steiner points in the cover's union, built from a
/// minimal subtree of the cover's intersection graph.
JoinTree cover_join_tree(const MetricSpace& space, const Cover& cover, const IndexSet& p);

}  // namespace menger
