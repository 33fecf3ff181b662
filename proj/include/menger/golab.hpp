#pragma once

#include <string>
#include <vector>

#include "menger/length.hpp"
#include "menger/shapes.hpp"

namespace menger {

/// A limit shape and a sequence of shapes placed in one ambient space.
struct Ensemble {
  MetricSpace space;
  IndexSet limit;
  std::vector<IndexSet> sequence;
  double limit_true_length{0.0};
  std::vector<double> true_lengths;
};

/// Throws ValidationError if the shapes do not share a dimension.
Ensemble make_ensemble(const SampledShape& limit, const std::vector<SampledShape>& sequence);

struct StepRecord {
  std::size_t step{0};
  double excess{0.0};
  double hausdorff{0.0};
  double lmc_lower{0.0};
  double lmc_certified{0.0};
  double lstar{0.0};
  double true_length{0.0};
  double eps{0.0};
};

struct ConvergenceReport {
  std::vector<StepRecord> steps;
  double limit_lmc_lower{0.0};
  double limit_lmc_certified{0.0};
  double limit_eps{0.0};
  double liminf_estimate{0.0};
  double semicontinuity_gap{0.0};
  double tolerance{0.0};
  /// "consistent" or "inconclusive"; violations are never claimed.
  std::string verdict;
  std::string note;
};

struct ExperimentConfig {
  std::vector<double> eps_schedule{0.2, 0.1, 0.05, 0.025};
  std::uint64_t seed{0};
  CandidateSource source{};
  /// Steps counted at the end of the sequence for the liminf.
  std::size_t tail{3};
  /// Relative tolerance of the verdict.
  double rel_tol{0.02};
};

ConvergenceReport convergence_experiment(const Ensemble& ens, const ExperimentConfig& cfg = {});

/// Grids {1/m, ..., m/m} for m = 1..n against the unit segment: every step
/// has L* = 0 while the L_MC estimates approach 1.
ConvergenceReport counterexample_disconnected(int n, const ExperimentConfig& cfg = {},
                                              std::size_t limit_samples = 1001);

struct HitCollection {
  IndexSet centers;
  double radius{0.0};
  double eps{0.0};
  /// Steiner estimate of the centers and its certified lower bound.
  double smt_centers{0.0};
  double smt_centers_lower{0.0};
};

HitCollection hit_collection(const MetricSpace& space, const IndexSet& a, double eps,
                             const ExperimentConfig& cfg = {});
/// True iff B meets every open ball of the collection.
bool check_hits(const MetricSpace& space, const IndexSet& b, const HitCollection& hc);

struct HitContract {
  bool hit{false};
  /// One point of B in each ball (lowest index).
  IndexSet witnesses;
  double smt_witnesses{0.0};
  /// Length of the witness tree augmented to the centers.
  double augmented{0.0};
  /// smt(centers) <= augmented < smt(witnesses) + eps / 2
  bool holds{false};
};

HitContract hit_contract(const MetricSpace& space, const IndexSet& b, const HitCollection& hc);

struct ClosureReport {
  double lmc_a{0.0};
  double lmc_union{0.0};
  double difference{0.0};
  double slack{0.0};
  bool within_slack{false};
};

/// Compares L_MC estimates of A and A with extra points added. Extra points
/// farther than `resolution` from A are rejected.
ClosureReport closure_check(const MetricSpace& space, const IndexSet& a, const IndexSet& extra,
                            double resolution, const ExperimentConfig& cfg = {});

struct LowerLimitReport {
  IndexSet limit_points;
  double coverage{0.0};
  double lmc_lower{0.0};
  double liminf_lmc{0.0};
};

/// Discrete lower limit of the ensemble's sequence restricted to the limit
/// shape's points, with its L_MC estimate against the sequence's.
LowerLimitReport lower_limit_experiment(const Ensemble& ens, const std::vector<double>& radii,
                                        const ExperimentConfig& cfg = {});

}  // namespace menger
