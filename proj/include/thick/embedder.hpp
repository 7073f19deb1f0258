#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thick/crossing.hpp"
#include "thick/subdivision.hpp"
#include "thick/thickness.hpp"

namespace thick {

struct PlacementParams {
  int ambient_dim = 3;
  double radius = 0.0;  // 0: V^(1/(n-k))
  double alpha0 = 0.3;
  std::size_t max_resample_rounds = 5000;
  std::uint64_t seed = 0;
  // Redraw every vertex on each violation: plain rejection sampling, exact
  // but only practical for small complexes.
  bool full_restart = false;
};

/// V^(1/(n-k)) for a k-complex on V vertices in R^n.
double default_radius(const SimplicialComplex& complex, int ambient_dim);

/// Uniform sphere points of radius R, resampled until adjacent vertices are at
/// least alpha0*R apart and every link is alpha0-thick in angle. Violations
/// are repaired by redrawing only the vertices taking part in them, with a
/// full redraw every 100 rounds (every round with full_restart). Throws
/// SaturationError when the round budget runs out.
EmbeddedComplex random_sphere_placement(const SimplicialComplex& complex, const PlacementParams& params);

using VertexPair = std::pair<VertexId, VertexId>;

struct ConditionReport {
  double radius = 0.0;
  double alpha0 = 0.0;

  bool cond1_ok = true;
  std::optional<double> min_adjacent_distance;
  VertexPair adjacent_witness{0, 0};

  bool cond2_ok = true;
  MinLinkThickness link;

  /// Least distance between distinct vertices at graph distance <= 2.
  std::optional<double> dagger_min_pair_distance;
  VertexPair dagger_witness{0, 0};

  std::optional<double> edge_ratio;
  VertexPair edge_min_witness{0, 0};
  VertexPair edge_max_witness{0, 0};
};

/// Pure re-measurement of the placement conditions. A non-positive `radius`
/// means the largest vertex norm.
ConditionReport check_conditions(const EmbeddedComplex& embedding, double alpha0, double radius = 0.0);

struct CrossingProfile {
  double radius = 0.0;
  CrossingMax max;
  std::size_t color_count = 0;
};

/// Crossing counts of balls of `radius` (edge_min/10 when not positive) at
/// the centers described by `spec`, split by the greedy simplex coloring.
CrossingProfile crossing_profile(const EmbeddedComplex& embedding, const SampleSpec& spec, double radius = 0.0);

struct PerturbResult {
  EmbeddedComplex embedding;
  std::optional<double> thickness_before;
  std::optional<double> thickness_after;
  double max_displacement = 0.0;
  std::size_t candidate_pairs = 0;
  std::size_t accepted_moves = 0;
  std::size_t iterations = 0;
};

/// Local search that moves every vertex by at most tau to raise the least
/// distance between disjoint simplices, accepting a move only when no pair
/// it touches drops below the previous minimum of those pairs (values capped
/// at 2*tau). Pairs farther apart than 4*tau cannot come within 2*tau and are
/// not tracked. Thickness never decreases.
PerturbResult thicken_perturb(const EmbeddedComplex& embedding, double tau, std::size_t budget,
                              std::uint64_t seed);

struct PipelineParams {
  PlacementParams placement;
  std::uint32_t subdivision = 0;  // 0: ceil(R)
  std::optional<double> tau;      // default edge_min(subdivided)/4
  std::size_t perturb_budget = 0;  // 0: 50 per tracked pair, at least 1000
  bool auto_alpha = true;
  int max_alpha_halvings = 8;
  SampleSpec crossing{};
  double crossing_radius = 1.0;
  bool measure_crossing = true;
};

struct PipelineResult {
  PipelineParams params;
  std::vector<double> alpha_ladder;  // every alpha0 tried, last one succeeded
  double alpha0_final = 0.0;
  double radius = 0.0;               // sphere radius R of the placement
  EmbeddedComplex placement;
  ConditionReport conditions;
  std::optional<CrossingProfile> crossing;  // on the placement
  SubdivisionMap subdivision;
  double tau = 0.0;
  PerturbResult perturb;
  ThicknessReport before;            // subdivided placement, unperturbed
  double lambda = 1.0;               // scale applied so thickness is 1
  double r_pre = 0.0;                // enclosing radius before rescaling
  double r_final = 0.0;              // enclosing radius of the final embedding
  EmbeddedComplex final_embedding;
  ThicknessReport after;
};

/// Placement, certification, subdivision, perturbation and normalisation.
/// On saturation alpha0 is halved (when auto_alpha) up to max_alpha_halvings
/// times before the error propagates.
PipelineResult run_pipeline(const SimplicialComplex& complex, const PipelineParams& params);

}  // namespace thick
