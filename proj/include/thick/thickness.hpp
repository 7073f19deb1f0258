#pragma once

#include <optional>

#include "thick/geometry.hpp"
#include "thick/link_geometry.hpp"

namespace thick {

/// Gromov-Guth thickness: least distance between vertex-disjoint simplices.
/// `value` is empty when no disjoint pair exists. The witness is the
/// lexicographically smallest (first, second) pair attaining the minimum.
struct GGThickness {
  std::optional<double> value;
  SimplexPair witness;
};

/// Exact minimum over all disjoint pairs, pruned with a uniform grid.
GGThickness gg_thickness(const EmbeddedComplex& embedding);

/// Distance between two simplices of the embedding, evaluated in the fixed
/// (lower id, higher id) orientation so every caller gets identical bits.
double pair_distance(const EmbeddedComplex& embedding, SimplexId a, SimplexId b);

struct ThicknessReport {
  GGThickness gg;
  MinLinkThickness link;
  std::optional<EdgeStats> edges;
  double enclosing_radius = 0.0;
};

ThicknessReport certify(const EmbeddedComplex& embedding);

}  // namespace thick
