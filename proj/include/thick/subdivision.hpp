#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "thick/complex.hpp"
#include "thick/geometry.hpp"

namespace thick {

/// Barycentric position of a child vertex: the parent vertices with nonzero
/// weight, each with its numerator over the subdivision parameter t. Sorted by
/// parent vertex; numerators are positive and sum to t.
using LatticePoint = std::vector<std::pair<VertexId, std::uint32_t>>;

struct SubdivisionMap {
  SimplicialComplex parent;
  SimplicialComplex child;
  std::uint32_t t = 1;
  std::vector<LatticePoint> vertex_coords;  // indexed by child VertexId
  std::vector<SimplexId> carrier;           // child simplex -> smallest parent simplex containing it

  /// Child simplices of top dimension whose carrier is `parent_simplex`.
  std::vector<SimplexId> children_of(SimplexId parent_simplex) const;
};

/// Edgewise subdivision with parameter t (t^d children per d-simplex).
/// Child vertex ids are ordered by support size and then lexicographically by
/// lattice point, so parent vertex v keeps id v.
SubdivisionMap edgewise_subdivide(const SimplicialComplex& complex, std::uint32_t t);

/// Places each child vertex at the affine image of its barycentric coordinates.
EmbeddedComplex subdivide_embedding(const EmbeddedComplex& embedding, const SubdivisionMap& map);
EmbeddedComplex subdivide_embedding(const EmbeddedComplex& embedding, std::uint32_t t);

/// Congruence classes among the children of one parent top simplex, by sorted
/// edge-length multisets equal within 1e-9 relative.
std::size_t isometry_class_count(const EmbeddedComplex& child, const SubdivisionMap& map,
                                 SimplexId parent_simplex);

/// The regular d-simplex with unit edges, in R^d.
Eigen::MatrixXd regular_simplex(int d);

struct LinkIsometryReport {
  bool vacuous = false;      // no interior vertices
  bool interior_ok = true;   // all interior links pairwise isometric
  bool boundary_ok = true;   // every boundary link embeds in the interior link
  std::size_t interior_vertices = 0;
  std::size_t boundary_vertices = 0;
  std::optional<VertexId> failing_vertex;

  bool ok() const { return interior_ok && boundary_ok; }
};

/// Subdivides the regular d-simplex with parameter t and compares the
/// spherical link configurations of its vertices up to orthogonal maps
/// (Gram matrices within `tolerance`, simplices carried to simplices).
LinkIsometryReport interior_link_isometry_check(int d, std::uint32_t t, double tolerance = 1e-6);

}  // namespace thick
