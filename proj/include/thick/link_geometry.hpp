#pragma once

#include <limits>
#include <optional>

#include "thick/complex.hpp"
#include "thick/geometry.hpp"

namespace thick {

/// Induced embedding of lk(sigma) into the unit sphere of the normal space of
/// aff(sigma). Column j of `vectors` is the image of link vertex j, expressed in
/// ambient coordinates.
struct SphericalLinkEmbedding {
  Simplex base;
  int sphere_dim = 0;
  Link link;
  Eigen::MatrixXd vectors;

  /// Unit vectors spanning the spherical simplex of a link simplex.
  PointSet simplex_vectors(SimplexId link_simplex) const;
};

SphericalLinkEmbedding link_embedding(const EmbeddedComplex& embedding, const Simplex& sigma);

/// Angle between unit vectors.
double unit_angle(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Certified lower bound on the least angle between the cones spanned by the
/// columns of `u` and `w` (unit vectors, pointed cones), within `tolerance` of
/// the true value. Once every unresolved branch is known to be at least
/// `cutoff`, returns a value >= cutoff without refining further.
double cone_angle(const PointSet& u, const PointSet& w, double tolerance = 1e-7,
                  double cutoff = std::numeric_limits<double>::infinity());

struct SimplexPair {
  SimplexId first = 0;
  SimplexId second = 0;
  bool operator==(const SimplexPair&) const = default;
};

/// Least angle between vertex-disjoint link simplices; nullopt angle when the
/// link has no disjoint pair. Witness ids refer to link simplices.
struct LinkThickness {
  std::optional<double> angle;
  SimplexPair witness;
};

LinkThickness link_thickness(const SphericalLinkEmbedding& link,
                             double cutoff = std::numeric_limits<double>::infinity());
LinkThickness link_thickness(const EmbeddedComplex& embedding, const Simplex& sigma);

/// Minimum link thickness over every simplex of the embedding. The witness
/// records the base simplex and the two parent simplices whose link images
/// come closest.
struct MinLinkThickness {
  std::optional<double> angle;
  SimplexId base = 0;
  SimplexPair parents;
};

MinLinkThickness min_link_thickness(const EmbeddedComplex& embedding);

}  // namespace thick
