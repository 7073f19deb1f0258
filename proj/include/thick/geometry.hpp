#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>

#include "thick/complex.hpp"

namespace thick {

using Point = Eigen::VectorXd;

/// Columns are points; a d-simplex is an n x (d+1) matrix.
using PointSet = Eigen::MatrixXd;

/// A complex with straight-line vertex coordinates in R^n. Coordinates are an
/// n x V matrix; column v is the image of vertex v.
class EmbeddedComplex {
 public:
  EmbeddedComplex() = default;
  EmbeddedComplex(SimplicialComplex complex, Eigen::MatrixXd coords);

  const SimplicialComplex& complex() const { return complex_; }
  int ambient_dim() const { return static_cast<int>(coords_.rows()); }
  std::size_t vertex_count() const { return complex_.vertex_count(); }
  const Eigen::MatrixXd& coords() const { return coords_; }

  auto point(VertexId v) const { return coords_.col(v); }
  void set_point(VertexId v, const Point& p) { coords_.col(v) = p; }

  PointSet simplex_points(SimplexId id) const;
  PointSet simplex_points(const Simplex& s) const;

  EmbeddedComplex scaled(double factor) const;

  bool operator==(const EmbeddedComplex& other) const {
    return complex_ == other.complex_ && coords_.rows() == other.coords_.rows() &&
           coords_ == other.coords_;
  }

 private:
  SimplicialComplex complex_;
  Eigen::MatrixXd coords_;
};

/// Squared-norm scale used for relative tolerances: the longest edge of the
/// point set, squared.
double longest_edge_squared(const PointSet& points);

/// Smallest singular value of the edge Gram matrix below 1e-12 times the
/// squared longest edge.
bool is_degenerate(const PointSet& points);

/// d-dimensional volume via the Gram determinant of the edge vectors.
double simplex_volume(const PointSet& points);

/// Least vertex altitude over the opposite face divided by the longest edge;
/// zero for degenerate input. Requires at least two points.
double simplex_quality(const PointSet& points);

struct EdgeStats {
  double min = 0.0;
  double max = 0.0;
  SimplexId argmin = 0;
  SimplexId argmax = 0;
};

/// Exact min/max edge length; nullopt when the complex has no edges.
std::optional<EdgeStats> edge_length_stats(const EmbeddedComplex& embedding);

struct Ball {
  Point center;
  double radius = 0.0;
};

/// Minimal enclosing ball of the vertex images (move-to-front Welzl).
Ball enclosing_ball(const EmbeddedComplex& embedding);
Ball enclosing_ball(const Eigen::MatrixXd& points);
inline double enclosing_radius(const EmbeddedComplex& embedding) {
  return enclosing_ball(embedding).radius;
}

struct Validity {
  bool valid = true;
  std::string reason;
};

/// Injectivity check of the straight-line map: all simplices nondegenerate and
/// every vertex-disjoint pair at positive distance.
Validity check_validity(const EmbeddedComplex& embedding);

}  // namespace thick
