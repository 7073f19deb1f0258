#pragma once

#include <Eigen/Core>

#include "thick/geometry.hpp"

namespace thick {

/// Nearest point to the origin of conv(columns of `points`), found with
/// Wolfe's active-set algorithm. `weights` are convex coefficients.
struct MinNormPoint {
  Eigen::VectorXd point;
  Eigen::VectorXd weights;
};

MinNormPoint min_norm_point(const PointSet& points);

struct ClosestPoints {
  double distance = 0.0;
  Eigen::VectorXd weights_a;  // barycentric coordinates on A
  Eigen::VectorXd weights_b;
  Point on_a;
  Point on_b;
};

/// Closest pair of points between conv(A) and conv(B).
ClosestPoints closest_points(const PointSet& a, const PointSet& b);

/// Euclidean distance between conv(A) and conv(B); zero when they meet.
double simplex_distance(const PointSet& a, const PointSet& b);

/// Distance from a point to conv(A).
double point_simplex_distance(const Point& p, const PointSet& a);

}  // namespace thick
