#include "thick/distance.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <tuple>
#include <vector>

#include "thick/error.hpp"

namespace thick {

namespace {

// Coefficients (summing to one) of the point of minimum norm on the affine
// hull of the selected columns.
Eigen::VectorXd affine_minimizer(const PointSet& points, const std::vector<Eigen::Index>& support) {
  const auto k = static_cast<Eigen::Index>(support.size());
  Eigen::VectorXd alpha(k);
  if (k == 1) {
    alpha(0) = 1.0;
    return alpha;
  }
  if (k == 2) {
    const auto p0 = points.col(support[0]);
    const Eigen::VectorXd e = points.col(support[1]) - p0;
    const double beta = -p0.dot(e) / e.squaredNorm();
    alpha << 1.0 - beta, beta;
    return alpha;
  }
  const auto p0 = points.col(support[0]);
  Eigen::MatrixXd edges(points.rows(), k - 1);
  for (Eigen::Index i = 1; i < k; ++i) edges.col(i - 1) = points.col(support[i]) - p0;
  const Eigen::VectorXd beta = edges.colPivHouseholderQr().solve(-p0);
  alpha(0) = 1.0 - beta.sum();
  alpha.tail(k - 1) = beta;
  return alpha;
}

// Parameter in [0, 1] of the point of segment p + s*d closest to q.
double clamp_projection(const Eigen::VectorXd& d, const Eigen::VectorXd& r) {
  const double dd = d.squaredNorm();
  if (dd == 0.0) return 0.0;
  return std::clamp(d.dot(r) / dd, 0.0, 1.0);
}

// Closest points of segments p1 + s*d1 and p2 + t*d2 (clamped projections,
// falling back to an endpoint when the segments are parallel).
std::pair<double, double> segment_segment(const Eigen::VectorXd& d1, const Eigen::VectorXd& d2,
                                          const Eigen::VectorXd& r) {
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  if (a == 0.0 && e == 0.0) return {0.0, 0.0};
  if (a == 0.0) return {0.0, std::clamp(f / e, 0.0, 1.0)};
  const double c = d1.dot(r);
  if (e == 0.0) return {std::clamp(-c / a, 0.0, 1.0), 0.0};
  const double b = d1.dot(d2);
  const double denom = a * e - b * b;
  double s = denom > 1e-14 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return {s, t};
}

ClosestPoints small_case(const PointSet& a, const PointSet& b) {
  ClosestPoints out;
  out.weights_a = Eigen::VectorXd::Zero(a.cols());
  out.weights_b = Eigen::VectorXd::Zero(b.cols());
  double s = 0.0;
  double t = 0.0;
  if (a.cols() == 2 && b.cols() == 2) {
    std::tie(s, t) = segment_segment(a.col(1) - a.col(0), b.col(1) - b.col(0), a.col(0) - b.col(0));
  } else if (a.cols() == 2) {
    s = clamp_projection(a.col(1) - a.col(0), b.col(0) - a.col(0));
  } else if (b.cols() == 2) {
    t = clamp_projection(b.col(1) - b.col(0), a.col(0) - b.col(0));
  }
  out.weights_a(0) = 1.0 - s;
  if (a.cols() == 2) out.weights_a(1) = s;
  out.weights_b(0) = 1.0 - t;
  if (b.cols() == 2) out.weights_b(1) = t;
  out.on_a = a.cols() == 2 ? Eigen::VectorXd(a.col(0) + s * (a.col(1) - a.col(0))) : Eigen::VectorXd(a.col(0));
  out.on_b = b.cols() == 2 ? Eigen::VectorXd(b.col(0) + t * (b.col(1) - b.col(0))) : Eigen::VectorXd(b.col(0));
  out.distance = (out.on_a - out.on_b).norm();
  return out;
}

}  // namespace

MinNormPoint min_norm_point(const PointSet& points) {
  const Eigen::Index m = points.cols();
  if (m == 0) throw Error(ErrorKind::Parameter, "min_norm_point: empty point set");

  MinNormPoint out;
  out.weights = Eigen::VectorXd::Zero(m);
  const Eigen::VectorXd norms = points.colwise().squaredNorm();
  const double scale = norms.maxCoeff();
  Eigen::Index first = 0;
  norms.minCoeff(&first);
  if (m == 1 || scale == 0.0) {
    out.weights(first) = 1.0;
    out.point = points.col(first);
    return out;
  }

  std::vector<Eigen::Index> support{first};
  std::vector<double> w{1.0};
  Eigen::VectorXd x = points.col(first);

  constexpr double kRelGap = 1e-13;
  constexpr double kZeroWeight = 1e-15;
  const int max_major = 64 * static_cast<int>(m + 1);
  for (int major = 0; major < max_major; ++major) {
    const double xx = x.squaredNorm();
    if (xx <= 1e-30 * scale) break;  // origin lies in the hull
    Eigen::Index j = 0;
    const double min_dot = (points.transpose() * x).minCoeff(&j);
    if (xx - min_dot <= kRelGap * xx) break;
    if (std::find(support.begin(), support.end(), j) != support.end()) break;
    support.push_back(j);
    w.push_back(0.0);

    for (std::size_t minor = 0; minor <= support.size() + 1; ++minor) {
      const Eigen::VectorXd alpha = affine_minimizer(points, support);
      bool interior = true;
      for (Eigen::Index i = 0; i < alpha.size(); ++i) {
        if (alpha(i) <= kZeroWeight) interior = false;
      }
      if (interior) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = alpha(static_cast<Eigen::Index>(i));
        break;
      }
      double theta = 1.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double a = alpha(static_cast<Eigen::Index>(i));
        if (a <= kZeroWeight && w[i] - a > 0.0) theta = std::min(theta, w[i] / (w[i] - a));
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = theta * alpha(static_cast<Eigen::Index>(i)) + (1.0 - theta) * w[i];
      }
      // Drop the blocking points; keep at least one.
      std::size_t keep = 0;
      double total = 0.0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > kZeroWeight) {
          support[keep] = support[i];
          w[keep] = w[i];
          total += w[i];
          ++keep;
        }
      }
      if (keep == 0) {
        keep = 1;
        w[0] = 1.0;
        total = 1.0;
      }
      support.resize(keep);
      w.resize(keep);
      for (double& wi : w) wi /= total;
    }

    x.setZero();
    for (std::size_t i = 0; i < support.size(); ++i) x += w[i] * points.col(support[i]);
  }

  for (std::size_t i = 0; i < support.size(); ++i) out.weights(support[i]) = w[i];
  out.point = x;
  return out;
}

ClosestPoints closest_points(const PointSet& a, const PointSet& b) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "point sets live in different dimensions");
  }
  if (a.cols() == 0 || b.cols() == 0) {
    throw Error(ErrorKind::Parameter, "closest_points: empty simplex");
  }
  const Eigen::Index ma = a.cols();
  const Eigen::Index mb = b.cols();
  if (ma <= 2 && mb <= 2) return small_case(a, b);
  PointSet diff(a.rows(), ma * mb);
  for (Eigen::Index i = 0; i < ma; ++i) {
    for (Eigen::Index j = 0; j < mb; ++j) diff.col(i * mb + j) = a.col(i) - b.col(j);
  }
  const MinNormPoint mnp = min_norm_point(diff);

  ClosestPoints out;
  out.weights_a = Eigen::VectorXd::Zero(ma);
  out.weights_b = Eigen::VectorXd::Zero(mb);
  for (Eigen::Index i = 0; i < ma; ++i) {
    for (Eigen::Index j = 0; j < mb; ++j) {
      const double wij = mnp.weights(i * mb + j);
      out.weights_a(i) += wij;
      out.weights_b(j) += wij;
    }
  }
  out.on_a = a * out.weights_a;
  out.on_b = b * out.weights_b;
  out.distance = mnp.point.norm();
  return out;
}

double simplex_distance(const PointSet& a, const PointSet& b) {
  return closest_points(a, b).distance;
}

double point_simplex_distance(const Point& p, const PointSet& a) {
  if (p.size() != a.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "point and simplex live in different dimensions");
  }
  if (a.cols() == 1) return (a.col(0) - p).norm();
  if (a.cols() == 2) {
    const Eigen::VectorXd d = a.col(1) - a.col(0);
    return (a.col(0) + clamp_projection(d, p - a.col(0)) * d - p).norm();
  }
  return min_norm_point(a.colwise() - p).point.norm();
}

}  // namespace thick
