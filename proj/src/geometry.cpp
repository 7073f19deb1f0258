#include "thick/geometry.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <list>
#include <numeric>
#include <random>

#include "thick/error.hpp"

namespace thick {

EmbeddedComplex::EmbeddedComplex(SimplicialComplex complex, Eigen::MatrixXd coords)
    : complex_(std::move(complex)), coords_(std::move(coords)) {
  if (coords_.rows() < 1) throw Error(ErrorKind::InvalidEmbedding, "ambient dimension must be >= 1");
  if (static_cast<std::size_t>(coords_.cols()) != complex_.vertex_count()) {
    throw Error(ErrorKind::InvalidEmbedding, "coordinate count does not match vertex count");
  }
  if (!coords_.allFinite()) throw Error(ErrorKind::InvalidEmbedding, "non-finite coordinate");
}

PointSet EmbeddedComplex::simplex_points(SimplexId id) const {
  return simplex_points(complex_.simplex(id));
}

PointSet EmbeddedComplex::simplex_points(const Simplex& s) const {
  PointSet out(coords_.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = coords_.col(s[i]);
  return out;
}

EmbeddedComplex EmbeddedComplex::scaled(double factor) const {
  EmbeddedComplex out = *this;
  out.coords_ *= factor;
  return out;
}

double longest_edge_squared(const PointSet& points) {
  double longest = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < points.cols(); ++j) {
      longest = std::max(longest, (points.col(i) - points.col(j)).squaredNorm());
    }
  }
  return longest;
}

namespace {

Eigen::MatrixXd edge_vectors(const PointSet& points) {
  Eigen::MatrixXd edges(points.rows(), points.cols() - 1);
  for (Eigen::Index i = 1; i < points.cols(); ++i) edges.col(i - 1) = points.col(i) - points.col(0);
  return edges;
}

}  // namespace

bool is_degenerate(const PointSet& points) {
  if (points.cols() <= 1) return false;
  if (points.cols() - 1 > points.rows()) return true;
  const double scale = longest_edge_squared(points);
  if (scale == 0.0) return true;
  const Eigen::MatrixXd edges = edge_vectors(points);
  const Eigen::MatrixXd gram = edges.transpose() * edges;
  const double smallest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram, Eigen::EigenvaluesOnly)
                              .eigenvalues()
                              .minCoeff();
  return smallest < 1e-12 * scale;
}

double simplex_volume(const PointSet& points) {
  const Eigen::Index d = points.cols() - 1;
  if (d <= 0) return 1.0;
  if (d > points.rows()) return 0.0;
  const Eigen::MatrixXd edges = edge_vectors(points);
  const double det = (edges.transpose() * edges).determinant();
  double factorial = 1.0;
  for (Eigen::Index i = 2; i <= d; ++i) factorial *= static_cast<double>(i);
  return std::sqrt(std::max(0.0, det)) / factorial;
}

double simplex_quality(const PointSet& points) {
  if (points.cols() < 2) throw Error(ErrorKind::Parameter, "quality is undefined for a single point");
  const double longest = std::sqrt(longest_edge_squared(points));
  if (longest == 0.0 || is_degenerate(points)) return 0.0;

  double least_altitude = std::numeric_limits<double>::infinity();
  const Eigen::Index m = points.cols();
  for (Eigen::Index apex = 0; apex < m; ++apex) {
    PointSet face(points.rows(), m - 1);
    for (Eigen::Index i = 0, c = 0; i < m; ++i) {
      if (i != apex) face.col(c++) = points.col(i);
    }
    const Eigen::VectorXd r = points.col(apex) - face.col(0);
    double altitude = r.norm();
    if (face.cols() > 1) {
      const Eigen::MatrixXd basis = edge_vectors(face);
      const Eigen::VectorXd coef = basis.colPivHouseholderQr().solve(r);
      altitude = (r - basis * coef).norm();
    }
    least_altitude = std::min(least_altitude, altitude);
  }
  return std::clamp(least_altitude / longest, 0.0, 1.0);
}

std::optional<EdgeStats> edge_length_stats(const EmbeddedComplex& embedding) {
  const auto [lo, hi] = embedding.complex().dim_range(1);
  if (lo == hi) return std::nullopt;
  EdgeStats stats;
  stats.min = std::numeric_limits<double>::infinity();
  stats.max = -1.0;
  for (SimplexId id = lo; id < hi; ++id) {
    const Simplex& e = embedding.complex().simplex(id);
    const double len = (embedding.point(e[0]) - embedding.point(e[1])).norm();
    if (len < stats.min) { stats.min = len; stats.argmin = id; }
    if (len > stats.max) { stats.max = len; stats.argmax = id; }
  }
  return stats;
}

namespace {

// Smallest ball with all support points on its boundary, centered in their
// affine hull. Radius is negative for the empty support.
Ball circumball(const std::vector<Eigen::VectorXd>& support, Eigen::Index dim) {
  Ball b;
  if (support.empty()) {
    b.center = Eigen::VectorXd::Zero(dim);
    b.radius = -1.0;
    return b;
  }
  const Eigen::VectorXd& p0 = support.front();
  if (support.size() == 1) {
    b.center = p0;
    return b;
  }
  const auto k = static_cast<Eigen::Index>(support.size()) - 1;
  Eigen::MatrixXd q(dim, k);
  for (Eigen::Index i = 0; i < k; ++i) q.col(i) = support[static_cast<std::size_t>(i) + 1] - p0;
  const Eigen::MatrixXd gram = 2.0 * q.transpose() * q;
  const Eigen::VectorXd rhs = q.colwise().squaredNorm().transpose();
  const Eigen::VectorXd gamma = gram.colPivHouseholderQr().solve(rhs);
  b.center = p0 + q * gamma;
  double r2 = 0.0;
  for (const auto& s : support) r2 = std::max(r2, (s - b.center).squaredNorm());
  b.radius = std::sqrt(r2);
  return b;
}

class MoveToFrontMiniball {
 public:
  explicit MoveToFrontMiniball(const Eigen::MatrixXd& points) : points_(points) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(points.cols()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    // Fixed-seed shuffle: expected linear time, still a function of the input order.
    std::mt19937_64 rng(0x5EEDBA11u);
    std::shuffle(order.begin(), order.end(), rng);
    list_.assign(order.begin(), order.end());
    ball_ = circumball({}, points.rows());
    recurse(list_.end());
  }

  const Ball& ball() const { return ball_; }

 private:
  bool outside(Eigen::Index i) const {
    if (ball_.radius < 0.0) return true;
    const double d2 = (points_.col(i) - ball_.center).squaredNorm();
    return d2 > ball_.radius * ball_.radius * (1.0 + 1e-12) + 1e-300;
  }

  void recurse(std::list<Eigen::Index>::iterator end) {
    ball_ = circumball(support_, points_.rows());
    if (static_cast<Eigen::Index>(support_.size()) == points_.rows() + 1) return;
    for (auto it = list_.begin(); it != end;) {
      auto next = std::next(it);
      if (outside(*it)) {
        support_.push_back(points_.col(*it));
        recurse(it);
        support_.pop_back();
        list_.splice(list_.begin(), list_, it);
      }
      it = next;
    }
  }

  const Eigen::MatrixXd& points_;
  std::list<Eigen::Index> list_;
  std::vector<Eigen::VectorXd> support_;
  Ball ball_;
};

}  // namespace

Ball enclosing_ball(const Eigen::MatrixXd& points) {
  if (points.cols() == 0) throw Error(ErrorKind::Parameter, "enclosing ball of an empty set");
  Ball b = MoveToFrontMiniball(points).ball();
  b.radius = std::max(0.0, b.radius);
  return b;
}

Ball enclosing_ball(const EmbeddedComplex& embedding) { return enclosing_ball(embedding.coords()); }

}  // namespace thick
