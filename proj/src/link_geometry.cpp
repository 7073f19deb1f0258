#include "thick/link_geometry.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <queue>

#include "thick/distance.hpp"
#include "thick/error.hpp"

namespace thick {

PointSet SphericalLinkEmbedding::simplex_vectors(SimplexId link_simplex) const {
  const Simplex& s = link.complex.simplex(link_simplex);
  PointSet out(vectors.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = vectors.col(s[i]);
  return out;
}

SphericalLinkEmbedding link_embedding(const EmbeddedComplex& embedding, const Simplex& sigma) {
  SphericalLinkEmbedding out;
  out.base = sigma;
  out.link = link(embedding.complex(), sigma);
  const int n = embedding.ambient_dim();
  out.sphere_dim = n - simplex_dimension(sigma) - 1;

  const PointSet base = embedding.simplex_points(sigma);
  if (is_degenerate(base)) throw Error(ErrorKind::DegenerateSimplex, "link base simplex is degenerate");
  const Point barycenter = base.rowwise().mean();

  Eigen::MatrixXd normal_basis;  // orthonormal basis of the direction space of aff(sigma)
  if (base.cols() > 1) {
    Eigen::MatrixXd edges(n, base.cols() - 1);
    for (Eigen::Index i = 1; i < base.cols(); ++i) edges.col(i - 1) = base.col(i) - base.col(0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(edges);
    normal_basis = qr.householderQ() * Eigen::MatrixXd::Identity(n, edges.cols());
  }

  const double scale = std::sqrt(std::max(longest_edge_squared(base), 1e-300));
  out.vectors.resize(n, static_cast<Eigen::Index>(out.link.parent_vertex.size()));
  for (std::size_t j = 0; j < out.link.parent_vertex.size(); ++j) {
    Eigen::VectorXd v = embedding.point(out.link.parent_vertex[j]) - barycenter;
    if (normal_basis.size() > 0) v -= normal_basis * (normal_basis.transpose() * v);
    const double norm = v.norm();
    const double reference = std::max(scale, (embedding.point(out.link.parent_vertex[j]) - barycenter).norm());
    if (!(norm > 1e-12 * reference)) {
      throw Error(ErrorKind::DegenerateLink, "link vertex projects to the zero vector");
    }
    out.vectors.col(static_cast<Eigen::Index>(j)) = v / norm;
  }
  return out;
}

double unit_angle(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return 2.0 * std::atan2((u - v).norm(), (u + v).norm());
}

namespace {

struct ConeCell {
  PointSet vectors;
  Eigen::VectorXd axis;
  double spread = 0.0;  // largest angle between axis and a generator
};

ConeCell make_cell(PointSet vectors) {
  ConeCell c;
  c.axis = vectors.rowwise().mean();
  const double norm = c.axis.norm();
  if (!(norm > 1e-14)) throw Error(ErrorKind::DegenerateLink, "spherical simplex is not pointed");
  c.axis /= norm;
  for (Eigen::Index i = 0; i < vectors.cols(); ++i) {
    c.spread = std::max(c.spread, unit_angle(c.axis, vectors.col(i)));
  }
  c.vectors = std::move(vectors);
  return c;
}

std::pair<ConeCell, ConeCell> split(const ConeCell& c) {
  Eigen::Index bi = 0;
  Eigen::Index bj = 1;
  double longest = -1.0;
  for (Eigen::Index i = 0; i < c.vectors.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < c.vectors.cols(); ++j) {
      const double d = (c.vectors.col(i) - c.vectors.col(j)).squaredNorm();
      if (d > longest) { longest = d; bi = i; bj = j; }
    }
  }
  const Eigen::VectorXd mid = (c.vectors.col(bi) + c.vectors.col(bj)).normalized();
  PointSet left = c.vectors;
  PointSet right = c.vectors;
  left.col(bj) = mid;
  right.col(bi) = mid;
  return {make_cell(std::move(left)), make_cell(std::move(right))};
}

struct Node {
  ConeCell a;
  ConeCell b;
  double lower = 0.0;
  double upper = 0.0;
};

// Two lower bounds: the circular cones around each cell's axis (first
// order), and the Euclidean gap between the chordal hulls corrected by how far
// those hulls dip below the unit sphere (second order).
Node evaluate(ConeCell a, ConeCell b) {
  Node node;
  const double axis_angle = unit_angle(a.axis, b.axis);
  const double first_order = axis_angle - a.spread - b.spread;

  const ClosestPoints cp = closest_points(a.vectors, b.vectors);
  const double depth_a = 1.0 - min_norm_point(a.vectors).point.norm();
  const double depth_b = 1.0 - min_norm_point(b.vectors).point.norm();
  const double chord = cp.distance - depth_a - depth_b;
  const double second_order = chord > 0.0 ? 2.0 * std::asin(std::min(1.0, 0.5 * chord)) : 0.0;

  node.lower = std::max({0.0, first_order, second_order});
  node.upper = axis_angle;
  const double na = cp.on_a.norm();
  const double nb = cp.on_b.norm();
  if (na > 1e-14 && nb > 1e-14) {
    node.upper = std::min(node.upper, unit_angle(cp.on_a / na, cp.on_b / nb));
  }
  node.lower = std::min(node.lower, node.upper);
  node.a = std::move(a);
  node.b = std::move(b);
  return node;
}

}  // namespace

double cone_angle(const PointSet& u, const PointSet& w, double tolerance, double cutoff) {
  if (u.rows() != w.rows()) throw Error(ErrorKind::DimensionMismatch, "cone generators differ in dimension");
  auto worse = [](const Node& x, const Node& y) { return x.lower > y.lower; };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);

  Node root = evaluate(make_cell(u), make_cell(w));
  double best_upper = root.upper;
  open.push(std::move(root));

  constexpr std::size_t kMaxNodes = 200000;
  std::size_t expanded = 0;
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    if (node.lower >= cutoff) return node.lower;
    if (best_upper - node.lower <= tolerance) return node.lower;
    if (++expanded > kMaxNodes) return node.lower;

    const bool split_a = node.a.vectors.cols() > 1 &&
                         (node.b.vectors.cols() == 1 || node.a.spread >= node.b.spread);
    if (!split_a && node.b.vectors.cols() == 1) {
      // Both cells are single rays: the bound is exact.
      best_upper = std::min(best_upper, node.upper);
      open.push(std::move(node));
      continue;
    }
    auto [left, right] = split_a ? split(node.a) : split(node.b);
    for (ConeCell* half : {&left, &right}) {
      Node child = split_a ? evaluate(std::move(*half), node.b) : evaluate(node.a, std::move(*half));
      child.lower = std::max(child.lower, node.lower);
      best_upper = std::min(best_upper, child.upper);
      open.push(std::move(child));
    }
  }
  return best_upper;
}

LinkThickness link_thickness(const SphericalLinkEmbedding& lk, double cutoff) {
  LinkThickness out;
  const SimplicialComplex& c = lk.link.complex;
  double best = cutoff;
  for (SimplexId i = 0; i < c.simplex_count(); ++i) {
    for (SimplexId j = i + 1; j < c.simplex_count(); ++j) {
      if (shares_vertex(c.simplex(i), c.simplex(j))) continue;
      const double angle = cone_angle(lk.simplex_vectors(i), lk.simplex_vectors(j), 1e-7, best);
      if (!out.angle || angle < *out.angle) {
        out.angle = angle;
        out.witness = {i, j};
        best = std::min(best, angle);
      }
    }
  }
  return out;
}

LinkThickness link_thickness(const EmbeddedComplex& embedding, const Simplex& sigma) {
  return link_thickness(link_embedding(embedding, sigma));
}

MinLinkThickness min_link_thickness(const EmbeddedComplex& embedding) {
  MinLinkThickness out;
  const SimplicialComplex& c = embedding.complex();
  for (SimplexId id = 0; id < c.simplex_count(); ++id) {
    // A link with at most one vertex has no disjoint pair.
    if (c.star(c.simplex(id).front()).size() < 3) continue;
    const SphericalLinkEmbedding lk = link_embedding(embedding, c.simplex(id));
    if (lk.link.complex.vertex_count() < 2) continue;
    const double cutoff = out.angle ? *out.angle : std::numeric_limits<double>::infinity();
    const LinkThickness t = link_thickness(lk, cutoff);
    if (t.angle && (!out.angle || *t.angle < *out.angle)) {
      out.angle = t.angle;
      out.base = id;
      out.parents = {lk.link.parent_simplex[t.witness.first], lk.link.parent_simplex[t.witness.second]};
    }
  }
  return out;
}

}  // namespace thick
