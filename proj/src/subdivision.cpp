#include "thick/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "thick/error.hpp"
#include "thick/link_geometry.hpp"

namespace thick {

namespace {

bool key_less(const LatticePoint& a, const LatticePoint& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Lattice point in staircase coordinates y (t >= y_1 >= ... >= y_d >= 0)
// converted to numerators over the parent vertices.
LatticePoint to_lattice(const Simplex& parent, const std::vector<int>& y, int t) {
  LatticePoint out;
  const std::size_t d = y.size();
  for (std::size_t i = 0; i <= d; ++i) {
    const int hi = i == 0 ? t : y[i - 1];
    const int lo = i == d ? 0 : y[i];
    if (hi - lo > 0) out.emplace_back(parent[i], static_cast<std::uint32_t>(hi - lo));
  }
  return out;
}

bool in_region(const std::vector<int>& y, int t) {
  int prev = t;
  for (int v : y) {
    if (v > prev || v < 0) return false;
    prev = v;
  }
  return true;
}

// Children of one d-simplex as lattice-point tuples (Freudenthal cubes cut
// by the staircase region).
std::vector<std::vector<LatticePoint>> subdivide_simplex(const Simplex& parent, int t) {
  const int d = simplex_dimension(parent);
  std::vector<std::vector<LatticePoint>> out;
  if (d == 0) {
    out.push_back({LatticePoint{{parent[0], static_cast<std::uint32_t>(t)}}});
    return out;
  }
  std::vector<int> z(static_cast<std::size_t>(d), 0);
  std::vector<int> perm(static_cast<std::size_t>(d));
  while (true) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<int> y = z;
      bool ok = in_region(y, t);
      std::vector<LatticePoint> simplex{to_lattice(parent, y, t)};
      for (int step : perm) {
        if (!ok) break;
        ++y[static_cast<std::size_t>(step)];
        ok = in_region(y, t);
        simplex.push_back(to_lattice(parent, y, t));
      }
      if (ok) out.push_back(std::move(simplex));
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::size_t i = 0;
    while (i < z.size() && ++z[i] == t) z[i++] = 0;
    if (i == z.size()) break;
  }
  return out;
}

}  // namespace

std::vector<SimplexId> SubdivisionMap::children_of(SimplexId parent_simplex) const {
  std::vector<SimplexId> out;
  const int d = parent.dim_of(parent_simplex);
  const auto [lo, hi] = child.dim_range(d);
  for (SimplexId id = lo; id < hi; ++id) {
    if (carrier[id] == parent_simplex) out.push_back(id);
  }
  return out;
}

SubdivisionMap edgewise_subdivide(const SimplicialComplex& complex, std::uint32_t t) {
  if (t == 0) throw Error(ErrorKind::Parameter, "subdivision parameter must be at least 1");
  const int ti = static_cast<int>(t);

  std::vector<std::vector<LatticePoint>> raw;
  for (SimplexId top : complex.maximal_simplices()) {
    auto children = subdivide_simplex(complex.simplex(top), ti);
    raw.insert(raw.end(), std::make_move_iterator(children.begin()), std::make_move_iterator(children.end()));
  }

  std::vector<LatticePoint> keys;
  for (const auto& s : raw) keys.insert(keys.end(), s.begin(), s.end());
  std::sort(keys.begin(), keys.end(), key_less);
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::map<LatticePoint, VertexId> id_of;
  for (std::size_t i = 0; i < keys.size(); ++i) id_of.emplace(keys[i], static_cast<VertexId>(i));

  std::vector<Simplex> tops;
  tops.reserve(raw.size());
  for (const auto& s : raw) {
    Simplex ids;
    for (const auto& p : s) ids.push_back(id_of.at(p));
    std::sort(ids.begin(), ids.end());
    tops.push_back(std::move(ids));
  }

  SubdivisionMap map;
  map.parent = complex;
  map.t = t;
  map.child = SimplicialComplex::build(tops, keys.size(), complex.dimension());
  map.vertex_coords = std::move(keys);
  map.carrier.resize(map.child.simplex_count());
  for (SimplexId id = 0; id < map.child.simplex_count(); ++id) {
    Simplex support;
    for (VertexId v : map.child.simplex(id)) {
      for (const auto& [pv, num] : map.vertex_coords[v]) support.push_back(pv);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    map.carrier[id] = *complex.find(support);
  }
  return map;
}

EmbeddedComplex subdivide_embedding(const EmbeddedComplex& embedding, const SubdivisionMap& map) {
  if (!(map.parent == embedding.complex())) {
    throw Error(ErrorKind::DimensionMismatch, "subdivision map does not match the embedded complex");
  }
  Eigen::MatrixXd coords(embedding.ambient_dim(), static_cast<Eigen::Index>(map.vertex_coords.size()));
  const double t = static_cast<double>(map.t);
  for (std::size_t v = 0; v < map.vertex_coords.size(); ++v) {
    const LatticePoint& lp = map.vertex_coords[v];
    auto col = coords.col(static_cast<Eigen::Index>(v));
    if (lp.size() == 1) {
      col = embedding.point(lp[0].first);
      continue;
    }
    col.setZero();
    for (const auto& [pv, num] : lp) col += (static_cast<double>(num) / t) * embedding.point(pv);
  }
  return {map.child, std::move(coords)};
}

EmbeddedComplex subdivide_embedding(const EmbeddedComplex& embedding, std::uint32_t t) {
  return subdivide_embedding(embedding, edgewise_subdivide(embedding.complex(), t));
}

std::size_t isometry_class_count(const EmbeddedComplex& child, const SubdivisionMap& map,
                                 SimplexId parent_simplex) {
  const Simplex& ps = map.parent.simplex(parent_simplex);
  PointSet corners(child.ambient_dim(), static_cast<Eigen::Index>(ps.size()));
  for (std::size_t i = 0; i < ps.size(); ++i) corners.col(static_cast<Eigen::Index>(i)) = child.point(ps[i]);
  if (is_degenerate(corners)) throw Error(ErrorKind::DegenerateSimplex, "parent simplex is degenerate");

  std::vector<std::vector<double>> reps;
  for (SimplexId id : map.children_of(parent_simplex)) {
    const PointSet p = child.simplex_points(id);
    std::vector<double> lengths;
    for (Eigen::Index i = 0; i < p.cols(); ++i) {
      for (Eigen::Index j = i + 1; j < p.cols(); ++j) lengths.push_back((p.col(i) - p.col(j)).norm());
    }
    std::sort(lengths.begin(), lengths.end());
    const bool known = std::any_of(reps.begin(), reps.end(), [&](const std::vector<double>& r) {
      const double scale = std::max(r.empty() ? 0.0 : r.back(), lengths.empty() ? 0.0 : lengths.back());
      for (std::size_t k = 0; k < r.size(); ++k) {
        if (std::abs(r[k] - lengths[k]) > 1e-9 * scale) return false;
      }
      return true;
    });
    if (!known) reps.push_back(std::move(lengths));
  }
  return reps.size();
}

Eigen::MatrixXd regular_simplex(int d) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d + 1);
  for (int k = 1; k <= d; ++k) {
    const Eigen::VectorXd centroid = p.leftCols(k).rowwise().mean();
    // Circumradius of a regular (k-1)-simplex with unit edges.
    const double r2 = static_cast<double>(k - 1) / (2.0 * static_cast<double>(k));
    p.col(k) = centroid;
    p(k - 1, k) += std::sqrt(1.0 - r2);
  }
  return p;
}

namespace {

// Backtracking search for a map of a's link vertices into b's (injective;
// bijective when `onto`) preserving pairwise inner products within `tol` and
// carrying link simplices to link simplices.
class LinkMatcher {
 public:
  LinkMatcher(const SphericalLinkEmbedding& a, const SphericalLinkEmbedding& b, double tol, bool onto)
      : a_(a), b_(b), tol_(tol), onto_(onto), ga_(a.vectors.transpose() * a.vectors),
        gb_(b.vectors.transpose() * b.vectors) {}

  bool run() {
    const auto na = static_cast<std::size_t>(a_.vectors.cols());
    const auto nb = static_cast<std::size_t>(b_.vectors.cols());
    if (na > nb || (onto_ && na != nb)) return false;
    if (onto_ && a_.link.complex.simplex_count() != b_.link.complex.simplex_count()) return false;
    assign_.assign(na, 0);
    used_.assign(nb, false);
    return extend(0);
  }

 private:
  bool extend(std::size_t i) {
    if (i == assign_.size()) return simplices_preserved();
    for (std::size_t cand = 0; cand < used_.size(); ++cand) {
      if (used_[cand]) continue;
      bool fits = true;
      for (std::size_t j = 0; j <= i && fits; ++j) {
        const std::size_t bj = j == i ? cand : assign_[j];
        fits = std::abs(ga_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) -
                        gb_(static_cast<Eigen::Index>(cand), static_cast<Eigen::Index>(bj))) <= tol_;
      }
      if (!fits) continue;
      assign_[i] = cand;
      used_[cand] = true;
      if (extend(i + 1)) return true;
      used_[cand] = false;
    }
    return false;
  }

  bool simplices_preserved() const {
    for (const Simplex& s : a_.link.complex.simplices()) {
      Simplex image;
      for (VertexId v : s) image.push_back(static_cast<VertexId>(assign_[v]));
      std::sort(image.begin(), image.end());
      if (!b_.link.complex.contains(image)) return false;
    }
    return true;
  }

  const SphericalLinkEmbedding& a_;
  const SphericalLinkEmbedding& b_;
  double tol_;
  bool onto_;
  Eigen::MatrixXd ga_;
  Eigen::MatrixXd gb_;
  std::vector<std::size_t> assign_;
  std::vector<bool> used_;
};

}  // namespace

LinkIsometryReport interior_link_isometry_check(int d, std::uint32_t t, double tolerance) {
  if (d < 1) throw Error(ErrorKind::Parameter, "dimension must be at least 1");
  Simplex top(static_cast<std::size_t>(d + 1));
  std::iota(top.begin(), top.end(), VertexId{0});
  const auto parent = SimplicialComplex::build(std::vector<Simplex>{top}, top.size());
  const SubdivisionMap map = edgewise_subdivide(parent, t);
  const EmbeddedComplex child = subdivide_embedding(EmbeddedComplex(parent, regular_simplex(d)), map);

  LinkIsometryReport report;
  std::optional<SphericalLinkEmbedding> reference;
  std::vector<VertexId> boundary;
  for (VertexId v = 0; v < child.vertex_count(); ++v) {
    if (map.vertex_coords[v].size() != top.size()) {
      boundary.push_back(v);
      continue;
    }
    ++report.interior_vertices;
    SphericalLinkEmbedding lk = link_embedding(child, {v});
    if (!reference) {
      reference = std::move(lk);
    } else if (report.interior_ok && !LinkMatcher(lk, *reference, tolerance, true).run()) {
      report.interior_ok = false;
      report.failing_vertex = v;
    }
  }
  report.boundary_vertices = boundary.size();
  if (!reference) {
    report.vacuous = true;
    return report;
  }
  for (VertexId v : boundary) {
    if (!LinkMatcher(link_embedding(child, {v}), *reference, tolerance, false).run()) {
      report.boundary_ok = false;
      if (!report.failing_vertex) report.failing_vertex = v;
      break;
    }
  }
  return report;
}

}  // namespace thick
