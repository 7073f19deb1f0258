#include "thick/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "thick/distance.hpp"
#include "thick/spatial_hash.hpp"

namespace thick {

double pair_distance(const EmbeddedComplex& embedding, SimplexId a, SimplexId b) {
  if (b < a) std::swap(a, b);
  return simplex_distance(embedding.simplex_points(a), embedding.simplex_points(b));
}

namespace {

struct Boxes {
  Eigen::MatrixXd lo;
  Eigen::MatrixXd hi;

  double gap(SimplexId i, SimplexId j) const {
    return (lo.col(j) - hi.col(i)).cwiseMax(lo.col(i) - hi.col(j)).cwiseMax(0.0).norm();
  }
};

Boxes bounding_boxes(const EmbeddedComplex& embedding) {
  const auto count = static_cast<Eigen::Index>(embedding.complex().simplex_count());
  Boxes b;
  b.lo.resize(embedding.ambient_dim(), count);
  b.hi.resize(embedding.ambient_dim(), count);
  for (Eigen::Index id = 0; id < count; ++id) {
    const PointSet pts = embedding.simplex_points(static_cast<SimplexId>(id));
    b.lo.col(id) = pts.rowwise().minCoeff();
    b.hi.col(id) = pts.rowwise().maxCoeff();
  }
  return b;
}

class MinTracker {
 public:
  MinTracker(const EmbeddedComplex& embedding, const Boxes& boxes)
      : embedding_(embedding), boxes_(boxes) {}

  void consider(SimplexId i, SimplexId j) {
    const SimplicialComplex& c = embedding_.complex();
    if (shares_vertex(c.simplex(i), c.simplex(j))) return;
    if (result_.value && boxes_.gap(i, j) > *result_.value) return;
    const double d = pair_distance(embedding_, i, j);
    const SimplexPair p{std::min(i, j), std::max(i, j)};
    if (!result_.value || d < *result_.value ||
        (d == *result_.value && std::pair(p.first, p.second) <
                                    std::pair(result_.witness.first, result_.witness.second))) {
      result_.value = d;
      result_.witness = p;
    }
  }

  const GGThickness& result() const { return result_; }

 private:
  const EmbeddedComplex& embedding_;
  const Boxes& boxes_;
  GGThickness result_;
};

GGThickness all_pairs(const EmbeddedComplex& embedding, const Boxes& boxes) {
  MinTracker tracker(embedding, boxes);
  const auto count = static_cast<SimplexId>(embedding.complex().simplex_count());
  for (SimplexId i = 0; i < count; ++i) {
    for (SimplexId j = i + 1; j < count; ++j) tracker.consider(i, j);
  }
  return tracker.result();
}

}  // namespace

GGThickness gg_thickness(const EmbeddedComplex& embedding) {
  const SimplicialComplex& c = embedding.complex();
  const std::size_t count = c.simplex_count();
  const Boxes boxes = bounding_boxes(embedding);
  if (count <= 256) return all_pairs(embedding, boxes);

  const double diameter =
      (boxes.hi.rowwise().maxCoeff() - boxes.lo.rowwise().minCoeff()).norm();
  std::vector<double> diagonals;
  for (SimplexId id = 0; id < count; ++id) {
    if (c.dim_of(id) > 0) diagonals.push_back((boxes.hi.col(id) - boxes.lo.col(id)).norm());
  }
  double cell = 0.0;
  if (!diagonals.empty()) {
    std::nth_element(diagonals.begin(), diagonals.begin() + diagonals.size() / 2, diagonals.end());
    cell = 0.5 * diagonals[diagonals.size() / 2];
  } else {
    cell = diameter / std::cbrt(static_cast<double>(count));
  }
  if (!(cell > 0.0)) cell = std::max(diameter, 1.0) * 1e-6;

  std::vector<SimplexId> ids(count);
  std::iota(ids.begin(), ids.end(), SimplexId{0});
  // Grid with margin cell/2 sees every pair closer than `cell`; a minimum at or
  // below `cell` is therefore global. Otherwise widen and retry.
  while (cell < diameter) {
    const SimplexGrid grid(embedding, cell, 0.5 * cell, ids);
    MinTracker tracker(embedding, boxes);
    for (const auto& [i, j] : grid.candidate_pairs()) tracker.consider(i, j);
    const GGThickness& r = tracker.result();
    if (r.value && *r.value <= cell) return r;
    cell *= 4.0;
  }
  return all_pairs(embedding, boxes);
}

Validity check_validity(const EmbeddedComplex& embedding) {
  const SimplicialComplex& c = embedding.complex();
  for (SimplexId id = 0; id < c.simplex_count(); ++id) {
    if (c.dim_of(id) > 0 && is_degenerate(embedding.simplex_points(id))) {
      return {false, "simplex " + std::to_string(id) + " is degenerate"};
    }
  }
  const GGThickness t = gg_thickness(embedding);
  if (t.value && !(*t.value > 0.0)) {
    return {false, "disjoint simplices " + std::to_string(t.witness.first) + " and " +
                       std::to_string(t.witness.second) + " intersect"};
  }
  return {};
}

ThicknessReport certify(const EmbeddedComplex& embedding) {
  ThicknessReport r;
  r.gg = gg_thickness(embedding);
  r.link = min_link_thickness(embedding);
  r.edges = edge_length_stats(embedding);
  r.enclosing_radius = enclosing_radius(embedding);
  return r;
}

}  // namespace thick
