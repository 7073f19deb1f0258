#include "thick/crossing.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "thick/distance.hpp"
#include "thick/error.hpp"
#include "thick/spatial_hash.hpp"

namespace thick {

std::size_t ball_crossing_count(const EmbeddedComplex& embedding, const Point& center, double radius) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Parameter, "ball radius must be positive");
  std::size_t count = 0;
  for (SimplexId id = 0; id < embedding.complex().simplex_count(); ++id) {
    if (point_simplex_distance(center, embedding.simplex_points(id)) <= radius) ++count;
  }
  return count;
}

namespace {

void for_each_lattice_point(const Ball& ball, double pitch, const std::function<void(const Point&)>& visit) {
  const auto n = ball.center.size();
  const double r2 = ball.radius * ball.radius * (1.0 + 1e-12);
  Point offset = Point::Zero(n);
  std::function<void(Eigen::Index, double)> recurse = [&](Eigen::Index axis, double used2) {
    if (axis == n) {
      visit(ball.center + offset);
      return;
    }
    const double room = std::sqrt(std::max(0.0, r2 - used2));
    const auto steps = static_cast<long>(std::floor(room / pitch));
    for (long s = -steps; s <= steps; ++s) {
      offset(axis) = static_cast<double>(s) * pitch;
      const double next = used2 + offset(axis) * offset(axis);
      if (next <= r2) recurse(axis + 1, next);
    }
    offset(axis) = 0.0;
  };
  recurse(0, 0.0);
}

}  // namespace

CrossingMax max_crossing(const EmbeddedComplex& embedding, double radius, const SampleSpec& spec,
                         const SimplexColoring* coloring) {
  if (!(radius > 0.0)) throw Error(ErrorKind::Parameter, "ball radius must be positive");
  const Ball ball = enclosing_ball(embedding);
  std::vector<SimplexId> ids(embedding.complex().simplex_count());
  std::iota(ids.begin(), ids.end(), SimplexId{0});
  const SimplexGrid grid(embedding, radius, radius, ids);

  CrossingMax out;
  out.argmax_center = ball.center;
  std::vector<std::size_t> per_color;
  if (coloring) {
    out.per_color_max.assign(static_cast<std::size_t>(coloring->color_count), 0);
    per_color.resize(out.per_color_max.size());
  }

  auto visit = [&](const Point& center) {
    ++out.centers;
    std::size_t count = 0;
    std::fill(per_color.begin(), per_color.end(), 0);
    for (SimplexId id : grid.cell_members(center)) {
      if (point_simplex_distance(center, embedding.simplex_points(id)) <= radius) {
        ++count;
        if (coloring) ++per_color[static_cast<std::size_t>(coloring->color[id])];
      }
    }
    if (count > out.max_count) {
      out.max_count = count;
      out.argmax_center = center;
    }
    for (std::size_t c = 0; c < per_color.size(); ++c) {
      out.per_color_max[c] = std::max(out.per_color_max[c], per_color[c]);
    }
  };

  if (spec.kind == SampleSpec::Kind::Lattice) {
    if (!(spec.pitch > 0.0)) throw Error(ErrorKind::Parameter, "lattice pitch must be positive");
    for_each_lattice_point(ball, spec.pitch, visit);
  } else {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    const auto n = ball.center.size();
    for (std::size_t s = 0; s < spec.samples; ++s) {
      Point dir(n);
      for (Eigen::Index i = 0; i < n; ++i) dir(i) = normal(rng);
      const double norm = dir.norm();
      if (norm == 0.0) continue;
      const double r = ball.radius * std::pow(uniform(rng), 1.0 / static_cast<double>(n));
      visit(ball.center + dir * (r / norm));
    }
  }
  return out;
}

}  // namespace thick
