#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "thick/crossing.hpp"
#include "thick/distance.hpp"
#include "thick/error.hpp"
#include "thick/link_geometry.hpp"
#include "thick/thickness.hpp"

using namespace thick;
using doctest::Approx;

namespace {

PointSet pts(std::initializer_list<std::initializer_list<double>> cols) {
  const auto n = static_cast<Eigen::Index>(cols.begin()->size());
  PointSet p(n, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index j = 0;
  for (const auto& c : cols) {
    Eigen::Index i = 0;
    for (double x : c) p(i++, j) = x;
    ++j;
  }
  return p;
}

EmbeddedComplex unit_square() {
  auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4);
  return {c, pts({{0, 0}, {1, 0}, {1, 1}, {0, 1}})};
}

}  // namespace

TEST_CASE("simplex_distance examples") {
  CHECK(simplex_distance(pts({{0, 0}}), pts({{3, 4}})) == Approx(5.0).epsilon(1e-12));
  CHECK(simplex_distance(pts({{0, 0}, {1, 0}}), pts({{2, 0}})) == Approx(1.0).epsilon(1e-12));
  CHECK(simplex_distance(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), pts({{0, 0, 2}})) ==
        Approx(2.0).epsilon(1e-12));
  const PointSet a = pts({{0, 0}, {1, 1}});
  const PointSet b = pts({{1, 0}, {2, -1}});
  const double oracle = oracle::grid_refine_distance(a, b);
  CHECK(std::abs(simplex_distance(a, b) - oracle) <= 1e-6);
  CHECK(simplex_distance(a, b) == Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(simplex_distance(pts({{0, 0}}), pts({{0, 0, 0}})), Error);
}

TEST_CASE("simplex_distance agrees with the grid oracle and is symmetric") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = dim(rng);
    const PointSet a = oracle::random_points(n, size(rng), rng);
    PointSet b = oracle::random_points(n, size(rng), rng);
    if (trial % 3 == 0) b.array() += 1.5;  // separated instances too
    const double d = simplex_distance(a, b);
    CHECK(std::abs(d - oracle::grid_refine_distance(a, b, 4000)) <= 1e-6);
    CHECK(std::abs(d - simplex_distance(b, a)) <= 1e-12);
  }
}

TEST_CASE("closest points realise the distance") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const PointSet a = oracle::random_points(3, 3, rng);
    PointSet b = oracle::random_points(3, 2, rng);
    b.row(0).array() += 2.0;
    const ClosestPoints cp = closest_points(a, b);
    CHECK(cp.weights_a.minCoeff() >= -1e-12);
    CHECK(cp.weights_a.sum() == Approx(1.0));
    CHECK((cp.on_a - cp.on_b).norm() == Approx(cp.distance).epsilon(1e-9));
  }
}

TEST_CASE("gg_thickness examples") {
  auto tri = SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}}, 3);
  // A vertex and its opposite edge share no vertex.
  const GGThickness tt = gg_thickness(EmbeddedComplex(tri, pts({{0, 0}, {1, 0}, {0, 1}})));
  REQUIRE(tt.value);
  CHECK(*tt.value == Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK_FALSE(gg_thickness(EmbeddedComplex(SimplicialComplex::build({}, 1), pts({{0, 0}}))).value);

  auto two = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {2, 3}}, 4);
  const EmbeddedComplex parallel(two, pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  const GGThickness t = gg_thickness(parallel);
  REQUIRE(t.value);
  CHECK(*t.value == Approx(1.0).epsilon(1e-12));
  CHECK(oracle::brute_force_gg(parallel).value == t.value);

  const GGThickness sq = gg_thickness(unit_square());
  REQUIRE(sq.value);
  CHECK(*sq.value == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gg_thickness matches the brute-force oracle on larger complexes") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 3;
    const auto c = oracle::random_complex(60, 2, 120, rng);
    const EmbeddedComplex e(c, oracle::random_points(n, 60, rng, 5.0));
    REQUIRE(c.simplex_count() > 256);  // exercises the grid path
    const GGThickness fast = gg_thickness(e);
    const GGThickness slow = oracle::brute_force_gg(e);
    REQUIRE(fast.value);
    CHECK(*fast.value == *slow.value);
    CHECK(fast.witness == slow.witness);
  }
}

TEST_CASE("gg_thickness scales and is isometry invariant") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = oracle::random_complex(12, 2, 10, rng);
    const EmbeddedComplex e(c, oracle::random_points(4, 12, rng));
    const double t = *gg_thickness(e).value;
    CHECK(*gg_thickness(e.scaled(2.5)).value == Approx(2.5 * t).epsilon(1e-10));
    const Eigen::MatrixXd q = oracle::random_rotation(4, rng);
    Eigen::MatrixXd moved = q * e.coords();
    moved.colwise() += Eigen::Vector4d(1.0, -2.0, 0.5, 3.0);
    CHECK(std::abs(*gg_thickness(EmbeddedComplex(c, moved)).value - t) <= 1e-8);
  }
}

TEST_CASE("link_embedding examples") {
  SUBCASE("square corner") {
    const auto lk = link_embedding(unit_square(), {0});
    CHECK(lk.sphere_dim == 1);
    REQUIRE(lk.vectors.cols() == 2);
    CHECK((lk.vectors.col(0) - Eigen::Vector2d(1, 0)).norm() < 1e-12);
    CHECK((lk.vectors.col(1) - Eigen::Vector2d(0, 1)).norm() < 1e-12);
    CHECK(*link_thickness(unit_square(), {0}).angle == Approx(std::numbers::pi / 2).epsilon(1e-12));
  }
  SUBCASE("edge of a regular tetrahedron") {
    auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 4);
    const EmbeddedComplex e(c, pts({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}));
    const auto lk = link_embedding(e, {0, 1});
    REQUIRE(lk.vectors.cols() == 2);
    const Eigen::Vector3d dir = e.point(1) - e.point(0);
    for (Eigen::Index j = 0; j < 2; ++j) {
      CHECK(std::abs(lk.vectors.col(j).norm() - 1.0) < 1e-9);
      CHECK(std::abs(lk.vectors.col(j).dot(dir)) < 1e-9);
    }
  }
  SUBCASE("collinear path in R^1") {
    auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}}, 3);
    const EmbeddedComplex e(c, pts({{0}, {1}, {2}}));
    const auto lk = link_embedding(e, {1});
    CHECK(lk.vectors(0, 0) == Approx(-1.0));
    CHECK(lk.vectors(0, 1) == Approx(1.0));
    CHECK(*link_thickness(e, {1}).angle == Approx(std::numbers::pi).epsilon(1e-12));
  }
  SUBCASE("single-simplex link has no disjoint pairs") {
    auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}}, 2);
    const EmbeddedComplex e(c, pts({{0, 0}, {1, 0}}));
    CHECK_FALSE(link_thickness(e, {0}).angle);
  }
  SUBCASE("degenerate base and degenerate link vertex") {
    auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}}, 3);
    const EmbeddedComplex flat(c, pts({{0, 0}, {1, 0}, {2, 0}}));
    try {
      link_embedding(flat, {0, 2});
      FAIL("expected degenerate link");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::DegenerateLink);
    }
    const EmbeddedComplex collapsed(c, pts({{0, 0}, {0, 0}, {1, 1}}));
    try {
      link_embedding(collapsed, {0, 1});
      FAIL("expected degenerate simplex");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::DegenerateSimplex);
    }
  }
}

TEST_CASE("cone_angle is a tight lower bound") {
  // Sampled oracle: the true minimum is at most the best sampled angle; the
  // certified value must not exceed it and must be within 1e-4 of it when the
  // sampling is dense.
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  auto unit_cols = [&](int n, int m) {
    PointSet p(n, m);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) p(i, j) = g(rng);
      p.col(j).normalize();
    }
    return p;
  };
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 3;
    PointSet u = unit_cols(n, 2);
    PointSet w = unit_cols(n, 1 + trial % 2);
    // Keep cones pointed and reasonably narrow.
    u.col(1) = (u.col(0) + 0.8 * u.col(1)).normalized();
    if (w.cols() == 2) w.col(1) = (w.col(0) + 0.8 * w.col(1)).normalized();
    double sampled = 10.0;
    for (const auto& l : oracle::barycentric_grid(u.cols(), 400)) {
      const Eigen::VectorXd x = (u * l).normalized();
      for (const auto& m : oracle::barycentric_grid(w.cols(), w.cols() == 1 ? 1 : 400)) {
        sampled = std::min(sampled, unit_angle(x, (w * m).normalized()));
      }
    }
    const double certified = cone_angle(u, w, 1e-7);
    CHECK(certified <= sampled + 1e-12);
    CHECK(sampled - certified <= 1e-4);
  }
}

TEST_CASE("link thickness is scale and isometry invariant") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = oracle::random_complex(8, 2, 8, rng);
    const EmbeddedComplex e(c, oracle::random_points(5, 8, rng));
    const Eigen::MatrixXd q = oracle::random_rotation(5, rng);
    const EmbeddedComplex moved(c, 3.0 * (q * e.coords()));
    for (VertexId v = 0; v < 8; ++v) {
      const auto a = link_thickness(e, {v}).angle;
      const auto b = link_thickness(moved, {v}).angle;
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(std::abs(*a - *b) <= 1e-6);
    }
  }
}

TEST_CASE("edge_length_stats") {
  const auto sq = edge_length_stats(unit_square());
  REQUIRE(sq);
  CHECK(sq->min == Approx(1.0));
  CHECK(sq->max == Approx(1.0));
  auto path = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}}, 3);
  const auto st = edge_length_stats(EmbeddedComplex(path, pts({{0}, {1}, {3}})));
  CHECK(st->min == Approx(1.0));
  CHECK(st->max == Approx(2.0));
  CHECK_FALSE(edge_length_stats(EmbeddedComplex(SimplicialComplex::build({}, 2), pts({{0}, {1}}))));
}

TEST_CASE("ball_crossing_count examples") {
  const auto sq = unit_square();
  const Eigen::Vector2d mid(0.5, 0.5);
  CHECK(ball_crossing_count(sq, mid, 0.4) == 0);
  CHECK(ball_crossing_count(sq, mid, 0.6) == 4);
  CHECK(ball_crossing_count(sq, Eigen::Vector2d(0, 0), 0.1) == 3);
  CHECK_THROWS_AS(ball_crossing_count(sq, mid, 0.0), Error);
}

TEST_CASE("ball_crossing_count is monotone in the radius") {
  std::mt19937_64 rng(31);
  const auto c = oracle::random_complex(15, 2, 12, rng);
  const EmbeddedComplex e(c, oracle::random_points(3, 15, rng));
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd p = oracle::random_points(3, 1, rng).col(0);
    std::size_t prev = 0;
    for (double r = 0.05; r < 3.0; r += 0.05) {
      const std::size_t now = ball_crossing_count(e, p, r);
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("max_crossing on the unit square") {
  const auto sq = unit_square();
  SampleSpec spec;
  spec.pitch = 0.25;
  const CrossingMax m = max_crossing(sq, 0.6, spec);
  // Independent enumeration of the same lattice with the direct counter.
  std::size_t expected = 0;
  const Eigen::Vector2d c(0.5, 0.5);
  for (int i = -4; i <= 4; ++i) {
    for (int j = -4; j <= 4; ++j) {
      const Eigen::Vector2d p = c + 0.25 * Eigen::Vector2d(i, j);
      if ((p - c).norm() <= std::sqrt(0.5) + 1e-12) expected = std::max(expected, ball_crossing_count(sq, p, 0.6));
    }
  }
  CHECK(m.max_count == expected);
  // (0.25, 0.5) meets three edges and two vertices.
  CHECK(expected == 5);
  CHECK(m.max_count >= ball_crossing_count(sq, c, 0.6));

  spec.kind = SampleSpec::Kind::Random;
  spec.samples = 500;
  spec.seed = 3;
  const auto coloring = color_simplices(sq.complex());
  const CrossingMax r = max_crossing(sq, 0.6, spec, &coloring);
  std::size_t sum = 0;
  for (std::size_t v : r.per_color_max) {
    CHECK(v <= r.max_count);
    sum += v;
  }
  CHECK(r.max_count <= sum);
  CHECK(r.max_count <= expected);
}

TEST_CASE("simplex_quality") {
  CHECK(simplex_quality(pts({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}})) ==
        Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
  CHECK(simplex_quality(pts({{0, 0}, {1, 0}, {2, 0}})) == 0.0);
  CHECK(simplex_quality(pts({{0, 0}, {1, 0}, {0, 1}})) == Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(simplex_quality(pts({{0, 0}})), Error);

  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    const PointSet p = oracle::random_points(3, 4, rng);
    const double q = simplex_quality(p);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    const Eigen::MatrixXd rot = oracle::random_rotation(3, rng);
    PointSet moved = 4.0 * (rot * p);
    moved.colwise() += Eigen::Vector3d(1, 2, 3);
    CHECK(std::abs(simplex_quality(moved) - q) <= 1e-9);
  }
}

TEST_CASE("enclosing_radius") {
  CHECK(enclosing_radius(EmbeddedComplex(SimplicialComplex::build({}, 1), pts({{3, 4}}))) == 0.0);
  CHECK(enclosing_radius(EmbeddedComplex(SimplicialComplex::build({}, 2), pts({{0, 0}, {2, 0}}))) ==
        Approx(1.0).epsilon(1e-12));
  CHECK(enclosing_radius(unit_square()) == Approx(std::sqrt(2.0) / 2).epsilon(1e-12));

  // Against the sphere-point configuration: points on a sphere of radius 2
  // covering all directions have enclosing radius 2.
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Eigen::MatrixXd p(3, 400);
  for (int j = 0; j < 400; ++j) {
    p.col(j) = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized() * 2.0;
  }
  const Ball b = enclosing_ball(p);
  CHECK(b.radius <= 2.0 + 1e-8);
  CHECK(b.radius >= 1.9);
  for (int j = 0; j < 400; ++j) CHECK((p.col(j) - b.center).norm() <= b.radius + 1e-8);
}

TEST_CASE("validity check") {
  auto two = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {2, 3}}, 4);
  CHECK(check_validity(EmbeddedComplex(two, pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}))).valid);
  CHECK_FALSE(check_validity(EmbeddedComplex(two, pts({{0, 0}, {1, 1}, {0, 1}, {1, 0}}))).valid);
}
