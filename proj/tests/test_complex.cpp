#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "thick/complex.hpp"
#include "thick/error.hpp"

using namespace thick;

namespace {

SimplicialComplex tetra_boundary() {
  return SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}, 4);
}

SimplicialComplex octahedron() {
  // Antipodal pairs (0,5), (1,4), (2,3) are not adjacent.
  return SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}, {0, 2, 4}, {0, 3, 4}, {0, 1, 3},
                                                       {5, 1, 2}, {5, 2, 4}, {5, 3, 4}, {5, 1, 3}},
                                  6);
}

}  // namespace

TEST_CASE("build_complex closes faces") {
  const auto tri = SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}}, 3);
  CHECK(tri.count(0) == 3);
  CHECK(tri.count(1) == 3);
  CHECK(tri.count(2) == 1);
  CHECK(tri.dimension() == 2);

  const auto isolated = SimplicialComplex::build({}, 5);
  CHECK(isolated.count(0) == 5);
  CHECK(isolated.simplex_count() == 5);

  const auto cycle = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4);
  CHECK(cycle.count(0) == 4);
  CHECK(cycle.count(1) == 4);
}

TEST_CASE("build_complex rejects malformed input") {
  CHECK_THROWS_AS(SimplicialComplex::build(std::vector<Simplex>{{0, 0, 1}}, 3), Error);
  try {
    SimplicialComplex::build(std::vector<Simplex>{{0, 0, 1}}, 3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedSimplex);
  }
  try {
    SimplicialComplex::build(std::vector<Simplex>{{0, 7}}, 3);
    FAIL("expected range error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Range);
  }
  CHECK_THROWS_AS(SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}}, 3, 1), Error);
}

TEST_CASE("face closure is idempotent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = oracle::random_complex(12, 3, 8, rng);
    const auto again = SimplicialComplex::build(c.simplices(), c.vertex_count(), c.dimension());
    CHECK(again == c);
  }
}

TEST_CASE("link examples") {
  SUBCASE("edge of the tetrahedron boundary") {
    const Link lk = link(tetra_boundary(), {0, 1});
    CHECK(lk.complex.vertex_count() == 2);
    CHECK(lk.complex.simplex_count() == 2);
    CHECK(lk.parent_vertex == std::vector<VertexId>{2, 3});
  }
  SUBCASE("vertex of a 3-cycle") {
    const auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {0, 2}}, 3);
    const Link lk = link(c, {0});
    CHECK(lk.complex.vertex_count() == 2);
    CHECK(lk.complex.count(1) == 0);
  }
  SUBCASE("vertex of the octahedron") {
    const Link lk = link(octahedron(), {0});
    REQUIRE(lk.parent_vertex == std::vector<VertexId>{1, 2, 3, 4});
    CHECK(lk.complex.count(1) == 4);
    // 4-cycle 1-2-4-3-1 in parent labels.
    for (auto [a, b] : {std::pair{1u, 2u}, {2u, 4u}, {3u, 4u}, {1u, 3u}}) {
      CHECK(lk.complex.contains({a - 1, b - 1}));
    }
    CHECK_FALSE(lk.complex.contains({0, 3}));
    const SimplexId e = *lk.complex.find({1, 3});  // parent edge {2,4}
    CHECK(octahedron().simplex(lk.parent_simplex[e]) == Simplex{0, 2, 4});
  }
  SUBCASE("missing simplex") {
    try {
      link(tetra_boundary(), {0, 1, 2, 3});
      FAIL("expected not-found");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotFound);
    }
  }
}

TEST_CASE("link has one simplex per proper coface") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = oracle::random_complex(10, 3, 12, rng);
    for (SimplexId id = 0; id < c.simplex_count(); ++id) {
      const Simplex& sigma = c.simplex(id);
      std::size_t cofaces = 0;
      for (SimplexId t = 0; t < c.simplex_count(); ++t) {
        const Simplex& tau = c.simplex(t);
        if (tau.size() > sigma.size() && std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end())) {
          ++cofaces;
        }
      }
      const Link lk = link(c, sigma);
      REQUIRE(lk.complex.simplex_count() == cofaces);
      for (SimplexId l = 0; l < lk.complex.simplex_count(); ++l) {
        const Simplex& parent = c.simplex(lk.parent_simplex[l]);
        CHECK(parent.size() == sigma.size() + lk.complex.simplex(l).size());
      }
    }
  }
}

TEST_CASE("graph distance") {
  const auto cycle = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4);
  CHECK(graph_distance(cycle, 0, 2) == 2u);
  CHECK(graph_distance(cycle, 3, 3) == 0u);
  const auto two = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {2, 3}}, 4);
  CHECK_FALSE(graph_distance(two, 0, 3).has_value());
  CHECK_THROWS_AS(graph_distance(two, 0, 9), Error);
}

TEST_CASE("graph distance matches Floyd-Warshall and is a metric") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto c = oracle::random_complex(9, 1, 7, rng);
    const auto fw = oracle::floyd_warshall(c);
    for (VertexId a = 0; a < 9; ++a) {
      for (VertexId b = 0; b < 9; ++b) {
        const auto d = graph_distance(c, a, b);
        CHECK((d ? static_cast<long>(*d) : -1) == fw[a][b]);
        CHECK(graph_distance(c, b, a) == d);
        for (VertexId m = 0; m < 9; ++m) {
          const auto d1 = graph_distance(c, a, m);
          const auto d2 = graph_distance(c, m, b);
          if (d1 && d2) CHECK(*d <= *d1 + *d2);
        }
      }
    }
  }
}

TEST_CASE("ball_vertices lists the distance-2 neighbourhood") {
  const auto path = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 5);
  CHECK(ball_vertices(path, 2, 2) == std::vector<VertexId>{0, 1, 3, 4});
  CHECK(ball_vertices(path, 0, 1) == std::vector<VertexId>{1});
}

namespace {

void check_proper(const SimplicialComplex& c, const SimplexColoring& col) {
  for (SimplexId i = 0; i < c.simplex_count(); ++i) {
    for (SimplexId j = i + 1; j < c.simplex_count(); ++j) {
      if (shares_vertex(c.simplex(i), c.simplex(j))) REQUIRE(col.color[i] != col.color[j]);
    }
  }
}

}  // namespace

TEST_CASE("coloring examples") {
  SUBCASE("single triangle") {
    const auto tri = SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}}, 3);
    const auto load = load_profile(tri);
    CHECK(load.max_load == 4);  // the vertex, two edges, the triangle
    const auto col = color_simplices(tri);
    check_proper(tri, col);
    // Vertices {0} and {1} share no vertex, so the conflict graph is not
    // complete; greedy needs one color per edge/triangle plus one.
    CHECK(col.color_count == 4);
    CHECK(static_cast<std::size_t>(col.color_count) <= coloring_bound(2, load));
  }
  SUBCASE("two disjoint edges share a color") {
    const auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {2, 3}}, 4);
    const auto col = color_simplices(c);
    CHECK(col.color[*c.find({0, 1})] == col.color[*c.find({2, 3})]);
  }
  SUBCASE("4-cycle") {
    const auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4);
    const auto load = load_profile(c);
    CHECK(load.max_load == 3);
    const auto col = color_simplices(c);
    check_proper(c, col);
    CHECK(col.color_count <= 6);
  }
}

TEST_CASE("coloring is proper and within the bound under both conventions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = oracle::random_complex(14, 3, 10, rng);
    const auto col = color_simplices(c);
    check_proper(c, col);
    for (auto conv : {LoadConvention::CountSelf, LoadConvention::ExcludeSelf}) {
      CHECK(static_cast<std::size_t>(col.color_count) <= coloring_bound(c.dimension(), load_profile(c, conv)));
    }
  }
}
