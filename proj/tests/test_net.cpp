#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "thick/error.hpp"
#include "thick/families.hpp"
#include "thick/io.hpp"
#include "thick/net.hpp"
#include "thick/subdivision.hpp"

using namespace thick;
using doctest::Approx;

namespace {

MetricSample line(std::size_t count) {
  PointSet x = PointSet::Zero(1, static_cast<Eigen::Index>(count));
  for (std::size_t i = 0; i < count; ++i) x(0, static_cast<Eigen::Index>(i)) = static_cast<double>(i);
  return MetricSample::euclidean(x);
}

// Straight from the definition: keep i when it is farther than eps from every
// point kept before it.
std::vector<std::size_t> reference_net(const MetricSample& s, double eps) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < s.size(); ++i) {
    bool outside = true;
    for (std::size_t c : kept) outside = outside && s.distance(i, c) > eps;
    if (outside) kept.push_back(i);
  }
  return kept;
}

}  // namespace

TEST_CASE("greedy_net examples") {
  const auto s = line(10);
  const auto net = greedy_net(s, 2.5);
  CHECK(net.centers == std::vector<std::size_t>{0, 3, 6, 9});
  CHECK(net.certificate.packing_ok);
  CHECK(net.certificate.covering_ok);

  const auto one = greedy_net(line(1), 0.5);
  CHECK(one.centers == std::vector<std::size_t>{0});

  const auto wide = greedy_net(s, 9.0);
  CHECK(wide.centers == std::vector<std::size_t>{0});

  CHECK_THROWS_AS(greedy_net(s, 0.0), Error);
}

TEST_CASE("certify_net examples") {
  const auto s = line(10);
  const auto lone = certify_net(s, {0}, 2.5);
  CHECK(lone.packing_ok);
  CHECK_FALSE(lone.covering_ok);
  REQUIRE(lone.covering_witness);
  CHECK(*lone.covering_witness == 3);

  const auto close = certify_net(s, {0, 1}, 2.5);
  CHECK_FALSE(close.packing_ok);
  REQUIRE(close.packing_witness);
  CHECK(close.packing_witness->first == 0);
  CHECK(close.packing_witness->second == 1);

  // Distance exactly epsilon is not a valid packing.
  CHECK_FALSE(certify_net(s, {0, 2}, 2.0).packing_ok);
  CHECK_THROWS_AS(certify_net(s, {10}, 1.0), Error);
}

TEST_CASE("MetricSample validation") {
  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 5, 1, 0, 1, 5, 1, 0;
  CHECK_THROWS_AS(MetricSample::from_table(d), Error);  // 5 > 1 + 1
  d(0, 2) = d(2, 0) = 2;
  CHECK(MetricSample::from_table(d).distance(0, 2) == 2);
  d(0, 1) = 1.5;
  CHECK_THROWS_AS(MetricSample::from_table(d), Error);  // asymmetric
  d(0, 1) = 1;
  d(1, 1) = 0.1;
  CHECK_THROWS_AS(MetricSample::from_table(d), Error);  // nonzero diagonal

  const auto o = MetricSample::from_oracle(4, [](std::size_t i, std::size_t j) {
    return std::abs(static_cast<double>(i) - static_cast<double>(j));
  });
  CHECK(greedy_net(o, 1.5).centers == std::vector<std::size_t>{0, 2});
}

TEST_CASE("mesh_to_metric examples") {
  SUBCASE("unit square cycle") {
    const auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {1, 2}, {2, 3}, {0, 3}}, 4);
    Eigen::MatrixXd x(2, 4);
    x << 0, 1, 1, 0, 0, 0, 1, 1;
    const auto m = mesh_to_metric(EmbeddedComplex(c, x));
    CHECK(m.size() == 4);
    CHECK(m.distance(0, 2) == Approx(2.0));
    CHECK(m.distance(1, 3) == Approx(2.0));
    CHECK(m.distance(0, 1) == Approx(1.0));
  }
  SUBCASE("single triangle") {
    const auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1, 2}}, 3);
    const auto m = mesh_to_metric(EmbeddedComplex(c, Eigen::MatrixXd(regular_simplex(2))));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(m.distance(i, j) == Approx(i == j ? 0.0 : 1.0));
  }
  SUBCASE("icosahedron keeps every vertex at a small epsilon") {
    const auto ico = generate_family(FamilySpec::parse("icosphere:0"));
    const auto m = mesh_to_metric(EmbeddedComplex(ico.complex, *ico.coords));
    CHECK(m.size() == 12);
    CHECK(greedy_net(m, 0.1).centers.size() == 12);
  }
  SUBCASE("disconnected mesh") {
    const auto c = SimplicialComplex::build(std::vector<Simplex>{{0, 1}, {2, 3}}, 4);
    try {
      mesh_to_metric(EmbeddedComplex(c, Eigen::MatrixXd::Random(3, 4)));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Disconnected);
    }
  }
  SUBCASE("OFF input") {
    std::istringstream in("OFF\n4 1 4\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    const auto mesh = parse_off(in);
    CHECK(mesh.complex().count(2) == 2);
    // Fanned from vertex 0, so the diagonal is 0-2.
    CHECK(mesh_to_metric(mesh).distance(0, 2) == Approx(std::sqrt(2.0)));
    CHECK(mesh_to_metric(mesh).distance(1, 3) == Approx(2.0));
  }
}

TEST_CASE("greedy output matches the reference and certifies") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> count(1, 60);
  std::uniform_real_distribution<double> eps(0.05, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = MetricSample::euclidean(oracle::random_points(1 + trial % 3, count(rng), rng));
    const double e = eps(rng);
    const auto net = greedy_net(s, e);
    CHECK(net.centers == reference_net(s, e));
    CHECK(net.certificate.packing_ok);
    CHECK(net.certificate.covering_ok);
  }
}

TEST_CASE("net size is not antitone in general") {
  // Kept at eps = 3: 0, 1. Kept at eps = 4: 0, 2, 3.
  PointSet x(2, 4);
  x << 4, 2, 3, 0, 5, 2, 0, 4;
  const auto s = MetricSample::euclidean(x);
  CHECK(greedy_net(s, 3.0).centers == std::vector<std::size_t>{0, 1});
  CHECK(greedy_net(s, 4.0).centers == std::vector<std::size_t>{0, 2, 3});
}

TEST_CASE("net size is antitone when epsilon at least doubles") {
  // Two centers of the coarse net cannot share a fine center within eps1.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = MetricSample::euclidean(oracle::random_points(2, 50, rng));
    for (int i = 1; i <= 20; ++i) {
      for (int j = 2 * i; j <= 40; ++j) {
        CHECK(greedy_net(s, 0.05 * j).centers.size() <= greedy_net(s, 0.05 * i).centers.size());
      }
    }
  }
}
