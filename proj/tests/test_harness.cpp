#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "thick/error.hpp"
#include "thick/harness.hpp"
#include "thick/io.hpp"

using namespace thick;
using doctest::Approx;

namespace {

EmbeddedComplex random_embedding(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(1, 3), n(1, 5), v(4, 12), top(1, 15);
  const int dim = k(rng);
  const int vc = std::max(dim + 1, v(rng));
  const auto c = oracle::random_complex(static_cast<std::size_t>(vc), dim, static_cast<std::size_t>(top(rng)), rng);
  // Awkward magnitudes exercise the decimal round trip.
  std::uniform_real_distribution<double> u(-1.0, 1.0), e(-30.0, 30.0);
  Eigen::MatrixXd x(n(rng), vc);
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = u(rng) * std::pow(10.0, e(rng));
  return EmbeddedComplex(c, x);
}

std::string parse_error(const std::string& text, bool emb) {
  std::istringstream in(text);
  try {
    if (emb) {
      parse_emb(in, "f");
    } else {
      parse_scx(in, "f");
    }
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    return e.what();
  }
  return "no error";
}

}  // namespace

TEST_CASE("family generator examples") {
  const auto c8 = generate_family(FamilySpec::parse("cycle:8"));
  CHECK(c8.complex.vertex_count() == 8);
  CHECK(c8.complex.count(1) == 8);
  CHECK(c8.load_bound == 3);

  const auto rr = generate_family(FamilySpec::parse("random-regular:100:3"), 5);
  CHECK(rr.complex.vertex_count() == 100);
  CHECK(rr.complex.count(1) == 150);
  const auto load = load_profile(rr.complex);
  for (std::size_t l : load.per_vertex_load) CHECK(l == 4);

  const auto t = generate_family(FamilySpec::parse("torus:4:4"));
  CHECK(t.complex.vertex_count() == 16);
  CHECK(t.complex.count(1) == 48);
  CHECK(t.complex.count(2) == 32);
  REQUIRE(t.coords);
  CHECK(check_validity(EmbeddedComplex(t.complex, *t.coords)).valid);

  const auto ico = generate_family(FamilySpec::parse("icosphere:1"));
  CHECK(ico.complex.vertex_count() == 42);
  CHECK(ico.complex.count(2) == 80);

  CHECK(generate_family(FamilySpec::parse("random-regular:64:3"), 9).complex ==
        generate_family(FamilySpec::parse("random-regular:64:3"), 9).complex);

  for (const char* bad : {"random-regular:7:3", "random-regular:4:4", "cycle:2", "torus:2:5", "sphere:3", "cycle:x",
                          "cycle"}) {
    try {
      generate_family(FamilySpec::parse(bad));
      FAIL("accepted " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Spec);
    }
  }
  CHECK(FamilySpec::parse("random-regular:100:3").to_string() == "random-regular:100:3");
  CHECK(FamilySpec::parse("cycle:8").with_vertices(64).to_string() == "cycle:64");
}

TEST_CASE("SCX and EMB parsing") {
  std::istringstream in("# a triangle and a dangling edge\nscx 2 4\n2 0 1\n\n2 3  # edge\n");
  const auto c = parse_scx(in);
  CHECK(c.dimension() == 2);
  CHECK(c.vertex_count() == 4);
  CHECK(c.count(2) == 1);
  CHECK(c.count(1) == 4);

  CHECK(parse_error("scx 1 3\n0 1\n0 5\n", false).find("f:3:") != std::string::npos);
  CHECK(parse_error("scx 1 3\n0 1 2\n", false).find("f:2:") != std::string::npos);
  CHECK(parse_error("scx 1\n", false).find("f:1:") != std::string::npos);
  CHECK(parse_error("scx 1 3\n0 0\n", false).find("f:2:") != std::string::npos);
  CHECK(parse_error("scx 1 2\n0 1\nn 2\n0 0\n1 x\n", true).find("f:5:") != std::string::npos);
  CHECK(parse_error("scx 1 2\n0 1\nn 2\n0 0\n", true).find("end of input") != std::string::npos);
  CHECK(parse_error("scx 1 2\n0 1\n", true).find("missing 'n") != std::string::npos);
}

TEST_CASE("SCX, EMB and JSON round trips") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    const EmbeddedComplex e = random_embedding(rng);
    std::istringstream scx(to_scx(e.complex()));
    CHECK(parse_scx(scx) == e.complex());
    std::istringstream emb(to_emb(e));
    const EmbeddedComplex back = parse_emb(emb);
    CHECK(back == e);
    CHECK(to_emb(back) == to_emb(e));
    CHECK(embedding_from_json(Json::parse(embedding_to_json(e).dump())) == e);
  }
}

TEST_CASE("report JSON round trips") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    const auto c = oracle::random_complex(8, 2, 6, rng);
    const EmbeddedComplex e(c, oracle::random_points(3, 8, rng));
    const ThicknessReport r = certify(e);
    const ThicknessReport back = thickness_report_from_json(Json::parse(to_json(r).dump()));
    CHECK(back.gg.value == r.gg.value);
    CHECK(back.gg.witness == r.gg.witness);
    CHECK(back.link.angle == r.link.angle);
    CHECK(back.link.base == r.link.base);
    CHECK(back.link.parents == r.link.parents);
    REQUIRE(back.edges.has_value() == r.edges.has_value());
    CHECK(back.edges->min == r.edges->min);
    CHECK(back.edges->argmax == r.edges->argmax);
    CHECK(back.enclosing_radius == r.enclosing_radius);
    CHECK(to_json(back) == to_json(r));
  }
  const auto j = to_json(certify(EmbeddedComplex(oracle::random_complex(5, 1, 4, rng), oracle::random_points(2, 5, rng))));
  for (const char* key : {"gg_thickness", "witness", "min_link_thickness", "edge_min", "edge_max", "enclosing_radius"}) {
    CHECK(j.contains(key));
  }

  NetResult net;
  net.epsilon = 0.1 + 0.2;
  net.centers = {0, 4, 7};
  net.certificate.covering_ok = false;
  net.certificate.covering_witness = 3;
  const NetResult nb = net_result_from_json(Json::parse(to_json(net).dump()));
  CHECK(nb.epsilon == net.epsilon);
  CHECK(nb.centers == net.centers);
  CHECK(nb.certificate.covering_witness == net.certificate.covering_witness);
  CHECK_FALSE(nb.certificate.packing_witness);

  Json wrong = to_json(net);
  wrong["schema_version"] = 99;
  CHECK_THROWS_AS(net_result_from_json(wrong), Error);
  CHECK_THROWS_AS(thickness_report_from_json(to_json(net)), Error);
}

TEST_CASE("fit_line and median") {
  const auto f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
  REQUIRE(f);
  CHECK(f->slope == Approx(2.0));
  CHECK(f->intercept == Approx(1.0));
  CHECK(f->r_squared == Approx(1.0));
  CHECK_FALSE(fit_line({2, 2, 2}, {1, 2, 3}));
  CHECK_FALSE(fit_line({1}, {1}));
  // Residuals of a noisy fit sum to zero.
  const auto g = fit_line({0, 1, 2, 3, 4}, {0, 2, 1, 4, 3});
  double sum = 0;
  for (double r : g->residuals) sum += r;
  CHECK(sum == Approx(0.0).epsilon(1e-12));
  CHECK(g->r_squared == Approx(0.64));
  CHECK(median({3, 1, 2}) == 2);
  CHECK(median({4, 1, 2, 3}) == 2.5);
}

TEST_CASE("trial records and small studies") {
  PipelineParams base;
  base.perturb_budget = 2000;

  SUBCASE("single V is an insufficient grid") {
    const auto s = run_scaling_study(FamilySpec::parse("cycle:16"), {16}, {1, 2}, base);
    CHECK(s.fit_status == "insufficient grid");
    CHECK_FALSE(s.radius_fit);
    CHECK(s.records.size() == 2);
  }
  SUBCASE("saturation is recorded, and a failing grid aborts") {
    PipelineParams hard = base;
    hard.placement.alpha0 = 1.999;
    hard.placement.max_resample_rounds = 20;
    hard.auto_alpha = false;
    const auto rec = run_trial(FamilySpec::parse("random-regular:16:3"), 16, 1, hard);
    CHECK(rec.status == "saturation");
    CHECK(rec.alpha_ladder == std::vector<double>{1.999});
    CHECK_FALSE(rec.r_final);
    try {
      run_scaling_study(FamilySpec::parse("random-regular:16:3"), {16}, {1, 2, 3}, hard);
      FAIL("expected abort");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::StudyAborted);
      CHECK(std::string(e.what()).find("seed 2") != std::string::npos);
    }
  }
  SUBCASE("CSV is byte-identical across reruns and JSON lines round trip") {
    const auto a = run_scaling_study(FamilySpec::parse("cycle:8"), {16, 32}, {3, 4}, base);
    const auto b = run_scaling_study(FamilySpec::parse("cycle:8"), {16, 32}, {3, 4}, base);
    CHECK(trials_csv(a.records) == trials_csv(b.records));
    CHECK(trials_csv(a.records).find("wall") == std::string::npos);
    REQUIRE(a.radius_fit);
    CHECK(a.fit_status == "ok");
    CHECK(a.summary.size() == 2);
    std::istringstream lines(trials_jsonl(a.records));
    std::size_t i = 0;
    for (std::string line; std::getline(lines, line); ++i) {
      const TrialRecord back = trial_record_from_json(Json::parse(line));
      CHECK(to_json(back) == to_json(a.records[i]));
    }
    CHECK(i == a.records.size());
    const Json sj = to_json(a);
    CHECK(sj["schema_version"] == kSchemaVersion);
    CHECK(sj["trials"] == 4);
  }
}
