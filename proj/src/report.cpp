#include "thick/report.hpp"

#include "thick/error.hpp"

namespace thick {

namespace {

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> opt_double(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

Json pair_json(const VertexPair& p) { return Json::array({p.first, p.second}); }

Json simplex_pair_json(const SimplexPair& p) { return Json::array({p.first, p.second}); }

SimplexPair simplex_pair_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "expected a two-element id pair");
  return {j[0].get<SimplexId>(), j[1].get<SimplexId>()};
}

Json point_json(const Point& p) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) a.push_back(p(i));
  return a;
}

// Field access that turns nlohmann exceptions into parse errors.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace

void check_schema(const Json& j, const std::string& kind) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "expected a JSON object");
  const auto v = j.find("schema_version");
  if (v == j.end() || !v->is_number_integer() || v->get<int>() != kSchemaVersion) {
    throw Error(ErrorKind::Parse, "schema mismatch: expected schema_version " + std::to_string(kSchemaVersion));
  }
  const auto k = j.find("kind");
  if (k == j.end() || !k->is_string() || k->get<std::string>() != kind) {
    throw Error(ErrorKind::Parse, "schema mismatch: expected kind '" + kind + "'");
  }
}

Json to_json(const ThicknessReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "thickness_report";
  j["gg_thickness"] = opt(r.gg.value);
  j["witness"] = r.gg.value ? simplex_pair_json(r.gg.witness) : Json(nullptr);
  j["min_link_thickness"] = opt(r.link.angle);
  j["link_witness"] = r.link.angle ? Json{{"base", r.link.base}, {"parents", simplex_pair_json(r.link.parents)}}
                                   : Json(nullptr);
  j["edge_min"] = r.edges ? Json(r.edges->min) : Json(nullptr);
  j["edge_max"] = r.edges ? Json(r.edges->max) : Json(nullptr);
  j["edge_argmin"] = r.edges ? Json(r.edges->argmin) : Json(nullptr);
  j["edge_argmax"] = r.edges ? Json(r.edges->argmax) : Json(nullptr);
  j["enclosing_radius"] = r.enclosing_radius;
  return j;
}

ThicknessReport thickness_report_from_json(const Json& j) {
  check_schema(j, "thickness_report");
  return guarded("thickness report", [&] {
    ThicknessReport r;
    r.gg.value = opt_double(j, "gg_thickness");
    if (r.gg.value) r.gg.witness = simplex_pair_from(j.at("witness"));
    r.link.angle = opt_double(j, "min_link_thickness");
    if (r.link.angle) {
      r.link.base = j.at("link_witness").at("base").get<SimplexId>();
      r.link.parents = simplex_pair_from(j.at("link_witness").at("parents"));
    }
    if (!j.at("edge_min").is_null()) {
      r.edges = EdgeStats{j.at("edge_min").get<double>(), j.at("edge_max").get<double>(),
                          j.at("edge_argmin").get<SimplexId>(), j.at("edge_argmax").get<SimplexId>()};
    }
    r.enclosing_radius = j.at("enclosing_radius").get<double>();
    return r;
  });
}

Json to_json(const NetResult& net) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "net";
  j["epsilon"] = net.epsilon;
  j["centers"] = net.centers;
  j["packing_ok"] = net.certificate.packing_ok;
  j["packing_witness"] = net.certificate.packing_witness
                             ? Json::array({net.certificate.packing_witness->first, net.certificate.packing_witness->second})
                             : Json(nullptr);
  j["covering_ok"] = net.certificate.covering_ok;
  j["covering_witness"] = net.certificate.covering_witness ? Json(*net.certificate.covering_witness) : Json(nullptr);
  return j;
}

NetResult net_result_from_json(const Json& j) {
  check_schema(j, "net");
  return guarded("net", [&] {
    NetResult n;
    n.epsilon = j.at("epsilon").get<double>();
    n.centers = j.at("centers").get<std::vector<std::size_t>>();
    n.certificate.packing_ok = j.at("packing_ok").get<bool>();
    if (const Json& w = j.at("packing_witness"); !w.is_null()) {
      n.certificate.packing_witness = std::pair{w.at(0).get<std::size_t>(), w.at(1).get<std::size_t>()};
    }
    n.certificate.covering_ok = j.at("covering_ok").get<bool>();
    if (const Json& w = j.at("covering_witness"); !w.is_null()) n.certificate.covering_witness = w.get<std::size_t>();
    return n;
  });
}

Json embedding_to_json(const EmbeddedComplex& e) {
  const SimplicialComplex& c = e.complex();
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "embedding";
  j["dimension"] = c.dimension();
  j["vertex_count"] = c.vertex_count();
  Json top = Json::array();
  for (SimplexId id : c.maximal_simplices()) top.push_back(c.simplex(id));
  j["simplices"] = std::move(top);
  j["ambient_dim"] = e.ambient_dim();
  Json coords = Json::array();
  for (VertexId v = 0; v < c.vertex_count(); ++v) coords.push_back(point_json(e.point(v)));
  j["coords"] = std::move(coords);
  return j;
}

EmbeddedComplex embedding_from_json(const Json& j) {
  check_schema(j, "embedding");
  return guarded("embedding", [&] {
    const auto v = j.at("vertex_count").get<std::size_t>();
    const int n = j.at("ambient_dim").get<int>();
    const auto top = j.at("simplices").get<std::vector<Simplex>>();
    SimplicialComplex c = SimplicialComplex::build(top, v, j.at("dimension").get<int>());
    const Json& coords = j.at("coords");
    if (!coords.is_array() || coords.size() != v) throw Error(ErrorKind::Parse, "coordinate count does not match vertex_count");
    Eigen::MatrixXd x(n, static_cast<Eigen::Index>(v));
    for (std::size_t i = 0; i < v; ++i) {
      const auto p = coords[i].get<std::vector<double>>();
      if (p.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::Parse, "coordinate has wrong dimension");
      for (int r = 0; r < n; ++r) x(r, static_cast<Eigen::Index>(i)) = p[static_cast<std::size_t>(r)];
    }
    return EmbeddedComplex(std::move(c), std::move(x));
  });
}

Json to_json(const ConditionReport& r) {
  Json j;
  j["radius"] = r.radius;
  j["alpha0"] = r.alpha0;
  j["cond1_ok"] = r.cond1_ok;
  j["min_adjacent_distance"] = opt(r.min_adjacent_distance);
  j["adjacent_witness"] = pair_json(r.adjacent_witness);
  j["cond2_ok"] = r.cond2_ok;
  j["min_link_thickness"] = opt(r.link.angle);
  j["link_base"] = r.link.base;
  j["dagger_min_pair_distance"] = opt(r.dagger_min_pair_distance);
  j["dagger_witness"] = pair_json(r.dagger_witness);
  j["edge_ratio"] = opt(r.edge_ratio);
  j["edge_min_witness"] = pair_json(r.edge_min_witness);
  j["edge_max_witness"] = pair_json(r.edge_max_witness);
  return j;
}

Json to_json(const CrossingProfile& p) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "crossing";
  j["radius"] = p.radius;
  j["max_crossing"] = p.max.max_count;
  j["argmax_center"] = p.max.argmax_center.size() ? point_json(p.max.argmax_center) : Json(nullptr);
  j["per_color_max"] = p.max.per_color_max;
  j["color_count"] = p.color_count;
  j["centers"] = p.max.centers;
  return j;
}

Json to_json(const LinkThickness& t) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "link_thickness";
  j["angle"] = opt(t.angle);
  j["witness"] = t.angle ? simplex_pair_json(t.witness) : Json(nullptr);
  return j;
}

Json to_json(const LinkIsometryReport& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "link_isometry";
  j["ok"] = r.ok();
  j["vacuous"] = r.vacuous;
  j["interior_ok"] = r.interior_ok;
  j["boundary_ok"] = r.boundary_ok;
  j["interior_vertices"] = r.interior_vertices;
  j["boundary_vertices"] = r.boundary_vertices;
  j["failing_vertex"] = r.failing_vertex ? Json(*r.failing_vertex) : Json(nullptr);
  return j;
}

Json to_json(const PipelineResult& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "pipeline";
  j["vertex_count"] = r.placement.vertex_count();
  j["complex_dimension"] = r.placement.complex().dimension();
  j["ambient_dim"] = r.params.placement.ambient_dim;
  j["seed"] = r.params.placement.seed;
  j["alpha_ladder"] = r.alpha_ladder;
  j["alpha0_final"] = r.alpha0_final;
  j["radius"] = r.radius;
  j["conditions"] = to_json(r.conditions);
  if (r.crossing) {
    Json c = to_json(*r.crossing);
    c.erase("schema_version");
    c.erase("kind");
    j["crossing"] = std::move(c);
  } else {
    j["crossing"] = nullptr;
  }
  j["subdivision"] = r.subdivision.t;
  j["tau"] = r.tau;
  Json p;
  p["thickness_before"] = opt(r.perturb.thickness_before);
  p["thickness_after"] = opt(r.perturb.thickness_after);
  p["max_displacement"] = r.perturb.max_displacement;
  p["candidate_pairs"] = r.perturb.candidate_pairs;
  p["accepted_moves"] = r.perturb.accepted_moves;
  p["iterations"] = r.perturb.iterations;
  j["perturb"] = std::move(p);
  Json before = to_json(r.before);
  before.erase("schema_version");
  before.erase("kind");
  j["before"] = std::move(before);
  j["lambda"] = r.lambda;
  j["r_pre"] = r.r_pre;
  j["r_final"] = r.r_final;
  Json after = to_json(r.after);
  after.erase("schema_version");
  after.erase("kind");
  j["after"] = std::move(after);
  return j;
}

}  // namespace thick
