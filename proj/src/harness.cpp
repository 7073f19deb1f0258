#include "thick/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "thick/error.hpp"

namespace thick {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string num(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

template <typename T>
std::string joined(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    if constexpr (std::is_floating_point_v<T>) {
      out += num(xs[i]);
    } else {
      out += std::to_string(xs[i]);
    }
  }
  return out;
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> opt_double(const Json& j, const char* key) {
  const Json& v = j.at(key);
  return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
}

Json fit_json(const std::optional<LinearFit>& f) {
  if (!f) return nullptr;
  return {{"slope", f->slope}, {"intercept", f->intercept}, {"r_squared", f->r_squared},
          {"points", f->points}, {"residuals", f->residuals}};
}

}  // namespace

TrialRecord run_trial(const FamilySpec& family, std::size_t vertex_count, std::uint64_t seed,
                      const PipelineParams& base) {
  TrialRecord rec;
  rec.seed = seed;
  rec.n = base.placement.ambient_dim;
  const auto start = std::chrono::steady_clock::now();
  try {
    const FamilySpec spec = vertex_count > 0 ? family.with_vertices(vertex_count) : family;
    rec.complex_id = spec.to_string();
    const FamilyMember member = generate_family(spec, seed);
    rec.vertex_count = member.complex.vertex_count();
    rec.k = member.complex.dimension();
    PipelineParams params = base;
    params.placement.seed = seed;
    const PipelineResult r = run_pipeline(member.complex, params);
    rec.alpha_ladder = r.alpha_ladder;
    rec.alpha0_final = r.alpha0_final;
    rec.r_pre = r.r_pre;
    rec.r_final = r.r_final;
    rec.gg_pre = r.before.gg.value;
    rec.gg_post = r.perturb.thickness_after;
    rec.min_link_thickness = r.after.link.angle;
    if (r.crossing) {
      rec.max_crossing = r.crossing->max.max_count;
      rec.per_color_max = r.crossing->max.per_color_max;
    }
  } catch (const SaturationError& e) {
    rec.status = "saturation";
    rec.error = std::string(to_string(e.kind())) + ": " + e.what() + " [" + e.constraint() + "]";
    double a = base.placement.alpha0;
    const int rungs = base.auto_alpha ? base.max_alpha_halvings : 0;
    for (int i = 0; i <= rungs; ++i, a *= 0.5) rec.alpha_ladder.push_back(a);
  } catch (const Error& e) {
    rec.status = "error";
    rec.error = std::string(to_string(e.kind())) + ": " + e.what();
  }
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::optional<LinearFit> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "fit_line needs equal-length inputs");
  if (x.size() < 2 || std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) return std::nullopt;
  const double m = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.points = x.size();
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    f.residuals.push_back(y[i] - (f.intercept + f.slope * x[i]));
    ssr += f.residuals.back() * f.residuals.back();
  }
  f.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return f;
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::Parameter, "median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t h = values.size() / 2;
  return values.size() % 2 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

ScalingStudy run_scaling_study(const FamilySpec& family, const std::vector<std::size_t>& v_grid,
                               const std::vector<std::uint64_t>& seeds, const PipelineParams& base,
                               const TrialCallback& on_trial) {
  if (v_grid.empty() || seeds.empty()) throw Error(ErrorKind::Parameter, "scaling study needs a V grid and seeds");
  ScalingStudy s;
  s.family = family;
  s.n = base.placement.ambient_dim;
  s.v_grid = v_grid;
  s.seeds = seeds;
  for (std::size_t v : v_grid) {
    VSummary sum;
    sum.vertex_count = v;
    std::vector<double> radii, crossings;
    std::string causes;
    for (std::uint64_t seed : seeds) {
      TrialRecord rec = run_trial(family, v, seed, base);
      if (on_trial) on_trial(rec);
      ++sum.trials;
      if (rec.ok()) {
        radii.push_back(*rec.r_final);
        if (rec.max_crossing) crossings.push_back(static_cast<double>(*rec.max_crossing));
      } else {
        ++sum.failures;
        causes += "\n  seed " + std::to_string(seed) + ": " + rec.error;
      }
      s.records.push_back(std::move(rec));
    }
    if (2 * sum.failures > sum.trials) {
      throw Error(ErrorKind::StudyAborted, "more than half of the trials failed at V = " + std::to_string(v) + " (" +
                                               std::to_string(sum.failures) + "/" + std::to_string(sum.trials) +
                                               "):" + causes);
    }
    if (!radii.empty()) sum.median_r_final = median(radii);
    if (!crossings.empty()) sum.median_max_crossing = median(crossings);
    s.summary.push_back(sum);
  }

  std::vector<double> lx, ly, cx, cy;
  for (const TrialRecord& r : s.records) {
    if (!r.ok()) continue;
    lx.push_back(std::log(static_cast<double>(r.vertex_count)));
    ly.push_back(std::log(*r.r_final));
    if (r.max_crossing) {
      cx.push_back(lx.back());
      cy.push_back(static_cast<double>(*r.max_crossing));
    }
  }
  s.radius_fit = fit_line(lx, ly);
  s.crossing_fit = fit_line(cx, cy);
  std::vector<double> mx, my;
  for (const VSummary& v : s.summary) {
    if (v.median_max_crossing) {
      mx.push_back(std::log(static_cast<double>(v.vertex_count)));
      my.push_back(*v.median_max_crossing);
    }
  }
  s.crossing_median_fit = fit_line(mx, my);
  if (!s.radius_fit) s.fit_status = "insufficient grid";

  s.medians_monotone = true;
  std::optional<double> prev;
  for (const VSummary& v : s.summary) {
    if (!v.median_r_final) continue;
    if (prev && *v.median_r_final < *prev) s.medians_monotone = false;
    prev = v.median_r_final;
  }
  return s;
}

std::string trials_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream out;
  out << "schema_version,complex_id,V,k,n,seed,status,alpha0_final,R_pre,R_final,gg_pre,gg_post,"
         "min_link_thickness,max_crossing,per_color_max,alpha_ladder,error\n";
  for (const TrialRecord& r : records) {
    out << kSchemaVersion << ',' << csv_field(r.complex_id) << ',' << r.vertex_count << ',' << r.k << ',' << r.n
        << ',' << r.seed << ',' << r.status << ',' << num(r.alpha0_final) << ',' << num(r.r_pre) << ','
        << num(r.r_final) << ',' << num(r.gg_pre) << ',' << num(r.gg_post) << ',' << num(r.min_link_thickness)
        << ',' << (r.max_crossing ? std::to_string(*r.max_crossing) : std::string()) << ','
        << joined(r.per_color_max) << ',' << joined(r.alpha_ladder) << ',' << csv_field(r.error) << '\n';
  }
  return out.str();
}

std::string trials_jsonl(const std::vector<TrialRecord>& records) {
  std::string out;
  for (const TrialRecord& r : records) out += to_json(r).dump() + '\n';
  return out;
}

Json to_json(const TrialRecord& r) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "trial";
  j["complex_id"] = r.complex_id;
  j["V"] = r.vertex_count;
  j["k"] = r.k;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["status"] = r.status;
  j["error"] = r.error.empty() ? Json(nullptr) : Json(r.error);
  j["alpha_ladder"] = r.alpha_ladder;
  j["alpha0_final"] = opt(r.alpha0_final);
  j["R_pre"] = opt(r.r_pre);
  j["R_final"] = opt(r.r_final);
  j["gg_pre"] = opt(r.gg_pre);
  j["gg_post"] = opt(r.gg_post);
  j["min_link_thickness"] = opt(r.min_link_thickness);
  j["max_crossing"] = r.max_crossing ? Json(*r.max_crossing) : Json(nullptr);
  j["per_color_max"] = r.per_color_max;
  j["wall_time"] = r.wall_time;
  return j;
}

TrialRecord trial_record_from_json(const Json& j) {
  check_schema(j, "trial");
  try {
    TrialRecord r;
    r.complex_id = j.at("complex_id").get<std::string>();
    r.vertex_count = j.at("V").get<std::size_t>();
    r.k = j.at("k").get<int>();
    r.n = j.at("n").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.status = j.at("status").get<std::string>();
    if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
    r.alpha_ladder = j.at("alpha_ladder").get<std::vector<double>>();
    r.alpha0_final = opt_double(j, "alpha0_final");
    r.r_pre = opt_double(j, "R_pre");
    r.r_final = opt_double(j, "R_final");
    r.gg_pre = opt_double(j, "gg_pre");
    r.gg_post = opt_double(j, "gg_post");
    r.min_link_thickness = opt_double(j, "min_link_thickness");
    if (!j.at("max_crossing").is_null()) r.max_crossing = j.at("max_crossing").get<std::size_t>();
    r.per_color_max = j.at("per_color_max").get<std::vector<std::size_t>>();
    r.wall_time = j.at("wall_time").get<double>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed trial JSON: ") + e.what());
  }
}

Json to_json(const ScalingStudy& s) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "scaling_study";
  j["family"] = s.family.to_string();
  j["n"] = s.n;
  j["v_grid"] = s.v_grid;
  j["seeds"] = s.seeds;
  j["fit_status"] = s.fit_status;
  j["radius_fit"] = fit_json(s.radius_fit);
  j["crossing_fit"] = fit_json(s.crossing_fit);
  j["crossing_median_fit"] = fit_json(s.crossing_median_fit);
  j["medians_monotone"] = s.medians_monotone;
  Json summary = Json::array();
  for (const VSummary& v : s.summary) {
    summary.push_back({{"V", v.vertex_count},
                       {"trials", v.trials},
                       {"failures", v.failures},
                       {"median_R_final", opt(v.median_r_final)},
                       {"median_max_crossing", opt(v.median_max_crossing)}});
  }
  j["summary"] = std::move(summary);
  std::size_t failed = 0;
  for (const TrialRecord& r : s.records) failed += r.ok() ? 0 : 1;
  j["trials"] = s.records.size();
  j["failed_trials"] = failed;
  return j;
}

}  // namespace thick
