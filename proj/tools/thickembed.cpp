// Command-line front end. Exit codes: 0 success, 1 runtime failure, 2 usage,
// 3 input/output or parse failure. Errors are reported on stderr as JSON.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "thick/error.hpp"
#include "thick/harness.hpp"
#include "thick/io.hpp"
#include "thick/net.hpp"
#include "thick/report.hpp"

using namespace thick;
namespace fs = std::filesystem;

namespace {

constexpr int kRuntime = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::Io:
      return kIo;
    case ErrorKind::Spec:
      return kUsage;
    default:
      return kRuntime;
  }
}

int report_error(const std::string& kind, const std::string& message, int code) {
  Json j;
  j["error"] = {{"kind", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << j.dump() << '\n';
  return code;
}

std::optional<std::string> env_out_dir() {
  if (const char* d = std::getenv("THICKEMBED_OUT_DIR"); d && *d) return std::string(d);
  return std::nullopt;
}

// Writes to `out`, to $THICKEMBED_OUT_DIR/<fallback> when `out` is empty and the
// variable is set, and to stdout otherwise.
void emit(const std::string& out, const std::string& fallback, const std::string& text) {
  if (!out.empty()) {
    write_text_file(out, text);
  } else if (const auto dir = env_out_dir()) {
    write_text_file((fs::path(*dir) / fallback).string(), text);
  } else {
    std::cout << text;
  }
}

std::string pretty(const Json& j) { return j.dump(2) + "\n"; }

Simplex parse_simplex(const std::string& text) {
  Simplex s;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      s.push_back(static_cast<VertexId>(v));
    } catch (const std::exception&) {
      throw Error(ErrorKind::Spec, "bad simplex '" + text + "'; expected comma-separated vertex ids");
    }
  }
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoul(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Spec, "bad list '" + text + "'; expected comma-separated integers");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thick straight-line embeddings of simplicial complexes"};
  app.require_subcommand(1);
  app.footer("Output defaults to stdout, or to $THICKEMBED_OUT_DIR when that is set.");

  // embed
  auto* embed = app.add_subcommand("embed", "Place, certify, subdivide, perturb and rescale a complex");
  std::string complex_path, family, out, emb_out, placement_out;
  std::uint64_t seed = 0;
  int ambient = 3;
  double alpha0 = 0.3, radius = 0.0;
  std::uint32_t subdiv = 0;
  std::optional<double> tau;
  std::size_t budget = 0, rounds = 5000;
  bool no_crossing = false, fixed_alpha = false, full_restart = false;
  auto* src = embed->add_option_group("input");
  src->add_option("--complex", complex_path, "Complex in SCX format");
  src->add_option("--family", family, "Generated complex, e.g. cycle:64 or random-regular:128:3");
  src->require_option(1);
  embed->add_option("--ambient", ambient, "Ambient dimension n")->capture_default_str();
  embed->add_option("--seed", seed, "Seed for generation, placement and perturbation")->capture_default_str();
  embed->add_option("--alpha0", alpha0, "Placement constant")->capture_default_str();
  embed->add_option("--subdiv", subdiv, "Subdivision parameter t (0: ceil(R))")->capture_default_str();
  embed->add_option("--tau", tau, "Perturbation radius (default: shortest subdivided edge / 4)");
  embed->add_option("--radius", radius, "Sphere radius R (0: V^(1/(n-k)))")->capture_default_str();
  embed->add_option("--budget", budget, "Perturbation iterations (0: automatic)")->capture_default_str();
  embed->add_option("--rounds", rounds, "Placement resampling rounds")->capture_default_str();
  embed->add_flag("--no-crossing", no_crossing, "Skip the crossing profile");
  embed->add_flag("--fixed-alpha", fixed_alpha, "Fail instead of halving alpha0 on saturation");
  embed->add_flag("--full-restart", full_restart, "Redraw every vertex on each placement violation");
  embed->add_option("--out", out, "PipelineResult JSON");
  embed->add_option("--emb-out", emb_out, "Final embedding in EMB format");
  embed->add_option("--placement-out", placement_out, "Sphere placement in EMB format");

  // certify
  auto* cert = app.add_subcommand("certify", "Thickness report for an embedding");
  std::string emb_path;
  cert->add_option("--embedding", emb_path, "Embedding in EMB format")->required();
  cert->add_option("--out", out, "ThicknessReport JSON");

  // subdivide
  auto* sub = app.add_subcommand("subdivide", "Edgewise subdivision of a complex or an embedding");
  std::uint32_t param = 0;
  auto* sub_src = sub->add_option_group("input");
  sub_src->add_option("--complex", complex_path, "Complex in SCX format (writes SCX)");
  sub_src->add_option("--embedding", emb_path, "Embedding in EMB format (writes EMB)");
  sub_src->require_option(1);
  sub->add_option("--param", param, "Subdivision parameter t >= 1")->required();
  sub->add_option("--out", out, "Output file");

  // link
  auto* lnk = app.add_subcommand("link", "Link thickness of a simplex, or the subdivision link isometry check");
  std::string simplex_text;
  int iso_dim = 0;
  lnk->add_option("--embedding", emb_path, "Embedding in EMB format");
  lnk->add_option("--simplex", simplex_text, "Comma-separated vertex ids of the base simplex");
  lnk->add_option("--isometry-dim", iso_dim, "Check interior links of the subdivided regular d-simplex");
  lnk->add_option("--param", param, "Subdivision parameter for --isometry-dim");
  lnk->add_option("--out", out, "JSON output");

  // net
  auto* netc = app.add_subcommand("net", "Greedy epsilon-net on the graph metric of a mesh");
  std::string mesh_path;
  double epsilon = 0.0;
  netc->add_option("--mesh", mesh_path, "Mesh as EMB or OFF")->required();
  netc->add_option("--epsilon", epsilon, "Net radius")->required();
  netc->add_option("--out", out, "NetResult JSON");

  // scale-study
  auto* study = app.add_subcommand("scale-study", "Radius and crossing scaling over a family");
  std::string v_list, out_dir;
  std::size_t seed_count = 20;
  std::uint64_t seed_base = 0;
  study->add_option("--family", family, "Family, e.g. cycle:64 or random-regular:64:3")->required();
  study->add_option("--vertices", v_list, "Comma-separated V grid")->required();
  study->add_option("--seeds", seed_count, "Seeds per V")->capture_default_str();
  study->add_option("--seed-base", seed_base, "First seed")->capture_default_str();
  study->add_option("--ambient", ambient, "Ambient dimension n")->capture_default_str();
  study->add_option("--alpha0", alpha0, "Placement constant")->capture_default_str();
  study->add_option("--out-dir", out_dir, "Directory for trials.csv, trials.jsonl and study.json");

  // crossing
  auto* cross = app.add_subcommand("crossing", "Ball crossing counts over sampled centers");
  double cross_radius = 0.0, pitch = 1.0;
  std::size_t samples = 0;
  cross->add_option("--embedding", emb_path, "Embedding in EMB format")->required();
  cross->add_option("--radius", cross_radius, "Ball radius (0: shortest edge / 10)")->capture_default_str();
  cross->add_option("--pitch", pitch, "Lattice pitch of the centers")->capture_default_str();
  cross->add_option("--samples", samples, "Use this many random centers instead of a lattice");
  cross->add_option("--seed", seed, "Seed for random centers")->capture_default_str();
  cross->add_option("--out", out, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what(), kUsage);
  }

  try {
    if (*embed) {
      SimplicialComplex c;
      if (!complex_path.empty()) {
        c = read_scx_file(complex_path);
      } else {
        c = generate_family(FamilySpec::parse(family), seed).complex;
      }
      PipelineParams p;
      p.placement.ambient_dim = ambient;
      p.placement.alpha0 = alpha0;
      p.placement.radius = radius;
      p.placement.seed = seed;
      p.placement.max_resample_rounds = rounds;
      p.placement.full_restart = full_restart;
      p.subdivision = subdiv;
      p.tau = tau;
      p.perturb_budget = budget;
      p.auto_alpha = !fixed_alpha;
      p.measure_crossing = !no_crossing;
      const PipelineResult r = run_pipeline(c, p);
      if (!emb_out.empty()) write_text_file(emb_out, to_emb(r.final_embedding));
      if (!placement_out.empty()) write_text_file(placement_out, to_emb(r.placement));
      emit(out, "embed.json", pretty(to_json(r)));
    } else if (*cert) {
      emit(out, "certify.json", pretty(to_json(certify(read_emb_file(emb_path)))));
    } else if (*sub) {
      if (param == 0) throw Error(ErrorKind::Spec, "--param must be at least 1");
      if (!emb_path.empty()) {
        emit(out, "subdivide.emb", to_emb(subdivide_embedding(read_emb_file(emb_path), param)));
      } else {
        emit(out, "subdivide.scx", to_scx(edgewise_subdivide(read_scx_file(complex_path), param).child));
      }
    } else if (*lnk) {
      if (iso_dim > 0) {
        if (param == 0) throw Error(ErrorKind::Spec, "--isometry-dim needs --param >= 1");
        emit(out, "link.json", pretty(to_json(interior_link_isometry_check(iso_dim, param))));
      } else {
        if (emb_path.empty() || simplex_text.empty()) {
          throw Error(ErrorKind::Spec, "link needs --embedding and --simplex, or --isometry-dim and --param");
        }
        const EmbeddedComplex e = read_emb_file(emb_path);
        Json j = to_json(link_thickness(e, parse_simplex(simplex_text)));
        j["base"] = parse_simplex(simplex_text);
        emit(out, "link.json", pretty(j));
      }
    } else if (*netc) {
      const MetricSample m = mesh_to_metric(read_mesh_file(mesh_path));
      emit(out, "net.json", pretty(to_json(greedy_net(m, epsilon))));
    } else if (*study) {
      const FamilySpec spec = FamilySpec::parse(family);
      std::vector<std::uint64_t> seeds;
      for (std::size_t i = 0; i < seed_count; ++i) seeds.push_back(seed_base + i);
      PipelineParams p;
      p.placement.ambient_dim = ambient;
      p.placement.alpha0 = alpha0;
      const ScalingStudy s = run_scaling_study(spec, parse_list(v_list), seeds, p, [](const TrialRecord& r) {
        std::cerr << r.complex_id << " seed " << r.seed << ": " << r.status;
        if (r.r_final) std::cerr << " R_final " << *r.r_final;
        std::cerr << " (" << r.wall_time << " s)\n";
      });
      std::string dir = out_dir;
      if (dir.empty()) dir = env_out_dir().value_or(".");
      fs::create_directories(dir);
      write_text_file((fs::path(dir) / "trials.csv").string(), trials_csv(s.records));
      write_text_file((fs::path(dir) / "trials.jsonl").string(), trials_jsonl(s.records));
      write_text_file((fs::path(dir) / "study.json").string(), pretty(to_json(s)));
      std::cout << pretty(to_json(s));
    } else if (*cross) {
      const EmbeddedComplex e = read_emb_file(emb_path);
      SampleSpec spec;
      spec.pitch = pitch;
      if (samples > 0) {
        spec.kind = SampleSpec::Kind::Random;
        spec.samples = samples;
        spec.seed = seed;
      }
      emit(out, "crossing.json", pretty(to_json(crossing_profile(e, spec, cross_radius))));
    }
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what(), exit_code(e.kind()));
  } catch (const fs::filesystem_error& e) {
    return report_error("io", e.what(), kIo);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), kRuntime);
  }
  return 0;
}
