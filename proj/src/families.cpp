#include "thick/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "thick/error.hpp"

namespace thick {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

std::size_t parse_count(const std::string& s, const std::string& whole) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Spec, "bad number '" + s + "' in family spec '" + whole + "'");
  }
}

Simplex sorted(std::initializer_list<std::size_t> vs) {
  Simplex s;
  for (std::size_t v : vs) s.push_back(static_cast<VertexId>(v));
  std::sort(s.begin(), s.end());
  return s;
}

FamilyMember finish(std::vector<Simplex> top, std::size_t v) {
  FamilyMember m;
  m.complex = SimplicialComplex::build(top, v);
  m.load_bound = load_profile(m.complex).max_load;
  return m;
}

FamilyMember random_regular(std::size_t v, int d, std::uint64_t seed) {
  const auto deg = static_cast<std::size_t>(d);
  if (d < 1 || deg >= v || (v * deg) % 2 != 0) {
    throw Error(ErrorKind::Spec, "random-regular graph needs 1 <= d < V and V*d even");
  }
  std::mt19937_64 rng(seed);
  std::vector<VertexId> stubs;
  for (std::size_t i = 0; i < v; ++i) {
    for (std::size_t k = 0; k < deg; ++k) stubs.push_back(static_cast<VertexId>(i));
  }
  // Pairing model, restarted until the pairing is a simple graph.
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<std::pair<VertexId, VertexId>> edges;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size() && simple; i += 2) {
      const VertexId a = std::min(stubs[i], stubs[i + 1]);
      const VertexId b = std::max(stubs[i], stubs[i + 1]);
      simple = a != b && edges.emplace(a, b).second;
    }
    if (!simple) continue;
    std::vector<Simplex> top;
    for (const auto& [a, b] : edges) top.push_back({a, b});
    return finish(std::move(top), v);
  }
  throw Error(ErrorKind::Spec, "no simple pairing found for random-regular graph");
}

FamilyMember cycle(std::size_t v) {
  if (v < 3) throw Error(ErrorKind::Spec, "cycle needs at least 3 vertices");
  std::vector<Simplex> top;
  for (std::size_t i = 0; i < v; ++i) top.push_back(sorted({i, (i + 1) % v}));
  return finish(std::move(top), v);
}

FamilyMember torus(std::size_t a, std::size_t b) {
  if (a < 3 || b < 3) throw Error(ErrorKind::Spec, "torus grid needs both sides at least 3");
  auto id = [&](std::size_t i, std::size_t j) { return (i % a) * b + (j % b); };
  std::vector<Simplex> top;
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      top.push_back(sorted({id(i, j), id(i + 1, j), id(i + 1, j + 1)}));
      top.push_back(sorted({id(i, j), id(i, j + 1), id(i + 1, j + 1)}));
    }
  }
  FamilyMember m = finish(std::move(top), a * b);
  // Flat picture: the grid in the plane is not an embedding of the torus, so
  // use the standard torus of revolution in R^3.
  Eigen::MatrixXd x(3, static_cast<Eigen::Index>(a * b));
  const double two_pi = 2.0 * std::acos(-1.0);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < b; ++j) {
      const double u = two_pi * static_cast<double>(i) / static_cast<double>(a);
      const double w = two_pi * static_cast<double>(j) / static_cast<double>(b);
      x.col(static_cast<Eigen::Index>(id(i, j))) << (2.0 + std::cos(w)) * std::cos(u),
          (2.0 + std::cos(w)) * std::sin(u), std::sin(w);
    }
  }
  m.coords = std::move(x);
  return m;
}

FamilyMember icosphere(int level) {
  if (level < 0 || level > 8) throw Error(ErrorKind::Spec, "icosphere level must be in [0, 8]");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Eigen::Vector3d> pts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0}, {0, -1, phi}, {0, 1, phi},
      {0, -1, -phi}, {0, 1, -phi}, {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (auto& p : pts) p.normalize();
  std::vector<std::array<std::size_t, 3>> faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
      {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
      {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid;
    auto midpoint = [&](std::size_t i, std::size_t j) {
      const auto key = std::minmax(i, j);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      pts.push_back((pts[i] + pts[j]).normalized());
      mid.emplace(key, pts.size() - 1);
      return pts.size() - 1;
    };
    std::vector<std::array<std::size_t, 3>> next;
    for (const auto& f : faces) {
      const std::size_t a = midpoint(f[0], f[1]);
      const std::size_t b = midpoint(f[1], f[2]);
      const std::size_t c = midpoint(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    faces = std::move(next);
  }
  std::vector<Simplex> top;
  for (const auto& f : faces) top.push_back(sorted({f[0], f[1], f[2]}));
  FamilyMember m = finish(std::move(top), pts.size());
  Eigen::MatrixXd x(3, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) x.col(static_cast<Eigen::Index>(i)) = pts[i];
  m.coords = std::move(x);
  return m;
}

}  // namespace

FamilySpec FamilySpec::parse(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.empty()) throw Error(ErrorKind::Spec, "empty family spec");
  FamilySpec s;
  const std::string& name = parts[0];
  auto want = [&](std::size_t n) {
    if (parts.size() != n) throw Error(ErrorKind::Spec, "wrong number of fields in family spec '" + text + "'");
  };
  if (name == "random-regular") {
    want(3);
    s.kind = Kind::RandomRegular;
    s.vertices = parse_count(parts[1], text);
    s.degree = static_cast<int>(parse_count(parts[2], text));
  } else if (name == "cycle") {
    want(2);
    s.kind = Kind::Cycle;
    s.vertices = parse_count(parts[1], text);
  } else if (name == "torus") {
    want(3);
    s.kind = Kind::TorusGrid;
    s.a = parse_count(parts[1], text);
    s.b = parse_count(parts[2], text);
  } else if (name == "icosphere") {
    want(2);
    s.kind = Kind::Icosphere;
    s.level = static_cast<int>(parse_count(parts[1], text));
  } else {
    throw Error(ErrorKind::Spec, "unknown family '" + name + "'");
  }
  return s;
}

std::string FamilySpec::to_string() const {
  switch (kind) {
    case Kind::RandomRegular:
      return "random-regular:" + std::to_string(vertices) + ":" + std::to_string(degree);
    case Kind::Cycle:
      return "cycle:" + std::to_string(vertices);
    case Kind::TorusGrid:
      return "torus:" + std::to_string(a) + ":" + std::to_string(b);
    case Kind::Icosphere:
      return "icosphere:" + std::to_string(level);
  }
  return {};
}

FamilySpec FamilySpec::with_vertices(std::size_t v) const {
  if (kind != Kind::RandomRegular && kind != Kind::Cycle) {
    throw Error(ErrorKind::Spec, "family " + to_string() + " has no vertex-count parameter");
  }
  FamilySpec s = *this;
  s.vertices = v;
  return s;
}

FamilyMember generate_family(const FamilySpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case FamilySpec::Kind::RandomRegular:
      return random_regular(spec.vertices, spec.degree, seed);
    case FamilySpec::Kind::Cycle:
      return cycle(spec.vertices);
    case FamilySpec::Kind::TorusGrid:
      return torus(spec.a, spec.b);
    case FamilySpec::Kind::Icosphere:
      return icosphere(spec.level);
  }
  throw Error(ErrorKind::Spec, "unknown family");
}

}  // namespace thick
