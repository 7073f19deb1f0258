#include "thick/complex.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <deque>
#include <limits>
#include <string>

#include "thick/error.hpp"

namespace thick {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedSimplex: return "malformed_simplex";
    case ErrorKind::Range: return "range";
    case ErrorKind::NotFound: return "not_found";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::DegenerateSimplex: return "degenerate_simplex";
    case ErrorKind::DegenerateLink: return "degenerate_link";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Saturation: return "saturation";
    case ErrorKind::InvalidEmbedding: return "invalid_embedding";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::Spec: return "spec";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::StudyAborted: return "study_aborted";
  }
  return "unknown";
}

bool shares_vertex(const Simplex& a, const Simplex& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

std::size_t SimplicialComplex::SimplexHash::operator()(const Simplex& s) const noexcept {
  std::size_t h = s.size();
  for (VertexId v : s) h = h * 0x9E3779B97F4A7C15ull + v + 0x7F4A7C15u;
  return h;
}

namespace {

bool by_dim_then_lex(const Simplex& a, const Simplex& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

SimplicialComplex SimplicialComplex::build(std::span<const Simplex> top, std::size_t vertex_count,
                                           int declared_dim) {
  if (vertex_count > std::numeric_limits<VertexId>::max()) {
    throw Error(ErrorKind::Range, "vertex count too large");
  }
  std::vector<Simplex> all;
  all.reserve(vertex_count + top.size() * 4);
  for (VertexId v = 0; v < vertex_count; ++v) all.push_back({v});

  int max_dim = 0;
  for (const Simplex& raw : top) {
    if (raw.empty()) throw Error(ErrorKind::MalformedSimplex, "empty simplex");
    Simplex s = raw;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw Error(ErrorKind::MalformedSimplex, "repeated vertex inside one simplex");
    }
    if (s.back() >= vertex_count) {
      throw Error(ErrorKind::Range, "vertex id " + std::to_string(s.back()) +
                                        " out of range (vertex count " +
                                        std::to_string(vertex_count) + ")");
    }
    const int d = simplex_dimension(s);
    if (declared_dim >= 0 && d > declared_dim) {
      throw Error(ErrorKind::MalformedSimplex, "simplex of dimension " + std::to_string(d) +
                                                   " exceeds declared dimension " +
                                                   std::to_string(declared_dim));
    }
    if (s.size() > 31) throw Error(ErrorKind::MalformedSimplex, "simplex too large");
    max_dim = std::max(max_dim, d);
    const std::uint32_t subsets = (1u << s.size());
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
      if (std::popcount(mask) == 1) continue;  // vertices already present
      Simplex face;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask & (1u << i)) face.push_back(s[i]);
      }
      all.push_back(std::move(face));
    }
  }
  std::sort(all.begin(), all.end(), by_dim_then_lex);
  all.erase(std::unique(all.begin(), all.end()), all.end());

  SimplicialComplex out;
  out.dimension_ = declared_dim >= 0 ? declared_dim : max_dim;
  out.vertex_count_ = vertex_count;
  out.simplices_ = std::move(all);
  out.dim_offsets_.assign(out.dimension_ + 2, 0);
  {
    SimplexId id = 0;
    for (int d = 0; d <= out.dimension_ + 1; ++d) {
      while (id < out.simplices_.size() && simplex_dimension(out.simplices_[id]) < d) ++id;
      out.dim_offsets_[d] = id;
    }
  }
  out.index_.reserve(out.simplices_.size());
  out.star_.assign(vertex_count, {});
  out.neighbors_.assign(vertex_count, {});
  for (SimplexId id = 0; id < out.simplices_.size(); ++id) {
    const Simplex& s = out.simplices_[id];
    out.index_.emplace(s, id);
    for (VertexId v : s) out.star_[v].push_back(id);
    if (s.size() == 2) {
      out.neighbors_[s[0]].push_back(s[1]);
      out.neighbors_[s[1]].push_back(s[0]);
    }
  }
  for (auto& nb : out.neighbors_) std::sort(nb.begin(), nb.end());
  return out;
}

std::size_t SimplicialComplex::count(int dim) const {
  if (dim < 0 || dim > dimension_) return 0;
  auto [lo, hi] = dim_range(dim);
  return hi - lo;
}

std::pair<SimplexId, SimplexId> SimplicialComplex::dim_range(int dim) const {
  if (dim < 0 || dim > dimension_) return {0, 0};
  return {dim_offsets_[dim], dim_offsets_[dim + 1]};
}

std::optional<SimplexId> SimplicialComplex::find(const Simplex& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<SimplexId> SimplicialComplex::maximal_simplices() const {
  std::vector<SimplexId> out;
  for (SimplexId id = 0; id < simplices_.size(); ++id) {
    const Simplex& s = simplices_[id];
    // A simplex is maximal iff no simplex one dimension up in the star of its
    // first vertex contains it.
    bool maximal = true;
    for (SimplexId other : star_[s.front()]) {
      const Simplex& t = simplices_[other];
      if (t.size() == s.size() + 1 && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(id);
  }
  return out;
}

LoadProfile load_profile(const SimplicialComplex& complex, LoadConvention convention) {
  LoadProfile p;
  p.convention = convention;
  p.per_vertex_load.resize(complex.vertex_count());
  for (VertexId v = 0; v < complex.vertex_count(); ++v) {
    std::size_t load = complex.star(v).size();
    if (convention == LoadConvention::ExcludeSelf) --load;
    p.per_vertex_load[v] = load;
    p.max_load = std::max(p.max_load, load);
  }
  return p;
}

std::size_t coloring_bound(int dimension, const LoadProfile& load) {
  const std::size_t k1 = static_cast<std::size_t>(dimension) + 1;
  return load.convention == LoadConvention::CountSelf ? k1 * load.max_load
                                                      : k1 * load.max_load + 1;
}

SimplexColoring color_simplices(const SimplicialComplex& complex) {
  const std::size_t count = complex.simplex_count();
  SimplexColoring out;
  out.color.assign(count, -1);

  std::vector<SimplexId> order;
  order.reserve(count);
  for (int d = complex.dimension(); d >= 0; --d) {
    auto [lo, hi] = complex.dim_range(d);
    for (SimplexId id = lo; id < hi; ++id) order.push_back(id);
  }

  std::vector<char> used;
  for (SimplexId id : order) {
    used.assign(static_cast<std::size_t>(out.color_count) + 1, 0);
    for (VertexId v : complex.simplex(id)) {
      for (SimplexId other : complex.star(v)) {
        const int c = out.color[other];
        if (c >= 0) used[static_cast<std::size_t>(c)] = 1;
      }
    }
    int c = 0;
    while (used[static_cast<std::size_t>(c)]) ++c;
    out.color[id] = c;
    out.color_count = std::max(out.color_count, c + 1);
  }
  return out;
}

Link link(const SimplicialComplex& complex, const Simplex& sigma) {
  const auto sigma_id = complex.find(sigma);
  if (!sigma_id) throw Error(ErrorKind::NotFound, "simplex is not in the complex");

  Link out;
  out.base = sigma;

  std::vector<SimplexId> cofaces;
  for (SimplexId id : complex.star(sigma.front())) {
    const Simplex& t = complex.simplex(id);
    if (t.size() > sigma.size() && std::includes(t.begin(), t.end(), sigma.begin(), sigma.end())) {
      cofaces.push_back(id);
    }
  }

  std::vector<VertexId> verts;
  for (SimplexId id : cofaces) {
    const Simplex& t = complex.simplex(id);
    if (t.size() == sigma.size() + 1) {
      std::set_difference(t.begin(), t.end(), sigma.begin(), sigma.end(), std::back_inserter(verts));
    }
  }
  std::sort(verts.begin(), verts.end());
  out.parent_vertex = verts;

  auto relabel = [&](VertexId parent) {
    return static_cast<VertexId>(std::lower_bound(verts.begin(), verts.end(), parent) - verts.begin());
  };

  std::vector<Simplex> link_simplices;
  std::vector<std::pair<Simplex, SimplexId>> with_parent;
  for (SimplexId id : cofaces) {
    const Simplex& t = complex.simplex(id);
    Simplex rest;
    std::set_difference(t.begin(), t.end(), sigma.begin(), sigma.end(), std::back_inserter(rest));
    for (VertexId& v : rest) v = relabel(v);
    link_simplices.push_back(rest);
    with_parent.emplace_back(std::move(rest), id);
  }

  const int link_dim = std::max(0, complex.dimension() - simplex_dimension(sigma) - 1);
  out.complex = SimplicialComplex::build(link_simplices, verts.size(), link_dim);
  out.parent_simplex.assign(out.complex.simplex_count(), 0);
  for (const auto& [s, parent] : with_parent) {
    out.parent_simplex[*out.complex.find(s)] = parent;
  }
  return out;
}

namespace {

std::vector<std::size_t> bfs(const SimplicialComplex& complex, VertexId source, std::size_t limit) {
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(complex.vertex_count(), kUnseen);
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    if (dist[v] >= limit) continue;
    for (VertexId w : complex.neighbors(v)) {
      if (dist[w] == kUnseen) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

void check_vertex(const SimplicialComplex& complex, VertexId v) {
  if (v >= complex.vertex_count()) {
    throw Error(ErrorKind::Range, "vertex id " + std::to_string(v) + " out of range");
  }
}

}  // namespace

std::optional<std::size_t> graph_distance(const SimplicialComplex& complex, VertexId v, VertexId w) {
  check_vertex(complex, v);
  check_vertex(complex, w);
  if (v == w) return 0;
  const auto dist = bfs(complex, v, std::numeric_limits<std::size_t>::max());
  if (dist[w] == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return dist[w];
}

std::vector<VertexId> ball_vertices(const SimplicialComplex& complex, VertexId v, std::size_t radius) {
  check_vertex(complex, v);
  // Small radii are the common case; a local search avoids a full BFS array.
  std::vector<VertexId> frontier{v};
  std::vector<VertexId> seen{v};
  for (std::size_t r = 0; r < radius && !frontier.empty(); ++r) {
    std::vector<VertexId> next;
    for (VertexId u : frontier) {
      for (VertexId w : complex.neighbors(u)) {
        if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  seen.erase(seen.begin());
  std::sort(seen.begin(), seen.end());
  return seen;
}

bool is_connected(const SimplicialComplex& complex) {
  if (complex.vertex_count() == 0) return true;
  const auto dist = bfs(complex, 0, std::numeric_limits<std::size_t>::max());
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); });
}

}  // namespace thick
