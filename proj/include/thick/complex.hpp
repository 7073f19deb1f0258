#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace thick {

using VertexId = std::uint32_t;
using SimplexId = std::uint32_t;

/// Strictly increasing vertex ids. A d-simplex has d+1 entries.
using Simplex = std::vector<VertexId>;

inline int simplex_dimension(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

/// True when the two sorted vertex tuples have a vertex in common.
bool shares_vertex(const Simplex& a, const Simplex& b);

/// Abstract face-closed simplicial complex.
///
/// Simplices are stored once, ordered by dimension and then lexicographically;
/// a SimplexId is the position in that order, so ids are stable for a given
/// complex and identical across equal complexes.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Face closure of `top` over `vertex_count` vertices. A negative
  /// `declared_dim` means "infer from the input".
  static SimplicialComplex build(std::span<const Simplex> top, std::size_t vertex_count,
                                 int declared_dim = -1);

  int dimension() const { return dimension_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t simplex_count() const { return simplices_.size(); }
  std::size_t count(int dim) const;

  const Simplex& simplex(SimplexId id) const { return simplices_[id]; }
  int dim_of(SimplexId id) const { return simplex_dimension(simplices_[id]); }
  const std::vector<Simplex>& simplices() const { return simplices_; }

  /// Ids of all simplices of dimension `dim`, a contiguous range.
  std::pair<SimplexId, SimplexId> dim_range(int dim) const;

  std::optional<SimplexId> find(const Simplex& s) const;
  bool contains(const Simplex& s) const { return find(s).has_value(); }

  /// Every simplex containing `v`, including the 0-simplex {v}, in id order.
  const std::vector<SimplexId>& star(VertexId v) const { return star_[v]; }

  /// Vertices joined to `v` by an edge, ascending.
  const std::vector<VertexId>& neighbors(VertexId v) const { return neighbors_[v]; }

  /// Simplices that are not a proper face of another simplex.
  std::vector<SimplexId> maximal_simplices() const;

  bool operator==(const SimplicialComplex& other) const {
    return dimension_ == other.dimension_ && vertex_count_ == other.vertex_count_ &&
           simplices_ == other.simplices_;
  }

 private:
  struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept;
  };

  int dimension_ = 0;
  std::size_t vertex_count_ = 0;
  std::vector<Simplex> simplices_;
  std::vector<SimplexId> dim_offsets_;  // dim_offsets_[d] = first id of dimension d
  std::unordered_map<Simplex, SimplexId, SimplexHash> index_;
  std::vector<std::vector<SimplexId>> star_;
  std::vector<std::vector<VertexId>> neighbors_;
};

/// Whether the vertex itself is counted among "simplices containing v".
enum class LoadConvention { CountSelf, ExcludeSelf };

struct LoadProfile {
  std::vector<std::size_t> per_vertex_load;
  std::size_t max_load = 0;
  LoadConvention convention = LoadConvention::CountSelf;
};

LoadProfile load_profile(const SimplicialComplex& complex,
                         LoadConvention convention = LoadConvention::CountSelf);

/// Upper bound on the number of colors the greedy coloring may use:
/// (k+1)L when the vertex counts itself, (k+1)L+1 otherwise.
std::size_t coloring_bound(int dimension, const LoadProfile& load);

struct SimplexColoring {
  std::vector<int> color;  // indexed by SimplexId
  int color_count = 0;
};

/// Greedy proper coloring of the "shares a vertex" conflict graph, visiting
/// simplices by decreasing dimension then lexicographically.
SimplexColoring color_simplices(const SimplicialComplex& complex);

/// Link of a simplex together with the correspondence back to the parent.
struct Link {
  Simplex base;
  SimplicialComplex complex;
  std::vector<VertexId> parent_vertex;    // link vertex -> parent vertex
  std::vector<SimplexId> parent_simplex;  // link simplex -> parent simplex (base joined)
};

/// One (r-i-1)-simplex per r-simplex properly containing `sigma`; link
/// vertices are the parent ids relabeled densely in increasing order.
Link link(const SimplicialComplex& complex, const Simplex& sigma);

/// Edge-path length in the 1-skeleton; nullopt when disconnected.
std::optional<std::size_t> graph_distance(const SimplicialComplex& complex, VertexId v, VertexId w);

/// Vertices at graph distance 1..radius from `v`, ascending.
std::vector<VertexId> ball_vertices(const SimplicialComplex& complex, VertexId v, std::size_t radius);

bool is_connected(const SimplicialComplex& complex);

}  // namespace thick
