#pragma once

#include <cstdint>
#include <vector>

#include "thick/complex.hpp"
#include "thick/geometry.hpp"

namespace thick {

/// Number of simplices (all dimensions) within `radius` of `center`.
std::size_t ball_crossing_count(const EmbeddedComplex& embedding, const Point& center, double radius);

/// Where to put ball centers: a cubic lattice of the given pitch anchored at
/// the center of the enclosing ball, or `samples` uniform draws from that ball.
struct SampleSpec {
  enum class Kind { Lattice, Random };
  Kind kind = Kind::Lattice;
  double pitch = 1.0;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
};

struct CrossingMax {
  std::size_t max_count = 0;
  Point argmax_center;
  std::vector<std::size_t> per_color_max;  // empty unless a coloring is given
  std::size_t centers = 0;
};

/// Largest crossing count over the sampled centers inside the enclosing
/// ball; with a coloring, also the largest count restricted to each color.
CrossingMax max_crossing(const EmbeddedComplex& embedding, double radius, const SampleSpec& spec,
                         const SimplexColoring* coloring = nullptr);

}  // namespace thick
