#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "thick/complex.hpp"
#include "thick/geometry.hpp"

namespace thick {

/// Generator description. Textual form:
///   random-regular:V:d   cycle:V   torus:a:b   icosphere:level
struct FamilySpec {
  enum class Kind { RandomRegular, Cycle, TorusGrid, Icosphere };
  Kind kind = Kind::Cycle;
  std::size_t vertices = 0;  // random-regular, cycle
  int degree = 3;            // random-regular
  std::size_t a = 0, b = 0;  // torus
  int level = 0;             // icosphere

  static FamilySpec parse(const std::string& text);
  std::string to_string() const;
  /// Same family with `v` vertices (random-regular and cycle only).
  FamilySpec with_vertices(std::size_t v) const;
};

struct FamilyMember {
  SimplicialComplex complex;
  std::size_t load_bound = 0;           // self-counting convention
  std::optional<Eigen::MatrixXd> coords;  // natural embedding when one exists
};

/// Deterministic given `seed`; only the random-regular family consumes it.
/// Infeasible specs (odd V*d, d >= V, too-small cycles or tori) raise a spec
/// error.
FamilyMember generate_family(const FamilySpec& spec, std::uint64_t seed = 0);

}  // namespace thick
