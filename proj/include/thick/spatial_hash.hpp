#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thick/geometry.hpp"

namespace thick {

/// Uniform-grid broad phase over simplices.
///
/// Hashing uses the first min(n, 3) coordinates. A simplex is registered in
/// every cell whose box lies within `margin` of its projection, so:
///   - any point within `margin` of a simplex finds it in the point's cell;
///   - any two simplices within 2*margin of each other share a cell.
class SimplexGrid {
 public:
  SimplexGrid(const EmbeddedComplex& embedding, double cell_size, double margin,
              std::span<const SimplexId> ids);

  /// Simplices registered in the cell containing `p` (possibly empty).
  std::span<const SimplexId> cell_members(const Point& p) const;

  /// All pairs (i < j) sharing at least one cell, sorted and deduplicated.
  std::vector<std::pair<SimplexId, SimplexId>> candidate_pairs() const;

  std::size_t cell_count() const { return ranges_.size(); }

 private:
  using Key = std::array<std::int64_t, 3>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return static_cast<std::size_t>(k[0] * 73856093LL ^ k[1] * 19349663LL ^ k[2] * 83492791LL);
    }
  };

  Key key_of(const Point& p) const;
  void insert(SimplexId id, const PointSet& projected);
  void insert_range(SimplexId id, const PointSet& projected, Key lo, Key hi);

  int hash_dims_ = 0;
  double cell_ = 1.0;
  double margin_ = 0.0;
  std::vector<std::pair<Key, SimplexId>> entries_;  // sorted after construction
  std::vector<SimplexId> ids_;                       // entries_ ids, grouped by cell
  std::unordered_map<Key, std::pair<std::uint32_t, std::uint32_t>, KeyHash> ranges_;
};

}  // namespace thick
