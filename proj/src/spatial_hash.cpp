#include "thick/spatial_hash.hpp"

#include <algorithm>
#include <cmath>

#include "thick/distance.hpp"
#include "thick/error.hpp"

namespace thick {

SimplexGrid::SimplexGrid(const EmbeddedComplex& embedding, double cell_size, double margin,
                         std::span<const SimplexId> ids)
    : hash_dims_(std::min(embedding.ambient_dim(), 3)), cell_(cell_size), margin_(margin) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error(ErrorKind::Parameter, "grid cell size must be positive");
  }
  for (SimplexId id : ids) {
    const PointSet pts = embedding.simplex_points(id);
    insert(id, pts.topRows(hash_dims_));
  }
  std::sort(entries_.begin(), entries_.end());
  ids_.reserve(entries_.size());
  ranges_.reserve(entries_.size() / 2 + 1);
  for (std::size_t i = 0; i < entries_.size();) {
    std::size_t j = i;
    while (j < entries_.size() && entries_[j].first == entries_[i].first) ids_.push_back(entries_[j++].second);
    ranges_.emplace(entries_[i].first, std::pair{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
    i = j;
  }
  entries_.clear();
  entries_.shrink_to_fit();
}

SimplexGrid::Key SimplexGrid::key_of(const Point& p) const {
  Key k{0, 0, 0};
  for (int i = 0; i < hash_dims_; ++i) k[i] = static_cast<std::int64_t>(std::floor(p(i) / cell_));
  return k;
}

std::span<const SimplexId> SimplexGrid::cell_members(const Point& p) const {
  auto it = ranges_.find(key_of(p.head(hash_dims_)));
  if (it == ranges_.end()) return {};
  return std::span<const SimplexId>(ids_).subspan(it->second.first, it->second.second - it->second.first);
}

void SimplexGrid::insert(SimplexId id, const PointSet& projected) {
  Key lo{0, 0, 0};
  Key hi{0, 0, 0};
  for (int i = 0; i < hash_dims_; ++i) {
    lo[i] = static_cast<std::int64_t>(std::floor((projected.row(i).minCoeff() - margin_) / cell_));
    hi[i] = static_cast<std::int64_t>(std::floor((projected.row(i).maxCoeff() + margin_) / cell_));
  }
  insert_range(id, projected, lo, hi);
}

void SimplexGrid::insert_range(SimplexId id, const PointSet& projected, Key lo, Key hi) {
  Point center(hash_dims_);
  double half_diag2 = 0.0;
  int widest = 0;
  std::int64_t widest_span = 0;
  for (int i = 0; i < hash_dims_; ++i) {
    const double a = static_cast<double>(lo[i]) * cell_;
    const double b = static_cast<double>(hi[i] + 1) * cell_;
    center(i) = 0.5 * (a + b);
    half_diag2 += 0.25 * (b - a) * (b - a);
    if (hi[i] - lo[i] > widest_span) {
      widest_span = hi[i] - lo[i];
      widest = i;
    }
  }
  if (point_simplex_distance(center, projected) > margin_ + std::sqrt(half_diag2)) return;
  if (widest_span == 0) {
    entries_.emplace_back(lo, id);
    return;
  }
  const std::int64_t mid = lo[widest] + widest_span / 2;
  Key left_hi = hi;
  left_hi[widest] = mid;
  Key right_lo = lo;
  right_lo[widest] = mid + 1;
  insert_range(id, projected, lo, left_hi);
  insert_range(id, projected, right_lo, hi);
}

std::vector<std::pair<SimplexId, SimplexId>> SimplexGrid::candidate_pairs() const {
  std::vector<std::uint64_t> keys;
  for (const auto& [cell, range] : ranges_) {
    // Ids within a cell are ascending.
    for (std::uint32_t i = range.first; i < range.second; ++i) {
      for (std::uint32_t j = i + 1; j < range.second; ++j) {
        keys.push_back((static_cast<std::uint64_t>(ids_[i]) << 32) | ids_[j]);
      }
    }
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<std::pair<SimplexId, SimplexId>> out;
  out.reserve(keys.size());
  for (std::uint64_t k : keys) {
    out.emplace_back(static_cast<SimplexId>(k >> 32), static_cast<SimplexId>(k & 0xFFFFFFFFu));
  }
  return out;
}

}  // namespace thick
