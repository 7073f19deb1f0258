#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "thick/geometry.hpp"

namespace thick {

/// Finite metric space on points 0..size()-1, backed by a dense table or a
/// distance callback.
class MetricSample {
 public:
  using Oracle = std::function<double(std::size_t, std::size_t)>;

  MetricSample() = default;

  /// Validates the table: square, finite, nonnegative, zero diagonal,
  /// symmetric, and the triangle inequality on random triples (1e-9).
  static MetricSample from_table(Eigen::MatrixXd table);
  static MetricSample from_oracle(std::size_t count, Oracle oracle);
  /// Euclidean distances between the columns of `coords`.
  static MetricSample euclidean(const PointSet& coords);

  std::size_t size() const { return count_; }
  double distance(std::size_t i, std::size_t j) const {
    return table_ ? (*table_)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) : oracle_(i, j);
  }
  const std::optional<Eigen::MatrixXd>& table() const { return table_; }
  const std::optional<PointSet>& coords() const { return coords_; }

 private:
  std::size_t count_ = 0;
  std::optional<Eigen::MatrixXd> table_;
  Oracle oracle_;
  std::optional<PointSet> coords_;
};

struct NetCertificate {
  bool packing_ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> packing_witness;  // centers within epsilon
  bool covering_ok = true;
  std::optional<std::size_t> covering_witness;  // first point farther than epsilon from all centers
};

struct NetResult {
  std::vector<std::size_t> centers;  // in selection order
  double epsilon = 0.0;
  NetCertificate certificate;
};

/// Scans points in ascending index order and keeps each one farther than
/// epsilon from every center kept so far.
NetResult greedy_net(const MetricSample& sample, double epsilon);

/// packing_ok: all center pairs farther than epsilon apart. covering_ok:
/// every point within epsilon of some center.
NetCertificate certify_net(const MetricSample& sample, const std::vector<std::size_t>& centers, double epsilon);

/// Shortest-path distances along the edges of an embedded mesh, weighted by
/// Euclidean edge length. Throws Disconnected when the 1-skeleton is not
/// connected.
MetricSample mesh_to_metric(const EmbeddedComplex& mesh);

}  // namespace thick
