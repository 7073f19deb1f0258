#include "thick/net.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <sstream>

#include "thick/error.hpp"

namespace thick {

namespace {

void check_triangle(const Eigen::MatrixXd& d, std::size_t i, std::size_t j, std::size_t k) {
  const auto at = [&](std::size_t a, std::size_t b) {
    return d(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  };
  const double via = at(i, j) + at(j, k);
  if (at(i, k) > via + 1e-9 * std::max(1.0, via)) {
    std::ostringstream msg;
    msg << "triangle inequality fails: d(" << i << "," << k << ") > d(" << i << "," << j << ") + d(" << j << ","
        << k << ")";
    throw Error(ErrorKind::Parameter, msg.str());
  }
}

}  // namespace

MetricSample MetricSample::from_table(Eigen::MatrixXd table) {
  if (table.rows() != table.cols()) throw Error(ErrorKind::DimensionMismatch, "distance table must be square");
  const auto n = static_cast<std::size_t>(table.rows());
  for (Eigen::Index i = 0; i < table.rows(); ++i) {
    if (table(i, i) != 0.0) throw Error(ErrorKind::Parameter, "distance table has a nonzero diagonal entry");
    for (Eigen::Index j = 0; j < table.cols(); ++j) {
      const double v = table(i, j);
      if (!std::isfinite(v) || v < 0.0) throw Error(ErrorKind::Parameter, "distance table entries must be finite and nonnegative");
      if (v != table(j, i)) throw Error(ErrorKind::Parameter, "distance table is not symmetric");
    }
  }
  if (n <= 30) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check_triangle(table, i, j, k);
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < 20000; ++t) check_triangle(table, pick(rng), pick(rng), pick(rng));
  }
  MetricSample s;
  s.count_ = n;
  s.table_ = std::move(table);
  return s;
}

MetricSample MetricSample::from_oracle(std::size_t count, Oracle oracle) {
  if (!oracle) throw Error(ErrorKind::Parameter, "empty distance oracle");
  MetricSample s;
  s.count_ = count;
  s.oracle_ = std::move(oracle);
  return s;
}

MetricSample MetricSample::euclidean(const PointSet& coords) {
  const Eigen::Index n = coords.cols();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (coords.col(i) - coords.col(j)).norm();
  }
  MetricSample s;
  s.count_ = static_cast<std::size_t>(n);
  s.table_ = std::move(d);
  s.coords_ = coords;
  return s;
}

NetResult greedy_net(const MetricSample& sample, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorKind::Parameter, "epsilon must be positive");
  if (sample.size() == 0) throw Error(ErrorKind::Parameter, "empty metric sample");
  NetResult out;
  out.epsilon = epsilon;
  // nearest[j]: distance from j to its closest center so far (j not yet scanned).
  std::vector<double> nearest(sample.size(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!(nearest[i] > epsilon)) continue;
    out.centers.push_back(i);
    for (std::size_t j = i + 1; j < sample.size(); ++j) nearest[j] = std::min(nearest[j], sample.distance(i, j));
  }
  out.certificate = certify_net(sample, out.centers, epsilon);
  return out;
}

NetCertificate certify_net(const MetricSample& sample, const std::vector<std::size_t>& centers, double epsilon) {
  for (std::size_t c : centers) {
    if (c >= sample.size()) throw Error(ErrorKind::Range, "center index outside the sample");
  }
  NetCertificate cert;
  for (std::size_t a = 0; a < centers.size() && cert.packing_ok; ++a) {
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      if (!(sample.distance(centers[a], centers[b]) > epsilon)) {
        cert.packing_ok = false;
        cert.packing_witness = std::pair{centers[a], centers[b]};
        break;
      }
    }
  }
  for (std::size_t p = 0; p < sample.size(); ++p) {
    bool covered = false;
    for (std::size_t c : centers) {
      if (sample.distance(p, c) <= epsilon) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      cert.covering_ok = false;
      cert.covering_witness = p;
      break;
    }
  }
  return cert;
}

MetricSample mesh_to_metric(const EmbeddedComplex& mesh) {
  const SimplicialComplex& c = mesh.complex();
  const std::size_t n = c.vertex_count();
  const auto inf = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd table = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), inf);
  using Item = std::pair<double, VertexId>;
  for (VertexId s = 0; s < n; ++s) {
    auto row = table.col(s);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    row(s) = 0.0;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d > row(v)) continue;
      for (VertexId w : c.neighbors(v)) {
        const double nd = d + (mesh.point(v) - mesh.point(w)).norm();
        if (nd < row(w)) {
          row(w) = nd;
          queue.emplace(nd, w);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (row(static_cast<Eigen::Index>(v)) == inf) {
        throw Error(ErrorKind::Disconnected, "mesh is disconnected; vertices " + std::to_string(s) + " and " +
                                                 std::to_string(v) + " lie in different components");
      }
    }
  }
  // Dijkstra from each end can differ in the last bits; keep the table exactly symmetric.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
      table(a, b) = table(b, a) = std::min(table(a, b), table(b, a));
    }
  }
  return MetricSample::from_table(std::move(table));
}

}  // namespace thick
