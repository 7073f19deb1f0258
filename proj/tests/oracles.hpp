#pragma once
// Independent reference computations used only by the test suites.

#include <Eigen/Core>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "thick/complex.hpp"
#include "thick/geometry.hpp"
#include "thick/thickness.hpp"

namespace thick::oracle {

/// Every barycentric vector of length m with entries a/steps.
inline std::vector<Eigen::VectorXd> barycentric_grid(Eigen::Index m, int steps) {
  std::vector<Eigen::VectorXd> out;
  Eigen::VectorXi a = Eigen::VectorXi::Zero(m);
  auto rec = [&](auto&& self, Eigen::Index i, int left) -> void {
    if (i == m - 1) {
      a(i) = left;
      out.push_back(a.cast<double>() / steps);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      a(i) = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, steps);
  return out;
}

/// min ||A l - B m|| by a product grid of about `budget` points followed by
/// pattern search (mass transfer between barycentric coordinates) with
/// adaptive steps from the best few grid points.
inline double grid_refine_distance(const PointSet& a, const PointSet& b, std::size_t budget = 10000) {
  const Eigen::Index ma = a.cols();
  const Eigen::Index mb = b.cols();
  auto count_for = [](Eigen::Index m, int s) {
    double c = 1.0;
    for (Eigen::Index i = 1; i < m; ++i) c = c * static_cast<double>(s + i) / static_cast<double>(i);
    return c;
  };
  int steps = 1;
  while (steps < 200 && count_for(ma, steps + 1) * count_for(mb, steps + 1) <= static_cast<double>(budget)) ++steps;
  const auto ga = barycentric_grid(ma, steps);
  const auto gb = barycentric_grid(mb, steps);

  struct Cand { double d; Eigen::VectorXd l; Eigen::VectorXd m; };
  std::vector<Cand> cands;
  for (const auto& l : ga) {
    const Eigen::VectorXd x = a * l;
    for (const auto& m : gb) cands.push_back({(x - b * m).norm(), l, m});
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& p, const Cand& q) { return p.d < q.d; });
  cands.resize(std::min<std::size_t>(cands.size(), 8));

  double best = std::numeric_limits<double>::infinity();
  for (Cand c : cands) {
    double f = c.d;
    double step = 1.0 / steps;
    int rounds = 0;
    while (step > 1e-13 && ++rounds < 4000) {
      bool improved = false;
      for (int side = 0; side < 2; ++side) {
        Eigen::VectorXd& w = side == 0 ? c.l : c.m;
        for (Eigen::Index i = 0; i < w.size(); ++i) {
          for (Eigen::Index j = 0; j < w.size(); ++j) {
            if (i == j) continue;
            const double move = std::min(step, w(j));
            if (move <= 0.0) continue;
            w(i) += move;
            w(j) -= move;
            const double g = (a * c.l - b * c.m).norm();
            if (g < f) {
              f = g;
              improved = true;
            } else {
              w(i) -= move;
              w(j) += move;
            }
          }
        }
      }
      // Expand on success so long valleys are crossed in few rounds.
      step = improved ? std::min(2.0 * step, 1.0) : 0.5 * step;
    }
    best = std::min(best, f);
  }
  // Exact polish for small simplices: some minimizing pair lies in the relative
  // interiors of a face pair, where it is an affine least-squares solution.
  if (ma <= 7 && mb <= 7) {
    for (unsigned fa = 1; fa < (1u << ma); ++fa) {
      for (unsigned fb = 1; fb < (1u << mb); ++fb) {
        std::vector<Eigen::Index> ia, ib;
        for (Eigen::Index i = 0; i < ma; ++i)
          if (fa >> i & 1u) ia.push_back(i);
        for (Eigen::Index i = 0; i < mb; ++i)
          if (fb >> i & 1u) ib.push_back(i);
        const Eigen::Index ka = static_cast<Eigen::Index>(ia.size()) - 1;
        const Eigen::Index kb = static_cast<Eigen::Index>(ib.size()) - 1;
        const Eigen::VectorXd a0 = a.col(ia[0]);
        const Eigen::VectorXd b0 = b.col(ib[0]);
        Eigen::VectorXd t = Eigen::VectorXd::Zero(ka + kb);
        if (ka + kb > 0) {
          Eigen::MatrixXd m(a.rows(), ka + kb);
          for (Eigen::Index i = 0; i < ka; ++i) m.col(i) = a.col(ia[i + 1]) - a0;
          for (Eigen::Index i = 0; i < kb; ++i) m.col(ka + i) = b0 - b.col(ib[i + 1]);
          t = m.completeOrthogonalDecomposition().solve(b0 - a0);
        }
        const double tol = 1e-12;
        bool feasible = t.head(ka).sum() <= 1.0 + tol && t.tail(kb).sum() <= 1.0 + tol;
        for (Eigen::Index i = 0; i < t.size(); ++i) feasible = feasible && t(i) >= -tol;
        if (!feasible) continue;
        Eigen::VectorXd x = a0, y = b0;
        for (Eigen::Index i = 0; i < ka; ++i) x += t(i) * (a.col(ia[i + 1]) - a0);
        for (Eigen::Index i = 0; i < kb; ++i) y += t(ka + i) * (b.col(ib[i + 1]) - b0);
        best = std::min(best, (x - y).norm());
      }
    }
  }
  return best;
}

/// Plain double loop over every vertex-disjoint pair.
inline GGThickness brute_force_gg(const EmbeddedComplex& e) {
  GGThickness out;
  const SimplicialComplex& c = e.complex();
  for (SimplexId i = 0; i < c.simplex_count(); ++i) {
    for (SimplexId j = i + 1; j < c.simplex_count(); ++j) {
      if (shares_vertex(c.simplex(i), c.simplex(j))) continue;
      const double d = pair_distance(e, i, j);
      if (!out.value || d < *out.value) {
        out.value = d;
        out.witness = {i, j};
      }
    }
  }
  return out;
}

/// d-volume from squared pairwise distances (Cayley-Menger determinant).
inline double cayley_menger_volume(const PointSet& p) {
  const Eigen::Index m = p.cols();
  const Eigen::Index d = m - 1;
  Eigen::MatrixXd cm = Eigen::MatrixXd::Ones(m + 1, m + 1);
  cm(0, 0) = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) cm(i + 1, j + 1) = (p.col(i) - p.col(j)).squaredNorm();
  }
  double fact = 1.0;
  for (Eigen::Index i = 2; i <= d; ++i) fact *= static_cast<double>(i);
  const double sign = (d % 2 == 0) ? -1.0 : 1.0;
  const double v2 = sign * cm.determinant() / (std::pow(2.0, static_cast<double>(d)) * fact * fact);
  return std::sqrt(std::max(0.0, v2));
}

/// All-pairs graph distances by Floyd-Warshall; -1 for unreachable.
inline std::vector<std::vector<long>> floyd_warshall(const SimplicialComplex& c) {
  const std::size_t v = c.vertex_count();
  const long inf = std::numeric_limits<long>::max() / 4;
  std::vector<std::vector<long>> d(v, std::vector<long>(v, inf));
  for (std::size_t i = 0; i < v; ++i) d[i][i] = 0;
  const auto [lo, hi] = c.dim_range(1);
  for (SimplexId e = lo; e < hi; ++e) {
    d[c.simplex(e)[0]][c.simplex(e)[1]] = 1;
    d[c.simplex(e)[1]][c.simplex(e)[0]] = 1;
  }
  for (std::size_t k = 0; k < v; ++k)
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = 0; j < v; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (long& x : row)
      if (x >= inf) x = -1;
  return d;
}

/// Random orthogonal matrix via QR of a Gaussian matrix.
inline Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  return qr.householderQ();
}

inline Eigen::MatrixXd random_points(int n, int m, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::MatrixXd p(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) p(i, j) = u(rng);
  return p;
}

/// Random complex: `top` random k-simplices on `v` vertices.
inline SimplicialComplex random_complex(std::size_t v, int k, std::size_t top, std::mt19937_64& rng) {
  std::vector<Simplex> simplices;
  std::vector<VertexId> ids(v);
  for (std::size_t i = 0; i < v; ++i) ids[i] = static_cast<VertexId>(i);
  for (std::size_t t = 0; t < top; ++t) {
    std::shuffle(ids.begin(), ids.end(), rng);
    std::uniform_int_distribution<int> dim(1, k);
    const int d = dim(rng);
    Simplex s(ids.begin(), ids.begin() + d + 1);
    std::sort(s.begin(), s.end());
    simplices.push_back(s);
  }
  return SimplicialComplex::build(simplices, v, k);
}

}  // namespace thick::oracle
