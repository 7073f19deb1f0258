#include "thick/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "thick/distance.hpp"
#include "thick/error.hpp"
#include "thick/spatial_hash.hpp"

namespace thick {

double default_radius(const SimplicialComplex& complex, int ambient_dim) {
  const int k = complex.dimension();
  if (ambient_dim <= k) throw Error(ErrorKind::Parameter, "ambient dimension must exceed the complex dimension");
  const double v = std::max<double>(1.0, static_cast<double>(complex.vertex_count()));
  return std::pow(v, 1.0 / static_cast<double>(ambient_dim - k));
}

namespace {

Point sphere_point(int n, double radius, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Point p(n);
  double norm = 0.0;
  do {
    for (int i = 0; i < n; ++i) p(i) = normal(rng);
    norm = p.norm();
  } while (!(norm > 0.0));
  return p * (radius / norm);
}

// Constraint bookkeeping for the placement loop: edges (separation) and the
// simplices whose links contain a disjoint pair (link thickness).
class PlacementConstraints {
 public:
  PlacementConstraints(const SimplicialComplex& c, double alpha0, double radius)
      : c_(c), alpha0_(alpha0), min_edge_(alpha0 * radius) {
    if (c.dimension() >= 1) {
      const auto [lo, hi] = c.dim_range(1);
      for (SimplexId e = lo; e < hi; ++e) edges_.push_back(e);
    }

    edge_deps_.resize(c.vertex_count());
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      for (VertexId v : c.simplex(edges_[i])) edge_deps_[v].push_back(i);
    }
    link_deps_.resize(c.vertex_count());
    for (SimplexId id = 0; id < c.simplex_count(); ++id) {
      const Link lk = link(c, c.simplex(id));
      if (!has_disjoint_pair(lk.complex)) continue;
      const std::size_t index = bases_.size();
      bases_.push_back(id);
      std::vector<VertexId> touched(c.simplex(id));
      touched.insert(touched.end(), lk.parent_vertex.begin(), lk.parent_vertex.end());
      for (VertexId v : touched) link_deps_[v].push_back(index);
    }
  }

  std::size_t edge_count() const { return edges_.size(); }
  std::size_t base_count() const { return bases_.size(); }
  const std::vector<std::size_t>& edge_deps(VertexId v) const { return edge_deps_[v]; }
  const std::vector<std::size_t>& link_deps(VertexId v) const { return link_deps_[v]; }

  // Appends the participating vertices and returns a description when
  // violated.
  std::optional<std::string> check_edge(const EmbeddedComplex& e, std::size_t i, std::vector<VertexId>& out) const {
    const Simplex& s = c_.simplex(edges_[i]);
    const double d = (e.point(s[0]) - e.point(s[1])).norm();
    if (d >= min_edge_) return std::nullopt;
    out.insert(out.end(), s.begin(), s.end());
    std::ostringstream msg;
    msg << "adjacent vertices " << s[0] << " and " << s[1] << " are " << d << " apart, below " << min_edge_;
    return msg.str();
  }

  std::optional<std::string> check_link(const EmbeddedComplex& e, std::size_t i, std::vector<VertexId>& out) const {
    const Simplex& sigma = c_.simplex(bases_[i]);
    std::ostringstream msg;
    msg << "link of simplex " << bases_[i] << " ";
    try {
      const SphericalLinkEmbedding lk = link_embedding(e, sigma);
      const LinkThickness t = link_thickness(lk, alpha0_);
      if (!t.angle || *t.angle >= alpha0_) return std::nullopt;
      out.insert(out.end(), sigma.begin(), sigma.end());
      for (SimplexId ls : {t.witness.first, t.witness.second}) {
        for (VertexId lv : lk.link.complex.simplex(ls)) out.push_back(lk.link.parent_vertex[lv]);
      }
      msg << "has angle " << *t.angle << " below " << alpha0_;
    } catch (const Error& err) {
      out.insert(out.end(), sigma.begin(), sigma.end());
      for (VertexId lv : link(c_, sigma).parent_vertex) out.push_back(lv);
      msg << "is degenerate: " << err.what();
    }
    return msg.str();
  }

 private:
  static bool has_disjoint_pair(const SimplicialComplex& lk) {
    const auto& s = lk.simplices();
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (!shares_vertex(s[i], s[j])) return true;
      }
    }
    return false;
  }

  const SimplicialComplex& c_;
  double alpha0_;
  double min_edge_;
  std::vector<SimplexId> edges_;
  std::vector<SimplexId> bases_;
  std::vector<std::vector<std::size_t>> edge_deps_;
  std::vector<std::vector<std::size_t>> link_deps_;
};

}  // namespace

EmbeddedComplex random_sphere_placement(const SimplicialComplex& complex, const PlacementParams& params) {
  const int n = params.ambient_dim;
  const int k = complex.dimension();
  if (n < 2 * k + 1) throw Error(ErrorKind::Parameter, "ambient dimension must be at least 2k+1");
  if (!(params.alpha0 > 0.0) || !(params.alpha0 < 2.0)) {
    throw Error(ErrorKind::Parameter, "alpha0 must lie in (0, 2)");
  }
  const double radius = params.radius > 0.0 ? params.radius : default_radius(complex, n);
  const std::size_t v_count = complex.vertex_count();

  std::mt19937_64 rng(params.seed);
  EmbeddedComplex e(complex, Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(v_count)));
  const PlacementConstraints cons(complex, params.alpha0, radius);

  std::vector<char> edge_dirty(cons.edge_count(), 1);
  std::vector<char> link_dirty(cons.base_count(), 1);
  auto redraw_all = [&] {
    for (VertexId v = 0; v < v_count; ++v) e.set_point(v, sphere_point(n, radius, rng));
    std::fill(edge_dirty.begin(), edge_dirty.end(), 1);
    std::fill(link_dirty.begin(), link_dirty.end(), 1);
  };
  redraw_all();

  std::vector<VertexId> participants;
  std::string last;
  for (std::size_t round = 0;; ++round) {
    participants.clear();
    for (std::size_t i = 0; i < edge_dirty.size(); ++i) {
      if (!edge_dirty[i]) continue;
      edge_dirty[i] = 0;
      if (auto m = cons.check_edge(e, i, participants)) last = *m;
    }
    for (std::size_t i = 0; i < link_dirty.size(); ++i) {
      if (!link_dirty[i]) continue;
      link_dirty[i] = 0;
      if (auto m = cons.check_link(e, i, participants)) last = *m;
    }
    if (participants.empty()) return e;
    if (round + 1 >= params.max_resample_rounds) {
      throw SaturationError("placement did not satisfy its constraints within " +
                                std::to_string(params.max_resample_rounds) + " rounds",
                            last);
    }
    if (params.full_restart || (round + 1) % 100 == 0) {
      redraw_all();
      continue;
    }
    std::sort(participants.begin(), participants.end());
    participants.erase(std::unique(participants.begin(), participants.end()), participants.end());
    for (VertexId v : participants) {
      e.set_point(v, sphere_point(n, radius, rng));
      for (std::size_t i : cons.edge_deps(v)) edge_dirty[i] = 1;
      for (std::size_t i : cons.link_deps(v)) link_dirty[i] = 1;
    }
  }
}

ConditionReport check_conditions(const EmbeddedComplex& embedding, double alpha0, double radius) {
  const SimplicialComplex& c = embedding.complex();
  ConditionReport r;
  r.alpha0 = alpha0;
  r.radius = radius > 0.0 ? radius : embedding.coords().colwise().norm().maxCoeff();

  if (c.dimension() >= 1) {
    const auto [lo, hi] = c.dim_range(1);
    for (SimplexId id = lo; id < hi; ++id) {
      const Simplex& s = c.simplex(id);
      const double d = (embedding.point(s[0]) - embedding.point(s[1])).norm();
      if (!r.min_adjacent_distance || d < *r.min_adjacent_distance) {
        r.min_adjacent_distance = d;
        r.adjacent_witness = {s[0], s[1]};
      }
    }
  }
  r.cond1_ok = !r.min_adjacent_distance || *r.min_adjacent_distance >= alpha0 * r.radius;

  r.link = min_link_thickness(embedding);
  // The certified value is a lower bound that may sit below the true minimum
  // by the certification tolerance.
  r.cond2_ok = !r.link.angle || *r.link.angle >= alpha0 - 1e-6;

  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    for (VertexId w : ball_vertices(c, v, 2)) {
      if (w <= v) continue;
      const double d = (embedding.point(v) - embedding.point(w)).norm();
      if (!r.dagger_min_pair_distance || d < *r.dagger_min_pair_distance) {
        r.dagger_min_pair_distance = d;
        r.dagger_witness = {v, w};
      }
    }
  }

  if (const auto st = edge_length_stats(embedding)) {
    r.edge_ratio = st->min > 0.0 ? st->max / st->min : std::numeric_limits<double>::infinity();
    r.edge_min_witness = {c.simplex(st->argmin)[0], c.simplex(st->argmin)[1]};
    r.edge_max_witness = {c.simplex(st->argmax)[0], c.simplex(st->argmax)[1]};
  }
  return r;
}

CrossingProfile crossing_profile(const EmbeddedComplex& embedding, const SampleSpec& spec, double radius) {
  CrossingProfile p;
  if (radius > 0.0) {
    p.radius = radius;
  } else {
    const auto st = edge_length_stats(embedding);
    p.radius = st && st->min > 0.0 ? st->min / 10.0 : 1.0;
  }
  const SimplexColoring coloring = color_simplices(embedding.complex());
  p.color_count = static_cast<std::size_t>(coloring.color_count);
  p.max = max_crossing(embedding, p.radius, spec, &coloring);
  return p;
}

namespace {

// Min-tree over pair distances with the index of the minimum.
class MinTree {
 public:
  explicit MinTree(const std::vector<double>& values) {
    size_ = 1;
    while (size_ < values.size()) size_ *= 2;
    tree_.assign(2 * size_, {std::numeric_limits<double>::infinity(), 0});
    for (std::size_t i = 0; i < values.size(); ++i) tree_[size_ + i] = {values[i], i};
    for (std::size_t i = size_ - 1; i >= 1; --i) tree_[i] = std::min(tree_[2 * i], tree_[2 * i + 1]);
  }

  void set(std::size_t i, double value) {
    std::size_t node = size_ + i;
    tree_[node] = {value, i};
    for (node /= 2; node >= 1; node /= 2) tree_[node] = std::min(tree_[2 * node], tree_[2 * node + 1]);
  }

  std::pair<double, std::size_t> min() const { return tree_[1]; }

 private:
  std::size_t size_ = 1;
  std::vector<std::pair<double, std::size_t>> tree_;
};

class Perturber {
 public:
  Perturber(const EmbeddedComplex& embedding, double tau, std::uint64_t seed)
      : origin_(embedding.coords()), work_(embedding), tau_(tau), cap_(2.0 * tau), rng_(seed) {
    const SimplicialComplex& c = embedding.complex();
    std::vector<SimplexId> ids(c.simplex_count());
    std::iota(ids.begin(), ids.end(), SimplexId{0});
    double cell = 4.0 * tau;
    if (const auto st = edge_length_stats(embedding)) cell = std::max(cell, st->max);
    const SimplexGrid grid(embedding, cell, 2.0 * tau, ids);
    for (const auto& [a, b] : grid.candidate_pairs()) {
      if (shares_vertex(c.simplex(a), c.simplex(b))) continue;
      const double d = pair_distance(embedding, a, b);
      if (d <= 4.0 * tau) {
        pairs_.push_back({a, b});
        dist_.push_back(d);
      }
    }
    pairs_of_.resize(c.simplex_count());
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      pairs_of_[pairs_[p].first].push_back(p);
      pairs_of_[pairs_[p].second].push_back(p);
    }
    stamp_.assign(pairs_.size(), 0);
  }

  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t accepted() const { return accepted_; }
  const EmbeddedComplex& result() const { return work_; }

  void run(std::size_t budget, std::size_t& iterations) {
    if (pairs_.empty()) return;
    MinTree tree(dist_);
    tree_ = &tree;
    // Stop once a whole window of iterations barely raises the minimum.
    const std::size_t window = std::max<std::size_t>(200, 2 * pairs_.size());
    double mark = tree.min().first;
    for (iterations = 0; iterations < budget; ++iterations) {
      const auto [worst, index] = tree.min();
      if (worst >= cap_) break;
      if (iterations > 0 && iterations % window == 0) {
        if (worst - mark < 1e-3 * tau_) break;
        mark = worst;
      }
      if (!improve(index)) break;
    }
    tree_ = nullptr;
  }

 private:
  using Move = std::vector<std::pair<VertexId, Point>>;

  bool improve(std::size_t index) {
    const SimplexPair pr = pairs_[index];
    const Simplex& a = work_.complex().simplex(pr.first);
    const Simplex& b = work_.complex().simplex(pr.second);
    if (prefer_ascend_ && ascend(index)) return true;
    const ClosestPoints cp = closest_points(work_.simplex_points(pr.first), work_.simplex_points(pr.second));
    Point dir = cp.on_a - cp.on_b;
    if (!(dir.norm() > 1e-15)) dir = random_direction();
    dir.normalize();

    for (int mode = 0; mode < 3; ++mode) {
      for (double step = tau_; step >= tau_ / 64.0; step *= 0.5) {
        Move move;
        const double sa = mode == 0 ? 0.5 * step : (mode == 1 ? step : 0.0);
        const double sb = mode == 0 ? 0.5 * step : (mode == 2 ? step : 0.0);
        if (sa > 0.0) for (VertexId v : a) move.emplace_back(v, work_.point(v) + sa * dir);
        if (sb > 0.0) for (VertexId v : b) move.emplace_back(v, work_.point(v) - sb * dir);
        if (attempt(move, index)) {
          prefer_ascend_ = false;
          return true;
        }
      }
    }
    std::vector<VertexId> verts(a);
    verts.insert(verts.end(), b.begin(), b.end());
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    std::uniform_int_distribution<int> scale(0, 5);
    for (int trial = 0; trial < 12; ++trial) {
      const VertexId v = verts[pick(rng_)];
      const double step = tau_ * std::ldexp(1.0, -scale(rng_));
      if (attempt({{v, work_.point(v) + step * random_direction()}}, index)) {
        prefer_ascend_ = false;
        return true;
      }
    }
    if (prefer_ascend_) return false;
    prefer_ascend_ = ascend(index);
    return prefer_ascend_;
  }

  // Moves along the min-norm convex combination of the distance gradients of
  // the focus pair and the pairs that blocked earlier tries, so that all of
  // them grow at first order.
  bool ascend(std::size_t focus) {
    const int n = work_.ambient_dim();
    std::vector<std::size_t> active{focus};
    for (int round = 0; round < 8; ++round) {
      std::vector<VertexId> verts;
      std::vector<std::pair<std::vector<std::pair<VertexId, double>>, Point>> grads;
      // Gradient of |x - y| for closest points x in conv(a), y in conv(b).
      auto add = [&](const Simplex& a, const Simplex& b, const ClosestPoints& cp) {
        Point u = cp.on_a - cp.on_b;
        if (!(u.norm() > 1e-15)) return false;
        u.normalize();
        std::vector<std::pair<VertexId, double>> w;
        for (std::size_t i = 0; i < a.size(); ++i) w.emplace_back(a[i], cp.weights_a(static_cast<Eigen::Index>(i)));
        for (std::size_t j = 0; j < b.size(); ++j) w.emplace_back(b[j], -cp.weights_b(static_cast<Eigen::Index>(j)));
        for (const auto& [v, x] : w) verts.push_back(v);
        grads.emplace_back(std::move(w), u);
        return true;
      };
      for (std::size_t p : active) {
        const Simplex& a = work_.complex().simplex(pairs_[p].first);
        const Simplex& b = work_.complex().simplex(pairs_[p].second);
        const PointSet pa = work_.simplex_points(pairs_[p].first);
        const PointSet pb = work_.simplex_points(pairs_[p].second);
        const ClosestPoints cp = closest_points(pa, pb);
        if (!add(a, b, cp)) return false;
        // Nearly tied vertex witnesses, so parallel faces move apart as a whole.
        const double slack = cp.distance + 0.02 * tau_;
        for (int side = 0; side < 2; ++side) {
          const Simplex& s = side == 0 ? a : b;
          const Simplex& o = side == 0 ? b : a;
          const PointSet& ps = side == 0 ? pa : pb;
          const PointSet& po = side == 0 ? pb : pa;
          if (s.size() < 2) continue;
          for (std::size_t i = 0; i < s.size(); ++i) {
            const ClosestPoints vc = closest_points(ps.col(static_cast<Eigen::Index>(i)), po);
            if (vc.distance <= slack) add(Simplex{s[i]}, o, vc);
          }
        }
      }
      std::sort(verts.begin(), verts.end());
      verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
      // Vertices pinned on the tau-ball contribute an inward constraint.
      for (VertexId v : verts) {
        const Point disp = work_.point(v) - origin_.col(v);
        const double r = disp.norm();
        if (r >= tau_ * (1.0 - 1e-2) && r > 0.0) grads.emplace_back(std::vector<std::pair<VertexId, double>>{{v, 1.0}}, -disp / r);
      }
      auto slot = [&](VertexId v) {
        return static_cast<Eigen::Index>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
      };
      PointSet g = PointSet::Zero(n * static_cast<Eigen::Index>(verts.size()), static_cast<Eigen::Index>(grads.size()));
      for (std::size_t k = 0; k < grads.size(); ++k) {
        for (const auto& [v, x] : grads[k].first) {
          g.col(static_cast<Eigen::Index>(k)).segment(n * slot(v), n) += x * grads[k].second;
        }
      }
      const Eigen::VectorXd d = min_norm_point(g).point;
      double biggest = 0.0;
      for (std::size_t i = 0; i < verts.size(); ++i) {
        biggest = std::max(biggest, d.segment(n * static_cast<Eigen::Index>(i), n).norm());
      }
      if (!(biggest > 1e-9)) return false;

      std::vector<std::size_t> blockers;
      for (double step = tau_; step >= tau_ * 1e-6; step *= 0.25) {
        Move move;
        for (std::size_t i = 0; i < verts.size(); ++i) {
          move.emplace_back(verts[i], work_.point(verts[i]) + (step / biggest) * d.segment(n * static_cast<Eigen::Index>(i), n));
        }
        if (attempt(move, focus, &blockers)) return true;
      }
      std::size_t added = 0;
      for (std::size_t p : blockers) {
        if (std::find(active.begin(), active.end(), p) == active.end()) {
          active.push_back(p);
          ++added;
        }
      }
      if (added == 0) return false;
    }
    return false;
  }

  Point random_direction() {
    std::normal_distribution<double> normal;
    Point d(work_.ambient_dim());
    do {
      for (Eigen::Index i = 0; i < d.size(); ++i) d(i) = normal(rng_);
    } while (!(d.norm() > 0.0));
    return d.normalized();
  }

  // Keeps the displacement from the original position within tau.
  Point project(VertexId v, const Point& target) const {
    Point disp = target - origin_.col(v);
    const double norm = disp.norm();
    if (norm > tau_) disp *= tau_ / norm;
    // Check the rounded result, not the exact displacement.
    Point out = origin_.col(v) + disp;
    while ((out - origin_.col(v)).norm() > tau_) {
      disp *= 1.0 - 1e-12;
      out = origin_.col(v) + disp;
    }
    return out;
  }

  // On rejection, pairs that fell below the previous minimum go to `blockers`.
  bool attempt(const Move& move, std::size_t focus, std::vector<std::size_t>* blockers = nullptr) {
    ++epoch_;
    affected_.clear();
    const SimplicialComplex& c = work_.complex();
    Move saved;
    for (const auto& [v, target] : move) {
      saved.emplace_back(v, work_.point(v));
      for (SimplexId s : c.star(v)) {
        for (std::size_t p : pairs_of_[s]) {
          if (stamp_[p] != epoch_) {
            stamp_[p] = epoch_;
            affected_.push_back(p);
          }
        }
      }
    }
    double old_min = cap_;
    for (std::size_t p : affected_) old_min = std::min(old_min, dist_[p]);
    for (const auto& [v, target] : move) work_.set_point(v, project(v, target));

    double new_min = cap_;
    double focus_new = 0.0;
    fresh_.resize(affected_.size());
    for (std::size_t i = 0; i < affected_.size(); ++i) {
      const std::size_t p = affected_[i];
      fresh_[i] = pair_distance(work_, pairs_[p].first, pairs_[p].second);
      new_min = std::min(new_min, fresh_[i]);
      if (p == focus) focus_new = fresh_[i];
    }
    const bool ok = new_min >= old_min && std::min(focus_new, cap_) > std::min(dist_[focus], cap_);
    if (!ok) {
      if (blockers) {
        for (std::size_t i = 0; i < affected_.size(); ++i) {
          if (fresh_[i] < old_min && affected_[i] != focus) blockers->push_back(affected_[i]);
        }
      }
      for (const auto& [v, p] : saved) work_.set_point(v, p);
      return false;
    }
    for (std::size_t i = 0; i < affected_.size(); ++i) {
      dist_[affected_[i]] = fresh_[i];
      tree_->set(affected_[i], fresh_[i]);
    }
    ++accepted_;
    return true;
  }

  Eigen::MatrixXd origin_;
  EmbeddedComplex work_;
  double tau_;
  double cap_;
  std::mt19937_64 rng_;
  std::vector<SimplexPair> pairs_;
  std::vector<double> dist_;
  std::vector<std::vector<std::size_t>> pairs_of_;
  std::vector<std::size_t> stamp_;
  std::size_t epoch_ = 0;
  std::vector<std::size_t> affected_;
  std::vector<double> fresh_;
  MinTree* tree_ = nullptr;
  std::size_t accepted_ = 0;
  bool prefer_ascend_ = false;
};

}  // namespace

namespace {

PerturbResult perturb_from(const EmbeddedComplex& embedding, std::optional<double> before, double tau,
                           std::size_t budget, std::uint64_t seed) {
  PerturbResult out;
  out.embedding = embedding;
  out.thickness_before = before;
  out.thickness_after = out.thickness_before;
  if (!(tau > 0.0)) return out;

  Perturber perturber(embedding, tau, seed);
  out.candidate_pairs = perturber.pair_count();
  if (budget == 0) budget = std::max<std::size_t>(1000, 50 * perturber.pair_count());
  perturber.run(budget, out.iterations);
  out.accepted_moves = perturber.accepted();
  if (out.accepted_moves == 0) return out;

  const auto after = gg_thickness(perturber.result()).value;
  // Untracked pairs stay above 2*tau, so this only triggers when the input was
  // already thicker than the cap.
  if (out.thickness_before && (!after || *after < *out.thickness_before)) return out;
  out.embedding = perturber.result();
  out.thickness_after = after;
  out.max_displacement = (out.embedding.coords() - embedding.coords()).colwise().norm().maxCoeff();
  return out;
}

}  // namespace

PerturbResult thicken_perturb(const EmbeddedComplex& embedding, double tau, std::size_t budget,
                              std::uint64_t seed) {
  return perturb_from(embedding, gg_thickness(embedding).value, tau, budget, seed);
}

PipelineResult run_pipeline(const SimplicialComplex& complex, const PipelineParams& params) {
  PipelineResult r;
  r.params = params;
  PlacementParams place = params.placement;
  r.radius = place.radius > 0.0 ? place.radius : default_radius(complex, place.ambient_dim);
  place.radius = r.radius;

  for (int halvings = 0;; ++halvings) {
    r.alpha_ladder.push_back(place.alpha0);
    try {
      r.placement = random_sphere_placement(complex, place);
      break;
    } catch (const SaturationError&) {
      if (!params.auto_alpha || halvings >= params.max_alpha_halvings) throw;
      place.alpha0 *= 0.5;
    }
  }
  r.alpha0_final = place.alpha0;

  r.conditions = check_conditions(r.placement, r.alpha0_final, r.radius);
  if (!r.conditions.cond1_ok || !r.conditions.cond2_ok) {
    throw Error(ErrorKind::InvalidEmbedding, "placement failed independent certification");
  }
  if (params.measure_crossing) r.crossing = crossing_profile(r.placement, params.crossing, params.crossing_radius);

  const std::uint32_t t =
      params.subdivision > 0 ? params.subdivision : static_cast<std::uint32_t>(std::max(1.0, std::ceil(r.radius)));
  r.subdivision = edgewise_subdivide(complex, t);
  const EmbeddedComplex sub = subdivide_embedding(r.placement, r.subdivision);
  r.before = certify(sub);
  if (r.before.gg.value && !(*r.before.gg.value > 0.0)) {
    throw Error(ErrorKind::InvalidEmbedding, "subdivided placement has intersecting disjoint simplices");
  }

  if (params.tau) {
    r.tau = *params.tau;
  } else {
    r.tau = r.before.edges ? r.before.edges->min / 4.0 : 0.0;
  }
  r.perturb = perturb_from(sub, r.before.gg.value, r.tau, params.perturb_budget, place.seed ^ 0x9E3779B97F4A7C15ULL);

  const auto& thick = r.perturb.thickness_after;
  r.lambda = thick && *thick > 0.0 ? 1.0 / *thick : 1.0;
  r.r_pre = enclosing_radius(r.perturb.embedding);
  r.final_embedding = r.perturb.embedding.scaled(r.lambda);
  r.after = certify(r.final_embedding);
  r.r_final = r.after.enclosing_radius;
  return r;
}

}  // namespace thick
