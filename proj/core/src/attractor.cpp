#include "gifstile/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <stdexcept>

namespace gifstile {

namespace {

Path shortest_closed_path(const Digraph& g, Vertex v) {
  std::vector<int> parent_edge(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  std::vector<bool> seen(parent_edge.size(), false);
  std::deque<Vertex> queue{v};
  seen[static_cast<std::size_t>(v)] = true;
  auto path_to = [&](Vertex u) {
    Path p{v, {}};
    while (u != v) {
      const auto e = static_cast<EdgeIndex>(parent_edge[static_cast<std::size_t>(u)]);
      p.edges.push_back(e);
      u = g.edge(e).tail;
    }
    std::reverse(p.edges.begin(), p.edges.end());
    return p;
  };
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.out_edges(u)) {
      const Vertex h = g.edge(e).head;
      if (h == v) {
        Path p = path_to(u);
        p.edges.push_back(e);
        return p;
      }
      if (!seen[static_cast<std::size_t>(h)]) {
        seen[static_cast<std::size_t>(h)] = true;
        parent_edge[static_cast<std::size_t>(h)] = static_cast<int>(e);
        queue.push_back(h);
      }
    }
  }
  throw std::invalid_argument("vertex " + std::to_string(v) + " lies on no closed path");
}

struct Thinned {
  Cloud cloud;
  double delta = 0;
};

// Snap to centres of a voxel grid, growing the voxel until at most `cap`
// voxels are occupied. Output is sorted by voxel key.
Thinned thin(const Cloud& x, std::size_t cap) {
  const int dim = static_cast<int>(x.rows());
  const Vec lo = x.rowwise().minCoeff();
  const Vec extent = x.rowwise().maxCoeff() - lo;
  const double max_extent = extent.maxCoeff();
  double delta = std::max(max_extent / std::pow(static_cast<double>(cap), 1.0 / dim),
                          1e-12 * (1.0 + lo.cwiseAbs().maxCoeff()));
  std::vector<std::uint64_t> keys(static_cast<std::size_t>(x.cols()));
  std::uint64_t n[3] = {1, 1, 1};
  for (;;) {
    for (int a = 0; a < dim; ++a) n[a] = static_cast<std::uint64_t>(std::floor(extent[a] / delta)) + 1;
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      std::uint64_t k = 0;
      for (int a = dim - 1; a >= 0; --a) {
        const auto c = std::min(static_cast<std::uint64_t>(std::max(0.0, std::floor((x(a, i) - lo[a]) / delta))),
                                n[a] - 1);
        k = k * n[a] + c;
      }
      keys[static_cast<std::size_t>(i)] = k;
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.size() <= cap) break;
    delta *= 1.25;
    keys.resize(static_cast<std::size_t>(x.cols()));
  }
  Thinned out;
  out.delta = delta;
  out.cloud.resize(dim, static_cast<Eigen::Index>(keys.size()));
  for (std::size_t j = 0; j < keys.size(); ++j) {
    std::uint64_t k = keys[j];
    for (int a = 0; a < dim; ++a) {
      out.cloud(a, static_cast<Eigen::Index>(j)) = lo[a] + (static_cast<double>(k % n[a]) + 0.5) * delta;
      k /= n[a];
    }
  }
  return out;
}

class Iteration {
 public:
  Iteration(const Gifs& gifs, std::size_t cap) : gifs_(gifs), cap_(cap) {
    if (cap == 0) throw std::invalid_argument("points_per_component must be at least 1");
    gifs.require_valid();
    const Seeds seeds = attractor_seeds(gifs);
    approx_.dim = gifs.dim();
    for (const Vec& p : seeds.points) approx_.clouds.push_back(Cloud(p));
    approx_.seed_diameter = 2 * *std::max_element(seeds.radii.begin(), seeds.radii.end());
    update_bounds();
  }

  // Returns true if any cloud was thinned in this round.
  bool step() {
    auto next = apply_F(gifs_, approx_.clouds);
    const double lambda = gifs_.max_scale();
    double half_diag = 0;
    for (auto& c : next) {
      if (static_cast<std::size_t>(c.cols()) > cap_) {
        Thinned t = thin(c, cap_);
        c = std::move(t.cloud);
        half_diag = std::max(half_diag, t.delta * std::sqrt(static_cast<double>(approx_.dim)) / 2);
      }
    }
    approx_.clouds = std::move(next);
    ++approx_.iterations;
    approx_.thinning_error = lambda * approx_.thinning_error + half_diag;
    last_half_diag_ = half_diag > 0 ? half_diag : last_half_diag_ * lambda;
    update_bounds();
    return half_diag > 0;
  }

  double last_half_diag() const { return last_half_diag_; }
  AttractorApprox& approx() { return approx_; }

 private:
  void update_bounds() {
    approx_.diameter_bound = std::pow(gifs_.max_scale(), approx_.iterations) * approx_.seed_diameter;
    approx_.resolution = std::max(last_half_diag_, approx_.diameter_bound / 2);
  }

  const Gifs& gifs_;
  std::size_t cap_;
  AttractorApprox approx_;
  double last_half_diag_ = 0;
};

}  // namespace

Seeds attractor_seeds(const Gifs& gifs) {
  const Digraph& g = gifs.graph();
  Seeds out;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    out.points.push_back(map_for_path(gifs, shortest_closed_path(g, v), false).fixed_point());
  }
  // Smallest radii with f_e(B_{e+}) inside B_{e-}, by value iteration.
  out.radii.assign(out.points.size(), 0.0);
  for (int round = 0; round < 100000; ++round) {
    double change = 0;
    std::vector<double> next(out.radii.size(), 0.0);
    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edge(e);
      const auto t = static_cast<std::size_t>(edge.tail - 1);
      const auto h = static_cast<std::size_t>(edge.head - 1);
      const double reach = (gifs.map(e).apply(out.points[h]) - out.points[t]).norm() +
                           gifs.map(e).scale() * out.radii[h];
      next[t] = std::max(next[t], reach);
    }
    for (std::size_t i = 0; i < next.size(); ++i) change = std::max(change, std::abs(next[i] - out.radii[i]));
    out.radii = std::move(next);
    const double biggest = *std::max_element(out.radii.begin(), out.radii.end());
    if (change <= 1e-15 * (1.0 + biggest)) break;
  }
  for (double& r : out.radii) r *= 1.0 + 1e-12;
  return out;
}

std::vector<Cloud> apply_F(const Gifs& gifs, const std::vector<Cloud>& clouds) {
  const Digraph& g = gifs.graph();
  std::vector<Cloud> out;
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    Eigen::Index total = 0;
    for (EdgeIndex e : g.out_edges(v)) total += clouds.at(static_cast<std::size_t>(g.edge(e).head - 1)).cols();
    Cloud c(gifs.dim(), total);
    Eigen::Index at = 0;
    for (EdgeIndex e : g.out_edges(v)) {
      const Cloud& src = clouds[static_cast<std::size_t>(g.edge(e).head - 1)];
      c.middleCols(at, src.cols()) = apply(gifs.map(e), src);
      at += src.cols();
    }
    out.push_back(std::move(c));
  }
  return out;
}

AttractorApprox attractor(const Gifs& gifs, int iterations, std::size_t points_per_component) {
  if (iterations < 0) throw std::invalid_argument("iterations must be non-negative");
  Iteration it(gifs, points_per_component);
  for (int k = 0; k < iterations; ++k) it.step();
  return std::move(it.approx());
}

AttractorApprox saturated_attractor(const Gifs& gifs, std::size_t points_per_component, int max_iterations) {
  Iteration it(gifs, points_per_component);
  for (int k = 0; k < max_iterations; ++k) {
    const bool thinned = it.step();
    if (thinned && it.approx().diameter_bound <= it.last_half_diag()) break;
  }
  return std::move(it.approx());
}

double self_consistency(const Gifs& gifs, const AttractorApprox& approx) {
  const Digraph& g = gifs.graph();
  std::vector<PointIndex> index;
  index.reserve(approx.clouds.size());
  for (const Cloud& c : approx.clouds) index.emplace_back(c);
  // Linear parts and shifts of f_e and f_e^-1, applied without temporaries.
  std::vector<Mat> forward, backward;
  std::vector<Vec> forward_shift, backward_shift;
  for (const auto& f : gifs.maps()) {
    const Similarity inv = invert(f);
    forward.push_back(f.scale() * f.ortho());
    forward_shift.push_back(f.shift());
    backward.push_back(inv.scale() * inv.ortho());
    backward_shift.push_back(inv.shift());
  }

  double out = 0;
  Vec p(gifs.dim());
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    const auto vi = static_cast<std::size_t>(v - 1);
    // F(X)_v -> X_v
    for (EdgeIndex e : g.out_edges(v)) {
      const Cloud& src = approx.clouds[static_cast<std::size_t>(g.edge(e).head - 1)];
      for (Eigen::Index i = 0; i < src.cols(); ++i) {
        p.noalias() = forward[e] * src.col(i);
        p += forward_shift[e];
        for (double cap = std::max(out, index[vi].cell_size());; cap *= 2) {
          const double d = index[vi].nearest_distance(p, cap);
          if (d <= cap) {
            out = std::max(out, d);
            break;
          }
        }
      }
    }
    // X_v -> F(X)_v. Preimages under the wrong edge can land far from any
    // point, so each search is capped at a radius that doubles until some
    // edge finds a point within it.
    const Cloud& x = approx.clouds[vi];
    double floor_cap = std::numeric_limits<double>::infinity();
    for (EdgeIndex e : g.out_edges(v)) {
      const auto h = static_cast<std::size_t>(g.edge(e).head - 1);
      floor_cap = std::min(floor_cap, gifs.map(e).scale() * index[h].cell_size());
    }
    for (Eigen::Index i = 0; i < x.cols(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (double cap = std::max(out, floor_cap); best > cap; cap *= 2) {
        for (EdgeIndex e : g.out_edges(v)) {
          p.noalias() = backward[e] * x.col(i);
          p += backward_shift[e];
          const auto h = static_cast<std::size_t>(g.edge(e).head - 1);
          const double s = gifs.map(e).scale();
          best = std::min(best, s * index[h].nearest_distance(p, std::min(cap, best) / s));
          if (best == 0) break;
        }
      }
      out = std::max(out, best);
    }
  }
  return out;
}

NonoverlapEstimate nonoverlap_estimate(const Gifs& gifs, Vertex v, const NonoverlapOptions& options) {
  NonoverlapEstimate out;
  if (v < 1 || v > gifs.vertex_count()) throw std::invalid_argument("vertex out of range");
  if (options.samples <= 0) {
    out.warnings.push_back("no samples requested; estimate defined as 0");
    return out;
  }
  const Digraph& g = gifs.graph();
  const auto children = g.out_edges(v);
  if (children.size() < 2) return out;

  const AttractorApprox approx = saturated_attractor(gifs, options.points_per_component, options.max_iterations);
  std::vector<PointIndex> index;
  for (const Cloud& c : approx.clouds) index.emplace_back(c);
  out.tolerance = std::max(1e-3 * bbox_diameter(approx.cloud(v)), 2 * approx.resolution);

  // Children weighted by their measure scale; component sizes are ignored.
  std::vector<double> weights;
  for (EdgeIndex e : children) weights.push_back(std::pow(gifs.map(e).scale(), gifs.dim()));
  std::mt19937_64 rng(options.seed);
  std::discrete_distribution<std::size_t> pick_child(weights.begin(), weights.end());
  std::vector<Similarity> inverse;
  for (EdgeIndex e : children) inverse.push_back(invert(gifs.map(e)));

  int overlapping = 0;
  for (int s = 0; s < options.samples; ++s) {
    const std::size_t c = pick_child(rng);
    const EdgeIndex e = children[c];
    const Cloud& src = approx.cloud(g.edge(e).head);
    std::uniform_int_distribution<Eigen::Index> pick_point(0, src.cols() - 1);
    const Vec p = gifs.map(e).apply(src.col(pick_point(rng)));
    for (std::size_t o = 0; o < children.size(); ++o) {
      if (o == c) continue;
      const EdgeIndex other = children[o];
      const Vec q = inverse[o].apply(p);
      const double s = gifs.map(other).scale();
      // Slack in the cap keeps the comparison below exact.
      const double d = s * index[static_cast<std::size_t>(g.edge(other).head - 1)].nearest_distance(
                               q, out.tolerance / s * (1 + 1e-9));
      if (d <= out.tolerance) {
        ++overlapping;
        break;
      }
    }
  }
  out.fraction = static_cast<double>(overlapping) / options.samples;
  return out;
}

}  // namespace gifstile
