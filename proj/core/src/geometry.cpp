#include "gifstile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gifstile {

namespace {

Point2 apply2(const Similarity& f, const Point2& x) {
  const Vec v = f.apply(Vec(x));
  return {v[0], v[1]};
}

double segment_distance(const Point2& p, const Point2& a, const Point2& b) {
  const Point2 ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - p).norm();
}

// Squared distance transform along one line (Felzenszwalb-Huttenlocher).
void edt_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  int k = 0;
  v[0] = 0;
  z[0] = -inf;
  z[1] = inf;
  for (int q = 1; q < n; ++q) {
    if (f[static_cast<std::size_t>(q)] == inf) continue;
    if (f[static_cast<std::size_t>(v[0])] == inf) {
      v[0] = q;
      continue;
    }
    double s;
    for (;;) {
      const int vk = v[static_cast<std::size_t>(k)];
      s = ((f[static_cast<std::size_t>(q)] + q * q) - (f[static_cast<std::size_t>(vk)] + vk * vk)) / (2.0 * (q - vk));
      if (s <= z[static_cast<std::size_t>(k)] && k > 0) {
        --k;
      } else {
        break;
      }
    }
    ++k;
    v[static_cast<std::size_t>(k)] = q;
    z[static_cast<std::size_t>(k)] = s;
    z[static_cast<std::size_t>(k) + 1] = inf;
  }
  if (f[static_cast<std::size_t>(v[0])] == inf) {
    std::fill(d.begin(), d.end(), inf);
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k) + 1] < q) ++k;
    const int vk = v[static_cast<std::size_t>(k)];
    d[static_cast<std::size_t>(q)] = (q - vk) * (q - vk) + f[static_cast<std::size_t>(vk)];
  }
}

Point2 polygon_centroid(const Polygon& poly) {
  double area = 0;
  Point2 c(0, 0);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % poly.size()];
    const double cross = a.x() * b.y() - b.x() * a.y();
    area += cross;
    c += (a + b) * cross;
  }
  if (std::abs(area) < 1e-300) return poly.front();
  return c / (3.0 * area);
}

}  // namespace

PolygonRegion::PolygonRegion(Polygon poly) : poly_(std::move(poly)) {
  if (poly_.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  box_.lo = box_.hi = poly_.front();
  for (const auto& p : poly_) {
    box_.lo = box_.lo.cwiseMin(p);
    box_.hi = box_.hi.cwiseMax(p);
  }
}

bool PolygonRegion::contains(const Point2& x) const {
  bool in = false;
  for (std::size_t i = 0, j = poly_.size() - 1; i < poly_.size(); j = i++) {
    const Point2& a = poly_[i];
    const Point2& b = poly_[j];
    if ((a.y() > x.y()) != (b.y() > x.y()) &&
        x.x() < (b.x() - a.x()) * (x.y() - a.y()) / (b.y() - a.y()) + a.x()) {
      in = !in;
    }
  }
  return in;
}

double PolygonRegion::boundary_distance(const Point2& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    best = std::min(best, segment_distance(x, poly_[i], poly_[(i + 1) % poly_.size()]));
  }
  return best;
}

double PolygonRegion::inner_distance(const Point2& x) const { return contains(x) ? boundary_distance(x) : 0.0; }

Point2 PolygonRegion::sample(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> ux(box_.lo.x(), box_.hi.x()), uy(box_.lo.y(), box_.hi.y());
  for (;;) {
    const Point2 p(ux(rng), uy(rng));
    if (contains(p)) return p;
  }
}

RasterRegion::RasterRegion(const Cloud& cloud, double pixel, double accuracy) : pixel_(pixel), accuracy_(accuracy) {
  if (cloud.rows() != 2 || cloud.cols() == 0) throw std::invalid_argument("raster region needs a non-empty planar cloud");
  if (!(pixel > 0)) throw std::invalid_argument("raster pixel must be positive");
  constexpr long pad = 3;
  const Point2 lo(cloud.row(0).minCoeff(), cloud.row(1).minCoeff());
  const Point2 hi(cloud.row(0).maxCoeff(), cloud.row(1).maxCoeff());
  lo_ = lo - Point2(pad * pixel, pad * pixel);
  nx_ = static_cast<long>(std::floor((hi.x() - lo.x()) / pixel)) + 2 * pad + 1;
  ny_ = static_cast<long>(std::floor((hi.y() - lo.y()) / pixel)) + 2 * pad + 1;
  if (nx_ * ny_ > 64L * 1024 * 1024) throw std::invalid_argument("raster too large; increase the pixel size");
  std::vector<char> occ(static_cast<std::size_t>(nx_ * ny_), 0);
  for (Eigen::Index i = 0; i < cloud.cols(); ++i) {
    const long idx = index(Point2(cloud(0, i), cloud(1, i)));
    if (idx >= 0) occ[static_cast<std::size_t>(idx)] = 1;
  }
  // Closing with a 3x3 element fills one-pixel gaps between samples.
  auto morph = [&](const std::vector<char>& in, bool dilate) {
    std::vector<char> out(in.size(), 0);
    for (long y = 0; y < ny_; ++y) {
      for (long x = 0; x < nx_; ++x) {
        bool any = false, all = true;
        for (long dy = -1; dy <= 1; ++dy) {
          for (long dx = -1; dx <= 1; ++dx) {
            const long xx = x + dx, yy = y + dy;
            const bool v = xx >= 0 && yy >= 0 && xx < nx_ && yy < ny_ && in[static_cast<std::size_t>(yy * nx_ + xx)];
            any = any || v;
            all = all && v;
          }
        }
        out[static_cast<std::size_t>(y * nx_ + x)] = dilate ? any : all;
      }
    }
    return out;
  };
  inside_ = morph(morph(occ, true), false);

  // Squared distance (in pixels) from each inside pixel to the nearest
  // outside pixel, separable over columns then rows.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> grid(static_cast<std::size_t>(nx_ * ny_));
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = inside_[i] ? inf : 0.0;
  const long n = std::max(nx_, ny_);
  std::vector<double> f(static_cast<std::size_t>(n)), d(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n) + 1);
  std::vector<int> v(static_cast<std::size_t>(n));
  for (long x = 0; x < nx_; ++x) {
    f.resize(static_cast<std::size_t>(ny_));
    d.resize(static_cast<std::size_t>(ny_));
    for (long y = 0; y < ny_; ++y) f[static_cast<std::size_t>(y)] = grid[static_cast<std::size_t>(y * nx_ + x)];
    edt_1d(f, d, v, z);
    for (long y = 0; y < ny_; ++y) grid[static_cast<std::size_t>(y * nx_ + x)] = d[static_cast<std::size_t>(y)];
  }
  for (long y = 0; y < ny_; ++y) {
    f.resize(static_cast<std::size_t>(nx_));
    d.resize(static_cast<std::size_t>(nx_));
    for (long x = 0; x < nx_; ++x) f[static_cast<std::size_t>(x)] = grid[static_cast<std::size_t>(y * nx_ + x)];
    edt_1d(f, d, v, z);
    for (long x = 0; x < nx_; ++x) grid[static_cast<std::size_t>(y * nx_ + x)] = d[static_cast<std::size_t>(x)];
  }
  dist_.resize(grid.size());
  bool first = true;
  for (long y = 0; y < ny_; ++y) {
    for (long x = 0; x < nx_; ++x) {
      const auto i = static_cast<std::size_t>(y * nx_ + x);
      // The boundary sits half a pixel before the outside pixel centre.
      dist_[i] = inside_[i] ? static_cast<float>(std::max(0.0, (std::sqrt(grid[i]) - 0.5) * pixel_)) : 0.0f;
      if (!inside_[i]) continue;
      occupied_.push_back(static_cast<long>(i));
      const Point2 plo = lo_ + Point2(static_cast<double>(x) * pixel_, static_cast<double>(y) * pixel_);
      const Point2 phi = plo + Point2(pixel_, pixel_);
      if (first) {
        box_ = {plo, phi};
        first = false;
      }
      box_.lo = box_.lo.cwiseMin(plo);
      box_.hi = box_.hi.cwiseMax(phi);
    }
  }
}

long RasterRegion::index(const Point2& x) const {
  const double fx = std::floor((x.x() - lo_.x()) / pixel_);
  const double fy = std::floor((x.y() - lo_.y()) / pixel_);
  if (fx < 0 || fy < 0 || fx >= static_cast<double>(nx_) || fy >= static_cast<double>(ny_)) return -1;
  return static_cast<long>(fy) * nx_ + static_cast<long>(fx);
}

bool RasterRegion::contains(const Point2& x) const {
  const long i = index(x);
  return i >= 0 && inside_[static_cast<std::size_t>(i)];
}

double RasterRegion::inner_distance(const Point2& x) const {
  const long i = index(x);
  return i >= 0 ? dist_[static_cast<std::size_t>(i)] : 0.0;
}

Point2 RasterRegion::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, occupied_.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const long i = occupied_[pick(rng)];
  const double x = static_cast<double>(i % nx_) + u(rng);
  const double y = static_cast<double>(i / nx_) + u(rng);
  return lo_ + Point2(x * pixel_, y * pixel_);
}

TransformedRegion::TransformedRegion(std::shared_ptr<const Region> base, const Similarity& f)
    : base_(std::move(base)), f_(f), inv_(invert(f)) {
  if (f.dim() != 2) throw std::invalid_argument("planar regions need 2D transforms");
  const Box b = base_->bbox();
  const Point2 corners[] = {b.lo, {b.hi.x(), b.lo.y()}, b.hi, {b.lo.x(), b.hi.y()}};
  box_.lo = box_.hi = apply2(f_, corners[0]);
  for (const auto& c : corners) {
    const Point2 p = apply2(f_, c);
    box_.lo = box_.lo.cwiseMin(p);
    box_.hi = box_.hi.cwiseMax(p);
  }
}

bool TransformedRegion::contains(const Point2& x) const { return base_->contains(apply2(inv_, x)); }

double TransformedRegion::inner_distance(const Point2& x) const {
  return f_.scale() * base_->inner_distance(apply2(inv_, x));
}

Point2 TransformedRegion::sample(std::mt19937_64& rng) const { return apply2(f_, base_->sample(rng)); }

ComponentShapes::ComponentShapes(const Gifs& gifs) : ComponentShapes(gifs, Options{}) {}

ComponentShapes::ComponentShapes(const Gifs& gifs, const Options& options) {
  if (gifs.dim() != 2) throw std::invalid_argument("geometric checks are implemented for dimension 2 only");
  const int n = gifs.vertex_count();
  bool need_cloud = false;
  for (Vertex v = 1; v <= n; ++v) need_cloud = need_cloud || !options.use_hints || !gifs.hull_hint(v);
  std::optional<AttractorApprox> approx;
  if (need_cloud) approx = saturated_attractor(gifs, options.points_per_component);
  for (Vertex v = 1; v <= n; ++v) {
    if (options.use_hints && gifs.hull_hint(v)) {
      const Polygon& poly = *gifs.hull_hint(v);
      shapes_.push_back(std::make_shared<PolygonRegion>(poly));
      const Point2 c = polygon_centroid(poly);
      double r = 0;
      for (const auto& p : poly) r = std::max(r, (p - c).norm());
      anchors_.push_back(c);
      radii_.push_back(r);
      continue;
    }
    exact_ = false;
    const Cloud& cloud = approx->cloud(v);
    const double extent = std::max(bbox_diameter(cloud), 1e-12);
    const double pixel = std::max(extent / 300.0, 2.0 * approx->resolution);
    auto raster = std::make_shared<RasterRegion>(cloud, pixel, approx->error_bound() + pixel * std::sqrt(2.0));
    const Point2 c = cloud.rowwise().mean();
    double r = 0;
    for (Eigen::Index i = 0; i < cloud.cols(); ++i) r = std::max(r, (cloud.col(i) - c).norm());
    anchors_.push_back(c);
    radii_.push_back(r + pixel * std::sqrt(2.0));
    shapes_.push_back(std::move(raster));
  }
}

std::shared_ptr<const Region> tile_region(const ComponentShapes& shapes, const Tile& t) {
  return std::make_shared<TransformedRegion>(shapes.shape(t.component), t.transform);
}

std::shared_ptr<const Region> patch_union(const Gifs& gifs, const ComponentShapes& shapes, const ThetaParam& theta,
                                          int k) {
  const auto K = static_cast<std::size_t>(k);
  return std::make_shared<TransformedRegion>(shapes.shape(theta.vertex(K)),
                                             map_for_path(gifs, theta.head_path(K), true));
}

Point2 tile_anchor(const ComponentShapes& shapes, const Tile& t) {
  return apply2(t.transform, shapes.anchor(t.component));
}

OverlapStats pairwise_overlap(const ComponentShapes& shapes, const Patch& p, int samples, unsigned seed,
                              double threshold) {
  OverlapStats out;
  std::vector<std::shared_ptr<const Region>> regions;
  for (const Tile& t : p.tiles) regions.push_back(tile_region(shapes, t));
  std::mt19937_64 rng(seed);
  auto fraction_inside = [&](const Region& from, const Region& into) {
    const double margin = std::max(from.accuracy(), into.accuracy()) + 1e-9 * std::sqrt(into.bbox().area());
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
      if (into.inner_distance(from.sample(rng)) > margin) ++hits;
    }
    return static_cast<double>(hits) / samples;
  };
  for (std::size_t i = 0; i < regions.size(); ++i) {
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (!regions[i]->bbox().overlaps(regions[j]->bbox())) continue;
      ++out.pairs_checked;
      const double f = std::max(fraction_inside(*regions[i], *regions[j]), fraction_inside(*regions[j], *regions[i]));
      if (f > threshold) ++out.pairs_over;
      if (f > out.worst_fraction || out.pairs_checked == 1) {
        out.worst_fraction = std::max(out.worst_fraction, f);
        out.worst_a = p.tiles[i].address;
        out.worst_b = p.tiles[j].address;
      }
    }
  }
  return out;
}

double union_measure(const ComponentShapes& shapes, const Patch& p, int samples, unsigned seed) {
  if (p.tiles.empty() || samples <= 0) return 0;
  std::vector<std::shared_ptr<const Region>> regions;
  Box box;
  for (std::size_t i = 0; i < p.tiles.size(); ++i) {
    regions.push_back(tile_region(shapes, p.tiles[i]));
    const Box b = regions.back()->bbox();
    if (i == 0) box = b;
    box.lo = box.lo.cwiseMin(b.lo);
    box.hi = box.hi.cwiseMax(b.hi);
  }
  box = box.grown(0.05 * (box.hi - box.lo).maxCoeff());

  // Bucket tiles by box so each sample tests only nearby tiles.
  const long g = std::max(1L, static_cast<long>(std::sqrt(static_cast<double>(regions.size()))));
  const Point2 cell = (box.hi - box.lo) / static_cast<double>(g);
  std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(g * g));
  auto cell_of = [&](double v, double lo, double size) {
    return std::clamp(static_cast<long>(std::floor((v - lo) / size)), 0L, g - 1);
  };
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const Box b = regions[i]->bbox();
    for (long y = cell_of(b.lo.y(), box.lo.y(), cell.y()); y <= cell_of(b.hi.y(), box.lo.y(), cell.y()); ++y) {
      for (long x = cell_of(b.lo.x(), box.lo.x(), cell.x()); x <= cell_of(b.hi.x(), box.lo.x(), cell.x()); ++x) {
        buckets[static_cast<std::size_t>(y * g + x)].push_back(i);
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.lo.x(), box.hi.x()), uy(box.lo.y(), box.hi.y());
  long inside = 0;
  for (int s = 0; s < samples; ++s) {
    const Point2 q(ux(rng), uy(rng));
    const auto& bucket = buckets[static_cast<std::size_t>(cell_of(q.y(), box.lo.y(), cell.y()) * g +
                                                           cell_of(q.x(), box.lo.x(), cell.x()))];
    if (std::any_of(bucket.begin(), bucket.end(), [&](std::size_t i) { return regions[i]->contains(q); })) ++inside;
  }
  return box.area() * static_cast<double>(inside) / samples;
}

}  // namespace gifstile
