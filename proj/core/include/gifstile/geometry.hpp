#pragma once

#include <Eigen/Dense>
#include <memory>
#include <random>
#include <vector>

#include "gifstile/attractor.hpp"
#include "gifstile/gifs.hpp"
#include "gifstile/tiling.hpp"

// Planar geometry for the empirical checks. Everything here is dimension 2.
namespace gifstile {

struct Box {
  Point2 lo{0, 0}, hi{0, 0};
  bool overlaps(const Box& o) const {
    return lo.x() <= o.hi.x() && o.lo.x() <= hi.x() && lo.y() <= o.hi.y() && o.lo.y() <= hi.y();
  }
  double area() const { return (hi - lo).prod(); }
  Box grown(double margin) const {
    const Point2 m(margin, margin);
    return {lo - m, hi + m};
  }
};

class Region {
 public:
  virtual ~Region() = default;
  virtual bool contains(const Point2& x) const = 0;
  // Distance to the boundary for points inside, 0 outside.
  virtual double inner_distance(const Point2& x) const = 0;
  virtual Box bbox() const = 0;
  // Uniform sample from the region.
  virtual Point2 sample(std::mt19937_64& rng) const = 0;
  // How far the region may sit from the true set it stands for.
  virtual double accuracy() const { return 0; }
};

class PolygonRegion final : public Region {
 public:
  explicit PolygonRegion(Polygon poly);
  bool contains(const Point2& x) const override;
  double inner_distance(const Point2& x) const override;
  Box bbox() const override { return box_; }
  Point2 sample(std::mt19937_64& rng) const override;
  const Polygon& polygon() const { return poly_; }

 private:
  double boundary_distance(const Point2& x) const;
  Polygon poly_;
  Box box_;
};

// Occupancy raster of a point cloud, closed to bridge sampling gaps, with a
// Euclidean distance transform for inner distances.
class RasterRegion final : public Region {
 public:
  RasterRegion(const Cloud& cloud, double pixel, double accuracy);
  bool contains(const Point2& x) const override;
  double inner_distance(const Point2& x) const override;
  Box bbox() const override { return box_; }
  Point2 sample(std::mt19937_64& rng) const override;
  double accuracy() const override { return accuracy_; }
  double pixel() const { return pixel_; }

 private:
  long index(const Point2& x) const;
  Point2 lo_;
  double pixel_;
  long nx_ = 0, ny_ = 0;
  std::vector<char> inside_;
  std::vector<float> dist_;  // distance to the nearest outside pixel centre
  std::vector<long> occupied_;
  Box box_;
  double accuracy_;
};

// A region moved by a similarity.
class TransformedRegion final : public Region {
 public:
  TransformedRegion(std::shared_ptr<const Region> base, const Similarity& f);
  bool contains(const Point2& x) const override;
  double inner_distance(const Point2& x) const override;
  Box bbox() const override { return box_; }
  Point2 sample(std::mt19937_64& rng) const override;
  double accuracy() const override { return f_.scale() * base_->accuracy(); }

 private:
  std::shared_ptr<const Region> base_;
  Similarity f_, inv_;
  Box box_;
};

// One region per attractor component, from hull hints when present and from
// a rasterised attractor otherwise.
class ComponentShapes {
 public:
  struct Options {
    std::size_t points_per_component = std::size_t{1} << 16;
    bool use_hints = true;
  };
  explicit ComponentShapes(const Gifs& gifs);
  ComponentShapes(const Gifs& gifs, const Options& options);

  std::shared_ptr<const Region> shape(Vertex v) const { return shapes_.at(static_cast<std::size_t>(v - 1)); }
  const Point2& anchor(Vertex v) const { return anchors_.at(static_cast<std::size_t>(v - 1)); }
  // Max distance from the anchor to the component.
  double radius(Vertex v) const { return radii_.at(static_cast<std::size_t>(v - 1)); }
  bool exact() const { return exact_; }

 private:
  std::vector<std::shared_ptr<const Region>> shapes_;
  std::vector<Point2> anchors_;
  std::vector<double> radii_;
  bool exact_ = true;
};

std::shared_ptr<const Region> tile_region(const ComponentShapes& shapes, const Tile& t);

// f_{theta|k}(A_{v_k}): the union of every patch built from theta at level k.
std::shared_ptr<const Region> patch_union(const Gifs& gifs, const ComponentShapes& shapes, const ThetaParam& theta,
                                          int k);

Point2 tile_anchor(const ComponentShapes& shapes, const Tile& t);

struct OverlapStats {
  double worst_fraction = 0;
  std::size_t pairs_checked = 0;
  std::size_t pairs_over = 0;
  TileAddress worst_a, worst_b;
};

// For each pair of tiles with overlapping boxes, the fraction of `samples`
// uniform points of one tile lying deeper than `margin` inside the other
// (both directions, max taken).
OverlapStats pairwise_overlap(const ComponentShapes& shapes, const Patch& p, int samples, unsigned seed,
                              double threshold = 0.05);

// Monte-Carlo area of the union of the tiles.
double union_measure(const ComponentShapes& shapes, const Patch& p, int samples, unsigned seed);

}  // namespace gifstile
