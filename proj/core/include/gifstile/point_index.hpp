#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <vector>

#include "gifstile/similarity.hpp"

namespace gifstile {

// Points stored column-wise: rows = dimension, cols = point count.
using Cloud = Eigen::MatrixXd;

// Uniform-grid bucket index for nearest-neighbour queries.
class PointIndex {
 public:
  explicit PointIndex(const Cloud& points);

  // Distance to the nearest point if it is at most `cap`, else infinity.
  double nearest_distance(const double* q, double cap = std::numeric_limits<double>::infinity()) const;
  double nearest_distance(const Vec& q, double cap = std::numeric_limits<double>::infinity()) const {
    return nearest_distance(q.data(), cap);
  }
  double cell_size() const { return cell_; }
  std::size_t size() const { return static_cast<std::size_t>(points_.cols()); }
  const Cloud& points() const { return points_; }

 private:
  std::int64_t cell_coord(double x, int axis) const;

  Cloud points_;  // reordered by cell
  int dim_;
  double cell_;
  Eigen::Vector3d lo_, hi_;  // bounding box of the points
  std::int64_t n_[3] = {1, 1, 1};
  std::vector<std::uint32_t> start_;  // CSR offsets, one per cell + 1
};

// Largest distance from a point of `a` to the set `b`.
double directed_hausdorff(const Cloud& a, const PointIndex& b);
// Throws std::invalid_argument if either cloud is empty.
double hausdorff(const Cloud& a, const Cloud& b);

Cloud apply(const Similarity& f, const Cloud& x);

// Axis-aligned bounding box diagonal.
double bbox_diameter(const Cloud& x);

}  // namespace gifstile
