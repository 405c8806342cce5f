#include "gifstile/point_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gifstile {

PointIndex::PointIndex(const Cloud& points) : dim_(static_cast<int>(points.rows())) {
  if (points.cols() == 0) throw std::invalid_argument("cannot index an empty cloud");
  if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("point dimension must be 1, 2 or 3");
  const auto count = static_cast<std::size_t>(points.cols());
  if (count >= std::numeric_limits<std::uint32_t>::max()) throw std::invalid_argument("cloud too large");

  lo_.setZero();
  hi_.setZero();
  Eigen::Vector3d extent = Eigen::Vector3d::Zero();
  for (int a = 0; a < dim_; ++a) {
    lo_[a] = points.row(a).minCoeff();
    hi_[a] = points.row(a).maxCoeff();
    extent[a] = hi_[a] - lo_[a];
  }
  // Degenerate clouds (a single point) still get a usable cell size.
  const double max_extent = std::max(extent.head(dim_).maxCoeff(), 1e-9);
  double volume = 1;
  for (int a = 0; a < dim_; ++a) volume *= std::max(extent[a], max_extent * 1e-6);
  // Roughly one point per cell for area-filling sets.
  cell_ = std::pow(volume / static_cast<double>(count), 1.0 / dim_);
  cell_ = std::max(cell_, max_extent * 1e-6);
  std::int64_t cells = 1;
  for (int a = 0; a < dim_; ++a) {
    n_[a] = static_cast<std::int64_t>(std::floor(extent[a] / cell_)) + 1;
    cells *= n_[a];
  }
  while (cells > static_cast<std::int64_t>(4 * count + 64)) {
    cell_ *= 1.5;
    cells = 1;
    for (int a = 0; a < dim_; ++a) {
      n_[a] = static_cast<std::int64_t>(std::floor(extent[a] / cell_)) + 1;
      cells *= n_[a];
    }
  }

  std::vector<std::uint32_t> key(count);
  start_.assign(static_cast<std::size_t>(cells) + 1, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::int64_t k = 0;
    for (int a = dim_ - 1; a >= 0; --a) k = k * n_[a] + cell_coord(points(a, static_cast<Eigen::Index>(i)), a);
    key[i] = static_cast<std::uint32_t>(k);
    ++start_[static_cast<std::size_t>(k) + 1];
  }
  for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  points_.resize(dim_, points.cols());
  for (std::size_t i = 0; i < count; ++i) {
    points_.col(fill[key[i]]++) = points.col(static_cast<Eigen::Index>(i));
  }
}

std::int64_t PointIndex::cell_coord(double x, int axis) const {
  const double c = std::floor((x - lo_[axis]) / cell_);
  if (!(c > 0)) return 0;
  if (c >= static_cast<double>(n_[axis] - 1)) return n_[axis] - 1;
  return static_cast<std::int64_t>(c);
}

double PointIndex::nearest_distance(const double* q, double cap) const {
  std::int64_t c[3] = {0, 0, 0};
  // Offsets from q to the bounding box. A point in a cell r+1 or more steps
  // away along axis a is at least o_a + r*cell away along that axis.
  double o[3] = {0, 0, 0};
  double outside2 = 0;
  for (int a = 0; a < dim_; ++a) {
    c[a] = cell_coord(q[a], a);
    o[a] = std::max({lo_[a] - q[a], q[a] - hi_[a], 0.0});
    outside2 += o[a] * o[a];
  }
  const double min_offset = *std::min_element(o, o + dim_);
  const double cap2 = cap * cap;
  if (outside2 > cap2) return std::numeric_limits<double>::infinity();
  double best2 = std::numeric_limits<double>::infinity();

  auto scan_cell = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
    const std::int64_t k = x + n_[0] * (y + n_[1] * z);
    for (std::uint32_t i = start_[static_cast<std::size_t>(k)]; i < start_[static_cast<std::size_t>(k) + 1]; ++i) {
      double d2 = 0;
      for (int a = 0; a < dim_; ++a) {
        const double t = points_(a, i) - q[a];
        d2 += t * t;
      }
      best2 = std::min(best2, d2);
    }
  };

  const std::int64_t max_ring = std::max({n_[0], n_[1], n_[2]});
  for (std::int64_t r = 0; r <= max_ring; ++r) {
    const std::int64_t zlo = dim_ > 2 ? c[2] - r : 0, zhi = dim_ > 2 ? c[2] + r : 0;
    const std::int64_t ylo = dim_ > 1 ? c[1] - r : 0, yhi = dim_ > 1 ? c[1] + r : 0;
    for (std::int64_t z = std::max<std::int64_t>(zlo, 0); z <= std::min(zhi, n_[2] - 1); ++z) {
      for (std::int64_t y = std::max<std::int64_t>(ylo, 0); y <= std::min(yhi, n_[1] - 1); ++y) {
        const bool face = std::abs(z - c[2]) == r || std::abs(y - c[1]) == r;
        if (face) {
          for (std::int64_t x = std::max<std::int64_t>(c[0] - r, 0); x <= std::min(c[0] + r, n_[0] - 1); ++x) {
            scan_cell(x, y, z);
          }
        } else {
          if (c[0] - r >= 0) scan_cell(c[0] - r, y, z);
          if (r > 0 && c[0] + r < n_[0]) scan_cell(c[0] + r, y, z);
        }
      }
    }
    const double reach = static_cast<double>(r) * cell_;
    const double unvisited2 = outside2 + reach * (reach + 2 * min_offset);
    if (best2 <= unvisited2 || unvisited2 > cap2) break;
  }
  return best2 <= cap2 ? std::sqrt(best2) : std::numeric_limits<double>::infinity();
}

double directed_hausdorff(const Cloud& a, const PointIndex& b) {
  // Only a distance above the running maximum matters, so search out to that
  // radius first and widen geometrically.
  double out = 0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    for (double cap = std::max(out, b.cell_size());; cap *= 2) {
      const double d = b.nearest_distance(a.col(i).data(), cap);
      if (d <= cap) {
        out = std::max(out, d);
        break;
      }
    }
  }
  return out;
}

double hausdorff(const Cloud& a, const Cloud& b) {
  if (a.cols() == 0 || b.cols() == 0) throw std::invalid_argument("hausdorff of an empty cloud");
  if (a.rows() != b.rows()) throw std::invalid_argument("hausdorff dimension mismatch");
  const PointIndex ia(a), ib(b);
  return std::max(directed_hausdorff(a, ib), directed_hausdorff(b, ia));
}

Cloud apply(const Similarity& f, const Cloud& x) {
  Cloud out = (f.scale() * f.ortho()) * x;
  out.colwise() += f.shift();
  return out;
}

double bbox_diameter(const Cloud& x) {
  if (x.cols() == 0) return 0;
  return (x.rowwise().maxCoeff() - x.rowwise().minCoeff()).norm();
}

}  // namespace gifstile
