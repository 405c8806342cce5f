#pragma once

#include <Eigen/Dense>

#include "gifstile/tolerance.hpp"

namespace gifstile {

// Fixed upper bound of 3 keeps small vectors on the stack.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

// x -> scale * ortho * x + shift, in dimension 1, 2 or 3.
class Similarity {
 public:
  // Throws std::invalid_argument if dims disagree, scale <= 0 or ortho is
  // not orthogonal.
  Similarity(double scale, Mat ortho, Vec shift);

  static Similarity identity(int dim);
  // 2D convenience: rotation by angle_deg, preceded by the reflection
  // (x, y) -> (x, -y) when `reflect` is set. Multiples of 90 degrees are
  // exact.
  static Similarity planar(double scale, double angle_deg, bool reflect, double tx,
                           double ty);

  int dim() const { return static_cast<int>(shift_.size()); }
  double scale() const { return scale_; }
  const Mat& ortho() const { return ortho_; }
  const Vec& shift() const { return shift_; }

  Vec apply(const Vec& x) const { return scale_ * (ortho_ * x) + shift_; }
  Vec operator()(const Vec& x) const { return apply(x); }

  // Unique fixed point; requires scale != 1 (always true for contractions).
  Vec fixed_point() const;

 private:
  double scale_;
  Mat ortho_;
  Vec shift_;
};

// compose(a, b)(x) == a(b(x)).
Similarity compose(const Similarity& a, const Similarity& b);
Similarity invert(const Similarity& a);
bool approx_eq(const Similarity& a, const Similarity& b, double tol);

Vec vec2(double x, double y);

}  // namespace gifstile
