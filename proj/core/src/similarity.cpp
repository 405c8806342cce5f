#include "gifstile/similarity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gifstile {

namespace {

void require_same_dim(const Similarity& a, const Similarity& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("similarity dimension mismatch");
}

// cos/sin with exact values at multiples of 90 degrees, so that square and
// chair systems compose without drift.
std::pair<double, double> cos_sin_deg(double deg) {
  const double quarter = deg / 90.0;
  const double rounded = std::round(quarter);
  if (std::abs(quarter - rounded) < 1e-12) {
    const int q = ((static_cast<int>(rounded) % 4) + 4) % 4;
    static constexpr double c[] = {1, 0, -1, 0};
    static constexpr double s[] = {0, 1, 0, -1};
    return {c[q], s[q]};
  }
  const double rad = deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

}  // namespace

Similarity::Similarity(double scale, Mat ortho, Vec shift)
    : scale_(scale), ortho_(std::move(ortho)), shift_(std::move(shift)) {
  const auto n = shift_.size();
  if (n < 1 || n > 3) throw std::invalid_argument("similarity dimension must be 1, 2 or 3");
  if (ortho_.rows() != n || ortho_.cols() != n) {
    throw std::invalid_argument("ortho matrix does not match shift dimension");
  }
  if (!(scale_ > 0) || !std::isfinite(scale_)) {
    throw std::invalid_argument("similarity scale must be positive and finite");
  }
  const Mat gram = ortho_ * ortho_.transpose();
  if ((gram - Mat::Identity(n, n)).cwiseAbs().maxCoeff() > kTol.ortho_check) {
    throw std::invalid_argument("ortho matrix is not orthogonal");
  }
}

Similarity Similarity::identity(int dim) {
  return Similarity(1.0, Mat::Identity(dim, dim), Vec::Zero(dim));
}

Similarity Similarity::planar(double scale, double angle_deg, bool reflect, double tx,
                              double ty) {
  const auto [c, s] = cos_sin_deg(angle_deg);
  Mat r(2, 2);
  r << c, -s, s, c;
  if (reflect) r.col(1) *= -1.0;
  return Similarity(scale, r, vec2(tx, ty));
}

Vec Similarity::fixed_point() const {
  const auto n = shift_.size();
  const Mat a = Mat::Identity(n, n) - scale_ * ortho_;
  return a.fullPivLu().solve(shift_);
}

Similarity compose(const Similarity& a, const Similarity& b) {
  require_same_dim(a, b);
  return Similarity(a.scale() * b.scale(), a.ortho() * b.ortho(), a.apply(b.shift()));
}

Similarity invert(const Similarity& a) {
  const Mat ot = a.ortho().transpose();
  const double inv = 1.0 / a.scale();
  return Similarity(inv, ot, -inv * (ot * a.shift()));
}

bool approx_eq(const Similarity& a, const Similarity& b, double tol) {
  require_same_dim(a, b);
  if (std::abs(a.scale() - b.scale()) > tol * std::max(1.0, a.scale())) return false;
  if ((a.ortho() - b.ortho()).cwiseAbs().maxCoeff() > tol) return false;
  const double shift_norm = a.shift().cwiseAbs().maxCoeff();
  return (a.shift() - b.shift()).cwiseAbs().maxCoeff() <= tol * (1.0 + shift_norm);
}

Vec vec2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

}  // namespace gifstile
