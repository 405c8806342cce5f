#include "gifstile/theta.hpp"

#include <algorithm>
#include <stdexcept>

namespace gifstile {

ThetaParam::ThetaParam(const Digraph& g, std::vector<EdgeIndex> prefix, std::vector<EdgeIndex> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)), signature_(g.signature()) {
  if (cycle_.empty()) throw std::invalid_argument("theta cycle must be non-empty");
  std::vector<EdgeIndex> all = prefix_;
  all.insert(all.end(), cycle_.begin(), cycle_.end());
  for (EdgeIndex e : all) {
    if (e >= g.edge_count()) throw std::invalid_argument("theta references an unknown edge");
  }
  v0_ = g.edge(all.front()).head;
  if (!is_valid_reversed_path(g, Path{v0_, all})) {
    throw std::invalid_argument("theta edges do not chain as a reversed path (need tail(theta_k) = head(theta_k+1))");
  }
  if (g.edge(cycle_.back()).tail != g.edge(cycle_.front()).head) {
    throw std::invalid_argument("theta cycle is not closed");
  }
  for (EdgeIndex e : all) {
    tails_.push_back(g.edge(e).tail);
    weights_.push_back(g.edge(e).weight);
  }
  for (EdgeIndex e : cycle_) cycle_weight_ += g.edge(e).weight;
}

EdgeIndex ThetaParam::edge(std::size_t k) const {
  if (k == 0) throw std::out_of_range("theta edges are numbered from 1");
  const std::size_t i = k - 1;
  if (i < prefix_.size()) return prefix_[i];
  return cycle_[(i - prefix_.size()) % cycle_.size()];
}

Vertex ThetaParam::vertex(std::size_t k) const {
  if (k == 0) return v0_;
  const std::size_t i = k - 1;
  if (i < prefix_.size()) return tails_[i];
  return tails_[prefix_.size() + (i - prefix_.size()) % cycle_.size()];
}

Path ThetaParam::head_path(std::size_t k) const {
  Path p{v0_, {}};
  p.edges.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) p.edges.push_back(edge(i));
  return p;
}

long long ThetaParam::d_prefix(std::size_t k) const {
  long long d = 0;
  const std::size_t p = prefix_.size();
  for (std::size_t i = 0; i < std::min(k, p); ++i) d += weights_[i];
  if (k <= p) return d;
  const std::size_t rest = k - p, L = cycle_.size();
  d += static_cast<long long>(rest / L) * cycle_weight_;
  for (std::size_t i = 0; i < rest % L; ++i) d += weights_[p + i];
  return d;
}

ThetaParam ThetaParam::shifted() const {
  ThetaParam out = *this;
  if (!prefix_.empty()) {
    out.prefix_.erase(out.prefix_.begin());
    out.tails_.erase(out.tails_.begin());
    out.weights_.erase(out.weights_.begin());
  } else {
    // Rotate the cycle left by one.
    auto rotate = [](auto& v, std::size_t from) {
      std::rotate(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from) + 1, v.end());
    };
    rotate(out.cycle_, 0);
    rotate(out.tails_, 0);
    rotate(out.weights_, 0);
  }
  out.v0_ = vertex(1);
  return out;
}

}  // namespace gifstile
