#pragma once

#include <vector>

#include "gifstile/digraph.hpp"

namespace gifstile {

// Eventually periodic parameter prefix . cycle . cycle ..., a path in the
// reversed graph. Edges are stored in forward orientation: theta_1, theta_2,
// ...; the parameter walks them backwards, so v_0 = head(theta_1) and
// v_k = tail(theta_k).
class ThetaParam {
 public:
  // Throws std::invalid_argument if the cycle is empty, if consecutive edges
  // do not chain in the reversed graph, or if the cycle is not closed.
  ThetaParam(const Digraph& g, std::vector<EdgeIndex> prefix, std::vector<EdgeIndex> cycle);

  const std::vector<EdgeIndex>& prefix() const { return prefix_; }
  const std::vector<EdgeIndex>& cycle() const { return cycle_; }

  // theta_k for k >= 1.
  EdgeIndex edge(std::size_t k) const;
  // v_k for k >= 0.
  Vertex vertex(std::size_t k) const;
  // theta|k as a path of the reversed graph starting at v_0.
  Path head_path(std::size_t k) const;
  // d(theta|k).
  long long d_prefix(std::size_t k) const;

  // w(theta): drop the first edge.
  ThetaParam shifted() const;

  std::size_t graph_signature() const { return signature_; }

  friend bool operator==(const ThetaParam& a, const ThetaParam& b) {
    return a.signature_ == b.signature_ && a.prefix_ == b.prefix_ && a.cycle_ == b.cycle_;
  }

 private:
  std::vector<EdgeIndex> prefix_, cycle_;
  std::vector<Vertex> tails_;  // tail of each prefix edge, then each cycle edge
  std::vector<int> weights_;   // same layout
  long long cycle_weight_ = 0;
  Vertex v0_ = 0;
  std::size_t signature_ = 0;
};

}  // namespace gifstile
