#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gifstile {

// Vertex labels are 1-based: a graph with n vertices uses {1, ..., n}.
using Vertex = int;

// Position of an edge in the graph's id-sorted edge list. Ordering edge
// indices is the same as ordering edge ids lexicographically.
using EdgeIndex = std::size_t;

struct Edge {
  std::string id;
  Vertex tail = 0;
  Vertex head = 0;
  int weight = 1;
};

// Finite directed multigraph with positive integer edge weights d(e).
// Loops and parallel edges are allowed. Strong connectivity is not enforced
// here; see is_strongly_connected().
class Digraph {
 public:
  // Throws std::invalid_argument on duplicate ids, out-of-range endpoints or
  // non-positive weights.
  Digraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }

  // Out-edges of `v` (the set E_v), in id order.
  std::span<const EdgeIndex> out_edges(Vertex v) const;

  std::optional<EdgeIndex> find_edge(std::string_view id) const;
  // Like find_edge() but throws std::invalid_argument for unknown ids.
  EdgeIndex edge_index(std::string_view id) const;

  int max_weight() const { return max_weight_; }

  // Hash of the vertex count and edge list; equal graphs have equal
  // signatures.
  std::size_t signature() const { return signature_; }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> out_;
  int max_weight_ = 0;
  std::size_t signature_ = 0;
};

// A finite directed path, stored as its edges. The start vertex is kept
// explicitly so that the empty path still names a vertex.
struct Path {
  Vertex start = 0;
  std::vector<EdgeIndex> edges;

  std::size_t length() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  EdgeIndex last() const { return edges.back(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path&, const Path&) = default;
};

// Canonical member order: by length, then by edge ids, then start vertex.
bool canonical_less(const Path& a, const Path& b);

bool is_valid_path(const Digraph& g, const Path& p);

// Validity in the reversed graph: the i-th reversed edge runs from
// head(e_i) to tail(e_i), so tail(e_i) must equal head(e_{i+1}).
bool is_valid_reversed_path(const Digraph& g, const Path& p);

// Terminal vertex of a forward path. Throws std::invalid_argument if the
// path does not chain.
Vertex end_vertex(const Digraph& g, const Path& p);

// Throws std::invalid_argument unless p ends where q starts.
Path concat(const Digraph& g, const Path& p, const Path& q);

// Sum of edge weights; 0 for the empty path. Throws std::invalid_argument
// if the path does not chain.
int d_value(const Digraph& g, const Path& p);

bool is_strongly_connected(const Digraph& g);

enum class Visit { descend, prune };

// Depth-first walk over all paths starting at `from` whose d-value is at
// most `d_max`, extending edges in id order. The visitor sees each path
// (the empty path first) together with its d-value and may prune the
// subtree below it.
void walk_paths(const Digraph& g, Vertex from, int d_max,
                const std::function<Visit(const Path&, int)>& visit);

// All paths p with p⁻ = from and d(p) <= d_max, in depth-first order.
std::vector<Path> enumerate_paths(const Digraph& g, Vertex from, int d_max);

// gcd of the d-values of all closed walks. Throws std::invalid_argument
// if the graph is not strongly connected.
int weighted_period(const Digraph& g);

// Edge ids joined with '.', or "<v>" for an empty path at vertex v.
std::string format_path(const Digraph& g, const Path& p);

}  // namespace gifstile
