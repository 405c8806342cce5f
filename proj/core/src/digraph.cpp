#include "gifstile/digraph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace gifstile {

namespace {

void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::vector<bool> reachable_from(const Digraph& g, Vertex root, bool reversed) {
  std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()) + 1, false);
  std::deque<Vertex> queue{root};
  seen[static_cast<std::size_t>(root)] = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (const Edge& e : g.edges()) {
      const Vertex from = reversed ? e.head : e.tail;
      const Vertex to = reversed ? e.tail : e.head;
      if (from == v && !seen[static_cast<std::size_t>(to)]) {
        seen[static_cast<std::size_t>(to)] = true;
        queue.push_back(to);
      }
    }
  }
  return seen;
}

}  // namespace

Digraph::Digraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) {
    throw std::invalid_argument("digraph needs at least one vertex");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  out_.resize(static_cast<std::size_t>(vertex_count_) + 1);
  signature_ = std::hash<int>{}(vertex_count_);
  for (EdgeIndex i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.id.empty()) throw std::invalid_argument("edge id must be non-empty");
    if (i > 0 && edges_[i - 1].id == e.id) {
      throw std::invalid_argument("duplicate edge id '" + e.id + "'");
    }
    if (e.tail < 1 || e.tail > vertex_count_ || e.head < 1 || e.head > vertex_count_) {
      throw std::invalid_argument("edge '" + e.id + "' references a vertex outside [1.." +
                                  std::to_string(vertex_count_) + "]");
    }
    if (e.weight < 1) {
      throw std::invalid_argument("edge '" + e.id + "' has weight < 1");
    }
    out_[static_cast<std::size_t>(e.tail)].push_back(i);
    max_weight_ = std::max(max_weight_, e.weight);
    hash_combine(signature_, std::hash<std::string>{}(e.id));
    hash_combine(signature_, std::hash<int>{}(e.tail));
    hash_combine(signature_, std::hash<int>{}(e.head));
    hash_combine(signature_, std::hash<int>{}(e.weight));
  }
}

std::span<const EdgeIndex> Digraph::out_edges(Vertex v) const {
  if (v < 1 || v > vertex_count_) throw std::out_of_range("vertex out of range");
  return out_[static_cast<std::size_t>(v)];
}

std::optional<EdgeIndex> Digraph::find_edge(std::string_view id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                             [](const Edge& e, std::string_view key) { return e.id < key; });
  if (it == edges_.end() || it->id != id) return std::nullopt;
  return static_cast<EdgeIndex>(it - edges_.begin());
}

EdgeIndex Digraph::edge_index(std::string_view id) const {
  if (auto e = find_edge(id)) return *e;
  throw std::invalid_argument("unknown edge id '" + std::string(id) + "'");
}

bool canonical_less(const Path& a, const Path& b) {
  if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.start < b.start;
}

bool is_valid_path(const Digraph& g, const Path& p) {
  if (p.start < 1 || p.start > g.vertex_count()) return false;
  Vertex at = p.start;
  for (EdgeIndex e : p.edges) {
    if (e >= g.edge_count() || g.edge(e).tail != at) return false;
    at = g.edge(e).head;
  }
  return true;
}

bool is_valid_reversed_path(const Digraph& g, const Path& p) {
  if (p.start < 1 || p.start > g.vertex_count()) return false;
  Vertex at = p.start;
  for (EdgeIndex e : p.edges) {
    if (e >= g.edge_count() || g.edge(e).head != at) return false;
    at = g.edge(e).tail;
  }
  return true;
}

Vertex end_vertex(const Digraph& g, const Path& p) {
  if (!is_valid_path(g, p)) {
    throw std::invalid_argument("path " + format_path(g, p) + " does not chain");
  }
  return p.empty() ? p.start : g.edge(p.last()).head;
}

Path concat(const Digraph& g, const Path& p, const Path& q) {
  if (end_vertex(g, p) != q.start || !is_valid_path(g, q)) {
    throw std::invalid_argument("cannot concatenate " + format_path(g, p) + " and " +
                                format_path(g, q));
  }
  Path out = p;
  out.edges.insert(out.edges.end(), q.edges.begin(), q.edges.end());
  return out;
}

int d_value(const Digraph& g, const Path& p) {
  if (!is_valid_path(g, p)) {
    throw std::invalid_argument("path " + format_path(g, p) + " does not chain");
  }
  int d = 0;
  for (EdgeIndex e : p.edges) d += g.edge(e).weight;
  return d;
}

bool is_strongly_connected(const Digraph& g) {
  const auto forward = reachable_from(g, 1, false);
  const auto backward = reachable_from(g, 1, true);
  for (Vertex v = 1; v <= g.vertex_count(); ++v) {
    if (!forward[static_cast<std::size_t>(v)] || !backward[static_cast<std::size_t>(v)]) {
      return false;
    }
  }
  return true;
}

void walk_paths(const Digraph& g, Vertex from, int d_max,
                const std::function<Visit(const Path&, int)>& visit) {
  if (d_max < 0) return;
  struct Frame {
    std::span<const EdgeIndex> out;
    std::size_t next = 0;
  };
  Path path{from, {}};
  int d = 0;
  std::vector<Frame> stack;
  if (visit(path, d) == Visit::descend) stack.push_back({g.out_edges(from), 0});
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next == top.out.size()) {
      stack.pop_back();
      if (!path.edges.empty()) {
        d -= g.edge(path.edges.back()).weight;
        path.edges.pop_back();
      }
      continue;
    }
    const EdgeIndex e = top.out[top.next++];
    const Edge& edge = g.edge(e);
    if (d + edge.weight > d_max) continue;
    path.edges.push_back(e);
    d += edge.weight;
    if (visit(path, d) == Visit::descend) {
      stack.push_back({g.out_edges(edge.head), 0});
    } else {
      d -= edge.weight;
      path.edges.pop_back();
    }
  }
}

std::vector<Path> enumerate_paths(const Digraph& g, Vertex from, int d_max) {
  std::vector<Path> out;
  walk_paths(g, from, d_max, [&](const Path& p, int) {
    out.push_back(p);
    return Visit::descend;
  });
  return out;
}

int weighted_period(const Digraph& g) {
  if (!is_strongly_connected(g)) {
    throw std::invalid_argument("weighted_period requires a strongly connected graph");
  }
  // Potentials from a BFS tree; every closed walk telescopes into the
  // per-edge discrepancies below.
  std::vector<long long> potential(static_cast<std::size_t>(g.vertex_count()) + 1, -1);
  potential[1] = 0;
  std::deque<Vertex> queue{1};
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (EdgeIndex e : g.out_edges(v)) {
      const Edge& edge = g.edge(e);
      auto& p = potential[static_cast<std::size_t>(edge.head)];
      if (p < 0) {
        p = potential[static_cast<std::size_t>(v)] + edge.weight;
        queue.push_back(edge.head);
      }
    }
  }
  long long period = 0;
  for (const Edge& e : g.edges()) {
    const long long gap = potential[static_cast<std::size_t>(e.tail)] + e.weight -
                          potential[static_cast<std::size_t>(e.head)];
    period = std::gcd(period, gap < 0 ? -gap : gap);
  }
  return static_cast<int>(period);
}

std::string format_path(const Digraph& g, const Path& p) {
  if (p.edges.empty()) return "<" + std::to_string(p.start) + ">";
  std::string out;
  for (EdgeIndex e : p.edges) {
    if (!out.empty()) out += '.';
    out += e < g.edge_count() ? g.edge(e).id : "?";
  }
  return out;
}

}  // namespace gifstile
