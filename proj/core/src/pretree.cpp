#include "gifstile/pretree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

namespace gifstile {

namespace {

constexpr int kUnbounded = std::numeric_limits<int>::max() / 4;

bool key_less(const std::vector<EdgeIndex>& a, const std::vector<EdgeIndex>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

void require_nonnegative(int k, const char* what) {
  if (k < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

}  // namespace

void PreTree::canonicalize() {
  std::sort(paths.begin(), paths.end(), canonical_less);
  paths.erase(std::unique(paths.begin(), paths.end()), paths.end());
}

bool PreTree::contains(const Path& p) const {
  return std::binary_search(paths.begin(), paths.end(), p, canonical_less);
}

PreTreeCheck is_pretree(const Digraph& g, Vertex root, const std::vector<Path>& paths) {
  PreTreeCheck out;
  // Each condition reports its shortlex-first offender.
  const Path* wrong_root = nullptr;
  bool sorted = true;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    if (!is_valid_path(g, p)) throw std::invalid_argument("pre-tree member " + format_path(g, p) + " is not a path");
    if (p.start != root && (!wrong_root || canonical_less(p, *wrong_root))) wrong_root = &p;
    if (i > 0 && sorted && p.edges < paths[i - 1].edges) sorted = false;
  }
  if (wrong_root) {
    out = {false, 1, *wrong_root,
           fmt::format("{} starts at {} instead of root {}", format_path(g, *wrong_root), wrong_root->start, root)};
    return out;
  }

  // In lexicographic order the members sharing a prefix are contiguous, so
  // one scan with a stack of open prefixes sees the whole prefix trie.
  std::vector<const Path*> lex;
  lex.reserve(paths.size());
  for (const Path& p : paths) lex.push_back(&p);
  if (!sorted) std::sort(lex.begin(), lex.end(), [](const Path* a, const Path* b) { return a->edges < b->edges; });

  struct Open {
    std::size_t first;  // lex position of the first member through this prefix
    std::size_t depth;
    Vertex end;
    std::size_t children;
  };
  std::vector<Open> stack;
  std::optional<Path> missing;
  auto close = [&](const Open& node) {
    const auto& outs = g.out_edges(node.end);
    if (node.children == outs.size()) return;
    const auto& owner = lex[node.first]->edges;
    Path w{root, {owner.begin(), owner.begin() + static_cast<std::ptrdiff_t>(node.depth)}};
    if (missing && !key_less(w.edges, std::vector<EdgeIndex>(missing->edges.begin(), missing->edges.end() - 1))) return;
    std::vector<EdgeIndex> seen;
    for (std::size_t i = node.first; i < lex.size(); ++i) {
      const auto& e = lex[i]->edges;
      if (e.size() <= node.depth || !std::equal(w.edges.begin(), w.edges.end(), e.begin())) break;
      seen.push_back(e[node.depth]);
    }
    for (EdgeIndex e : outs) {
      if (std::find(seen.begin(), seen.end(), e) == seen.end()) {
        w.edges.push_back(e);
        break;
      }
    }
    missing = std::move(w);
  };
  const Path* extended = nullptr;
  for (std::size_t i = 0; i < lex.size(); ++i) {
    const auto& edges = lex[i]->edges;
    std::size_t lcp = 0;
    if (i > 0) {
      const auto& prev = lex[i - 1]->edges;
      while (lcp < prev.size() && lcp < edges.size() && prev[lcp] == edges[lcp]) ++lcp;
      if (lcp == prev.size() && prev.size() < edges.size() &&
          (!extended || canonical_less(*lex[i - 1], *extended))) {
        extended = lex[i - 1];
      }
    }
    while (!stack.empty() && stack.back().depth > lcp) {
      close(stack.back());
      stack.pop_back();
    }
    std::size_t from = 0;
    Vertex at = root;
    if (!stack.empty()) {
      Open& top = stack.back();
      from = top.depth + 1;
      if (top.depth == lcp && lcp < edges.size()) ++top.children;
      if (from <= edges.size()) at = g.edge(edges[from - 1]).head;
    }
    for (std::size_t d = from; d < edges.size(); ++d) {
      stack.push_back({i, d, at, 1});
      at = g.edge(edges[d]).head;
    }
  }
  if (extended) {
    out = {false, 2, *extended, fmt::format("member {} is a proper subpath of another member", format_path(g, *extended))};
    return out;
  }
  while (!stack.empty()) {
    close(stack.back());
    stack.pop_back();
  }
  if (missing) {
    out = {false, 3, *missing, fmt::format("{} is not a subpath of any member", format_path(g, *missing))};
  }
  return out;
}

std::vector<int> QuotientTree::leaves() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].children.empty()) out.push_back(static_cast<int>(i));
  }
  return out;
}

Path QuotientTree::word(int node) const {
  Path p;
  while (node > 0) {
    p.edges.push_back(nodes[static_cast<std::size_t>(node)].edge_image);
    node = nodes[static_cast<std::size_t>(node)].parent;
  }
  std::reverse(p.edges.begin(), p.edges.end());
  p.start = nodes.front().image;
  return p;
}

QuotientTree quotient_tree(const Digraph& g, const PreTree& s) {
  if (s.paths.empty()) throw std::invalid_argument("quotient tree of an empty pre-tree");
  if (const auto check = is_pretree(g, s); !check.ok) {
    throw std::invalid_argument("quotient tree needs a pre-tree: " + check.message);
  }
  // H' is the disjoint union of the members as paths glued at the root;
  // identifying its nodes by the image of their root path leaves one node
  // per distinct prefix.
  QuotientTree t;
  std::map<std::vector<EdgeIndex>, int> node_of;
  t.nodes.push_back({-1, 0, s.root, {}});
  node_of[{}] = 0;
  for (const Path& member : s.paths) {
    std::vector<EdgeIndex> key;
    int at = 0;
    for (EdgeIndex e : member.edges) {
      key.push_back(e);
      auto [it, inserted] = node_of.try_emplace(key, static_cast<int>(t.nodes.size()));
      if (inserted) {
        t.nodes.push_back({at, e, g.edge(e).head, {}});
        t.nodes[static_cast<std::size_t>(at)].children.push_back(it->second);
      }
      at = it->second;
    }
  }
  return t;
}

PreTree balanced_window(const Digraph& g, Vertex root, long long D) {
  PreTree out{root, {}};
  if (D < 0) return out;
  if (D + g.max_weight() > kUnbounded) throw std::invalid_argument("balanced window offset too large");
  walk_paths(g, root, static_cast<int>(D) + g.max_weight(), [&](const Path& p, int d) {
    if (d > D) {
      // The parent had d <= D, so d - D <= d(last edge) holds automatically.
      out.paths.push_back(p);
      return Visit::prune;
    }
    return Visit::descend;
  });
  out.canonicalize();
  return out;
}

PreTree seq_uniform_depth(const Digraph& g, const ThetaParam& theta, int k) {
  require_nonnegative(k, "k");
  PreTree out{theta.vertex(static_cast<std::size_t>(k)), {}};
  walk_paths(g, out.root, kUnbounded, [&](const Path& p, int) {
    if (p.length() == static_cast<std::size_t>(k)) {
      out.paths.push_back(p);
      return Visit::prune;
    }
    return Visit::descend;
  });
  out.canonicalize();
  return out;
}

PreTree seq_lagged_depth(const Digraph& g, const ThetaParam& theta, int k, int m) {
  require_nonnegative(k, "k");
  if (m < 1) throw std::invalid_argument("lag depth m must be at least 1");
  const auto K = static_cast<std::size_t>(k);
  PreTree out{theta.vertex(K), {}};
  Path chain{out.root, {}};  // theta_k ... theta_{j+1}
  for (std::size_t j = K + 1; j-- > 0;) {
    const Vertex vj = theta.vertex(j);
    walk_paths(g, vj, kUnbounded, [&](const Path& sigma, int) {
      // sigma may not restart the chain, or theta_k...theta_j sigma' would
      // be counted twice and break the no-proper-subpath rule.
      if (j >= 1 && sigma.length() == 1 && sigma.edges[0] == theta.edge(j)) return Visit::prune;
      if (sigma.length() == static_cast<std::size_t>(m)) {
        out.paths.push_back(concat(g, chain, sigma));
        return Visit::prune;
      }
      return Visit::descend;
    });
    if (j >= 1) chain.edges.push_back(theta.edge(j));
  }
  out.canonicalize();
  return out;
}

PreTree seq_ratio_band(const Gifs& gifs, const ThetaParam& theta, int k, double q, double Q) {
  require_nonnegative(k, "k");
  if (!(q > 0) || !(q < Q)) throw std::invalid_argument("ratio band needs 0 < q < Q");
  gifs.require_valid();
  const Digraph& g = gifs.graph();
  const auto K = static_cast<std::size_t>(k);
  double base = 1;
  for (std::size_t i = 1; i <= K; ++i) base /= gifs.map(theta.edge(i)).scale();
  const double lo = q * (1 - kTol.structural), hi = Q * (1 + kTol.structural);

  // Members are the first paths whose combined scale drops to Q or below.
  PreTree out{theta.vertex(K), {}};
  walk_paths(g, out.root, kUnbounded, [&](const Path& sigma, int) {
    double c = base;
    for (EdgeIndex e : sigma.edges) c *= gifs.map(e).scale();
    if (c > hi) return Visit::descend;
    if (c < lo) {
      throw std::invalid_argument(fmt::format("ratio band [{}, {}] is skipped by path {} (scale {})", q, Q,
                                              format_path(g, sigma), c));
    }
    out.paths.push_back(sigma);
    return Visit::prune;
  });
  out.canonicalize();
  return out;
}

PreTree seq_balanced(const Gifs& gifs, const ThetaParam& theta, int k) {
  require_nonnegative(k, "k");
  gifs.require_balanced("balanced sequence");
  const auto K = static_cast<std::size_t>(k);
  return balanced_window(gifs.graph(), theta.vertex(K), theta.d_prefix(K));
}

PreTree seq_hierarchy(const Gifs& gifs, const ThetaParam& theta, int n, int k, HierarchyForm form) {
  require_nonnegative(n, "n");
  require_nonnegative(k, "k");
  gifs.require_balanced("hierarchy sequence");
  const auto K = static_cast<std::size_t>(k);
  const long long shift = form == HierarchyForm::s_form ? theta.d_prefix(static_cast<std::size_t>(n)) : n;
  return balanced_window(gifs.graph(), theta.vertex(K), theta.d_prefix(K) - shift);
}

SequenceCheck verify_theta_sequence(const Digraph& g, const ThetaParam& theta, const std::vector<PreTree>& pretrees) {
  SequenceCheck out;
  for (std::size_t k = 0; k < pretrees.size(); ++k) {
    const PreTree& s = pretrees[k];
    if (s.root != theta.vertex(k)) {
      return {false, static_cast<int>(k), 1, {}, fmt::format("S_{} has root {} but v_{} = {}", k, s.root, k, theta.vertex(k))};
    }
    if (const auto check = is_pretree(g, s); !check.ok) {
      return {false, static_cast<int>(k), 1, check.witness, fmt::format("S_{} is not a pre-tree: {}", k, check.message)};
    }
    if (k == 0) continue;
    std::vector<Path> members = s.paths;
    std::sort(members.begin(), members.end(), canonical_less);
    for (const Path& sigma : pretrees[k - 1].paths) {
      Path lifted{s.root, {theta.edge(k)}};
      lifted.edges.insert(lifted.edges.end(), sigma.edges.begin(), sigma.edges.end());
      if (!std::binary_search(members.begin(), members.end(), lifted, canonical_less)) {
        return {false, static_cast<int>(k), 2, lifted,
                fmt::format("theta_{} . {} is missing from S_{}", k, format_path(g, sigma), k)};
      }
    }
  }
  return out;
}

namespace {

double parse_double(std::string_view text) {
  // std::from_chars for double is unavailable in older libstdc++.
  std::string s(text);
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad integer '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace

SequenceKind parse_kind(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto need_arg = [&] {
    if (arg.empty()) throw std::invalid_argument("kind '" + name + "' needs a parameter");
  };
  if (name == "uniform" && arg.empty()) return kind::Uniform{};
  if (name == "balanced" && arg.empty()) return kind::Balanced{};
  if (name == "lagged") {
    need_arg();
    return kind::Lagged{parse_int(arg)};
  }
  if (name == "band") {
    need_arg();
    const auto comma = arg.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("band kind needs q,Q");
    return kind::Band{parse_double(arg.substr(0, comma)), parse_double(arg.substr(comma + 1))};
  }
  if (name == "hier" || name == "hierhat") {
    need_arg();
    return kind::Hierarchy{parse_int(arg), name == "hier" ? HierarchyForm::s_form : HierarchyForm::hat_form};
  }
  throw std::invalid_argument("unknown sequence kind '" + text + "'");
}

std::string to_string(const SequenceKind& k) {
  struct {
    std::string operator()(const kind::Uniform&) const { return "uniform"; }
    std::string operator()(const kind::Lagged& l) const { return fmt::format("lagged:{}", l.m); }
    std::string operator()(const kind::Band& b) const { return fmt::format("band:{},{}", b.q, b.Q); }
    std::string operator()(const kind::Balanced&) const { return "balanced"; }
    std::string operator()(const kind::Hierarchy& h) const {
      return fmt::format("{}:{}", h.form == HierarchyForm::s_form ? "hier" : "hierhat", h.n);
    }
  } visitor;
  return std::visit(visitor, k);
}

bool is_balanced_family(const SequenceKind& k) {
  return std::holds_alternative<kind::Balanced>(k) || std::holds_alternative<kind::Hierarchy>(k);
}

PreTree generate(const Gifs& gifs, const ThetaParam& theta, const SequenceKind& k, int level) {
  if (theta.graph_signature() != gifs.graph().signature()) {
    throw std::invalid_argument("theta belongs to a different graph");
  }
  struct {
    const Gifs& gifs;
    const ThetaParam& theta;
    int level;
    PreTree operator()(const kind::Uniform&) const { return seq_uniform_depth(gifs.graph(), theta, level); }
    PreTree operator()(const kind::Lagged& l) const { return seq_lagged_depth(gifs.graph(), theta, level, l.m); }
    PreTree operator()(const kind::Band& b) const { return seq_ratio_band(gifs, theta, level, b.q, b.Q); }
    PreTree operator()(const kind::Balanced&) const { return seq_balanced(gifs, theta, level); }
    PreTree operator()(const kind::Hierarchy& h) const { return seq_hierarchy(gifs, theta, h.n, level, h.form); }
  } visitor{gifs, theta, level};
  return std::visit(visitor, k);
}

}  // namespace gifstile
