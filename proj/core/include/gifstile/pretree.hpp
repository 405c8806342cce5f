#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gifstile/digraph.hpp"
#include "gifstile/gifs.hpp"
#include "gifstile/theta.hpp"

namespace gifstile {

struct PreTree {
  Vertex root = 0;
  std::vector<Path> paths;  // canonical order, see canonicalize()

  void canonicalize();
  bool contains(const Path& p) const;
  friend bool operator==(const PreTree&, const PreTree&) = default;
};

struct PreTreeCheck {
  bool ok = true;
  int condition = 0;  // 1..3 for the first violated condition, 0 if ok
  Path witness;       // offending member, or the unextendable path for (3)
  std::string message;
};

// Checks common root, no member properly extending another member, and that
// every proper prefix extends along every out-edge within S. The empty set
// passes. Members must be valid paths of g.
PreTreeCheck is_pretree(const Digraph& g, Vertex root, const std::vector<Path>& paths);
inline PreTreeCheck is_pretree(const Digraph& g, const PreTree& s) { return is_pretree(g, s.root, s.paths); }

// Rooted tree whose root-to-leaf paths spell the members of S.
struct QuotientTree {
  struct Node {
    int parent = -1;
    EdgeIndex edge_image = 0;  // edge from parent; unused for the root
    Vertex image = 0;          // vertex of <S>
    std::vector<int> children;
  };
  std::vector<Node> nodes;  // nodes[0] is the root

  std::size_t edge_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  std::vector<int> leaves() const;
  // Edge images along the root-to-node path.
  Path word(int node) const;
};

// Throws std::invalid_argument if S is not a pre-tree or is empty.
QuotientTree quotient_tree(const Digraph& g, const PreTree& s);

// Sequence generators. Each returns S_k rooted at v_k.
PreTree seq_uniform_depth(const Digraph& g, const ThetaParam& theta, int k);
PreTree seq_lagged_depth(const Digraph& g, const ThetaParam& theta, int k, int m);
PreTree seq_ratio_band(const Gifs& gifs, const ThetaParam& theta, int k, double q, double Q);
PreTree seq_balanced(const Gifs& gifs, const ThetaParam& theta, int k);

enum class HierarchyForm { s_form, hat_form };
PreTree seq_hierarchy(const Gifs& gifs, const ThetaParam& theta, int n, int k, HierarchyForm form);

// {sigma from root : 0 < d(sigma) - D <= d(last edge of sigma)}; empty when
// D < 0.
PreTree balanced_window(const Digraph& g, Vertex root, long long D);

struct SequenceCheck {
  bool ok = true;
  int k = -1;  // first failing level
  int condition = 0;
  Path witness;
  std::string message;
};

// pretrees[k] must be rooted at v_k and contain theta_k . pretrees[k-1].
SequenceCheck verify_theta_sequence(const Digraph& g, const ThetaParam& theta, const std::vector<PreTree>& pretrees);

namespace kind {
struct Uniform {
  friend bool operator==(const Uniform&, const Uniform&) = default;
};
struct Lagged {
  int m = 1;
  friend bool operator==(const Lagged&, const Lagged&) = default;
};
struct Band {
  double q = 0, Q = 0;
  friend bool operator==(const Band&, const Band&) = default;
};
struct Balanced {
  friend bool operator==(const Balanced&, const Balanced&) = default;
};
struct Hierarchy {
  int n = 0;
  HierarchyForm form = HierarchyForm::s_form;
  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;
};
}  // namespace kind

using SequenceKind = std::variant<kind::Uniform, kind::Lagged, kind::Band, kind::Balanced, kind::Hierarchy>;

// "uniform", "lagged:m", "band:q,Q", "balanced", "hier:n", "hierhat:n".
SequenceKind parse_kind(const std::string& text);
std::string to_string(const SequenceKind& kind);
bool is_balanced_family(const SequenceKind& kind);

PreTree generate(const Gifs& gifs, const ThetaParam& theta, const SequenceKind& kind, int k);

}  // namespace gifstile
