#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "gifstile/digraph.hpp"
#include "gifstile/similarity.hpp"

namespace gifstile {

enum class Rigidity { unknown, rigid, non_rigid };

using Point2 = Eigen::Vector2d;
using Polygon = std::vector<Point2>;

// A graph directed IFS: one similarity per edge, optionally with the common
// base s such that scale(f_e) = s^d(e).
//
// Construction only checks shape (one map per edge, uniform dimension).
// Semantic conditions are reported by validate(); operations that depend on
// them call require_valid() / require_balanced().
class Gifs {
 public:
  Gifs(Digraph graph, std::vector<Similarity> maps, std::optional<double> scaling_constant,
       Rigidity rigidity = Rigidity::unknown);

  const Digraph& graph() const { return graph_; }
  const Similarity& map(EdgeIndex e) const { return maps_.at(e); }
  std::span<const Similarity> maps() const { return maps_; }
  int dim() const { return dim_; }
  int vertex_count() const { return graph_.vertex_count(); }
  std::optional<double> scaling_constant() const { return s_; }
  Rigidity rigidity() const { return rigidity_; }

  double max_scale() const;
  double min_scale() const;

  // s present, 0 < s < 1, and scale(f_e) = s^d(e) for every edge.
  bool balanced_capable() const;
  // Throws std::invalid_argument naming `op` unless balanced_capable().
  void require_balanced(const std::string& op) const;
  // Throws std::invalid_argument unless strongly connected and contractive.
  void require_valid() const;

  // Optional per-vertex polygon asserted (not checked) to equal A_i.
  const std::optional<Polygon>& hull_hint(Vertex v) const;
  void set_hull_hint(Vertex v, Polygon polygon);

 private:
  Digraph graph_;
  std::vector<Similarity> maps_;
  std::optional<double> s_;
  Rigidity rigidity_;
  int dim_;
  std::vector<std::optional<Polygon>> hints_;
};

// f_p per the path convention: f_{e1} o f_{e2} o ... o f_{ek}. With
// `reversed`, each edge contributes its inverse and p is checked as a path
// of the reversed graph.
Similarity map_for_path(const Gifs& gifs, const Path& p, bool reversed);

enum class CheckStatus { pass, fail, assumed };

struct ValidationItem {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  bool fatal = false;  // failure of a structural requirement
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationItem> items;
  bool has_fatal() const;
  bool has_warnings() const;
};

struct ValidateOptions {
  bool check_overlap = true;
  int overlap_samples = 10000;
  unsigned overlap_seed = 1;
};

ValidationReport validate(const Gifs& gifs, const ValidateOptions& options = {});

const char* to_string(CheckStatus s);

}  // namespace gifstile
