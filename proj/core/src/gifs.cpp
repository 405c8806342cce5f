#include "gifstile/gifs.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

#include "gifstile/attractor.hpp"

namespace gifstile {

Gifs::Gifs(Digraph graph, std::vector<Similarity> maps, std::optional<double> scaling_constant,
           Rigidity rigidity)
    : graph_(std::move(graph)),
      maps_(std::move(maps)),
      s_(scaling_constant),
      rigidity_(rigidity),
      dim_(0),
      hints_(static_cast<std::size_t>(graph_.vertex_count()) + 1) {
  if (maps_.size() != graph_.edge_count()) {
    throw std::invalid_argument("need exactly one map per edge");
  }
  if (maps_.empty()) throw std::invalid_argument("GIFS has no edges");
  dim_ = maps_.front().dim();
  for (const auto& m : maps_) {
    if (m.dim() != dim_) throw std::invalid_argument("maps have mixed dimensions");
  }
}

double Gifs::max_scale() const {
  double out = 0;
  for (const auto& m : maps_) out = std::max(out, m.scale());
  return out;
}

double Gifs::min_scale() const {
  double out = maps_.front().scale();
  for (const auto& m : maps_) out = std::min(out, m.scale());
  return out;
}

bool Gifs::balanced_capable() const {
  if (!s_ || !(*s_ > 0 && *s_ < 1)) return false;
  for (EdgeIndex e = 0; e < maps_.size(); ++e) {
    const double want = std::pow(*s_, graph_.edge(e).weight);
    if (std::abs(maps_[e].scale() - want) > kTol.structural * want) return false;
  }
  return true;
}

void Gifs::require_balanced(const std::string& op) const {
  if (!balanced_capable()) {
    throw std::invalid_argument(op + " requires a balanced-capable GIFS (scale(f_e) = s^d(e))");
  }
}

void Gifs::require_valid() const {
  if (!is_strongly_connected(graph_)) {
    throw std::invalid_argument("GIFS graph is not strongly connected");
  }
  if (max_scale() >= 1) throw std::invalid_argument("GIFS has a non-contractive map");
}

const std::optional<Polygon>& Gifs::hull_hint(Vertex v) const {
  return hints_.at(static_cast<std::size_t>(v));
}

void Gifs::set_hull_hint(Vertex v, Polygon polygon) {
  if (v < 1 || v > graph_.vertex_count()) throw std::invalid_argument("hull hint vertex out of range");
  if (dim_ != 2) throw std::invalid_argument("hull hints are only supported in dimension 2");
  if (polygon.size() < 3) throw std::invalid_argument("hull hint needs at least 3 points");
  hints_[static_cast<std::size_t>(v)] = std::move(polygon);
}

Similarity map_for_path(const Gifs& gifs, const Path& p, bool reversed) {
  const bool ok = reversed ? is_valid_reversed_path(gifs.graph(), p) : is_valid_path(gifs.graph(), p);
  if (!ok) {
    throw std::invalid_argument("invalid path " + format_path(gifs.graph(), p) +
                                (reversed ? " in reversed graph" : ""));
  }
  Similarity out = Similarity::identity(gifs.dim());
  for (EdgeIndex e : p.edges) {
    out = compose(out, reversed ? invert(gifs.map(e)) : gifs.map(e));
  }
  return out;
}

bool ValidationReport::has_fatal() const {
  return std::any_of(items.begin(), items.end(),
                     [](const auto& i) { return i.fatal && i.status == CheckStatus::fail; });
}

bool ValidationReport::has_warnings() const {
  return std::any_of(items.begin(), items.end(),
                     [](const auto& i) { return !i.fatal && i.status == CheckStatus::fail; });
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::assumed: return "assumed";
  }
  return "?";
}

ValidationReport validate(const Gifs& gifs, const ValidateOptions& options) {
  ValidationReport report;
  const Digraph& g = gifs.graph();

  const bool connected = is_strongly_connected(g);
  report.items.push_back({"strong_connectivity", connected ? CheckStatus::pass : CheckStatus::fail,
                          true, connected ? "" : "some vertex pair has no directed path"});

  std::string bad;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (gifs.map(e).scale() >= 1) {
      bad += fmt::format("{}{} (scale {})", bad.empty() ? "" : ", ", g.edge(e).id, gifs.map(e).scale());
    }
  }
  report.items.push_back(
      {"contractivity", bad.empty() ? CheckStatus::pass : CheckStatus::fail, true, bad});

  if (auto s = gifs.scaling_constant()) {
    std::string detail;
    if (!(*s > 0 && *s < 1)) detail = fmt::format("scaling constant {} not in (0,1)", *s);
    for (EdgeIndex e = 0; e < g.edge_count() && detail.empty(); ++e) {
      const double want = std::pow(*s, g.edge(e).weight);
      if (std::abs(gifs.map(e).scale() - want) > kTol.structural * want) {
        detail = fmt::format("edge {}: scale {} but s^d = {}", g.edge(e).id, gifs.map(e).scale(), want);
      }
    }
    report.items.push_back({"scale_consistency", detail.empty() ? CheckStatus::pass : CheckStatus::fail,
                            true, detail});
  } else {
    report.items.push_back({"scale_consistency", CheckStatus::assumed, false,
                            "no scaling constant; balanced constructions unavailable"});
  }

  if (options.check_overlap && !report.has_fatal()) {
    for (Vertex v = 1; v <= g.vertex_count(); ++v) {
      NonoverlapOptions no;
      no.samples = options.overlap_samples;
      no.seed = options.overlap_seed;
      const auto est = nonoverlap_estimate(gifs, v, no);
      const bool ok = est.fraction <= no.threshold;
      report.items.push_back({fmt::format("non_overlap[{}]", v), ok ? CheckStatus::pass : CheckStatus::fail,
                              false, fmt::format("overlap fraction {:.4f} (threshold {})", est.fraction,
                                                 no.threshold)});
    }
  }
  report.items.push_back({"nonempty_interior", CheckStatus::assumed, false, "not decided"});
  return report;
}

}  // namespace gifstile
