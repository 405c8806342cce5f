#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <queue>
#include <random>

#include "gifstile/analysis.hpp"
#include "gifstile/attractor.hpp"
#include "gifstile/geometry.hpp"
#include "gifstile/io.hpp"
#include "gifstile/pretree.hpp"
#include "gifstile/render.hpp"
#include "gifstile/tiling.hpp"

namespace gifstile {

namespace {

using ojson = nlohmann::ordered_json;

struct Options {
  std::string gifs;
  std::string theta, theta2;
  std::string kind = "balanced";
  int k = -1;
  std::string out;
  double radius = 0;
  int samples = 1000;
  unsigned seed = 1;
  double threshold = 0.05;
  std::size_t max_candidates = 200;
  double motif_radius = 0;
  int grid = 160;
  int upto = 2;
  int n = 1;
  int depth = 4;
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return exit_pass;
    case Verdict::fail:
      return exit_fail;
    case Verdict::inconclusive:
      return exit_inconclusive;
  }
  return exit_error;
}

enum class Format { json, svg };

// "json" / "svg" write to stdout; otherwise a file whose extension picks the
// format.
void deliver(const std::string& target, std::ostream& out, const std::function<std::string(Format)>& make) {
  if (target.empty() || target == "json" || target == "svg") {
    out << make(target == "svg" ? Format::svg : Format::json);
    return;
  }
  const auto dot = target.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : target.substr(dot + 1);
  if (ext != "json" && ext != "svg") throw std::invalid_argument("--out needs a .json or .svg file, or json/svg for stdout");
  const std::string text = make(ext == "svg" ? Format::svg : Format::json);
  std::ofstream f(target, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write " + target);
  f << text;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

// "uniform:K" is accepted as shorthand for --kind uniform --k K.
SequenceKind kind_arg(const Options& o, int& k) {
  if (o.kind.rfind("uniform:", 0) == 0) {
    const int depth = std::stoi(o.kind.substr(8));
    if (k >= 0 && k != depth) throw std::invalid_argument("uniform:K and --k disagree");
    k = depth;
    return kind::Uniform{};
  }
  return parse_kind(o.kind);
}

ThetaParam require_theta(const Gifs& gifs, const std::string& path, const char* flag) {
  if (path.empty()) throw std::invalid_argument(fmt::format("{} is required", flag));
  return load_theta(gifs.graph(), path);
}

int level(const Options& o, int fallback) { return o.k >= 0 ? o.k : fallback; }

ojson address_json(const Digraph& g, const TileAddress& a) {
  ojson sigma = ojson::array();
  for (EdgeIndex e : a.sigma.edges) sigma.push_back(g.edge(e).id);
  return {{"k", a.k}, {"sigma", sigma}};
}

std::string rigidity_note(const Gifs& gifs) {
  const char* r = gifs.rigidity() == Rigidity::rigid       ? "asserted rigid"
                  : gifs.rigidity() == Rigidity::non_rigid ? "asserted non-rigid"
                                                           : "rigidity not asserted";
  return fmt::format("empirical scan, conclusions conditional on rigidity ({})", r);
}

// ---- checks --------------------------------------------------------------

Report check_coprime(const Gifs& gifs, const Options&) {
  Report r{"coprime"};
  const int period = weighted_period(gifs.graph());
  r.verdict = is_coprime(gifs) ? Verdict::pass : Verdict::fail;
  r.witness = {{"period", period}};
  r.diagnostics.push_back(fmt::format("triangle property: {}", to_string(triangle_property_holds(gifs))));
  return r;
}

Report check_triangle(const Gifs& gifs, const Options&) {
  Report r{"triangle"};
  const TriangleVerdict t = triangle_property_holds(gifs);
  r.verdict = t == TriangleVerdict::proved_via_coprime ? Verdict::pass : Verdict::inconclusive;
  r.witness = {{"status", to_string(t)}};
  if (t == TriangleVerdict::unknown) r.diagnostics.push_back("not coprime; the general property is not decided");
  return r;
}

Report check_equivalence(const Gifs& gifs, const Options& o) {
  Report r{"equivalence"};
  const ThetaParam a = require_theta(gifs, o.theta, "--theta");
  const ThetaParam b = require_theta(gifs, o.theta2, "--theta2");
  const auto w = params_equivalent(gifs.graph(), a, b);
  if (!w) {
    r.verdict = Verdict::fail;
    r.diagnostics.push_back("tails never coincide with equal d-values");
    return r;
  }
  const Similarity phi = congruence_isometry(gifs, a, b, *w);
  r.verdict = Verdict::pass;
  r.witness = {{"K", w->K}, {"K_prime", w->K_prime}, {"common_tail", theta_to_json(gifs.graph(), w->common_tail)},
               {"isometry", similarity_to_json(phi)}};
  if (o.k >= 0) {
    int k = o.k;
    const SequenceKind kind = kind_arg(o, k);
    const CongruenceCheck c = congruence_mapping_check(gifs, a, b, *w, kind, k);
    r.diagnostics.push_back(fmt::format("mapped {} tiles onto {} target tiles, {} mismatches", c.tiles,
                                        c.target_tiles, c.mismatches));
    if (!c.ok()) {
      r.verdict = Verdict::fail;
      r.diagnostics.push_back(c.message);
    }
  }
  return r;
}

Report check_selfsimilar(const Gifs& gifs, const Options& o) {
  Report r{"selfsimilar"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  const SelfSimilarReport s = verify_self_similar(gifs, theta, level(o, 3));
  std::size_t passed = 0;
  for (const SelfSimilarTile& t : s.tiles) {
    if (t.verdict == Verdict::pass) {
      ++passed;
    } else {
      r.diagnostics.push_back(fmt::format("tile {}.{}: {}", t.tile.k, format_path(gifs.graph(), t.tile.sigma), t.message));
    }
  }
  r.verdict = s.all_pass() ? Verdict::pass : Verdict::fail;
  r.witness = {{"ratio", s.ratio}, {"deep_level", s.deep_level}, {"tiles", s.tiles.size()}, {"passed", passed}};
  return r;
}

Report check_nonoverlap(const Gifs& gifs, const Options& o) {
  Report r{"nonoverlap"};
  if (o.theta.empty()) {
    // Component-level estimate.
    NonoverlapOptions opt;
    opt.samples = o.samples;
    opt.seed = o.seed;
    opt.threshold = o.threshold;
    ojson fractions = ojson::array();
    r.verdict = Verdict::pass;
    for (Vertex v = 1; v <= gifs.vertex_count(); ++v) {
      const NonoverlapEstimate e = nonoverlap_estimate(gifs, v, opt);
      fractions.push_back(e.fraction);
      for (const auto& w : e.warnings) r.diagnostics.push_back(w);
      if (e.fraction > o.threshold) r.verdict = Verdict::fail;
    }
    r.witness = {{"fractions", fractions}, {"threshold", o.threshold}};
    return r;
  }
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  int k = level(o, 3);
  const SequenceKind kind = kind_arg(o, k);
  const Patch p = patch(gifs, theta, kind, k);
  const ComponentShapes shapes(gifs);
  const OverlapStats s = pairwise_overlap(shapes, p, o.samples, o.seed, o.threshold);
  r.verdict = s.pairs_over == 0 ? Verdict::pass : Verdict::fail;
  r.witness = {{"tiles", p.tiles.size()},
               {"pairs_checked", s.pairs_checked},
               {"pairs_over", s.pairs_over},
               {"worst_fraction", s.worst_fraction},
               {"threshold", o.threshold}};
  if (s.pairs_checked > 0) {
    r.diagnostics.push_back(fmt::format("worst pair {}.{} / {}.{}", s.worst_a.k, format_path(gifs.graph(), s.worst_a.sigma),
                                        s.worst_b.k, format_path(gifs.graph(), s.worst_b.sigma)));
  }
  if (!shapes.exact()) r.diagnostics.push_back("tile shapes rasterised from the attractor");
  return r;
}

Report check_nesting(const Gifs& gifs, const Options& o) {
  Report r{"nesting"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  int k = level(o, 4);
  const SequenceKind kind = kind_arg(o, k);
  std::vector<PreTree> seq;
  for (int i = 0; i <= k + 1; ++i) seq.push_back(generate(gifs, theta, kind, i));
  const SequenceCheck sc = verify_theta_sequence(gifs.graph(), theta, seq);
  r.verdict = Verdict::pass;
  if (!sc.ok) {
    r.verdict = Verdict::fail;
    r.diagnostics.push_back(fmt::format("sequence level {} condition {}: {}", sc.k, sc.condition, sc.message));
  }
  for (int i = 0; i <= k; ++i) {
    const NestingCheck nc = patch_nesting_check(patch(gifs, theta, kind, i), patch(gifs, theta, kind, i + 1));
    if (!nc.ok) {
      r.verdict = Verdict::fail;
      r.diagnostics.push_back(fmt::format("patch level {}: {}", i, nc.message));
    }
  }
  r.witness = {{"levels", k + 1}};
  return r;
}

Report check_commute(const Gifs& gifs, const Options& o) {
  Report r{"commute"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  const int k = level(o, 4);
  const Patch moved = shift_W(gifs, theta, k);
  const Patch direct =
      patch(gifs, theta.shifted(), kind::Balanced{}, std::max(k - 1, 0));
  const auto mismatch = compare_patches(moved, direct);
  r.verdict = mismatch ? Verdict::fail : Verdict::pass;
  r.witness = {{"tiles", moved.tiles.size()}};
  if (mismatch) r.diagnostics.push_back(mismatch->message);
  return r;
}

Report check_hierarchy(const Gifs& gifs, const Options& o) {
  Report r{"hierarchy"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  const int k = level(o, 4);
  const Patch fine = patch(gifs, theta, kind::Hierarchy{o.n, HierarchyForm::hat_form}, k);
  const Patch coarse = patch(gifs, theta, kind::Hierarchy{o.n + 1, HierarchyForm::hat_form}, k);
  const SubdivisionReport s = find_basic_subdivisions(gifs, fine, coarse);
  r.verdict = s.ok() ? Verdict::pass : Verdict::fail;
  r.witness = {{"present", s.present}, {"subdivided", s.subdivided}, {"unclassified", s.unclassified.size()}};
  if (!s.low_tiles_covered) r.diagnostics.push_back("some finer tiles are not accounted for");
  for (const TileAddress& a : s.unclassified) {
    r.diagnostics.push_back(fmt::format("unclassified tile {}.{}", a.k, format_path(gifs.graph(), a.sigma)));
  }
  return r;
}

Report check_symmetry(const Gifs& gifs, const Options& o) {
  Report r{"symmetry"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  int k = level(o, 6);
  const SequenceKind kind = kind_arg(o, k);
  const Patch p = patch(gifs, theta, kind, k);
  const ComponentShapes shapes(gifs);
  const SymmetryScan s = translation_symmetry_scan(gifs, shapes, p, o.max_candidates);
  r.verdict = s.verdict;
  ojson survivors = ojson::array();
  for (const Point2& v : s.survivors) survivors.push_back({v.x(), v.y()});
  r.witness = {{"candidates", s.candidates.size()}, {"survivors", survivors}};
  r.diagnostics.push_back(s.message);
  r.diagnostics.push_back(rigidity_note(gifs));
  return r;
}

Report check_repetitivity(const Gifs& gifs, const Options& o) {
  Report r{"repetitivity"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  int k = level(o, 6);
  const SequenceKind kind = kind_arg(o, k);
  const Patch p = patch(gifs, theta, kind, k);
  if (p.tiles.empty()) throw std::invalid_argument("empty patch");
  const ComponentShapes shapes(gifs);
  // Motif centred on the tile nearest the middle of the patch.
  Point2 lo = tile_anchor(shapes, p.tiles.front()), hi = lo;
  for (const Tile& t : p.tiles) {
    lo = lo.cwiseMin(tile_anchor(shapes, t));
    hi = hi.cwiseMax(tile_anchor(shapes, t));
  }
  const Point2 mid = (lo + hi) / 2;
  const Tile* centre = &p.tiles.front();
  for (const Tile& t : p.tiles) {
    if ((tile_anchor(shapes, t) - mid).norm() < (tile_anchor(shapes, *centre) - mid).norm()) centre = &t;
  }
  const RepetitivityResult res = repetitivity_radius(gifs, shapes, p, centre->address, o.motif_radius, o.grid);
  r.verdict = res.radius ? Verdict::pass : Verdict::inconclusive;
  r.witness = {{"centre", address_json(gifs.graph(), centre->address)},
               {"motif_tiles", res.motif_tiles},
               {"copies", res.copies},
               {"radius", res.radius ? ojson(*res.radius) : ojson(nullptr)}};
  r.diagnostics.push_back(res.message);
  r.diagnostics.push_back(fmt::format("triangle property: {}", to_string(triangle_property_holds(gifs))));
  return r;
}

Report check_filling(const Gifs& gifs, const Options& o) {
  Report r{"filling"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  const ComponentShapes shapes(gifs);
  const FillingResult f = filling_heuristic(gifs, shapes, theta, o.radius, o.k >= 0 ? o.k : 40);
  r.verdict = f.covered ? Verdict::pass : Verdict::inconclusive;
  r.witness = {{"covered", f.covered}, {"k_used", f.k_used}, {"origin_depth", f.inner_radius}};
  r.diagnostics.push_back(f.message);
  return r;
}

Report check_order(const Gifs& gifs, const Options& o) {
  Report r{"order"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  int k = level(o, 4);
  const SequenceKind kind = kind_arg(o, k);
  const Patch p = patch(gifs, theta, kind, k);
  const Census c = congruence_census(gifs, p);
  const bool ok = static_cast<long long>(c.classes.size()) <= c.class_bound &&
                  static_cast<long long>(c.distinct_scales) <= c.scale_bound;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  ojson classes = ojson::array();
  for (const CensusClass& cc : c.classes) {
    ojson jc{{"component", cc.component}};
    if (cc.scale_exponent) jc["scale_exponent"] = *cc.scale_exponent;
    jc["scale"] = cc.scale;
    jc["count"] = cc.count;
    classes.push_back(jc);
  }
  r.witness = {{"classes", c.classes.size()},
               {"class_bound", c.class_bound},
               {"distinct_scales", c.distinct_scales},
               {"scale_bound", c.scale_bound},
               {"census", classes}};
  if (!is_balanced_family(kind)) r.diagnostics.push_back("the bound is stated for balanced sequences");
  return r;
}

Report check_disjunctive(const Gifs& gifs, const Options& o) {
  Report r{"disjunctive"};
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  const auto missing = is_disjunctive_prefix(gifs.graph(), theta, o.upto);
  r.verdict = missing.empty() ? Verdict::pass : Verdict::fail;
  ojson words = ojson::array();
  for (const Path& p : missing) words.push_back(format_path(gifs.graph(), p));
  r.witness = {{"upto", o.upto}, {"missing", words}};
  return r;
}

using CheckFn = Report (*)(const Gifs&, const Options&);
const std::vector<std::pair<std::string, CheckFn>>& checks() {
  static const std::vector<std::pair<std::string, CheckFn>> table = {
      {"coprime", check_coprime},         {"triangle", check_triangle},       {"equivalence", check_equivalence},
      {"selfsimilar", check_selfsimilar}, {"nonoverlap", check_nonoverlap},   {"nesting", check_nesting},
      {"commute", check_commute},         {"hierarchy", check_hierarchy},     {"symmetry", check_symmetry},
      {"repetitivity", check_repetitivity}, {"filling", check_filling},     {"order", check_order},
      {"disjunctive", check_disjunctive}};
  return table;
}

// ---- commands ------------------------------------------------------------

int cmd_validate(const Options& o, bool overlap, std::ostream& out, std::ostream& err) {
  const Gifs gifs = load_gifs(o.gifs);
  ValidateOptions vo;
  vo.check_overlap = overlap;
  vo.overlap_samples = o.samples;
  vo.overlap_seed = o.seed;
  const ValidationReport v = validate(gifs, vo);
  Report r{"validate"};
  r.verdict = v.has_fatal() ? Verdict::fail : Verdict::pass;
  ojson items = ojson::array();
  for (const ValidationItem& it : v.items) {
    items.push_back({{"name", it.name}, {"status", to_string(it.status)}, {"fatal", it.fatal}, {"detail", it.detail}});
    if (it.status == CheckStatus::fail) r.diagnostics.push_back(it.name + ": " + it.detail);
  }
  r.witness = {{"items", items}};
  out << dump(to_json(r));
  if (v.has_fatal()) {
    err << "validation failed\n";
    return exit_error;
  }
  if (v.has_warnings()) err << "warning: advisory checks failed\n";
  return exit_pass;
}

int cmd_patch(const Options& o, std::ostream& out) {
  const Gifs gifs = load_gifs(o.gifs);
  const ThetaParam theta = require_theta(gifs, o.theta, "--theta");
  int k = o.k;
  const SequenceKind kind = kind_arg(o, k);
  if (k < 0) throw std::invalid_argument("--k is required");
  const Patch p = patch(gifs, theta, kind, k);
  RenderStyle style;
  style.depth = o.depth;
  deliver(o.out, out, [&](Format f) {
    return f == Format::svg ? render_patch_svg(gifs, p, style) : dump(patch_to_json(gifs, p));
  });
  return exit_pass;
}

int cmd_check(const std::string& name, const Options& o, std::ostream& out) {
  const auto& table = checks();
  const auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == name; });
  if (it == table.end()) throw std::invalid_argument("unknown check '" + name + "'");
  const Gifs gifs = load_gifs(o.gifs);
  const Report r = it->second(gifs, o);
  out << dump(to_json(r));
  return exit_for(r.verdict);
}

int cmd_attractor(const Options& o, int vertex, int iters, std::size_t cap, std::ostream& out) {
  const Gifs gifs = load_gifs(o.gifs);
  if (vertex < 1 || vertex > gifs.vertex_count()) throw std::invalid_argument("--vertex out of range");
  if (iters < 0) throw std::invalid_argument("--iters must be non-negative");
  const AttractorApprox a = attractor(gifs, iters, cap);
  deliver(o.out, out, [&](Format f) {
    if (f == Format::svg) return render_attractor_svg(gifs, a, vertex);
    const Cloud& c = a.cloud(vertex);
    ojson pts = ojson::array();
    for (Eigen::Index i = 0; i < c.cols(); ++i) {
      ojson p = ojson::array();
      for (Eigen::Index d = 0; d < c.rows(); ++d) p.push_back(c(d, i));
      pts.push_back(p);
    }
    ojson j;
    j["vertex"] = vertex;
    j["iterations"] = a.iterations;
    j["error_bound"] = a.error_bound();
    j["self_consistency"] = self_consistency(gifs, a);
    j["self_consistency_bound"] = 2 * a.error_bound();
    j["count"] = c.cols();
    j["points"] = pts;
    return dump(j);
  });
  return exit_pass;
}

// Shortest forward path u -> v (BFS in edge-id order).
std::vector<EdgeIndex> shortest_path(const Digraph& g, Vertex u, Vertex v) {
  std::vector<std::optional<EdgeIndex>> via(static_cast<std::size_t>(g.vertex_count()) + 1);
  std::vector<bool> seen(via.size(), false);
  std::queue<Vertex> q;
  q.push(u);
  seen[static_cast<std::size_t>(u)] = true;
  while (!q.empty() && !seen[static_cast<std::size_t>(v)]) {
    const Vertex x = q.front();
    q.pop();
    for (EdgeIndex e : g.out_edges(x)) {
      const auto h = static_cast<std::size_t>(g.edge(e).head);
      if (seen[h]) continue;
      seen[h] = true;
      via[h] = e;
      q.push(g.edge(e).head);
    }
  }
  if (!seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("graph is not strongly connected");
  std::vector<EdgeIndex> path;
  for (Vertex x = v; x != u;) {
    const EdgeIndex e = *via[static_cast<std::size_t>(x)];
    path.push_back(e);
    x = g.edge(e).tail;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

// Closed forward path at v starting with e.
std::vector<EdgeIndex> loop_through(const Digraph& g, EdgeIndex e) {
  std::vector<EdgeIndex> p{e};
  const Edge& edge = g.edge(e);
  if (edge.head != edge.tail) {
    const auto back = shortest_path(g, edge.head, edge.tail);
    p.insert(p.end(), back.begin(), back.end());
  }
  return p;
}

// Theta whose cycle walks the forward closed path `c` backwards.
ThetaParam theta_for_loop(const Digraph& g, std::vector<EdgeIndex> prefix, std::vector<EdgeIndex> c) {
  std::reverse(c.begin(), c.end());
  return ThetaParam(g, std::move(prefix), std::move(c));
}

int cmd_family(const Options& o, int count, std::ostream& out) {
  const Gifs gifs = load_gifs(o.gifs);
  const Digraph& g = gifs.graph();
  if (count < 1) throw std::invalid_argument("--count must be positive");
  std::optional<Vertex> branch;
  for (Vertex v = 1; v <= g.vertex_count() && !branch; ++v) {
    if (g.out_edges(v).size() >= 2) branch = v;
  }
  if (!branch) throw std::invalid_argument("graph is a single cycle; it has one parameter up to shifts");
  const auto a = loop_through(g, g.out_edges(*branch)[0]);
  const auto b = loop_through(g, g.out_edges(*branch)[1]);
  // a^n b for n = 1..count: primitive cycles of distinct lengths.
  std::vector<ThetaParam> family;
  for (int n = 1; n <= count; ++n) {
    std::vector<EdgeIndex> c;
    for (int i = 0; i < n; ++i) c.insert(c.end(), a.begin(), a.end());
    c.insert(c.end(), b.begin(), b.end());
    family.push_back(theta_for_loop(g, {}, c));
  }
  bool distinct = true;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) distinct = distinct && !params_equivalent(g, family[i], family[j]);
  }
  ojson list = ojson::array();
  for (const ThetaParam& t : family) list.push_back(theta_to_json(g, t));
  Report r{"family"};
  r.verdict = distinct ? Verdict::pass : Verdict::fail;
  r.witness = {{"count", count}, {"pairwise_inequivalent", distinct}, {"thetas", list}};
  out << dump(to_json(r));
  return exit_for(r.verdict);
}

int cmd_sample_theta(const Options& o, int prefix_len, int cycle_len, std::ostream& out) {
  const Gifs gifs = load_gifs(o.gifs);
  const Digraph& g = gifs.graph();
  if (prefix_len < 0 || cycle_len < 1) throw std::invalid_argument("need --prefix >= 0 and --cycle >= 1");
  std::mt19937_64 rng(o.seed);
  std::vector<std::vector<EdgeIndex>> in(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) in[static_cast<std::size_t>(g.edge(e).head)].push_back(e);
  auto step = [&](Vertex at) {
    const auto& choices = in[static_cast<std::size_t>(at)];
    if (choices.empty()) throw std::invalid_argument("vertex without in-edges");
    return choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
  };
  Vertex at = std::uniform_int_distribution<int>(1, g.vertex_count())(rng);
  std::vector<EdgeIndex> prefix;
  for (int i = 0; i < prefix_len; ++i) {
    prefix.push_back(step(at));
    at = g.edge(prefix.back()).tail;
  }
  // Random reversed walk from `start`, closed by the shortest way back.
  const Vertex start = at;
  std::vector<EdgeIndex> cycle;
  for (int i = 0; i < cycle_len; ++i) {
    cycle.push_back(step(at));
    at = g.edge(cycle.back()).tail;
  }
  // Reversed walk at -> start is a forward path start -> at, read backwards.
  auto back = shortest_path(g, start, at);
  std::reverse(back.begin(), back.end());
  cycle.insert(cycle.end(), back.begin(), back.end());
  const ThetaParam theta(g, prefix, cycle);
  out << dump(theta_to_json(g, theta));
  return exit_pass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tilings from graph directed iterated function systems"};
  app.require_subcommand(1);
  Options o;
  auto add_theta = [&](CLI::App* c) {
    c->add_option("--theta", o.theta, "theta JSON file");
    c->add_option("--kind", o.kind, "uniform | uniform:K | lagged:m | band:q,Q | balanced | hier:n | hierhat:n");
    c->add_option("--k", o.k, "level k");
  };

  bool overlap = true;
  auto* validate_cmd = app.add_subcommand("validate", "validate a GIFS spec");
  validate_cmd->add_option("gifs", o.gifs, "GIFS JSON file or builtin:<name>")->required();
  validate_cmd->add_flag("!--no-overlap", overlap, "skip the Monte-Carlo non-overlap estimate");
  validate_cmd->add_option("--samples", o.samples, "overlap samples");
  validate_cmd->add_option("--seed", o.seed, "overlap seed");

  auto* patch_cmd = app.add_subcommand("patch", "generate a patch T(theta, S, k)");
  patch_cmd->add_option("gifs", o.gifs)->required();
  add_theta(patch_cmd);
  patch_cmd->add_option("--out", o.out, "file.json, file.svg, or json/svg for stdout");
  patch_cmd->add_option("--depth", o.depth, "SVG refinement depth for tiles without a hull hint");

  std::string check_name;
  auto* check_cmd = app.add_subcommand("check", "run an analysis check");
  std::string names;
  for (const auto& [n, fn] : checks()) names += (names.empty() ? "" : " | ") + n;
  check_cmd->add_option("name", check_name, names)->required();
  check_cmd->add_option("gifs", o.gifs)->required();
  add_theta(check_cmd);
  check_cmd->add_option("--theta2", o.theta2, "second theta (equivalence)");
  check_cmd->add_option("--radius", o.radius, "ball radius (filling)");
  check_cmd->add_option("--samples", o.samples, "Monte-Carlo samples");
  check_cmd->add_option("--seed", o.seed, "random seed");
  check_cmd->add_option("--threshold", o.threshold, "overlap threshold");
  check_cmd->add_option("--max-candidates", o.max_candidates, "translation candidates (symmetry)");
  check_cmd->add_option("--motif-radius", o.motif_radius, "motif radius (repetitivity)");
  check_cmd->add_option("--grid", o.grid, "ball-centre grid size (repetitivity)");
  check_cmd->add_option("--upto", o.upto, "word length (disjunctive)");
  check_cmd->add_option("--n", o.n, "hierarchy level (hierarchy)");

  int vertex = 1, iters = 10;
  std::size_t cap = std::size_t{1} << 16;
  auto* attractor_cmd = app.add_subcommand("attractor", "approximate an attractor component");
  attractor_cmd->add_option("gifs", o.gifs)->required();
  attractor_cmd->add_option("--vertex", vertex, "component");
  attractor_cmd->add_option("--iters", iters, "iterations of F");
  attractor_cmd->add_option("--cap", cap, "points kept per component");
  attractor_cmd->add_option("--out", o.out, "file.json, file.svg, or json/svg for stdout");

  int count = 5;
  auto* family_cmd = app.add_subcommand("family", "emit pairwise inequivalent periodic parameters");
  family_cmd->add_option("gifs", o.gifs)->required();
  family_cmd->add_option("--count", count, "family size");

  int prefix_len = 0, cycle_len = 4;
  auto* sample_cmd = app.add_subcommand("sample-theta", "draw a random eventually periodic parameter");
  sample_cmd->add_option("gifs", o.gifs)->required();
  sample_cmd->add_option("--prefix", prefix_len, "prefix length");
  sample_cmd->add_option("--cycle", cycle_len, "minimum cycle length");
  sample_cmd->add_option("--seed", o.seed, "random seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_pass : exit_error;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, overlap, out, err);
    if (*patch_cmd) return cmd_patch(o, out);
    if (*check_cmd) return cmd_check(check_name, o, out);
    if (*attractor_cmd) return cmd_attractor(o, vertex, iters, cap, out);
    if (*family_cmd) return cmd_family(o, count, out);
    if (*sample_cmd) return cmd_sample_theta(o, prefix_len, cycle_len, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}

}  // namespace gifstile
