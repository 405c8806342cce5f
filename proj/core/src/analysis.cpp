#include "gifstile/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "gifstile/attractor.hpp"
#include "gifstile/point_index.hpp"

namespace gifstile {

namespace {

Point2 as_point(const Vec& v) { return {v[0], v[1]}; }

std::string format_address(const Digraph& g, const TileAddress& a) {
  return fmt::format("{}.{}", a.k, format_path(g, a.sigma));
}

// sigma re-expressed at a deeper level: theta_level ... theta_{k+1} sigma.
Path lift(const ThetaParam& theta, const TileAddress& a, int level) {
  Path out{theta.vertex(static_cast<std::size_t>(level)), {}};
  for (int i = level; i > a.k; --i) out.edges.push_back(theta.edge(static_cast<std::size_t>(i)));
  out.edges.insert(out.edges.end(), a.sigma.edges.begin(), a.sigma.edges.end());
  return out;
}

long long word_d(const Digraph& g, const std::vector<EdgeIndex>& w, std::size_t n) {
  long long d = 0;
  for (std::size_t i = 0; i < n; ++i) d += g.edge(w[i]).weight;
  return d;
}

std::vector<EdgeIndex> rotated(const std::vector<EdgeIndex>& c, std::size_t t) {
  std::vector<EdgeIndex> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[(i + t) % c.size()];
  return out;
}

// The same infinite word with a primitive cycle and the shortest prefix.
struct Word {
  std::vector<EdgeIndex> p, c;
};

Word normalize(const ThetaParam& t) {
  Word w{t.prefix(), t.cycle()};
  const std::size_t L = w.c.size();
  for (std::size_t q = 1; q <= L; ++q) {
    if (L % q != 0) continue;
    bool periodic = true;
    for (std::size_t i = q; i < L && periodic; ++i) periodic = w.c[i] == w.c[i - q];
    if (periodic) {
      w.c.resize(q);
      break;
    }
  }
  while (!w.p.empty() && w.p.back() == w.c.back()) {
    std::rotate(w.c.rbegin(), w.c.rbegin() + 1, w.c.rend());
    w.p.pop_back();
  }
  return w;
}

// Finds tiles by transform, bucketing on the image of the component anchor.
class TileLookup {
 public:
  TileLookup(const ComponentShapes& shapes, const Patch& p) : shapes_(shapes), p_(p) {
    cell_ = std::numeric_limits<double>::infinity();
    for (const Tile& t : p.tiles) cell_ = std::min(cell_, t.transform.scale() * std::max(shapes.radius(t.component), 1e-9));
    for (std::size_t i = 0; i < p.tiles.size(); ++i) {
      buckets_[key(tile_anchor(shapes, p.tiles[i]))].push_back(i);
    }
  }

  const Tile* find(Vertex component, const Similarity& T, double tol) const {
    const Point2 q = as_point(T.apply(Vec(shapes_.anchor(component))));
    const auto [kx, ky] = key(q);
    for (long dx = -1; dx <= 1; ++dx) {
      for (long dy = -1; dy <= 1; ++dy) {
        auto it = buckets_.find({kx + dx, ky + dy});
        if (it == buckets_.end()) continue;
        for (std::size_t i : it->second) {
          const Tile& t = p_.tiles[i];
          if (t.component == component && approx_eq(t.transform, T, tol)) return &t;
        }
      }
    }
    return nullptr;
  }

 private:
  std::pair<long, long> key(const Point2& x) const {
    return {static_cast<long>(std::floor(x.x() / cell_)), static_cast<long>(std::floor(x.y() / cell_))};
  }
  const ComponentShapes& shapes_;
  const Patch& p_;
  double cell_;
  std::map<std::pair<long, long>, std::vector<std::size_t>> buckets_;
};

Similarity translation(const Point2& v) { return Similarity(1.0, Mat::Identity(2, 2), Vec(v)); }

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["check"] = r.check;
  j["verdict"] = to_string(r.verdict);
  if (!r.witness.is_null()) j["witness"] = r.witness;
  j["diagnostics"] = r.diagnostics;
  return j;
}

bool is_coprime(const Gifs& gifs) {
  gifs.require_balanced("coprimality");
  return weighted_period(gifs.graph()) == 1;
}

const char* to_string(TriangleVerdict v) {
  return v == TriangleVerdict::proved_via_coprime ? "proved-via-coprime" : "unknown";
}

TriangleVerdict triangle_property_holds(const Gifs& gifs) {
  if (gifs.balanced_capable() && is_strongly_connected(gifs.graph()) && is_coprime(gifs)) {
    return TriangleVerdict::proved_via_coprime;
  }
  return TriangleVerdict::unknown;
}

std::optional<EquivalenceWitness> params_equivalent(const Digraph& g, const ThetaParam& a, const ThetaParam& b) {
  if (a.graph_signature() != g.signature() || b.graph_signature() != g.signature()) {
    throw std::invalid_argument("parameters belong to different graphs");
  }
  const Word x = normalize(a), y = normalize(b);
  std::optional<std::pair<long long, long long>> best;
  auto offer = [&](long long K, long long Kp) {
    if (!best || std::pair(K + Kp, K) < std::pair(best->first + best->second, best->first)) best = {K, Kp};
  };

  // Tails inside both prefixes: the remaining prefixes and the cycles must
  // agree outright.
  if (x.c == y.c) {
    std::size_t j = 0;
    while (j < x.p.size() && j < y.p.size() && x.p[x.p.size() - 1 - j] == y.p[y.p.size() - 1 - j]) ++j;
    if (j > 0 && word_d(g, x.p, x.p.size()) == word_d(g, y.p, y.p.size())) {
      offer(static_cast<long long>(x.p.size() - j), static_cast<long long>(y.p.size() - j));
    }
  }

  // Purely periodic tails: K = |p| + rho + L i, K' = |p'| + rho' + L j.
  const std::size_t L = x.c.size();
  if (y.c.size() == L) {
    std::optional<std::size_t> shift;
    for (std::size_t t = 0; t < L && !shift; ++t) {
      if (rotated(x.c, t) == y.c) shift = t;
    }
    if (shift) {
      const long long D = word_d(g, x.c, L);
      for (std::size_t rp = 0; rp < L; ++rp) {
        const std::size_t r = (*shift + rp) % L;
        const long long delta =
            word_d(g, y.p, y.p.size()) + word_d(g, y.c, rp) - word_d(g, x.p, x.p.size()) - word_d(g, x.c, r);
        if (delta % D != 0) continue;
        const long long m = delta / D;
        const long long i = std::max(m, 0LL), j = std::max(-m, 0LL);
        offer(static_cast<long long>(x.p.size() + r) + static_cast<long long>(L) * i,
              static_cast<long long>(y.p.size() + rp) + static_cast<long long>(L) * j);
      }
    }
  }
  if (!best) return std::nullopt;

  const auto [K, Kp] = *best;
  const auto uK = static_cast<std::size_t>(K);
  std::optional<ThetaParam> tail;
  if (uK < x.p.size()) {
    tail.emplace(g, std::vector<EdgeIndex>(x.p.begin() + K, x.p.end()), x.c);
  } else {
    tail.emplace(g, std::vector<EdgeIndex>{}, rotated(x.c, (uK - x.p.size()) % L));
  }
  return EquivalenceWitness{K, Kp, *tail};
}

void check_witness(const Digraph& g, const ThetaParam& a, const ThetaParam& b, const EquivalenceWitness& w) {
  if (a.graph_signature() != g.signature() || b.graph_signature() != g.signature()) {
    throw std::invalid_argument("parameters belong to different graphs");
  }
  if (w.K < 0 || w.K_prime < 0) throw std::invalid_argument("witness indices must be non-negative");
  const auto K = static_cast<std::size_t>(w.K), Kp = static_cast<std::size_t>(w.K_prime);
  if (a.d_prefix(K) != b.d_prefix(Kp)) throw std::invalid_argument("witness prefixes have different d-values");
  // Past both prefixes the tails repeat with period lcm(L, L') <= L * L'.
  const std::size_t span = a.prefix().size() + b.prefix().size() + a.cycle().size() * b.cycle().size();
  for (std::size_t i = 1; i <= span; ++i) {
    if (a.edge(K + i) != b.edge(Kp + i)) throw std::invalid_argument("witness tails differ");
  }
}

Similarity congruence_isometry(const Gifs& gifs, const ThetaParam& a, const ThetaParam& b,
                               const EquivalenceWitness& w) {
  check_witness(gifs.graph(), a, b, w);
  const Similarity fa = map_for_path(gifs, a.head_path(static_cast<std::size_t>(w.K)), true);
  const Similarity fb = map_for_path(gifs, b.head_path(static_cast<std::size_t>(w.K_prime)), true);
  Similarity phi = compose(fb, invert(fa));
  if (std::abs(phi.scale() - 1.0) > kTol.structural) {
    throw ContractViolation(fmt::format("congruence map has scale {} (not an isometry)", phi.scale()));
  }
  return phi;
}

CongruenceCheck congruence_mapping_check(const Gifs& gifs, const ThetaParam& a, const ThetaParam& b,
                                         const EquivalenceWitness& w, const SequenceKind& kind, int k) {
  if (k < w.K) throw std::invalid_argument("mapping check needs k >= K");
  const Similarity phi = congruence_isometry(gifs, a, b, w);
  const int kp = k + static_cast<int>(w.K_prime - w.K);
  const Patch pa = patch(gifs, a, kind, k);
  const Patch pb = patch(gifs, b, kind, kp);
  CongruenceCheck out;
  out.tiles = pa.tiles.size();
  out.target_tiles = pb.tiles.size();
  for (const Tile& t : pa.tiles) {
    Path sigma = lift(a, t.address, k);
    const TileAddress target = canonical_address(b, kp, sigma);
    const Tile* m = pb.find(target);
    if (m == nullptr || !approx_eq(compose(phi, t.transform), m->transform, kTol.geometric)) {
      if (out.mismatches++ == 0) {
        out.first_mismatch = t.address;
        out.message = fmt::format("tile {} has no congruent image at {}", format_address(gifs.graph(), t.address),
                                  format_address(gifs.graph(), target));
      }
    }
  }
  if (out.mismatches == 0 && out.tiles != out.target_tiles) {
    out.message = fmt::format("tile counts differ: {} vs {}", out.tiles, out.target_tiles);
  }
  return out;
}

bool SelfSimilarReport::all_pass() const {
  return std::all_of(tiles.begin(), tiles.end(), [](const SelfSimilarTile& t) { return t.verdict == Verdict::pass; });
}

SelfSimilarReport verify_self_similar(const Gifs& gifs, const ThetaParam& theta, int k,
                                      const SelfSimilarOptions& options) {
  gifs.require_balanced("self-similarity check");
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  const Digraph& g = gifs.graph();
  const std::size_t P = theta.prefix().size(), L = theta.cycle().size();
  const Similarity phi =
      compose(map_for_path(gifs, theta.head_path(P + L), true), invert(map_for_path(gifs, theta.head_path(P), true)));
  if (!(phi.scale() > 1.0)) throw ContractViolation("self-similarity map is not expanding");

  const int level = std::max(k, static_cast<int>(P));
  const int deep = level + static_cast<int>(L);
  SelfSimilarReport report{phi, phi.scale(), deep, {}};
  const Patch base = patch(gifs, theta, kind::Balanced{}, k);
  const Patch cover = patch(gifs, theta, kind::Balanced{}, deep);
  std::optional<AttractorApprox> approx;
  if (options.geometric && gifs.dim() <= 3) approx = saturated_attractor(gifs, options.points_per_component);

  for (const Tile& t : base.tiles) {
    SelfSimilarTile r;
    r.tile = t.address;
    // phi o T is the tile transform of (level + L, sigma'), a union of the
    // deeper tiles sigma' omega.
    const Path sigma = lift(theta, t.address, level);
    const Similarity image = compose(phi, t.transform);
    const long long D = theta.d_prefix(static_cast<std::size_t>(deep)) - d_value(g, sigma);
    std::vector<Path> omegas;
    if (D < 0) {
      omegas.push_back(Path{end_vertex(g, sigma), {}});
    } else {
      omegas = balanced_window(g, end_vertex(g, sigma), D).paths;
      const PreTreeCheck pt = is_pretree(g, end_vertex(g, sigma), omegas);
      if (!pt.ok) {
        r.verdict = Verdict::fail;
        r.message = "cover words do not form a pre-tree: " + pt.message;
        report.tiles.push_back(std::move(r));
        continue;
      }
    }
    r.cover_size = omegas.size();
    std::vector<const Tile*> parts;
    for (const Path& w : omegas) {
      const TileAddress addr = canonical_address(theta, deep, concat(g, sigma, w));
      const Tile* m = cover.find(addr);
      if (m == nullptr) {
        r.message = "cover tile " + format_address(g, addr) + " missing from the deeper patch";
        break;
      }
      if (!approx_eq(m->transform, compose(image, map_for_path(gifs, w, false)), kTol.geometric)) {
        r.message = "cover tile " + format_address(g, addr) + " is misplaced";
        break;
      }
      parts.push_back(m);
    }
    if (parts.size() != omegas.size()) {
      r.verdict = Verdict::fail;
      report.tiles.push_back(std::move(r));
      continue;
    }
    r.verdict = Verdict::pass;
    if (approx) {
      const Cloud lhs = apply(image, approx->cloud(t.component));
      std::vector<Cloud> pieces;
      Eigen::Index cols = 0;
      for (const Tile* m : parts) {
        pieces.push_back(apply(m->transform, approx->cloud(m->component)));
        cols += pieces.back().cols();
      }
      Cloud rhs(lhs.rows(), cols);
      Eigen::Index at = 0;
      for (const Cloud& c : pieces) {
        rhs.middleCols(at, c.cols()) = c;
        at += c.cols();
      }
      r.residual = hausdorff(lhs, rhs);
      r.bound = 2.0 * image.scale() * approx->error_bound();
      if (r.residual > r.bound) {
        r.verdict = Verdict::fail;
        r.message = fmt::format("cloud residual {:.3g} exceeds {:.3g}", r.residual, r.bound);
      }
    }
    report.tiles.push_back(std::move(r));
  }
  return report;
}

SymmetryScan translation_symmetry_scan(const Gifs& gifs, const ComponentShapes& shapes, const Patch& p,
                                       std::size_t max_candidates) {
  if (p.tiles.empty()) throw std::invalid_argument("symmetry scan of an empty patch");
  SymmetryScan out;
  if (p.tiles.size() == 1) {
    out.message = "single tile: every translation holds vacuously";
    return out;
  }
  const double tol = kTol.geometric;
  double unit = std::numeric_limits<double>::infinity();
  for (const Tile& t : p.tiles) unit = std::min(unit, t.transform.scale());
  const double q = 1e-6 * unit;

  std::set<std::pair<long long, long long>> seen;
  std::vector<Point2> cands;
  for (const Tile& a : p.tiles) {
    for (const Tile& b : p.tiles) {
      if (&a == &b || a.component != b.component) continue;
      if (std::abs(a.transform.scale() - b.transform.scale()) > tol * a.transform.scale()) continue;
      if ((a.transform.ortho() - b.transform.ortho()).norm() > tol) continue;
      const Point2 v = as_point(b.transform.shift() - a.transform.shift());
      if (seen.insert({std::llround(v.x() / q), std::llround(v.y() / q)}).second) cands.push_back(v);
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Point2& a, const Point2& b) {
    const double na = a.norm(), nb = b.norm();
    if (std::abs(na - nb) > 1e-12 * std::max(na, nb)) return na < nb;
    return std::pair(a.x(), a.y()) < std::pair(b.x(), b.y());
  });
  if (cands.size() > max_candidates) cands.resize(max_candidates);

  const auto region = patch_union(gifs, shapes, p.theta, p.level_k);
  const TileLookup lookup(shapes, p);
  std::size_t rejected = 0;
  for (const Point2& v : cands) {
    TranslationCandidate c{v};
    const Similarity tau = translation(v);
    bool unmatched = false;
    for (const Tile& t : p.tiles) {
      const double reach = t.transform.scale() * shapes.radius(t.component) + region->accuracy();
      if (region->inner_distance(tile_anchor(shapes, t) + v) < reach) continue;
      ++c.interior;
      if (lookup.find(t.component, compose(tau, t.transform), tol) != nullptr) {
        ++c.matched;
      } else {
        unmatched = true;
        break;
      }
    }
    if (unmatched) {
      c.status = Verdict::pass;
      ++rejected;
    } else if (c.interior > 0 && 2 * c.interior >= p.tiles.size()) {
      c.status = Verdict::fail;
      out.survivors.push_back(v);
    }
    out.candidates.push_back(c);
  }
  if (!out.survivors.empty()) {
    out.verdict = Verdict::fail;
    out.message = fmt::format("{} translation(s) map the patch interior onto itself", out.survivors.size());
  } else if (rejected > 0) {
    out.verdict = Verdict::pass;
    out.message = fmt::format("all {} candidates rejected or too large to test ({} rejected)", cands.size(), rejected);
  } else {
    out.message = "no candidate could be tested on enough interior tiles";
  }
  return out;
}

RepetitivityResult repetitivity_radius(const Gifs& gifs, const ComponentShapes& shapes, const Patch& p,
                                       const TileAddress& center, double motif_radius, int grid) {
  const Tile* c = p.find(center);
  if (c == nullptr) throw std::invalid_argument("motif centre is not a tile of the patch");
  if (motif_radius < 0 || grid < 2) throw std::invalid_argument("bad repetitivity scan parameters");
  const double tol = kTol.geometric;
  RepetitivityResult out;
  const Point2 origin = tile_anchor(shapes, *c);
  std::vector<const Tile*> motif;
  for (const Tile& t : p.tiles) {
    const double r = (tile_anchor(shapes, t) - origin).norm();
    if (r > motif_radius) continue;
    motif.push_back(&t);
    out.motif_extent = std::max(out.motif_extent, r + t.transform.scale() * shapes.radius(t.component));
  }
  out.motif_tiles = motif.size();

  // A copy is an isometry taking the centre tile to a tile of the same
  // class and every motif tile onto a patch tile.
  const TileLookup lookup(shapes, p);
  const Similarity cinv = invert(c->transform);
  std::vector<Point2> centres;
  for (const Tile& u : p.tiles) {
    if (u.component != c->component) continue;
    if (std::abs(u.transform.scale() - c->transform.scale()) > tol * c->transform.scale()) continue;
    const Similarity g = compose(u.transform, cinv);
    const bool all = std::all_of(motif.begin(), motif.end(), [&](const Tile* m) {
      return lookup.find(m->component, compose(g, m->transform), tol) != nullptr;
    });
    if (all) centres.push_back(tile_anchor(shapes, u));
  }
  out.copies = centres.size();

  const auto region = patch_union(gifs, shapes, p.theta, p.level_k);
  const Box box = region->bbox();
  std::vector<std::pair<double, double>> samples;  // (depth inside, radius needed)
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const Point2 x(box.lo.x() + (ix + 0.5) * (box.hi.x() - box.lo.x()) / grid,
                     box.lo.y() + (iy + 0.5) * (box.hi.y() - box.lo.y()) / grid);
      const double b = region->inner_distance(x);
      if (b <= 0) continue;
      double h = std::numeric_limits<double>::infinity();
      for (const Point2& q : centres) h = std::min(h, (x - q).norm());
      samples.emplace_back(b, h + out.motif_extent);
    }
  }
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  // For R in (b_{i+1}, b_i] the balls to cover are the first i samples.
  double H = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    H = std::max(H, samples[i].second);
    if (H > samples[i].first) continue;
    const double next = i + 1 < samples.size() ? samples[i + 1].first : 0.0;
    const double R = std::max(H, next);
    if (!out.radius || R < *out.radius) out.radius = R;
  }
  if (out.radius) {
    out.message = fmt::format("R = {:.6g} from {} copies over a {}x{} grid", *out.radius, out.copies, grid, grid);
  } else {
    out.message = fmt::format("no ball inside the patch holds a copy ({} copies found)", out.copies);
  }
  return out;
}

FillingResult filling_heuristic(const Gifs& gifs, const ComponentShapes& shapes, const ThetaParam& theta, double R,
                                int max_k) {
  if (!(R > 0)) throw std::invalid_argument("filling radius must be positive");
  FillingResult out;
  const Point2 zero(0, 0);
  for (int k = 0; k <= max_k; ++k) {
    out.k_used = k;
    const auto region = patch_union(gifs, shapes, theta, k);
    out.inner_radius = region->inner_distance(zero);
    if (out.inner_radius - region->accuracy() >= R) {
      out.covered = true;
      out.message = fmt::format("ball of radius {} covered at k = {}", R, k);
      return out;
    }
  }
  out.message = fmt::format("depth cap {} reached; origin depth {:.6g} < {}", max_k, out.inner_radius, R);
  return out;
}

std::vector<Path> is_disjunctive_prefix(const Digraph& g, const ThetaParam& theta, int upto) {
  if (upto < 1) throw std::invalid_argument("upto must be at least 1");
  const auto n = static_cast<std::size_t>(upto);
  const std::size_t L = theta.cycle().size();
  const std::size_t length = theta.prefix().size() + L * (n / L + 2);
  std::vector<EdgeIndex> text;
  for (std::size_t i = 1; i <= length; ++i) text.push_back(theta.edge(i));
  std::set<std::vector<EdgeIndex>> factors;
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (std::size_t m = 1; m <= n && i + m <= text.size(); ++m) {
      factors.emplace(text.begin() + static_cast<std::ptrdiff_t>(i), text.begin() + static_cast<std::ptrdiff_t>(i + m));
    }
  }

  std::vector<std::vector<EdgeIndex>> in(static_cast<std::size_t>(g.vertex_count()) + 1);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) in[static_cast<std::size_t>(g.edge(e).head)].push_back(e);
  std::vector<Path> missing;
  // Reversed-graph words: each next edge must end where the previous began.
  std::vector<EdgeIndex> word;
  std::function<void()> extend = [&]() {
    if (!factors.count(word)) missing.push_back(Path{g.edge(word.front()).head, word});
    if (word.size() == n) return;
    for (EdgeIndex e : in[static_cast<std::size_t>(g.edge(word.back()).tail)]) {
      word.push_back(e);
      extend();
      word.pop_back();
    }
  };
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    word = {e};
    extend();
  }
  std::sort(missing.begin(), missing.end(), canonical_less);
  return missing;
}

}  // namespace gifstile
