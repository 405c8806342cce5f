#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gifstile/geometry.hpp"
#include "gifstile/gifs.hpp"
#include "gifstile/theta.hpp"
#include "gifstile/tiling.hpp"

namespace gifstile {

enum class Verdict { pass, fail, inconclusive };
const char* to_string(Verdict v);

// Uniform result shape for the checks: {check, verdict, witness?, diagnostics[]}.
struct Report {
  Report() = default;
  explicit Report(std::string name) : check(std::move(name)) {}

  std::string check;
  Verdict verdict = Verdict::inconclusive;
  nlohmann::ordered_json witness;  // null when there is none
  std::vector<std::string> diagnostics;
};
nlohmann::ordered_json to_json(const Report& r);

// gcd of closed-path d-values is 1. Requires a balanced-capable GIFS.
bool is_coprime(const Gifs& gifs);

enum class TriangleVerdict { proved_via_coprime, unknown };
const char* to_string(TriangleVerdict v);
// Only the coprime sufficient condition is decided.
TriangleVerdict triangle_property_holds(const Gifs& gifs);

struct EquivalenceWitness {
  long long K = 0;
  long long K_prime = 0;
  ThetaParam common_tail;  // w^K(theta) = w^K'(theta')
};

// Smallest (by K + K', then K) pair with d(theta|K) = d(theta'|K') and equal
// tails, or nullopt. Exact: the admissible pairs form finitely many
// arithmetic progressions which are solved directly. Throws
// std::invalid_argument if the parameters belong to different graphs.
std::optional<EquivalenceWitness> params_equivalent(const Digraph& g, const ThetaParam& a, const ThetaParam& b);

// Throws std::invalid_argument if the witness does not relate a and b.
void check_witness(const Digraph& g, const ThetaParam& a, const ThetaParam& b, const EquivalenceWitness& w);

// f_{theta'|K'} o f_{theta|K}^-1. Throws ContractViolation if it is not an
// isometry.
Similarity congruence_isometry(const Gifs& gifs, const ThetaParam& a, const ThetaParam& b,
                               const EquivalenceWitness& w);

struct CongruenceCheck {
  std::size_t tiles = 0;
  std::size_t target_tiles = 0;
  std::size_t mismatches = 0;
  std::optional<TileAddress> first_mismatch;
  std::string message;
  bool ok() const { return mismatches == 0 && tiles == target_tiles; }
};

// Maps every tile of patch(a, kind, k) by the congruence isometry and looks
// it up in patch(b, kind, k + K' - K) by canonical address. Needs k >= K.
CongruenceCheck congruence_mapping_check(const Gifs& gifs, const ThetaParam& a, const ThetaParam& b,
                                         const EquivalenceWitness& w, const SequenceKind& kind, int k);

struct SelfSimilarTile {
  TileAddress tile;
  Verdict verdict = Verdict::inconclusive;
  std::size_t cover_size = 0;
  double residual = 0;  // Hausdorff distance between the cloud images
  double bound = 0;
  std::string message;
};

struct SelfSimilarReport {
  Similarity phi;
  double ratio = 0;
  int deep_level = 0;  // level of the patch holding the covers
  std::vector<SelfSimilarTile> tiles;
  bool all_pass() const;
};

struct SelfSimilarOptions {
  bool geometric = true;
  std::size_t points_per_component = std::size_t{1} << 12;
};

// phi = f_{theta|p+L} o f_{theta|p}^-1 for prefix length p and cycle length
// L. Each tile of the level-k balanced patch is lifted to level max(k, p);
// its image under phi must be exactly the union of deeper balanced tiles.
SelfSimilarReport verify_self_similar(const Gifs& gifs, const ThetaParam& theta, int k,
                                      const SelfSimilarOptions& options = {});

struct TranslationCandidate {
  Point2 v;
  Verdict status = Verdict::inconclusive;  // fail = survives (a symmetry)
  std::size_t interior = 0;
  std::size_t matched = 0;
};

struct SymmetryScan {
  std::vector<TranslationCandidate> candidates;
  std::vector<Point2> survivors;
  Verdict verdict = Verdict::inconclusive;  // pass = no symmetry found
  std::string message;
};

// Candidate translations are displacements between tiles with equal shape
// and orientation. A candidate is rejected when some tile whose translate
// stays inside the patch has no matching tile; it survives when every such
// tile matches and they make up at least half the patch.
SymmetryScan translation_symmetry_scan(const Gifs& gifs, const ComponentShapes& shapes, const Patch& p,
                                       std::size_t max_candidates = 200);

struct RepetitivityResult {
  std::optional<double> radius;
  std::size_t motif_tiles = 0;
  std::size_t copies = 0;
  double motif_extent = 0;
  std::string message;
};

// Smallest R such that every R-ball inside the patch union holds a congruent
// copy of the motif (tiles anchored within motif_radius of the centre tile).
// Balls are scanned on a grid of grid x grid centres.
RepetitivityResult repetitivity_radius(const Gifs& gifs, const ComponentShapes& shapes, const Patch& p,
                                       const TileAddress& center, double motif_radius, int grid = 160);

struct FillingResult {
  bool covered = false;
  int k_used = 0;
  double inner_radius = 0;  // distance from the origin to the boundary at k_used
  std::string message;
};

// Grows k until the origin lies at depth >= R inside f_{theta|k}(A_{v_k}),
// which is the union of every level-k patch whatever the sequence kind.
FillingResult filling_heuristic(const Gifs& gifs, const ComponentShapes& shapes, const ThetaParam& theta, double R,
                                int max_k = 40);

// Reversed-graph words of length 1..upto that are not factors of theta
// (prefix followed by enough cycle periods). Words are returned as forward
// edge lists with start = head of the first edge, in canonical order.
std::vector<Path> is_disjunctive_prefix(const Digraph& g, const ThetaParam& theta, int upto);

}  // namespace gifstile
