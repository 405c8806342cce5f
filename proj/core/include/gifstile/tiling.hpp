#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gifstile/gifs.hpp"
#include "gifstile/pretree.hpp"
#include "gifstile/theta.hpp"

namespace gifstile {

// Tile k.sigma, with sigma a forward path from v_k.
struct TileAddress {
  int k = 0;
  Path sigma;

  friend bool operator==(const TileAddress&, const TileAddress&) = default;
  friend bool operator<(const TileAddress& a, const TileAddress& b) {
    if (a.k != b.k) return a.k < b.k;
    if (a.sigma.edges != b.sigma.edges) return a.sigma.edges < b.sigma.edges;
    return a.sigma.start < b.sigma.start;
  }
};

struct Tile {
  TileAddress address;  // canonical
  Similarity transform;  // f_{theta|k} o f_sigma
  Vertex component = 0;  // sigma+
  // d(sigma) - d(theta|k), so that scale(transform) = s^exponent. Set when
  // the GIFS is balanced-capable.
  std::optional<long long> scale_exponent;
};

struct Patch {
  ThetaParam theta;
  SequenceKind kind;
  int level_k = 0;
  std::vector<Tile> tiles;  // sorted by address

  // nullptr if absent.
  const Tile* find(const TileAddress& a) const;
};

// Cancel leading edges shared with theta: while k > 0 and sigma starts with
// theta_k, drop both.
TileAddress canonical_address(const ThetaParam& theta, int k, const Path& sigma);

// f_{theta|k} o f_sigma for an arbitrary (not necessarily canonical) address.
Similarity tile_transform(const Gifs& gifs, const ThetaParam& theta, const TileAddress& a);

Tile make_tile(const Gifs& gifs, const ThetaParam& theta, int k, const Path& sigma);

// T(theta, S, k): one tile per member of S_k.
Patch patch(const Gifs& gifs, const ThetaParam& theta, const SequenceKind& kind, int k);

struct NestingCheck {
  bool ok = true;
  std::optional<TileAddress> missing;
  std::string message;
};

// Every tile of `small` must occur, by canonical address and transform, in
// `big`. Throws std::invalid_argument unless the patches share theta and kind
// and big is exactly one level deeper.
NestingCheck patch_nesting_check(const Patch& small, const Patch& big, double tol = kTol.geometric);

// s^j B_i: the children f_e(A_e+) of component i, scaled by s^j about the
// origin. Addresses are (0, e).
std::vector<Tile> basic_subdivision(const Gifs& gifs, Vertex i, int j);

struct SubdivisionReport {
  std::size_t present = 0;     // high-level tile also in the low patch
  std::size_t subdivided = 0;  // high-level tile = union of its children
  std::vector<std::size_t> group_sizes;
  std::vector<TileAddress> unclassified;
  bool low_tiles_covered = true;  // every low tile accounted for
  bool ok() const { return unclassified.empty() && low_tiles_covered; }
};

// Matches the tiles of a coarser hierarchy level against a finer one at the
// same k: each coarse tile is either a fine tile or exactly one basic
// subdivision worth of fine tiles. Throws std::invalid_argument for
// mismatched theta or k.
SubdivisionReport find_basic_subdivisions(const Gifs& gifs, const Patch& fine, const Patch& coarse,
                                          double tol = kTol.geometric);

// W(T_1): the level-1 S-form hierarchy patch at depth k moved by
// f_{theta_1}. Tiles are addressed relative to w(theta) at level k - 1 and the
// patch is tagged balanced, the kind it should coincide with; k = 0 gives an
// empty patch.
Patch shift_W(const Gifs& gifs, const ThetaParam& theta, int k);

struct TileMismatch {
  std::optional<TileAddress> address;
  std::string message;
};

// Tile-for-tile equality: same addresses, transforms approx_eq at tol.
std::optional<TileMismatch> compare_patches(const Patch& a, const Patch& b, double tol = kTol.geometric);

struct CensusClass {
  Vertex component = 0;
  std::optional<long long> scale_exponent;
  double scale = 0;
  std::size_t count = 0;
  TileAddress representative;
};

struct Census {
  std::vector<CensusClass> classes;
  std::size_t distinct_scales = 0;
  long long class_bound = 0;  // n * d_max
  long long scale_bound = 0;  // d_max
};

// Groups by (component, scale exponent), or by (component, scale within
// relative tol) when no exponents are available.
Census congruence_census(const Gifs& gifs, const Patch& p, double tol = kTol.geometric);

}  // namespace gifstile
