#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gifstile/gifs.hpp"
#include "gifstile/point_index.hpp"

namespace gifstile {

struct AttractorApprox {
  int dim = 0;
  int iterations = 0;
  std::vector<Cloud> clouds;  // clouds[v - 1] approximates A_v
  // A single seed point x_i per vertex sits at the centre of a ball B_i of
  // radius r_i with F(B) inside B; seed_diameter = 2 max r_i.
  double seed_diameter = 0;
  double diameter_bound = 0;  // max_scale^k * seed_diameter
  // Extra Hausdorff error from voxel thinning, already contracted by later
  // rounds; zero when no thinning happened.
  double thinning_error = 0;
  // Spacing of the cloud: half-diagonal of the last thinning voxel, or
  // diameter_bound / 2 for an unthinned cloud.
  double resolution = 0;

  const Cloud& cloud(Vertex v) const { return clouds.at(static_cast<std::size_t>(v - 1)); }
  double error_bound() const { return diameter_bound + thinning_error; }
};

// Deterministic iteration X <- F(X) from one seed point per vertex. Clouds
// larger than points_per_component are thinned onto a voxel grid.
AttractorApprox attractor(const Gifs& gifs, int iterations, std::size_t points_per_component);

// Seed points (fixed point of the first shortest closed path at each vertex)
// and the invariant radii around them.
struct Seeds {
  std::vector<Vec> points;
  std::vector<double> radii;
};
Seeds attractor_seeds(const Gifs& gifs);

// One application of F to the clouds, without thinning.
std::vector<Cloud> apply_F(const Gifs& gifs, const std::vector<Cloud>& clouds);

// dH(F(X)_v, X_v) maximised over v, computed without materialising F(X):
// dist(p, f_e(X)) = scale(f_e) * dist(f_e^-1(p), X).
double self_consistency(const Gifs& gifs, const AttractorApprox& approx);

struct NonoverlapOptions {
  int samples = 10000;
  unsigned seed = 1;
  double threshold = 0.05;
  std::size_t points_per_component = std::size_t{1} << 18;
  int max_iterations = 60;
};

struct NonoverlapEstimate {
  double fraction = 0;
  double tolerance = 0;
  std::vector<std::string> warnings;
};

// Fraction of sampled points of A_v = U f_e(A_e+) lying within tolerance of
// at least two of the child images.
NonoverlapEstimate nonoverlap_estimate(const Gifs& gifs, Vertex v, const NonoverlapOptions& options = {});

// Attractor refined until thinning kicks in and the truncation error is below
// the voxel size; shared by the overlap and geometry code.
AttractorApprox saturated_attractor(const Gifs& gifs, std::size_t points_per_component, int max_iterations = 60);

}  // namespace gifstile
