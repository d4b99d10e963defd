#pragma once

#include <cstdint>
#include <vector>

#include "polyvol/admissible.hpp"
#include "polyvol/polynomial.hpp"

namespace polyvol {

/// The nested varieties attached to an admissible certificate. Coordinates
/// are permuted by the witness order sigma, so position j holds the original
/// variable x_{sigma[j-1]}. Level k (1-based) lives in R^{n-k+1} and consists
/// of the trailing coordinates; its set is the zero locus of the product of
/// `factors`. Level 1 is cut out by the first-variable derivative of the
/// reordered polynomial; level k >= 2 by slice_{k-1} * d(slice_{k-1})/d(first).
struct ChainDescription {
  std::vector<int> order;                 // witness permutation, 1-based images
  SparsePolynomial reordered;             // p in the permuted coordinates
  std::vector<SparsePolynomial> slices;   // successive leading-coefficient extractions

  struct Level {
    int index;        // 1-based
    int ambient_dim;
    std::vector<SparsePolynomial> factors;
  };
  std::vector<Level> levels;
  /// Indices of levels whose defining product is nonconstant: exactly the
  /// ones cutting out proper, possibly nonempty varieties worth measuring.
  std::vector<int> active;
};

ChainDescription build_chain(const SparsePolynomial& p, const AdmissibleCertificate& cert);

/// Upper bound on the distance from x to the zero set of `defining`:
/// the nearest axis-parallel restriction root within 2*box_radius, improved
/// by damped Newton descent (up to `iterations` steps, zero accepted when
/// |defining| < 1e-10). +infinity when nothing is found.
double distance_upper_bound(const std::vector<double>& x, const SparsePolynomial& defining,
                            double box_radius, int iterations = 200);

struct LojaConfig {
  long samples = 10000;
  double box_radius = 2.0;
  uint64_t seed = 42;
  int descent_iterations = 200;
  int threads = 0;
};

/// One-sided sampling verdicts for the distance inequality
/// d(x, union of varieties) <= mu(alpha) |P(x)|^{1/|alpha|}. The measured
/// distance is only an upper bound, so points are either confirmed or
/// inconclusive; there is no falsified state.
struct LojaReport {
  long samples = 0;
  long confirmed = 0;
  long inconclusive = 0;
  double max_confirmed_ratio = 0.0;  // d_hat / |P|^{1/|alpha|} over confirmed points
  double mu_alpha = 0.0;
};

LojaReport lojasiewicz_check(const SparsePolynomial& p, const AdmissibleCertificate& cert,
                             const LojaConfig& config);

/// Random monic polynomials of the given degree keep
/// 2^{2d-1} * max_{[0,1]} |q| at or above 1 (a classical floor). Returns the
/// smallest observed product and the coefficients attaining it.
struct ChebyshevFloorResult {
  double min_product = 0.0;
  std::vector<double> worst_coefficients;  // ascending, leading 1 included
};

ChebyshevFloorResult chebyshev_floor_check(int degree, long trials, uint64_t seed);

/// The scaled sup-norm 2^{2d-1} * max_{[0,1]} |q| for given ascending
/// coefficients, evaluated on a uniform grid.
double chebyshev_product(const std::vector<double>& coefficients, int grid_points = 10000);

}  // namespace polyvol
