#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyvol/bounds.hpp"
#include "polyvol/polynomial.hpp"

namespace polyvol {

/// One Monte Carlo volume measurement of {|P| <= delta} inside the box of
/// radius r. `reliable` marks cells with at least 100 hits; anything sparser
/// has too much relative error for log-linear fits.
struct VolumeEstimate {
  double delta = 0.0;
  double r = 0.0;
  double volume_estimate = 0.0;
  double standard_error = 0.0;
  long hit_count = 0;
  long samples = 0;
  bool reliable = false;
};

struct ScanConfig {
  std::vector<double> delta_grid;  // strictly increasing, positive
  std::vector<double> r_grid;      // strictly increasing, positive
  long samples_per_cell = 1000000;
  uint64_t seed = 0;
};

enum class ScanAxis { delta, r };

struct ScanFit {
  std::string axis;  // "delta" or "r"
  double exponent = 0.0;
  double exponent_se = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double constant = 0.0;
  int points = 0;
};

/// Cells are laid out with delta as the outer loop and r as the inner loop,
/// so cell (i, j) sits at index i * r_grid.size() + j. Identical config and
/// seed reproduce the cells bit for bit at any thread count.
struct ScanResult {
  ScanConfig config;
  std::vector<VolumeEstimate> cells;
  std::optional<ScanFit> fitted;  // present when exactly one axis varies and fits
};

/// Uniform sampling of the box [-r, r]^n; a hit is |P(x)| <= delta.
/// Estimate = (2r)^n times the hit fraction; the standard error is the
/// binomial one scaled the same way.
VolumeEstimate estimate_sublevel_volume(const SparsePolynomial& p, double delta, double r,
                                        long samples, uint64_t seed, int threads = 0);

/// Stream-addressed variant used by composite experiments: cell
/// (stream_i, stream_j) draws from its own substream of the seed, keeping
/// sample k of every cell fixed at any thread count.
VolumeEstimate estimate_sublevel_volume(const SparsePolynomial& p, double delta, double r,
                                        long samples, uint64_t seed, uint32_t stream_i,
                                        uint32_t stream_j, int threads);

ScanResult volume_scan(const SparsePolynomial& p, const ScanConfig& config, int threads = 0);

/// Weighted log-log regression of volume on the chosen axis over reliable
/// cells; the other axis must be a single grid value. Throws when fewer than
/// 4 reliable cells remain.
ScanFit fit_scaling(const ScanResult& result, ScanAxis axis);

/// Comparison of measurements against a predicted volume bound. The single
/// unknown constant is fitted as the max of estimate / shape over reliable
/// cells inside the validity region; a violation is an empirical delta
/// exponent whose upper confidence end sits below the predicted one.
struct TightnessReport {
  double fitted_constant = 0.0;
  VolumeEstimate constant_cell;            // where the max ratio is attained
  std::optional<ScanFit> delta_fit;        // measured scaling, when computable
  std::vector<std::string> violations;     // empty means consistent
  std::string comparison;
};

TightnessReport bound_tightness(const SparsePolynomial& p, const BoundPrediction& prediction,
                                const ScanResult& result);

/// Sup-norm doubling check: with Omega the box of radius r and omega the
/// centered sub-box of volume fraction * vol(Omega),
///   sup_Omega |P| <= (4n / fraction)^deg * sup_omega |P|
/// with both sups taken over inclusive lattices of about `samples` points.
/// `seed` is accepted for interface stability and currently unused.
struct RemezReport {
  double lhs = 0.0;     // sup over the full box
  double rhs = 0.0;     // factor times sup over the sub-box
  double factor = 0.0;  // (4n / fraction)^deg
  int degree = 0;
  bool satisfied = false;  // lhs <= rhs with a 1% allowance
};

RemezReport remez_check(const SparsePolynomial& p, double r, double omega_fraction,
                        long samples = 100000, uint64_t seed = 0);

/// The built-in degenerate example (x2 - x1^3)^2 + (x1 - x2^3)^2, whose
/// sublevel volume stops growing once the box covers the full zero set.
SparsePolynomial degenerate_polynomial();

/// Product scan of the degenerate example plus two summaries: the delta
/// exponent nu measured at the smallest r, and the log-log slope across
/// r >= 3 at the comparison delta, which is the smallest delta where every
/// such cell is reliable (near-zero slope means the box no longer matters).
struct DegenerateScanReport {
  ScanResult scan;
  std::optional<ScanFit> delta_fit;        // nu = delta_fit->exponent
  std::optional<double> comparison_delta;  // absent when no row is fully reliable
  std::optional<double> r_slope;
  bool r_independent = false;              // |r_slope| <= 0.1
  std::optional<bool> r_cells_agree;       // pairwise 3-sigma agreement
};

DegenerateScanReport degenerate_scenario_scan(const ScanConfig& config, int threads = 0);

/// Whitespace-separated columns (delta, r, estimate, stderr, hits) with a
/// '#' header line, one row per cell.
std::string scan_columns(const ScanResult& result);

}  // namespace polyvol
