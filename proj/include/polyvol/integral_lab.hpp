#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polyvol/bounds.hpp"
#include "polyvol/polynomial.hpp"
#include "polyvol/roots.hpp"

namespace polyvol {

/// Quadrature value of the phase integral over [-r, r]^n of e^{i lambda P}.
/// `converged` is unset when the doubling refinement hit the node budget
/// before two successive values agreed to the requested relative error.
struct OscillatoryValue {
  std::complex<double> value{0.0, 0.0};
  bool converged = false;
  long nodes = 0;  // nodes spent across all refinement rounds
};

/// Tensor Gauss-Legendre panels, per-axis panel counts scaled with
/// 1 + |lambda| r G_i / (2 pi) where G_i bounds |dP/dx_i| on the box, then
/// doubled until the value stabilizes. Dimension at most 3.
OscillatoryValue oscillatory_integral(const SparsePolynomial& p, double lambda, double r,
                                      double target_rel_err);

/// |I_r(lambda)| over a log-spaced grid plus an upper-envelope decay fit.
/// Unconverged cells are kept in the arrays but excluded from the envelope.
struct DecayScanResult {
  std::vector<double> lambda_grid;
  std::vector<std::complex<double>> values;
  std::vector<double> magnitudes;
  std::vector<bool> converged;
  std::vector<double> envelope_lambda, envelope_magnitude;
  double envelope_exponent = 0.0;
  double exponent_se = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 95% interval on the envelope exponent
};

DecayScanResult decay_scan(const SparsePolynomial& p, double r,
                           const std::vector<double>& lambda_grid, double target_rel_err);

/// One sublevel-volume measurement at a threshold level.
struct LevelCell {
  double delta = 0.0;
  double volume = 0.0;
  double standard_error = 0.0;
  long hit_count = 0;
  bool reliable = false;  // at least 100 hits
};

/// Volume measurements at thresholds log-spaced from the coefficient-sum
/// bound on sup |P| down through seven decades. Shared across exponents mu,
/// which only reweight the same level data.
struct LevelProfile {
  double r = 0.0;
  double sup_bound = 0.0;
  long samples_per_level = 0;
  std::vector<LevelCell> cells;  // delta descending
};

LevelProfile compute_level_profile(const SparsePolynomial& p, double r, int levels, uint64_t seed,
                                   long samples_per_level, int threads = 0);

/// Layer-cake value of the integral of |P|^{-mu} over the box: exact top
/// piece above the sup bound, trapezoid in log delta across reliable levels,
/// and a power-law tail fitted on the deepest levels. The tail slope sigma
/// decides the verdict: divergent unless sigma exceeds mu by 1.645 standard
/// errors.
struct SingularIntegralResult {
  double mu = 0.0;
  double r = 0.0;
  std::optional<double> value;  // absent means divergent
  bool divergent = false;
  int levels_used = 0;          // reliable levels entering the body
  double tail_exponent = 0.0;   // fitted sigma
  double tail_exponent_se = 0.0;
  std::string verdict_basis;
  std::vector<LevelCell> levels;
};

SingularIntegralResult singular_integral(const SparsePolynomial& p, double mu, double r,
                                         int levels, uint64_t seed,
                                         long samples_per_level = 1000000, int threads = 0);

/// The mu-dependent assembly step, exposed so scans can reuse one profile.
SingularIntegralResult assemble_singular_integral(const LevelProfile& profile, double mu);

/// Transition search: verdicts per mu at the smallest box radius, growth in
/// r for the finite verdicts, and the comparison against the theoretical
/// index bracket. A flag records any verdict that contradicts the bracket
/// even at three standard errors of the tail slope.
struct MuVerdict {
  double mu = 0.0;
  bool divergent = false;
  std::optional<double> value;      // at the smallest r
  double tail_exponent = 0.0;
  double tail_exponent_se = 0.0;
  std::optional<double> r_growth;   // log-log slope of value across finite r cells
};

struct IntegrabilityScan {
  IntegrabilityBounds bounds;
  std::vector<MuVerdict> verdicts;
  std::optional<double> largest_finite_mu;
  std::optional<double> smallest_divergent_mu;
  double theoretical_lower = 0.0;            // max(1/ad, best chain tau)
  std::optional<double> theoretical_upper;   // 1/ND when the gradient vanishes at 0
  std::vector<std::string> flags;
};

IntegrabilityScan integrability_scan(const SparsePolynomial& p, const std::vector<double>& mu_grid,
                                     const std::vector<double>& r_grid, uint64_t seed,
                                     int levels = 16, long samples_per_level = 1000000,
                                     int threads = 0);

/// Oscillatory integral of e^{i f(t)} for an exact univariate phase, with the
/// derivative floor |f^(k)| >= gamma verified by root isolation before any
/// quadrature runs. The recorded product |integral| * gamma^{1/k} stays
/// bounded when the floor hypothesis does.
struct VdcResult {
  std::complex<double> value{0.0, 0.0};
  double magnitude = 0.0;
  double product = 0.0;  // magnitude * gamma^{1/k}
  bool converged = false;
};

VdcResult vdc_diagnostic(const RatPoly& f, int k, const Rational& gamma, double lo, double hi,
                         double target_rel_err = 1e-8);

}  // namespace polyvol
