#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polyvol/admissible.hpp"
#include "polyvol/newton.hpp"
#include "polyvol/polynomial.hpp"

namespace polyvol {

/// A predicted bound shape: exact exponents, the explicitly known coefficient
/// factor, and a validity region. The overall constant is left to be fitted
/// against measurements when constant_fitted is set.
struct BoundPrediction {
  enum class Kind { volume, integrability, oscillatory };

  Kind kind = Kind::volume;
  int dimension = 0;
  Rational delta_exponent;                          // volume shapes
  std::optional<Rational> secondary_delta_exponent; // extra additive term
  Rational r_exponent;
  std::optional<Rational> lambda_exponent;          // oscillatory shapes
  double known_factor = 1.0;
  bool constant_fitted = true;
  /// Validity region r > constraint_m * delta^{constraint_delta_power};
  /// absent power means every r, delta > 0 is allowed.
  double constraint_m = 1.0;
  std::optional<Rational> constraint_delta_power;
  std::string constraint_text;
  std::string source;                               // role tag for reports
  std::optional<Rational> theta, tau;
  std::optional<ExponentVector> alpha;
  std::optional<int> chain_length;

  bool in_validity_region(double r, double delta) const;
  /// The bound with the fitted constant set to 1. For volume shapes:
  /// known_factor * delta^de * r^re, plus (known_factor * delta^de)^n when a
  /// secondary exponent is present.
  double shape(double delta, double r) const;
};

/// Minimum of f(x) = a_1/x_1 + a_2 x_1/x_2 + ... + a_n x_1...x_{n-1}/x_n
/// + x_n^{1/l} over the positive orthant, in closed form.
struct AmgmResult {
  double min_value;
  std::vector<double> argmin;
  double cnl;   // the constant depending only on (n, l)
  double phi;   // weighted product of the a_i
};

AmgmResult amgm_minimize(const std::vector<double>& a, int l);
/// The objective above, for cross-checking the closed form.
double amgm_objective(const std::vector<double>& a, int l, const std::vector<double>& x);

/// Tube-style volume bound driven by one admissible monomial:
/// shape mu(alpha) * delta^{1/|alpha|} * r^{n-1} + (mu(alpha) * delta^{1/|alpha|})^n
/// with mu(alpha) = 4 / |a_alpha|^{1/|alpha|}. Valid for all r, delta > 0.
BoundPrediction admissible_tube_bound(const SparsePolynomial& p, const AdmissibleCertificate& cert);

/// Refined volume bound from the Jacobian chain of length l:
/// shape delta^tau * r^{n-1+theta} where (theta, tau) come from the chain tail's
/// admissible-degree minimizer (overridable), valid for
/// r > M * delta^{|alpha|/(|alpha|+1)} with M a fitted parameter (default 1).
/// Requires the chain tail Q_{l+1} to be nonconstant.
BoundPrediction chain_volume_bound(const SparsePolynomial& p, int l,
                                   std::optional<ExponentVector> alpha_choice = std::nullopt);

/// Degree-only baseline: delta^{1/d} * r^{n-1} with known factor
/// 1/(alpha! * |a_alpha|)^{1/d} for a graded-lex smallest top-degree alpha.
BoundPrediction degree_baseline_bound(const SparsePolynomial& p);

/// Integrability-index bracket and the growth exponents of integrals of
/// |P|^{-mu} over boxes of radius r.
struct ChainIndexBound {
  int l;
  ExponentVector alpha;  // chosen monomial of the chain tail
  Rational theta, tau;
};

struct IntegrabilityBounds {
  int dimension = 0;
  int ad = 0;
  ExponentVector ad_alpha;
  Rational lower_ad;                    // 1/ad, lower bound on the index
  std::vector<ChainIndexBound> chain_bounds;
  std::optional<ChainIndexBound> best_chain;  // maximal tau
  Rational nd;                          // support-hull distance
  bool gradient_vanishes = false;
  std::optional<Rational> upper_nd;     // 1/nd, only meaningful when gradient_vanishes
  std::string note;

  /// r-growth exponent n - mu * ad of the volume-driven integral bound.
  double growth_volume(double mu) const;
  /// The two chain-driven r-growth exponents, n - mu(s+1)/s and
  /// n + theta - tau/mu with s = |alpha|; absent without a feasible chain.
  std::optional<std::pair<double, double>> growth_chain(double mu) const;
};

IntegrabilityBounds integrability_bounds(const SparsePolynomial& p);

/// Decay prediction |I_r(lambda)| <= C r^{n-1} |lambda|^{-1/ad}, with the
/// degree-only comparator -1/deg alongside.
struct OscillatoryBound {
  BoundPrediction bound;
  Rational baseline_lambda_exponent;
  int ad = 0;
  int degree = 0;
};

OscillatoryBound oscillatory_decay_bound(const SparsePolynomial& p);

}  // namespace polyvol
