#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polyvol/polynomial.hpp"

namespace polyvol {

/// A monomial together with a variable order certifying its admissibility:
/// under the order x_{sigma[0]}, x_{sigma[1]}, ... the exponent vector is the
/// strict lexicographic maximum of the support, and its first coordinate in
/// that order is at least 1.
struct AdmissibleCertificate {
  ExponentVector alpha;
  std::vector<int> sigma;  // permutation of 1..n
};

/// All admissible monomials of p, each with the lexicographically smallest
/// witnessing permutation, sorted by graded-lex order of alpha.
/// Throws std::domain_error for zero or constant polynomials.
std::vector<AdmissibleCertificate> admissible_monomials(const SparsePolynomial& p);

/// Certificate for one monomial, or nullopt when alpha lies in the support
/// but no permutation witnesses it. Throws std::invalid_argument when alpha
/// is not in the support at all (a distinct failure mode).
std::optional<AdmissibleCertificate> is_admissible(const SparsePolynomial& p, const ExponentVector& alpha);

struct AdmissibleDegree {
  int value;                     // minimal |alpha| over admissible monomials
  AdmissibleCertificate argmin;  // graded-lex smallest attaining alpha
};

/// Minimal total degree over admissible monomials. Throws std::domain_error
/// when the admissible set is empty.
AdmissibleDegree admissible_degree(const SparsePolynomial& p);

/// Exponent pair (theta, tau) attached to a chain of length l and a monomial
/// of total degree s: theta = (1 - 2^{l-1}) / (2^{l-1} + s) and
/// tau = 2^{l-1} / (2^{l-1} + s).
std::pair<Rational, Rational> theta_tau(int l, int alpha_total);

}  // namespace polyvol
