#pragma once

#include <vector>

#include "polyvol/polynomial.hpp"

namespace polyvol {

/// Dense univariate polynomials with rational coefficients, ascending order,
/// no trailing (leading-degree) zeros. Empty vector = zero polynomial.
using RatPoly = std::vector<Rational>;

RatPoly rat_poly_trim(RatPoly c);
RatPoly rat_poly_derivative(const RatPoly& c);
/// Quotient and remainder with exact arithmetic; divisor must be nonzero.
std::pair<RatPoly, RatPoly> rat_poly_divmod(const RatPoly& a, const RatPoly& b);
/// Monic gcd by the Euclidean algorithm.
RatPoly rat_poly_gcd(RatPoly a, RatPoly b);
/// p / gcd(p, p'): same real roots, all simple.
RatPoly square_free_part(const RatPoly& c);

/// All real roots of the (exact) polynomial in [lo, hi], each within tol,
/// sorted ascending. Square-free reduction happens first, so multiple roots
/// are found once. Throws on the zero polynomial or an empty interval.
std::vector<double> real_roots_in(const RatPoly& c, double lo, double hi, double tol);

/// Same, for a one-variable SparsePolynomial.
std::vector<double> univariate_real_roots(const SparsePolynomial& q, double lo, double hi, double tol);

/// Dense rational coefficients of a one-variable SparsePolynomial.
RatPoly dense_coefficients(const SparsePolynomial& q);

}  // namespace polyvol
