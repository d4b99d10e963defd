#pragma once

#include <utility>
#include <vector>

#include "polyvol/polynomial.hpp"

namespace polyvol {

/// The distance invariant of the unbounded convex hull spanned by the support:
/// the smallest t such that the diagonal point (t, ..., t) lies in
/// conv(union over support alpha of (alpha + R_+^n)).
struct NewtonDistance {
  Rational value;
  /// Convex weights on support points realizing the optimum (nonzero ones).
  std::vector<std::pair<ExponentVector, Rational>> weights;
  /// The convex combination y = sum lambda * alpha; max coordinate equals value.
  std::vector<Rational> combination;
  /// Set for constant polynomials, where the distance is trivially 0.
  bool degenerate = false;
};

/// Exact distance via a rational-arithmetic LP. Throws std::domain_error for
/// the zero polynomial.
NewtonDistance newton_distance(const SparsePolynomial& p);

/// Whether the given point lies in the support hull described above.
/// The double overload converts coordinates exactly and so answers for the
/// nearest representable point.
bool newton_membership(const SparsePolynomial& p, const std::vector<double>& point);
bool newton_membership_exact(const SparsePolynomial& p, const std::vector<Rational>& point);

}  // namespace polyvol
