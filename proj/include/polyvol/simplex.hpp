#pragma once

#include <vector>

#include "polyvol/rational.hpp"

namespace polyvol {

/// Small exact-arithmetic linear program solver (two-phase primal simplex
/// with Bland's rule, so it terminates without any tolerances).
/// Variables are implicitly nonnegative. Minimizes c.x subject to the rows.
namespace lp {

enum class Rel { le, ge, eq };

struct Row {
  std::vector<Rational> a;
  Rel rel;
  Rational b;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status;
  Rational value;            // objective at the optimum
  std::vector<Rational> x;   // primal point, empty unless optimal
};

Solution solve(const std::vector<Rational>& objective, const std::vector<Row>& rows);

}  // namespace lp

}  // namespace polyvol
