#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "polyvol/polynomial.hpp"

using namespace polyvol;

namespace {
SparsePolynomial running_example() { return parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2); }
}  // namespace

TEST_CASE("terms are kept in graded-lex order with no zero coefficients") {
  SparsePolynomial p = running_example();
  CHECK(p.term_count() == 3);
  std::vector<ExponentVector> order;
  for (const auto& [a, c] : p.terms()) {
    order.push_back(a);
    CHECK_FALSE(c.is_zero());
  }
  CHECK(order[0] == ExponentVector{0, 2});
  CHECK(order[1] == ExponentVector{1, 3});
  CHECK(order[2] == ExponentVector{5, 0});

  p.set_coefficient({0, 2}, Rational(0));
  CHECK(p.term_count() == 2);
  CHECK(p.coefficient({0, 2}) == Rational(0));
}

TEST_CASE("degree and predicates") {
  CHECK(running_example().degree() == 5);
  CHECK_FALSE(SparsePolynomial(2).degree().has_value());
  CHECK(SparsePolynomial(2).is_zero());
  CHECK(SparsePolynomial::constant(2, Rational(3)).is_constant());
  CHECK_FALSE(running_example().is_constant());
  CHECK_THROWS_AS(SparsePolynomial(kMaxDimension + 1), std::invalid_argument);
}

TEST_CASE("parser grammar and positions") {
  CHECK(parse_polynomial("x1^2 + x2^2", 2).format() == "x1^2 + x2^2");
  CHECK(parse_polynomial("2*x2 - x1", 2).format() == "-x1 + 2*x2");
  CHECK(parse_polynomial("1/2*x1*x1", 1) == parse_polynomial("0.5*x1^2", 1));
  CHECK(parse_polynomial("3", 2) == SparsePolynomial::constant(2, Rational(3)));
  CHECK(parse_polynomial("x1 - x1", 1).is_zero());
  CHECK(parse_polynomial(" \t\n x1 \n+\n x2 ", 2) == parse_polynomial("x1+x2", 2));

  try {
    parse_polynomial("x1 +", 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(parse_polynomial("", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x3", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1^", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("2x1", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1^-2", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x0", 2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 + + x2", 2), ParseError);
}

TEST_CASE("format round trips through the parser") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    int dim = 1 + static_cast<int>(rng() % 4);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 6, 5);
    if (p.is_zero()) continue;
    CHECK(parse_polynomial(p.format(), dim) == p);
  }
  CHECK(SparsePolynomial(3).format() == "0");
}

TEST_CASE("ring operations agree with the reference arithmetic") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    int dim = 1 + static_cast<int>(rng() % 3);
    SparsePolynomial a = testoracle::random_poly(rng, dim, 5, 4);
    SparsePolynomial b = testoracle::random_poly(rng, dim, 5, 4);
    CHECK(testoracle::equal(testoracle::add(testoracle::from_sparse(a), testoracle::from_sparse(b)),
                            a + b));
    CHECK(testoracle::equal(testoracle::mul(testoracle::from_sparse(a), testoracle::from_sparse(b)),
                            a * b));
    CHECK(a - a == SparsePolynomial(dim));
    CHECK(a * b == b * a);
    CHECK((a + b).scaled(Rational(3)) == a.scaled(Rational(3)) + b.scaled(Rational(3)));
  }
}

TEST_CASE("partial derivatives match the reference implementation") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    int dim = 1 + static_cast<int>(rng() % 3);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 6, 5);
    for (int axis = 1; axis <= dim; ++axis)
      CHECK(testoracle::equal(testoracle::diff(testoracle::from_sparse(p), axis - 1),
                              p.partial_derivative(axis)));
  }
  CHECK_THROWS_AS(running_example().partial_derivative(3), std::invalid_argument);
}

TEST_CASE("jacobian chain of the running example") {
  SparsePolynomial p = running_example();
  auto qs = jacobian_chain(p, 2);
  REQUIRE(qs.size() == 3);
  CHECK(qs[0] == p);
  CHECK(qs[1] == parse_polynomial("5*x1^4 + x2^3", 2));
  CHECK(qs[2] == parse_polynomial("-45*x1^4*x2^2 + 3*x2^5 - 40*x1^3*x2", 2));

  auto ref = testoracle::chain(p, 2);
  for (int i = 0; i < 3; ++i) CHECK(testoracle::equal(ref[i], qs[i]));
}

TEST_CASE("jacobian chain of a product and of random polynomials") {
  auto qs = jacobian_chain(parse_polynomial("x1*x2", 2), 2);
  REQUIRE(qs.size() == 3);
  CHECK(qs[1] == parse_polynomial("x2", 2));
  CHECK(qs[2] == parse_polynomial("x2", 2));

  std::mt19937_64 rng(53);
  for (int i = 0; i < 20; ++i) {
    int dim = 2 + static_cast<int>(rng() % 2);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 4, 3);
    auto got = jacobian_chain(p, dim);
    auto ref = testoracle::chain(p, dim);
    REQUIRE(got.size() == ref.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(testoracle::equal(ref[k], got[k]));
  }

  CHECK_THROWS_AS(jacobian_chain(running_example(), 0), std::invalid_argument);
  CHECK_THROWS_AS(jacobian_chain(running_example(), 3), std::invalid_argument);
}

TEST_CASE("coefficient slices reassemble the polynomial") {
  std::mt19937_64 rng(71);
  for (int i = 0; i < 50; ++i) {
    int dim = 2 + static_cast<int>(rng() % 2);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 6, 4);
    for (int axis = 1; axis <= dim; ++axis) {
      int dmax = p.degree().value_or(0);
      SparsePolynomial rebuilt(dim);
      for (int k = 0; k <= dmax; ++k) {
        SparsePolynomial slice = coefficient_slice(p, axis, k);
        // lift the slice back by reinserting the axis with exponent k
        for (const auto& [a, c] : slice.terms()) {
          ExponentVector b(dim);
          for (int j = 0, src = 0; j < dim; ++j) b[j] = (j == axis - 1) ? k : a[src++];
          rebuilt.set_coefficient(b, rebuilt.coefficient(b) + c);
        }
      }
      CHECK(rebuilt == p);
    }
  }
}

TEST_CASE("evaluation paths agree") {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    int dim = 1 + static_cast<int>(rng() % 3);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 6, 5);
    EvalPlan plan(p);
    for (int s = 0; s < 10; ++s) {
      std::vector<double> x(dim);
      std::vector<Rational> xr(dim);
      for (int d = 0; d < dim; ++d) {
        x[d] = u(rng);
        xr[d] = Rational::from_double(x[d]);
      }
      double direct = p.evaluate(x);
      double exact = p.evaluate_exact(xr).to_double();
      double planned = plan(x);
      CHECK(direct == doctest::Approx(exact).epsilon(1e-10));
      CHECK(planned == doctest::Approx(exact).epsilon(1e-10));
    }
  }
}
