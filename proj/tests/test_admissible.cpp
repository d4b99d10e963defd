#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "polyvol/admissible.hpp"

using namespace polyvol;

namespace {
SparsePolynomial running_example() { return parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2); }
}  // namespace

TEST_CASE("admissible set of the running example") {
  auto certs = admissible_monomials(running_example());
  REQUIRE(certs.size() == 2);
  CHECK(certs[0].alpha == ExponentVector{1, 3});
  CHECK(certs[0].sigma == std::vector<int>{2, 1});
  CHECK(certs[1].alpha == ExponentVector{5, 0});
  CHECK(certs[1].sigma == std::vector<int>{1, 2});

  AdmissibleDegree ad = admissible_degree(running_example());
  CHECK(ad.value == 4);
  CHECK(ad.argmin.alpha == ExponentVector{1, 3});
}

TEST_CASE("membership probe distinguishes failure modes") {
  SparsePolynomial p = running_example();
  auto yes = is_admissible(p, {5, 0});
  REQUIRE(yes.has_value());
  CHECK(yes->sigma == std::vector<int>{1, 2});
  // in the support but lex-dominated under every order
  CHECK_FALSE(is_admissible(p, {0, 2}).has_value());
  // not in the support at all
  CHECK_THROWS_AS(is_admissible(p, {2, 2}), std::invalid_argument);
}

TEST_CASE("simple shapes") {
  auto certs = admissible_monomials(parse_polynomial("x1^2 + x2^2", 2));
  REQUIRE(certs.size() == 2);
  CHECK(certs[0].alpha == ExponentVector{0, 2});
  CHECK(certs[1].alpha == ExponentVector{2, 0});
  CHECK(admissible_degree(parse_polynomial("x1^2 + x2^2", 2)).value == 2);

  // a variable that never appears cannot head a witnessing order
  auto only_x1 = admissible_monomials(parse_polynomial("x1^3", 2));
  REQUIRE(only_x1.size() == 1);
  CHECK(only_x1[0].alpha == ExponentVector{3, 0});
  CHECK(only_x1[0].sigma[0] == 1);

  CHECK(admissible_degree(parse_polynomial("x1", 1)).value == 1);
  CHECK_THROWS_AS(admissible_monomials(SparsePolynomial::constant(2, Rational(5))),
                  std::domain_error);
  CHECK_THROWS_AS(admissible_monomials(SparsePolynomial(2)), std::domain_error);
}

TEST_CASE("every nonconstant polynomial has an admissible monomial") {
  std::mt19937_64 rng(101);
  int tested = 0;
  while (tested < 1000) {
    int dim = 1 + static_cast<int>(rng() % 4);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 6, 5);
    if (p.is_constant()) continue;
    ++tested;
    auto certs = admissible_monomials(p);
    CHECK_FALSE(certs.empty());
    AdmissibleDegree ad = admissible_degree(p);
    CHECK(ad.value <= p.degree().value());
    CHECK(ad.value >= 1);
    // each certificate really is a strict sigma-lex maximum with a leading exponent
    for (const auto& cert : certs) {
      CHECK(cert.alpha[cert.sigma[0] - 1] >= 1);
      for (const auto& [beta, c] : p.terms()) {
        if (beta == cert.alpha) continue;
        bool dominated = false;
        for (int k : cert.sigma) {
          if (cert.alpha[k - 1] != beta[k - 1]) {
            dominated = cert.alpha[k - 1] > beta[k - 1];
            break;
          }
        }
        CHECK(dominated);
      }
    }
  }
}

TEST_CASE("admissibility is invariant under relabeling and scaling") {
  std::mt19937_64 rng(113);
  int tested = 0;
  while (tested < 200) {
    int dim = 2 + static_cast<int>(rng() % 3);
    SparsePolynomial p = testoracle::random_poly(rng, dim, 5, 4);
    if (p.is_constant()) continue;
    ++tested;

    std::vector<int> pi(dim);
    for (int i = 0; i < dim; ++i) pi[i] = i + 1;
    std::shuffle(pi.begin(), pi.end(), rng);
    SparsePolynomial q = testoracle::relabel(p, pi);

    CHECK(admissible_degree(p).value == admissible_degree(q).value);
    auto cp = admissible_monomials(p);
    auto cq = admissible_monomials(q);
    REQUIRE(cp.size() == cq.size());
    for (const auto& cert : cp) {
      ExponentVector image(dim);
      for (int i = 0; i < dim; ++i) image[pi[i] - 1] = cert.alpha[i];
      bool found = false;
      for (const auto& other : cq) found = found || other.alpha == image;
      CHECK(found);
    }

    SparsePolynomial scaled = p.scaled(Rational(-7, 3));
    CHECK(admissible_degree(scaled).value == admissible_degree(p).value);
    CHECK(admissible_monomials(scaled).size() == cp.size());
  }
}

TEST_CASE("exponent pair identities") {
  auto [theta2, tau2] = theta_tau(2, 5);
  CHECK(theta2 == Rational(-1, 7));
  CHECK(tau2 == Rational(2, 7));
  auto [theta1, tau1] = theta_tau(1, 3);
  CHECK(theta1 == Rational(0));
  CHECK(tau1 == Rational(1, 4));

  for (int l = 1; l <= 6; ++l)
    for (int s = 1; s <= 12; ++s) {
      auto [theta, tau] = theta_tau(l, s);
      long w = 1L << (l - 1);
      CHECK(theta + tau == Rational(1, w + s));
      CHECK(tau == Rational(w, w + s));
      if (l > 1) CHECK(tau > theta_tau(l - 1, s).second);  // longer chains sharpen tau
    }
}
