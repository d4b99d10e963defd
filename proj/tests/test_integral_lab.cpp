#include <doctest.h>

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "polyvol/integral_lab.hpp"

using namespace polyvol;

namespace {

SparsePolynomial running_example() { return parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2); }

// adaptive Simpson, used as an independent quadrature oracle
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
               double fm, double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, fm, flm, eps / 2, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b) {
  double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(b), f(m), 1e-12, 40);
}

}  // namespace

TEST_CASE("phase integral of a linear phase") {
  SparsePolynomial p = parse_polynomial("x1", 1);
  OscillatoryValue v = oscillatory_integral(p, 10.0, 1.0, 1e-9);
  CHECK(v.converged);
  CHECK(v.value.real() == doctest::Approx(2.0 * std::sin(10.0) / 10.0).epsilon(1e-8));
  CHECK(std::fabs(v.value.imag()) < 1e-12);
}

TEST_CASE("zero frequency and constant phases are exact") {
  SparsePolynomial p = running_example();
  OscillatoryValue still = oscillatory_integral(p, 0.0, 1.5, 1e-8);
  CHECK(still.converged);
  CHECK(still.nodes == 0);
  CHECK(still.value.real() == 9.0);  // (2 * 1.5)^2
  CHECK(still.value.imag() == 0.0);

  OscillatoryValue c = oscillatory_integral(SparsePolynomial::constant(1, Rational(5)), 3.0, 2.0, 1e-8);
  CHECK(c.value.real() == doctest::Approx(4.0 * std::cos(15.0)).epsilon(1e-14));
  CHECK(c.value.imag() == doctest::Approx(4.0 * std::sin(15.0)).epsilon(1e-14));

  OscillatoryValue z = oscillatory_integral(SparsePolynomial(2), 7.0, 1.0, 1e-8);
  CHECK(z.value.real() == 4.0);
  CHECK(z.value.imag() == 0.0);
}

TEST_CASE("negating the frequency conjugates the value exactly") {
  for (const char* text : {"x1^2", "x1^3 - x1"}) {
    SparsePolynomial p = parse_polynomial(text, 1);
    OscillatoryValue pos = oscillatory_integral(p, 35.0, 1.0, 1e-8);
    OscillatoryValue neg = oscillatory_integral(p, -35.0, 1.0, 1e-8);
    CHECK(pos.value.real() == neg.value.real());
    CHECK(pos.value.imag() == -neg.value.imag());
  }
}

TEST_CASE("quadratic phase against an independent quadrature") {
  SparsePolynomial p = parse_polynomial("x1^2", 1);
  double lambda = 50.0;
  OscillatoryValue v = oscillatory_integral(p, lambda, 1.0, 1e-9);
  REQUIRE(v.converged);
  double re = integrate([&](double t) { return std::cos(lambda * t * t); }, -1.0, 1.0);
  double im = integrate([&](double t) { return std::sin(lambda * t * t); }, -1.0, 1.0);
  CHECK(v.value.real() == doctest::Approx(re).epsilon(1e-7));
  CHECK(v.value.imag() == doctest::Approx(im).epsilon(1e-7));
}

TEST_CASE("phase integral input validation") {
  SparsePolynomial p = parse_polynomial("x1", 1);
  CHECK_THROWS_AS(oscillatory_integral(p, 1.0, 0.0, 1e-8), std::invalid_argument);
  CHECK_THROWS_AS(oscillatory_integral(p, 1.0, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(oscillatory_integral(p, 1.0, 1.0, 1e-12), std::invalid_argument);
  SparsePolynomial big(4);
  big.set_coefficient({1, 0, 0, 0}, Rational(1));
  CHECK_THROWS_AS(oscillatory_integral(big, 1.0, 1.0, 1e-8), std::invalid_argument);
}

TEST_CASE("decay envelopes reproduce the stationary-phase slopes") {
  std::vector<double> grid;
  for (int i = 0; i < 24; ++i) grid.push_back(10.0 * std::pow(1000.0, i / 23.0));
  struct Case {
    const char* text;
    double slope;
  };
  for (const Case& c : {Case{"x1", -1.0}, Case{"x1^2", -0.5}, Case{"x1^3", -1.0 / 3.0}}) {
    SparsePolynomial p = parse_polynomial(c.text, 1);
    DecayScanResult res = decay_scan(p, 1.0, grid, 1e-8);
    CHECK(res.envelope_exponent == doctest::Approx(c.slope).epsilon(0.1));
    CHECK(std::fabs(res.envelope_exponent - c.slope) < 0.05);
    CHECK(res.ci_lo <= res.envelope_exponent);
    CHECK(res.ci_hi >= res.envelope_exponent);
    CHECK(res.magnitudes.size() == grid.size());
  }

  CHECK_THROWS_AS(decay_scan(parse_polynomial("x1", 1), 1.0, {10.0, 20.0}, 1e-8),
                  std::invalid_argument);
}

TEST_CASE("level profiles ladder down from the sup bound") {
  SparsePolynomial p = parse_polynomial("x1", 1);
  LevelProfile prof = compute_level_profile(p, 1.0, 12, 3, 20000);
  CHECK(prof.sup_bound == doctest::Approx(1.0));
  REQUIRE(prof.cells.size() == 12);
  CHECK(prof.cells.front().delta == doctest::Approx(1.0));
  CHECK(prof.cells.front().hit_count == 20000);  // the box is the sublevel set
  for (std::size_t i = 1; i < prof.cells.size(); ++i) {
    CHECK(prof.cells[i].delta < prof.cells[i - 1].delta);
    // levels draw independent streams, so only compare well-resolved cells
    if (prof.cells[i].reliable) CHECK(prof.cells[i].volume <= prof.cells[i - 1].volume);
  }
  CHECK(prof.cells.back().delta == doctest::Approx(1e-7).epsilon(1e-9));

  CHECK_THROWS_AS(compute_level_profile(p, 1.0, 4, 0, 20000), std::invalid_argument);
  CHECK_THROWS_AS(compute_level_profile(SparsePolynomial(1), 1.0, 12, 0, 20000),
                  std::domain_error);
}

TEST_CASE("singular integral of |x|^{-mu} matches the closed form") {
  SparsePolynomial p = parse_polynomial("x1", 1);
  LevelProfile prof = compute_level_profile(p, 1.0, 28, 7, 4000000);
  for (double mu : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    SingularIntegralResult res = assemble_singular_integral(prof, mu);
    REQUIRE_FALSE(res.divergent);
    REQUIRE(res.value.has_value());
    double truth = 2.0 / (1.0 - mu);
    CHECK(*res.value == doctest::Approx(truth).epsilon(0.05));
    CHECK(res.tail_exponent == doctest::Approx(1.0).epsilon(0.05));
  }
  SingularIntegralResult div = assemble_singular_integral(prof, 1.2);
  CHECK(div.divergent);
  CHECK_FALSE(div.value.has_value());
  CHECK(div.verdict_basis.find("divergent") != std::string::npos);
}

TEST_CASE("the critical exponent of a clean quadratic is divergent") {
  SingularIntegralResult res = singular_integral(parse_polynomial("x1^2 + x2^2", 2), 1.0, 1.0, 16, 5, 200000);
  CHECK(res.divergent);
}

TEST_CASE("doubling the level count moves the value by less than ten percent") {
  SparsePolynomial p = running_example();
  SingularIntegralResult coarse = singular_integral(p, 0.2, 2.0, 12, 19, 1000000);
  SingularIntegralResult fine = singular_integral(p, 0.2, 2.0, 24, 19, 1000000);
  REQUIRE(coarse.value.has_value());
  REQUIRE(fine.value.has_value());
  CHECK(std::fabs(*coarse.value - *fine.value) / std::fabs(*fine.value) < 0.10);
}

TEST_CASE("transition scan on |x|^{-mu} brackets the critical exponent") {
  IntegrabilityScan scan = integrability_scan(parse_polynomial("x1", 1), {0.7, 0.9, 1.1, 1.3},
                                              {1.0, 2.0}, 3, 16, 400000);
  REQUIRE(scan.verdicts.size() == 4);
  CHECK_FALSE(scan.verdicts[0].divergent);
  CHECK_FALSE(scan.verdicts[1].divergent);
  CHECK(scan.verdicts[2].divergent);
  CHECK(scan.verdicts[3].divergent);
  CHECK(scan.largest_finite_mu == 0.9);
  CHECK(scan.smallest_divergent_mu == 1.1);
  CHECK(scan.theoretical_lower == doctest::Approx(1.0));
  CHECK_FALSE(scan.theoretical_upper.has_value());
  CHECK(scan.flags.empty());
  REQUIRE(scan.verdicts[0].r_growth.has_value());
  CHECK(*scan.verdicts[0].r_growth == doctest::Approx(0.3).epsilon(0.5));

  CHECK_THROWS_AS(integrability_scan(parse_polynomial("x1", 1), {}, {1.0}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrability_scan(parse_polynomial("x1", 1), {0.5, 0.4}, {1.0}, 0),
                  std::invalid_argument);
}

TEST_CASE("derivative-floor diagnostic on certified phases") {
  double lambda = 37.0;
  // f = lambda t on [-1, 1]: |integral| = 2 |sin lambda| / lambda
  VdcResult lin = vdc_diagnostic({Rational(0), Rational::from_double(lambda)}, 1,
                                 Rational::from_double(lambda), -1.0, 1.0);
  CHECK(lin.converged);
  CHECK(lin.magnitude == doctest::Approx(2.0 * std::fabs(std::sin(lambda)) / lambda).epsilon(1e-7));
  CHECK(lin.product == doctest::Approx(2.0 * std::fabs(std::sin(lambda))).epsilon(1e-7));
  CHECK(lin.product <= 2.0 + 1e-9);

  // f = lambda t^2: second derivative floor 2 lambda, bounded product
  for (double lam : {50.0, 500.0, 5000.0}) {
    VdcResult quad = vdc_diagnostic({Rational(0), Rational(0), Rational::from_double(lam)}, 2,
                                    Rational::from_double(2.0 * lam), -1.0, 1.0);
    CHECK(quad.converged);
    CHECK(quad.product < 4.0);
  }

  // f = lambda (t^3 - t) on [2, 3]: first derivative at least 11 lambda
  VdcResult cubic = vdc_diagnostic(
      {Rational(0), Rational::from_double(-lambda), Rational(0), Rational::from_double(lambda)}, 1,
      Rational::from_double(11.0 * lambda), 2.0, 3.0);
  CHECK(cubic.converged);
  CHECK(cubic.product < 10.0);
}

TEST_CASE("derivative-floor diagnostic rejects uncertified phases") {
  // f' = 3t^2 - 1 vanishes inside [-1, 1]
  RatPoly cubic{Rational(0), Rational(-1), Rational(0), Rational(1)};
  CHECK_THROWS_AS(vdc_diagnostic(cubic, 1, Rational(1, 10), -1.0, 1.0), std::domain_error);
  // second derivative of t is identically zero
  CHECK_THROWS_AS(vdc_diagnostic(RatPoly{Rational(0), Rational(1)}, 2, Rational(1), -1.0, 1.0),
                  std::domain_error);
  // constant second derivative 2 sits below gamma = 3 everywhere
  CHECK_THROWS_AS(vdc_diagnostic(RatPoly{Rational(0), Rational(1), Rational(1)}, 2, Rational(3),
                                 -1.0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(vdc_diagnostic(cubic, 0, Rational(1), -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(vdc_diagnostic(cubic, 1, Rational(-1), -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(vdc_diagnostic(cubic, 1, Rational(1), 1.0, -1.0), std::invalid_argument);
}
