#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polyvol/bounds.hpp"
#include "polyvol/mclab.hpp"

using namespace polyvol;

TEST_CASE("cell estimate with a known volume") {
  SparsePolynomial p = parse_polynomial("x1", 1);
  VolumeEstimate est = estimate_sublevel_volume(p, 0.5, 1.0, 100000, 5);
  CHECK(est.reliable);
  CHECK(est.hit_count >= 100);
  CHECK(est.samples == 100000);
  CHECK(std::fabs(est.volume_estimate - 1.0) <= 4.0 * est.standard_error);
  CHECK(est.standard_error > 0.0);
  CHECK(est.standard_error < 0.01);
}

TEST_CASE("cell estimates do not depend on the thread count") {
  SparsePolynomial p = parse_polynomial("x1^2 + x2^2", 2);
  VolumeEstimate a = estimate_sublevel_volume(p, 0.1, 2.0, 200000, 11, 1);
  VolumeEstimate b = estimate_sublevel_volume(p, 0.1, 2.0, 200000, 11, 3);
  CHECK(a.volume_estimate == b.volume_estimate);
  CHECK(a.hit_count == b.hit_count);
}

TEST_CASE("product polynomial against its closed-form area") {
  // vol{|x1 x2| <= delta} over [-r,r]^2 equals 4 delta (1 + log(r^2/delta))
  SparsePolynomial p = parse_polynomial("x1*x2", 2);
  double delta = 0.1, r = 1.0;
  double truth = 4.0 * delta * (1.0 + std::log(r * r / delta));
  VolumeEstimate est = estimate_sublevel_volume(p, delta, r, 400000, 17);
  CHECK(std::fabs(est.volume_estimate - truth) <= 4.0 * est.standard_error);
}

TEST_CASE("same stream nests sublevel hits monotonically") {
  SparsePolynomial p = parse_polynomial("x1^5 + x1*x2^3 + x2^2", 2);
  double prev = 0.0;
  for (double delta : {1e-3, 1e-2, 1e-1, 1.0}) {
    VolumeEstimate est = estimate_sublevel_volume(p, delta, 2.0, 50000, 23);
    CHECK(est.volume_estimate >= prev);
    CHECK(est.volume_estimate <= 16.0);  // never exceeds the box
    prev = est.volume_estimate;
  }
}

TEST_CASE("three-sigma calibration across 100 seeds") {
  SparsePolynomial p = parse_polynomial("x1^2 + x2^2", 2);
  double truth = M_PI * 0.1;
  int covered = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    VolumeEstimate est = estimate_sublevel_volume(p, 0.1, 2.0, 10000, seed);
    if (std::fabs(est.volume_estimate - truth) <= 3.0 * est.standard_error) ++covered;
  }
  CHECK(covered >= 99);
}

TEST_CASE("scan validation") {
  SparsePolynomial p = parse_polynomial("x1", 1);
  CHECK_THROWS_AS(volume_scan(p, {{}, {1.0}, 10000, 0}), std::invalid_argument);
  CHECK_THROWS_AS(volume_scan(p, {{0.1, 0.1}, {1.0}, 10000, 0}), std::invalid_argument);
  CHECK_THROWS_AS(volume_scan(p, {{-0.1, 0.2}, {1.0}, 10000, 0}), std::invalid_argument);
  CHECK_THROWS_AS(volume_scan(p, {{0.1}, {1.0}, 100, 0}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_sublevel_volume(p, 0.0, 1.0, 1000, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_sublevel_volume(p, 0.1, -1.0, 1000, 0), std::invalid_argument);
}

TEST_CASE("scan fits the delta axis when it can") {
  SparsePolynomial p = parse_polynomial("x1^2 + x2^2", 2);
  ScanConfig cfg{{1e-3, 3e-3, 1e-2, 3e-2, 1e-1}, {2.0}, 1000000, 31};
  ScanResult res = volume_scan(p, cfg);
  CHECK(res.cells.size() == 5);
  REQUIRE(res.fitted.has_value());
  CHECK(res.fitted->axis == "delta");
  // the true area is pi delta, so the exponent is 1
  CHECK(res.fitted->exponent == doctest::Approx(1.0).epsilon(0.05));
  CHECK(res.fitted->ci_lo <= 1.0);
  CHECK(res.fitted->ci_hi >= 1.0);
}

TEST_CASE("axis fit on synthetic noiseless cells") {
  ScanResult res;
  res.config = {{0.001, 0.01, 0.1, 1.0}, {2.0}, 1000, 0};
  for (double d : res.config.delta_grid) {
    VolumeEstimate c;
    c.delta = d;
    c.r = 2.0;
    c.volume_estimate = 7.0 * std::pow(d, 1.5);
    c.standard_error = 1e-9 * c.volume_estimate;
    c.hit_count = 1000;
    c.samples = 1000;
    c.reliable = true;
    res.cells.push_back(c);
  }
  ScanFit fit = fit_scaling(res, ScanAxis::delta);
  CHECK(fit.exponent == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(fit.constant == doctest::Approx(7.0).epsilon(1e-6));

  ScanResult both = res;
  both.config.r_grid = {1.0, 2.0};
  CHECK_THROWS_AS(fit_scaling(both, ScanAxis::delta), std::invalid_argument);
  ScanResult sparse = res;
  sparse.cells.resize(3);
  CHECK_THROWS_AS(fit_scaling(sparse, ScanAxis::delta), std::domain_error);
}

TEST_CASE("tightness comparison against the tube bound") {
  SparsePolynomial p = parse_polynomial("x1^2 + x2^2", 2);
  BoundPrediction tube = admissible_tube_bound(p, admissible_degree(p).argmin);
  ScanConfig cfg{{1e-3, 3e-3, 1e-2, 3e-2, 1e-1}, {2.0}, 1000000, 37};
  ScanResult res = volume_scan(p, cfg);
  TightnessReport rep = bound_tightness(p, tube, res);
  // the disk area pi delta sits far below the delta^{1/2} tube shape
  CHECK(rep.violations.empty());
  CHECK(rep.fitted_constant > 0.0);
  REQUIRE(rep.delta_fit.has_value());
  CHECK(rep.delta_fit->exponent > tube.delta_exponent.to_double());
  CHECK(rep.comparison.find("loose") != std::string::npos);

  BoundPrediction wrong_dim = tube;
  wrong_dim.dimension = 3;
  CHECK_THROWS_AS(bound_tightness(p, wrong_dim, res), std::invalid_argument);
}

TEST_CASE("sup-norm doubling check on hand examples") {
  SparsePolynomial line = parse_polynomial("x1", 1);
  RemezReport rep = remez_check(line, 1.0, 0.5);
  CHECK(rep.lhs == doctest::Approx(1.0));
  CHECK(rep.factor == doctest::Approx(8.0));
  CHECK(rep.rhs == doctest::Approx(4.0).epsilon(0.02));
  CHECK(rep.degree == 1);
  CHECK(rep.satisfied);

  SparsePolynomial cross = parse_polynomial("x1*x2", 2);
  RemezReport rep2 = remez_check(cross, 2.0, 0.25, 40000);
  CHECK(rep2.satisfied);

  CHECK_THROWS_AS(remez_check(line, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(remez_check(line, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(remez_check(line, -1.0, 0.5), std::invalid_argument);
}

TEST_CASE("degenerate example zeros and scan summaries") {
  SparsePolynomial p = degenerate_polynomial();
  CHECK(p.dimension() == 2);
  CHECK(p.evaluate({0.0, 0.0}) == 0.0);
  CHECK(p.evaluate({1.0, 1.0}) == 0.0);
  CHECK(p.evaluate({-1.0, -1.0}) == 0.0);
  CHECK(p.evaluate({0.5, 0.5}) > 0.0);
  CHECK(p.evaluate({2.0, -1.0}) > 0.0);

  ScanConfig cfg{{1e-2, 1e-1}, {3.0, 6.0}, 10000000, 41};
  DegenerateScanReport rep = degenerate_scenario_scan(cfg);
  REQUIRE(rep.delta_fit.has_value());
  CHECK(rep.delta_fit->exponent == doctest::Approx(1.0).epsilon(0.15));
  REQUIRE(rep.r_cells_agree.has_value());
  CHECK(*rep.r_cells_agree);
  REQUIRE(rep.r_slope.has_value());
  CHECK(std::fabs(*rep.r_slope) <= 0.1);
  CHECK(rep.r_independent);

  std::string cols = scan_columns(rep.scan);
  CHECK(cols.find("# delta r estimate stderr hits") == 0);
  CHECK(std::count(cols.begin(), cols.end(), '\n') == 5);
}
