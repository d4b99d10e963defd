#include "polyvol/mclab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "polyvol/fitting.hpp"
#include "polyvol/parallel.hpp"
#include "polyvol/rng.hpp"

namespace polyvol {

namespace {

constexpr long kBlock = 65536;

VolumeEstimate measure_cell(const EvalPlan& plan, int dim, double delta, double r, long samples,
                            uint64_t seed, uint32_t stream_i, uint32_t stream_j, int threads) {
  long nblocks = (samples + kBlock - 1) / kBlock;
  std::vector<long> counts(nblocks, 0);
  parallel_for(nblocks, threads, [&](long b) {
    long lo = b * kBlock, hi = std::min(samples, (b + 1) * kBlock);
    long c = 0;
    double x[kMaxDimension];
    for (long k = lo; k < hi; ++k) {
      rng::Stream st(seed, stream_i, stream_j, static_cast<uint32_t>(k));
      for (int d = 0; d < dim; ++d) x[d] = st.next_symmetric(r);
      if (std::fabs(plan(x)) <= delta) ++c;
    }
    counts[b] = c;
  });
  long hits = 0;
  for (long c : counts) hits += c;  // fixed order, independent of scheduling

  double box = std::pow(2.0 * r, dim);
  double f = static_cast<double>(hits) / static_cast<double>(samples);
  VolumeEstimate est;
  est.delta = delta;
  est.r = r;
  est.volume_estimate = box * f;
  est.standard_error = box * std::sqrt(f * (1.0 - f) / static_cast<double>(samples));
  est.hit_count = hits;
  est.samples = samples;
  est.reliable = hits >= 100;
  return est;
}

void validate_grid(const std::vector<double>& g, const char* name) {
  if (g.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  double prev = 0.0;
  for (double v : g) {
    if (!(v > prev)) throw std::invalid_argument(std::string(name) + " grid must be positive and strictly increasing");
    prev = v;
  }
}

std::vector<const VolumeEstimate*> reliable_cells(const ScanResult& result) {
  std::vector<const VolumeEstimate*> out;
  for (const auto& c : result.cells)
    if (c.reliable) out.push_back(&c);
  return out;
}

ScanFit fit_cells(const std::vector<const VolumeEstimate*>& cells, ScanAxis axis) {
  std::vector<double> x, y, rel;
  for (const auto* c : cells) {
    x.push_back(axis == ScanAxis::delta ? c->delta : c->r);
    y.push_back(c->volume_estimate);
    rel.push_back(c->standard_error / c->volume_estimate);
  }
  PowerLawFit f = fit_power_law(x, y, rel);
  ScanFit out;
  out.axis = axis == ScanAxis::delta ? "delta" : "r";
  out.exponent = f.exponent;
  out.exponent_se = f.exponent_se;
  out.ci_lo = f.ci_lo;
  out.ci_hi = f.ci_hi;
  out.constant = f.constant;
  out.points = f.points;
  return out;
}

}  // namespace

VolumeEstimate estimate_sublevel_volume(const SparsePolynomial& p, double delta, double r,
                                        long samples, uint64_t seed, int threads) {
  return estimate_sublevel_volume(p, delta, r, samples, seed, 0u, 0u, threads);
}

VolumeEstimate estimate_sublevel_volume(const SparsePolynomial& p, double delta, double r,
                                        long samples, uint64_t seed, uint32_t stream_i,
                                        uint32_t stream_j, int threads) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (samples < 1) throw std::invalid_argument("need at least one sample");
  EvalPlan plan(p);
  return measure_cell(plan, p.dimension(), delta, r, samples, seed, stream_i, stream_j,
                      resolve_threads(threads));
}

ScanResult volume_scan(const SparsePolynomial& p, const ScanConfig& config, int threads) {
  validate_grid(config.delta_grid, "delta");
  validate_grid(config.r_grid, "r");
  if (config.samples_per_cell < 1000)
    throw std::invalid_argument("samples_per_cell must be at least 1000");

  EvalPlan plan(p);
  int workers = resolve_threads(threads);
  ScanResult result;
  result.config = config;
  result.cells.reserve(config.delta_grid.size() * config.r_grid.size());
  for (std::size_t i = 0; i < config.delta_grid.size(); ++i)
    for (std::size_t j = 0; j < config.r_grid.size(); ++j)
      result.cells.push_back(measure_cell(plan, p.dimension(), config.delta_grid[i],
                                          config.r_grid[j], config.samples_per_cell, config.seed,
                                          static_cast<uint32_t>(i), static_cast<uint32_t>(j),
                                          workers));

  if (config.delta_grid.size() >= 4 && config.r_grid.size() == 1) {
    try {
      result.fitted = fit_scaling(result, ScanAxis::delta);
    } catch (const std::exception&) {
    }
  } else if (config.r_grid.size() >= 4 && config.delta_grid.size() == 1) {
    try {
      result.fitted = fit_scaling(result, ScanAxis::r);
    } catch (const std::exception&) {
    }
  }
  return result;
}

ScanFit fit_scaling(const ScanResult& result, ScanAxis axis) {
  const auto& other = axis == ScanAxis::delta ? result.config.r_grid : result.config.delta_grid;
  if (other.size() != 1)
    throw std::invalid_argument("the non-fitted axis must be a single grid value");
  auto cells = reliable_cells(result);
  if (cells.size() < 4) throw std::domain_error("fewer than 4 reliable cells");
  return fit_cells(cells, axis);
}

TightnessReport bound_tightness(const SparsePolynomial& p, const BoundPrediction& prediction,
                                const ScanResult& result) {
  if (prediction.kind != BoundPrediction::Kind::volume)
    throw std::invalid_argument("prediction is not a volume bound");
  if (prediction.dimension != p.dimension())
    throw std::invalid_argument("prediction dimension mismatch");

  TightnessReport rep;
  std::vector<const VolumeEstimate*> valid;
  for (const auto* c : reliable_cells(result))
    if (prediction.in_validity_region(c->r, c->delta)) valid.push_back(c);
  if (valid.empty()) throw std::domain_error("no reliable cells inside the validity region");

  double best = -1.0;
  for (const auto* c : valid) {
    double s = prediction.shape(c->delta, c->r);
    if (!(s > 0.0)) continue;
    double ratio = c->volume_estimate / s;
    if (ratio > best) {
      best = ratio;
      rep.constant_cell = *c;
    }
  }
  if (best < 0.0) throw std::domain_error("bound shape vanished on every valid cell");
  rep.fitted_constant = best;

  bool same_r = true;
  for (const auto* c : valid)
    if (c->r != valid.front()->r) same_r = false;
  if (same_r && valid.size() >= 4) rep.delta_fit = fit_cells(valid, ScanAxis::delta);

  double predicted = prediction.delta_exponent.to_double();
  std::ostringstream cmp;
  cmp << "fitted constant " << rep.fitted_constant << " at (delta=" << rep.constant_cell.delta
      << ", r=" << rep.constant_cell.r << ")";
  if (rep.delta_fit) {
    cmp << "; measured delta exponent " << rep.delta_fit->exponent << " [" << rep.delta_fit->ci_lo
        << ", " << rep.delta_fit->ci_hi << "] vs predicted " << predicted;
    if (rep.delta_fit->ci_hi < predicted) {
      std::ostringstream v;
      v << "measured delta exponent " << rep.delta_fit->exponent
        << " is below the predicted " << predicted << " beyond the 95% margin";
      rep.violations.push_back(v.str());
    } else if (rep.delta_fit->exponent > predicted) {
      cmp << " (decays faster than the bound requires; bound holds but is loose)";
    }
  } else {
    cmp << "; no delta fit available on the valid cells";
  }
  rep.comparison = cmp.str();
  return rep;
}

RemezReport remez_check(const SparsePolynomial& p, double r, double omega_fraction, long samples,
                        uint64_t seed) {
  (void)seed;
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (!(omega_fraction > 0.0) || !(omega_fraction < 1.0))
    throw std::invalid_argument("omega_fraction must lie in (0, 1)");
  if (samples < 2) throw std::invalid_argument("need at least 2 grid points");
  int n = p.dimension();
  if (n < 1) throw std::invalid_argument("need at least one variable");

  EvalPlan plan(p);
  int per_axis = std::max(2, static_cast<int>(std::llround(
                                 std::ceil(std::pow(static_cast<double>(samples), 1.0 / n)))));
  auto sup_on_box = [&](double half_side) {
    long total = 1;
    for (int d = 0; d < n; ++d) total *= per_axis;
    double m = 0.0;
    double x[kMaxDimension];
    for (long idx = 0; idx < total; ++idx) {
      long t = idx;
      for (int d = 0; d < n; ++d) {
        int g = static_cast<int>(t % per_axis);
        t /= per_axis;
        x[d] = -half_side + 2.0 * half_side * g / (per_axis - 1);
      }
      m = std::max(m, std::fabs(plan(x)));
    }
    return m;
  };

  RemezReport rep;
  rep.degree = p.degree().value_or(0);
  rep.factor = std::pow(4.0 * n / omega_fraction, rep.degree);
  rep.lhs = sup_on_box(r);
  double omega_half = r * std::pow(omega_fraction, 1.0 / n);
  rep.rhs = rep.factor * sup_on_box(omega_half);
  rep.satisfied = rep.lhs <= rep.rhs * 1.01;
  return rep;
}

SparsePolynomial degenerate_polynomial() {
  SparsePolynomial a = parse_polynomial("x2 - x1^3", 2);
  SparsePolynomial b = parse_polynomial("x1 - x2^3", 2);
  return a * a + b * b;
}

DegenerateScanReport degenerate_scenario_scan(const ScanConfig& config, int threads) {
  DegenerateScanReport rep;
  rep.scan = volume_scan(degenerate_polynomial(), config, threads);

  double r0 = config.r_grid.front();
  std::vector<const VolumeEstimate*> delta_line;
  for (const auto& c : rep.scan.cells)
    if (c.reliable && c.r == r0) delta_line.push_back(&c);
  if (delta_line.size() >= 2) {
    std::vector<double> x, y, rel;
    for (const auto* c : delta_line) {
      x.push_back(c->delta);
      y.push_back(c->volume_estimate);
      rel.push_back(c->standard_error / c->volume_estimate);
    }
    PowerLawFit f = fit_power_law(x, y, rel);
    ScanFit sf;
    sf.axis = "delta";
    sf.exponent = f.exponent;
    sf.exponent_se = f.exponent_se;
    sf.ci_lo = f.ci_lo;
    sf.ci_hi = f.ci_hi;
    sf.constant = f.constant;
    sf.points = f.points;
    rep.delta_fit = sf;
  }

  std::vector<const VolumeEstimate*> r_line;
  for (double d0 : config.delta_grid) {
    std::vector<const VolumeEstimate*> row;
    bool all_reliable = true;
    for (const auto& c : rep.scan.cells)
      if (c.delta == d0 && c.r >= 3.0) {
        row.push_back(&c);
        all_reliable = all_reliable && c.reliable;
      }
    if (row.size() >= 2 && all_reliable) {
      r_line = row;
      rep.comparison_delta = d0;
      break;
    }
  }
  if (r_line.size() >= 2) {
    std::vector<double> x, y;
    for (const auto* c : r_line) {
      x.push_back(c->r);
      y.push_back(c->volume_estimate);
    }
    rep.r_slope = fit_power_law(x, y).exponent;
    rep.r_independent = std::fabs(*rep.r_slope) <= 0.1;

    rep.r_cells_agree = true;
    for (std::size_t a = 0; a < r_line.size(); ++a)
      for (std::size_t b = a + 1; b < r_line.size(); ++b) {
        double gap = std::fabs(r_line[a]->volume_estimate - r_line[b]->volume_estimate);
        double se = std::hypot(r_line[a]->standard_error, r_line[b]->standard_error);
        if (gap > 3.0 * se) rep.r_cells_agree = false;
      }
  }
  return rep;
}

std::string scan_columns(const ScanResult& result) {
  std::ostringstream out;
  out << "# delta r estimate stderr hits\n";
  out.precision(12);
  for (const auto& c : result.cells)
    out << c.delta << ' ' << c.r << ' ' << c.volume_estimate << ' ' << c.standard_error << ' '
        << c.hit_count << '\n';
  return out.str();
}

}  // namespace polyvol
