#include "polyvol/integral_lab.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "polyvol/fitting.hpp"
#include "polyvol/mclab.hpp"
#include "polyvol/parallel.hpp"
#include "polyvol/rng.hpp"

namespace polyvol {

namespace {

constexpr long kNodeBudget = 1L << 28;

struct Gauss16 {
  std::array<double, 16> x{}, w{};
};

// Nodes and weights of 16-point Gauss-Legendre on [-1, 1], found once by
// Newton iteration on the Legendre recurrence.
const Gauss16& gauss16() {
  static const Gauss16 g = [] {
    Gauss16 out;
    for (int i = 0; i < 8; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / 16.5);
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= 16; ++k) {
          double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = 16.0 * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) break;
      }
      double w = 2.0 / ((1.0 - x * x) * dp * dp);
      out.x[i] = x;          // descending positive roots
      out.x[15 - i] = -x;
      out.w[i] = w;
      out.w[15 - i] = w;
    }
    return out;
  }();
  return g;
}

double axis_gradient_bound(const SparsePolynomial& p, int axis, double r) {
  SparsePolynomial d = p.partial_derivative(axis);
  double s = 0.0;
  for (const auto& [a, c] : d.terms()) s += std::fabs(c.to_double()) * std::pow(r, a.total());
  return s;
}

// Panelled Gauss-Legendre nodes covering [lo, hi].
void fill_axis_nodes(double lo, double hi, long panels, std::vector<double>& nx,
                     std::vector<double>& nw) {
  const Gauss16& g = gauss16();
  nx.resize(panels * 16);
  nw.resize(panels * 16);
  double width = (hi - lo) / panels;
  for (long m = 0; m < panels; ++m) {
    double a = lo + m * width;
    double half = 0.5 * width;
    for (int k = 0; k < 16; ++k) {
      nx[m * 16 + k] = a + half * (1.0 + g.x[k]);
      nw[m * 16 + k] = half * g.w[k];
    }
  }
}

std::complex<double> tensor_phase_sum(const EvalPlan& plan, int dim, double lambda, double r,
                                      const std::array<long, 3>& panels, int threads) {
  std::vector<double> nx[3], nw[3];
  for (int d = 0; d < dim; ++d) fill_axis_nodes(-r, r, panels[d], nx[d], nw[d]);

  long outer = 1;
  for (int d = 0; d < dim - 1; ++d) outer *= static_cast<long>(nx[d].size());
  int inner_axis = dim - 1;
  const auto& ix = nx[inner_axis];
  const auto& iw = nw[inner_axis];

  std::vector<std::complex<double>> slot(outer);
  parallel_for(outer, threads, [&](long oi) {
    double x[kMaxDimension];
    double wout = 1.0;
    long t = oi;
    for (int d = 0; d < dim - 1; ++d) {
      long cnt = static_cast<long>(nx[d].size());
      long idx = t % cnt;
      t /= cnt;
      x[d] = nx[d][idx];
      wout *= nw[d][idx];
    }
    std::complex<double> s{0.0, 0.0};
    for (std::size_t k = 0; k < ix.size(); ++k) {
      x[inner_axis] = ix[k];
      double ph = lambda * plan(x);
      s += iw[k] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    slot[oi] = wout * s;
  });

  std::complex<double> total{0.0, 0.0};
  for (const auto& s : slot) total += s;  // fixed order
  return total;
}

uint32_t fold_bits(double v) {
  uint64_t b = std::bit_cast<uint64_t>(v);
  return static_cast<uint32_t>(b) ^ static_cast<uint32_t>(b >> 32);
}

ScanFit to_scan_fit(const PowerLawFit& f, const char* axis) {
  ScanFit out;
  out.axis = axis;
  out.exponent = f.exponent;
  out.exponent_se = f.exponent_se;
  out.ci_lo = f.ci_lo;
  out.ci_hi = f.ci_hi;
  out.constant = f.constant;
  out.points = f.points;
  return out;
}

Rational rat_poly_eval(const RatPoly& c, const Rational& t) {
  Rational v(0);
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

void check_target(double target_rel_err) {
  if (!(target_rel_err > 1e-10) || !(target_rel_err < 1e-2))
    throw std::invalid_argument("target_rel_err must lie in (1e-10, 1e-2)");
}

// Shared doubling refinement for 1-D phase integrals with an explicit
// double-precision phase function.
template <typename Phase>
OscillatoryValue refine_phase_1d(Phase&& phase, double lo, double hi, double sup_dphase,
                                 double target_rel_err) {
  double periods = sup_dphase * (hi - lo) / (2.0 * std::numbers::pi);
  long base = std::max<long>(1, static_cast<long>(std::ceil((1.0 + periods) / 4.0)));
  OscillatoryValue out;
  std::complex<double> prev;
  bool have_prev = false;
  std::vector<double> nx, nw;
  for (int round = 0;; ++round) {
    long panels = base << round;
    long total = panels * 16;
    if (round > 0 && out.nodes + total > kNodeBudget) break;
    fill_axis_nodes(lo, hi, panels, nx, nw);
    std::complex<double> v{0.0, 0.0};
    for (std::size_t k = 0; k < nx.size(); ++k) {
      double ph = phase(nx[k]);
      v += nw[k] * std::complex<double>(std::cos(ph), std::sin(ph));
    }
    out.nodes += total;
    out.value = v;
    if (have_prev) {
      double denom = std::max(std::abs(v), 1e-9 * (hi - lo));
      if (std::abs(v - prev) <= target_rel_err * denom) {
        out.converged = true;
        break;
      }
    }
    prev = v;
    have_prev = true;
  }
  return out;
}

}  // namespace

OscillatoryValue oscillatory_integral(const SparsePolynomial& p, double lambda, double r,
                                      double target_rel_err) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  check_target(target_rel_err);
  int dim = p.dimension();
  if (dim < 1) throw std::invalid_argument("need at least one variable");
  if (dim > 3) throw std::invalid_argument("dimension above 3 is not supported");

  double box = std::pow(2.0 * r, dim);
  if (lambda == 0.0 || p.is_constant()) {
    double c = p.is_zero() ? 0.0 : p.terms().begin()->second.to_double();
    double ph = lambda * c;
    return {box * std::complex<double>(std::cos(ph), std::sin(ph)), true, 0};
  }

  std::array<long, 3> base{1, 1, 1};
  for (int d = 0; d < dim; ++d) {
    double per = std::fabs(lambda) * r * axis_gradient_bound(p, d + 1, r) /
                 (2.0 * std::numbers::pi);
    base[d] = std::max<long>(1, static_cast<long>(std::ceil((1.0 + per) / 4.0)));
  }

  EvalPlan plan(p);
  int threads = resolve_threads(0);
  OscillatoryValue out;
  std::complex<double> prev;
  bool have_prev = false;
  for (int round = 0;; ++round) {
    std::array<long, 3> panels{1, 1, 1};
    long total = 1;
    for (int d = 0; d < dim; ++d) {
      panels[d] = base[d] << round;
      total *= panels[d] * 16;
    }
    if (round > 0 && out.nodes + total > kNodeBudget) break;
    std::complex<double> v = tensor_phase_sum(plan, dim, lambda, r, panels, threads);
    out.nodes += total;
    out.value = v;
    if (have_prev) {
      double denom = std::max(std::abs(v), 1e-9 * box);
      if (std::abs(v - prev) <= target_rel_err * denom) {
        out.converged = true;
        break;
      }
    }
    prev = v;
    have_prev = true;
  }
  return out;
}

DecayScanResult decay_scan(const SparsePolynomial& p, double r,
                           const std::vector<double>& lambda_grid, double target_rel_err) {
  if (lambda_grid.size() < 16) throw std::invalid_argument("need at least 16 lambda points");
  double prev = 1.0;
  for (double l : lambda_grid) {
    if (!(l > prev)) throw std::invalid_argument("lambda grid must be strictly increasing and above 1");
    prev = l;
  }

  DecayScanResult out;
  out.lambda_grid = lambda_grid;
  out.values.resize(lambda_grid.size());
  out.magnitudes.resize(lambda_grid.size());
  out.converged.resize(lambda_grid.size());
  for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
    OscillatoryValue v = oscillatory_integral(p, lambda_grid[i], r, target_rel_err);
    out.values[i] = v.value;
    out.magnitudes[i] = std::abs(v.value);
    out.converged[i] = v.converged;
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < lambda_grid.size(); ++i)
    if (out.converged[i]) {
      lx.push_back(lambda_grid[i]);
      ly.push_back(out.magnitudes[i]);
    }
  EnvelopeFit env = fit_log_envelope(lx, ly, 8);
  out.envelope_lambda = env.env_x;
  out.envelope_magnitude = env.env_y;
  out.envelope_exponent = env.fit.exponent;
  out.exponent_se = env.fit.exponent_se;
  out.ci_lo = env.fit.ci_lo;
  out.ci_hi = env.fit.ci_hi;
  return out;
}

LevelProfile compute_level_profile(const SparsePolynomial& p, double r, int levels, uint64_t seed,
                                   long samples_per_level, int threads) {
  if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
  if (levels < 8) throw std::invalid_argument("need at least 8 levels");
  if (samples_per_level < 1000) throw std::invalid_argument("need at least 1000 samples per level");
  if (p.is_zero()) throw std::domain_error("zero polynomial has no sublevel structure");

  double sup = 0.0;
  for (const auto& [a, c] : p.terms()) sup += std::fabs(c.to_double()) * std::pow(r, a.total());

  LevelProfile prof;
  prof.r = r;
  prof.sup_bound = sup;
  prof.samples_per_level = samples_per_level;
  double ratio = std::pow(1e-7, 1.0 / (levels - 1));
  uint32_t jtag = rng::kStreamLevels ^ fold_bits(r);
  int workers = resolve_threads(threads);
  for (int i = 0; i < levels; ++i) {
    double delta = sup * std::pow(ratio, i);
    VolumeEstimate est = estimate_sublevel_volume(p, delta, r, samples_per_level, seed,
                                                  static_cast<uint32_t>(i), jtag, workers);
    prof.cells.push_back({delta, est.volume_estimate, est.standard_error, est.hit_count,
                          est.reliable});
  }
  return prof;
}

SingularIntegralResult assemble_singular_integral(const LevelProfile& profile, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");

  SingularIntegralResult res;
  res.mu = mu;
  res.r = profile.r;
  res.levels = profile.cells;

  // contiguous reliable prefix from the largest threshold down
  std::size_t m = 0;
  while (m < profile.cells.size() && profile.cells[m].reliable) ++m;
  if (m < 3) throw std::domain_error("too few reliable levels to estimate the tail");
  res.levels_used = static_cast<int>(m);

  const auto& cells = profile.cells;
  double top = cells[0].volume * std::pow(cells[0].delta, -mu);
  double body = 0.0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    double h0 = mu * std::pow(cells[i].delta, -mu) * cells[i].volume;
    double h1 = mu * std::pow(cells[i + 1].delta, -mu) * cells[i + 1].volume;
    body += 0.5 * (h0 + h1) * (std::log(cells[i].delta) - std::log(cells[i + 1].delta));
  }

  double delta_lo = cells[m - 1].delta;
  std::vector<double> x, y, rel;
  for (std::size_t i = 0; i < m; ++i) {
    if (cells[i].delta <= delta_lo * 316.2277660168379) {
      x.push_back(cells[i].delta);
      y.push_back(cells[i].volume);
      rel.push_back(cells[i].standard_error / cells[i].volume);
    }
  }
  while (x.size() < 3) {  // guaranteed by m >= 3
    std::size_t i = m - 1 - x.size();
    x.insert(x.begin(), cells[i].delta);
    y.insert(y.begin(), cells[i].volume);
    rel.insert(rel.begin(), cells[i].standard_error / cells[i].volume);
  }
  PowerLawFit fit = fit_power_law(x, y, rel);
  res.tail_exponent = fit.exponent;
  res.tail_exponent_se = fit.exponent_se;

  std::ostringstream basis;
  if (fit.exponent <= mu + 1.645 * fit.exponent_se) {
    res.divergent = true;
    basis << "tail slope " << fit.exponent << " +- " << fit.exponent_se
          << " does not exceed mu = " << mu << " by 1.645 standard errors; divergent";
  } else {
    double tail = mu * fit.constant * std::pow(delta_lo, fit.exponent - mu) /
                  (fit.exponent - mu);
    res.value = top + body + tail;
    basis << "tail slope " << fit.exponent << " +- " << fit.exponent_se << " exceeds mu = " << mu
          << " by more than 1.645 standard errors; finite";
  }
  res.verdict_basis = basis.str();
  return res;
}

SingularIntegralResult singular_integral(const SparsePolynomial& p, double mu, double r,
                                         int levels, uint64_t seed, long samples_per_level,
                                         int threads) {
  LevelProfile prof = compute_level_profile(p, r, levels, seed, samples_per_level, threads);
  return assemble_singular_integral(prof, mu);
}

IntegrabilityScan integrability_scan(const SparsePolynomial& p, const std::vector<double>& mu_grid,
                                     const std::vector<double>& r_grid, uint64_t seed, int levels,
                                     long samples_per_level, int threads) {
  if (mu_grid.empty() || r_grid.empty()) throw std::invalid_argument("empty grid");
  double prev = 0.0;
  for (double mu : mu_grid) {
    if (!(mu > prev)) throw std::invalid_argument("mu grid must be positive and strictly increasing");
    prev = mu;
  }
  prev = 0.0;
  for (double r : r_grid) {
    if (!(r > prev)) throw std::invalid_argument("r grid must be positive and strictly increasing");
    prev = r;
  }

  IntegrabilityScan scan;
  scan.bounds = integrability_bounds(p);
  scan.theoretical_lower = scan.bounds.lower_ad.to_double();
  if (scan.bounds.best_chain)
    scan.theoretical_lower = std::max(scan.theoretical_lower, scan.bounds.best_chain->tau.to_double());
  if (scan.bounds.upper_nd) scan.theoretical_upper = scan.bounds.upper_nd->to_double();

  std::vector<LevelProfile> profiles;
  for (double r : r_grid)
    profiles.push_back(compute_level_profile(p, r, levels, seed, samples_per_level, threads));

  for (double mu : mu_grid) {
    MuVerdict v;
    v.mu = mu;
    SingularIntegralResult front = assemble_singular_integral(profiles.front(), mu);
    v.divergent = front.divergent;
    v.value = front.value;
    v.tail_exponent = front.tail_exponent;
    v.tail_exponent_se = front.tail_exponent_se;

    std::vector<double> rx, ry;
    for (std::size_t j = 0; j < profiles.size(); ++j) {
      SingularIntegralResult cell = j == 0 ? front : assemble_singular_integral(profiles[j], mu);
      if (!cell.divergent && cell.value) {
        rx.push_back(r_grid[j]);
        ry.push_back(*cell.value);
      }
    }
    if (rx.size() >= 2) v.r_growth = fit_power_law(rx, ry).exponent;

    if (!v.divergent) {
      if (!scan.largest_finite_mu || mu > *scan.largest_finite_mu) scan.largest_finite_mu = mu;
    } else if (!scan.smallest_divergent_mu) {
      scan.smallest_divergent_mu = mu;
    }

    if (v.divergent && mu < scan.theoretical_lower &&
        v.tail_exponent + 3.0 * v.tail_exponent_se < mu) {
      std::ostringstream f;
      f << "mu = " << mu << " judged divergent (tail slope " << v.tail_exponent << " +- "
        << v.tail_exponent_se << ") though the index lower bound " << scan.theoretical_lower
        << " guarantees a finite integral";
      scan.flags.push_back(f.str());
    }
    if (!v.divergent && scan.theoretical_upper && mu > *scan.theoretical_upper &&
        v.tail_exponent - 3.0 * v.tail_exponent_se > mu) {
      std::ostringstream f;
      f << "mu = " << mu << " judged finite (tail slope " << v.tail_exponent << " +- "
        << v.tail_exponent_se << ") though the index upper bound " << *scan.theoretical_upper
        << " forces divergence";
      scan.flags.push_back(f.str());
    }
    scan.verdicts.push_back(v);
  }
  return scan;
}

VdcResult vdc_diagnostic(const RatPoly& f, int k, const Rational& gamma, double lo, double hi,
                         double target_rel_err) {
  if (k < 1) throw std::invalid_argument("derivative order must be at least 1");
  if (gamma.sign() <= 0) throw std::invalid_argument("gamma must be positive");
  if (!(lo < hi)) throw std::invalid_argument("empty interval");
  check_target(target_rel_err);

  RatPoly g = rat_poly_trim(f);
  for (int i = 0; i < k; ++i) g = rat_poly_derivative(g);
  if (g.empty()) throw std::domain_error("derivative is identically zero, below gamma");

  // shrink gamma a hair so a floor attained with equality still passes
  Rational near = gamma * Rational(999999999, 1000000000);
  for (int sign : {-1, 1}) {
    RatPoly shifted = g;
    shifted[0] = sign < 0 ? shifted[0] - near : shifted[0] + near;
    shifted = rat_poly_trim(shifted);
    if (shifted.empty() || !real_roots_in(shifted, lo, hi, 1e-12).empty())
      throw std::domain_error("derivative magnitude dips below gamma on the interval");
  }
  Rational mid = Rational::from_double(0.5 * (lo + hi));
  if (rat_poly_eval(g, mid).abs() < near)
    throw std::domain_error("derivative magnitude dips below gamma on the interval");

  std::vector<double> cf;
  for (const auto& c : f) cf.push_back(c.to_double());
  auto phase = [&](double t) {
    double v = 0.0;
    for (std::size_t i = cf.size(); i-- > 0;) v = v * t + cf[i];
    return v;
  };
  double m = std::max(std::fabs(lo), std::fabs(hi));
  double sup_dphase = 0.0;
  for (std::size_t j = 1; j < cf.size(); ++j)
    sup_dphase += std::fabs(cf[j]) * j * std::pow(m, j - 1);

  OscillatoryValue q = refine_phase_1d(phase, lo, hi, sup_dphase, target_rel_err);
  VdcResult out;
  out.value = q.value;
  out.magnitude = std::abs(q.value);
  out.product = out.magnitude * std::pow(gamma.to_double(), 1.0 / k);
  out.converged = q.converged;
  return out;
}

}  // namespace polyvol
