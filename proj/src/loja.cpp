#include "polyvol/loja.hpp"

#include <cmath>
#include <limits>

#include "polyvol/parallel.hpp"
#include "polyvol/rng.hpp"
#include "polyvol/roots.hpp"

namespace polyvol {

namespace {

SparsePolynomial apply_permutation(const SparsePolynomial& p, const std::vector<int>& sigma) {
  int n = p.dimension();
  SparsePolynomial r(n);
  for (const auto& [a, c] : p.terms()) {
    ExponentVector b(n);
    for (int j = 0; j < n; ++j) b[j] = a[sigma[j] - 1];
    r.set_coefficient(b, c);
  }
  return r;
}

bool nonconstant_product(const std::vector<SparsePolynomial>& factors) {
  int deg = 0;
  for (const auto& f : factors) {
    if (f.is_zero()) return false;
    deg += f.degree().value_or(0);
  }
  return deg >= 1;
}

}  // namespace

ChainDescription build_chain(const SparsePolynomial& p, const AdmissibleCertificate& cert) {
  if (!is_admissible(p, cert.alpha)) throw std::invalid_argument("certificate is not admissible");
  int n = p.dimension();
  std::vector<bool> seen(n, false);
  for (int v : cert.sigma) {
    if (v < 1 || v > n || seen[v - 1]) throw std::invalid_argument("order is not a permutation");
    seen[v - 1] = true;
  }
  if (static_cast<int>(cert.sigma.size()) != n) throw std::invalid_argument("order is not a permutation");

  ChainDescription chain;
  chain.order = cert.sigma;
  chain.reordered = apply_permutation(p, cert.sigma);
  std::vector<int> alpha_perm(n);
  for (int j = 0; j < n; ++j) alpha_perm[j] = cert.alpha[cert.sigma[j] - 1];

  ChainDescription::Level first{1, n, {chain.reordered.partial_derivative(1)}};
  chain.levels.push_back(first);

  SparsePolynomial cur = chain.reordered;
  for (int k = 1; k <= n - 1; ++k) {
    // leading-coefficient extraction in the k-th permuted variable
    SparsePolynomial slice = coefficient_slice(cur, 1, alpha_perm[k - 1]);
    chain.slices.push_back(slice);
    ChainDescription::Level lvl{k + 1, n - k, {}};
    lvl.factors.push_back(slice);
    if (slice.dimension() >= 1) lvl.factors.push_back(slice.partial_derivative(1));
    chain.levels.push_back(lvl);
    cur = slice;
  }

  for (const auto& lvl : chain.levels)
    if (nonconstant_product(lvl.factors)) chain.active.push_back(lvl.index);
  return chain;
}

namespace {

// Shared per-defining-polynomial state for repeated distance queries.
struct DistanceOracle {
  SparsePolynomial f;
  int dim;
  bool trivial_constant;     // nonzero constant: empty zero set
  EvalPlan plan;
  std::vector<EvalPlan> grad;

  explicit DistanceOracle(const SparsePolynomial& defining)
      : f(defining),
        dim(defining.dimension()),
        trivial_constant(defining.is_constant() && !defining.is_zero()),
        plan(defining) {
    for (int i = 1; i <= dim; ++i) grad.emplace_back(defining.partial_derivative(i));
  }

  double axis_nearest(const std::vector<double>& x, double reach) const {
    double best = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < dim; ++axis) {
      // univariate restriction t -> f(x with coordinate `axis` set to t)
      std::vector<double> coeffs;
      for (const auto& [a, c] : f.terms()) {
        double v = c.to_double();
        for (int i = 0; i < dim; ++i) {
          if (i == axis) continue;
          v *= std::pow(x[i], a[i]);
        }
        std::size_t k = static_cast<std::size_t>(a[axis]);
        if (coeffs.size() <= k) coeffs.resize(k + 1, 0.0);
        coeffs[k] += v;
      }
      bool all_zero = true;
      for (double c : coeffs)
        if (c != 0.0) {
          all_zero = false;
          break;
        }
      if (all_zero) return 0.0;  // the whole line lies in the zero set

      RatPoly exact;
      exact.reserve(coeffs.size());
      for (double c : coeffs) exact.push_back(Rational::from_double(c));
      exact = rat_poly_trim(std::move(exact));
      if (exact.size() <= 1) continue;  // nonzero constant along this line

      for (double t : real_roots_in(exact, x[axis] - reach, x[axis] + reach, 1e-10))
        best = std::min(best, std::fabs(t - x[axis]));
    }
    return best;
  }

  double descent_nearest(const std::vector<double>& x, int iterations) const {
    std::vector<double> z = x;
    std::vector<double> trial(dim);
    double fv = plan(z.data());
    for (int it = 0; it < iterations; ++it) {
      if (std::fabs(fv) < 1e-10) break;
      double g2 = 0.0;
      double gi[kMaxDimension];
      for (int i = 0; i < dim; ++i) {
        gi[i] = grad[i](z.data());
        g2 += gi[i] * gi[i];
      }
      if (g2 < 1e-300) return std::numeric_limits<double>::infinity();
      double step = 1.0;
      bool moved = false;
      // Newton step for f=0 along the gradient, halved until |f| decreases
      while (step > 1e-6) {
        for (int i = 0; i < dim; ++i) trial[i] = z[i] - step * fv * gi[i] / g2;
        double ft = plan(trial.data());
        if (std::fabs(ft) < std::fabs(fv)) {
          z = trial;
          fv = ft;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (std::fabs(fv) < 1e-10) {
      double d2 = 0.0;
      for (int i = 0; i < dim; ++i) d2 += (z[i] - x[i]) * (z[i] - x[i]);
      return std::sqrt(d2);
    }
    return std::numeric_limits<double>::infinity();
  }

  double nearest(const std::vector<double>& x, double box_radius, int iterations) const {
    if (f.is_zero()) return 0.0;
    if (trivial_constant) return std::numeric_limits<double>::infinity();
    return std::min(axis_nearest(x, 2.0 * box_radius), descent_nearest(x, iterations));
  }
};

}  // namespace

double distance_upper_bound(const std::vector<double>& x, const SparsePolynomial& defining,
                            double box_radius, int iterations) {
  if (defining.is_zero()) throw std::invalid_argument("defining polynomial is identically zero");
  if (static_cast<int>(x.size()) != defining.dimension())
    throw std::invalid_argument("point dimension mismatch");
  return DistanceOracle(defining).nearest(x, box_radius, iterations);
}

LojaReport lojasiewicz_check(const SparsePolynomial& p, const AdmissibleCertificate& cert,
                             const LojaConfig& config) {
  if (config.samples < 1) throw std::invalid_argument("need at least one sample");
  int n = p.dimension();
  ChainDescription chain = build_chain(p, cert);

  double s = cert.alpha.total();
  double mu = 4.0 / std::pow(p.coefficient(cert.alpha).abs().to_double(), 1.0 / s);

  // oracles: Z(P) in the permuted coordinates, plus each active level
  std::vector<DistanceOracle> oracles;
  std::vector<int> level_dims;
  oracles.emplace_back(chain.reordered);
  level_dims.push_back(n);
  for (int idx : chain.active) {
    const auto& lvl = chain.levels[idx - 1];
    for (const auto& f : lvl.factors) {
      if (f.is_zero() || f.is_constant()) continue;  // constants never vanish
      oracles.emplace_back(f);
      level_dims.push_back(lvl.ambient_dim);
    }
  }

  int threads = resolve_threads(config.threads);
  const long block = 4096;
  long nblocks = (config.samples + block - 1) / block;
  struct Acc {
    long confirmed = 0;
    double max_ratio = 0.0;
  };
  std::vector<Acc> acc(nblocks);

  parallel_for(nblocks, threads, [&](long bi) {
    Acc local;
    long k_lo = bi * block, k_hi = std::min(config.samples, (bi + 1) * block);
    std::vector<double> y(n);
    std::vector<double> tail;
    for (long k = k_lo; k < k_hi; ++k) {
      rng::Stream st(config.seed, rng::kStreamLoja, 0, static_cast<uint32_t>(k));
      for (int i = 0; i < n; ++i) y[i] = st.next_symmetric(config.box_radius);
      // y holds the permuted coordinates directly; the box is symmetric
      double pv = chain.reordered.evaluate(y);
      double rhs_core = std::pow(std::fabs(pv), 1.0 / s);
      double bound = mu * rhs_core;

      double d = std::numeric_limits<double>::infinity();
      for (std::size_t oi = 0; oi < oracles.size(); ++oi) {
        int m = level_dims[oi];
        // trailing coordinates: product structure R^{n-m} x Z
        tail.assign(y.end() - m, y.end());
        d = std::min(d, oracles[oi].nearest(tail, config.box_radius, config.descent_iterations));
      }

      if (d <= bound) {
        ++local.confirmed;
        if (rhs_core > 0.0) local.max_ratio = std::max(local.max_ratio, d / rhs_core);
      }
    }
    acc[bi] = local;
  });

  LojaReport rep;
  rep.samples = config.samples;
  rep.mu_alpha = mu;
  for (const auto& a : acc) {
    rep.confirmed += a.confirmed;
    rep.max_confirmed_ratio = std::max(rep.max_confirmed_ratio, a.max_ratio);
  }
  rep.inconclusive = rep.samples - rep.confirmed;
  return rep;
}

double chebyshev_product(const std::vector<double>& coefficients, int grid_points) {
  if (coefficients.size() < 2) throw std::invalid_argument("need degree at least 1");
  if (grid_points < 2) throw std::invalid_argument("need at least 2 grid points");
  int d = static_cast<int>(coefficients.size()) - 1;
  double m = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double t = static_cast<double>(i) / (grid_points - 1);
    double v = 0.0;
    for (std::size_t k = coefficients.size(); k-- > 0;) v = v * t + coefficients[k];
    m = std::max(m, std::fabs(v));
  }
  return std::ldexp(m, 2 * d - 1);  // 2^{2d-1} * max
}

ChebyshevFloorResult chebyshev_floor_check(int degree, long trials, uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("degree must be at least 1");
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  ChebyshevFloorResult out;
  out.min_product = std::numeric_limits<double>::infinity();
  std::vector<double> coeffs(degree + 1);
  coeffs[degree] = 1.0;
  for (long t = 0; t < trials; ++t) {
    rng::Stream st(seed, rng::kStreamCheb, 0, static_cast<uint32_t>(t));
    for (int k = 0; k < degree; ++k) coeffs[k] = st.next_symmetric(10.0);
    double prod = chebyshev_product(coeffs);
    if (prod < out.min_product) {
      out.min_product = prod;
      out.worst_coefficients = coeffs;
    }
  }
  return out;
}

}  // namespace polyvol
