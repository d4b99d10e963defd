#include "polyvol/bounds.hpp"

#include <cmath>
#include <numbers>

namespace polyvol {

bool BoundPrediction::in_validity_region(double r, double delta) const {
  if (r <= 0.0 || delta <= 0.0) return false;
  if (!constraint_delta_power) return true;
  return r > constraint_m * std::pow(delta, constraint_delta_power->to_double());
}

double BoundPrediction::shape(double delta, double r) const {
  double primary = known_factor * std::pow(delta, delta_exponent.to_double()) *
                   std::pow(r, r_exponent.to_double());
  if (!secondary_delta_exponent) return primary;
  double inner = known_factor * std::pow(delta, delta_exponent.to_double());
  return primary + std::pow(inner, dimension);
}

double amgm_objective(const std::vector<double>& a, int l, const std::vector<double>& x) {
  std::size_t n = a.size();
  if (x.size() != n) throw std::invalid_argument("objective point has wrong length");
  double s = 0.0, prefix = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    s += a[j] * prefix / x[j];
    prefix *= x[j];
  }
  return s + std::pow(x[n - 1], 1.0 / l);
}

AmgmResult amgm_minimize(const std::vector<double>& a, int l) {
  int n = static_cast<int>(a.size());
  if (n < 2) throw std::invalid_argument("minimizer needs at least two weights");
  if (l < 1) throw std::invalid_argument("root order l must be positive");
  for (double v : a)
    if (!(v > 0.0)) throw std::invalid_argument("weights must be strictly positive");

  // N equal terms in the arithmetic-geometric split: l copies of x_n^{1/l}/l,
  // the a_n term, and 2^{n-j-1} copies of term j (j < n).
  double nn = std::ldexp(1.0, n - 1) + l;
  double log_c = -l * std::log(static_cast<double>(l));
  for (int j = 1; j <= n - 1; ++j) log_c -= (n - j - 1) * std::ldexp(1.0, n - j - 1) * std::numbers::ln2;
  double cnl = nn * std::exp(log_c / nn);

  double log_phi = std::log(a[n - 1]);
  for (int j = 1; j <= n - 1; ++j) log_phi += std::ldexp(1.0, n - 1 - j) * std::log(a[j - 1]);
  double phi = std::exp(log_phi);

  AmgmResult out;
  out.cnl = cnl;
  out.phi = phi;
  out.min_value = cnl * std::exp(log_phi / nn);

  // Equality chain: every split term equals v = min/N at the optimum.
  double v = out.min_value / nn;
  out.argmin.assign(n, 0.0);
  double prefix = 1.0;
  for (int j = 1; j <= n - 1; ++j) {
    out.argmin[j - 1] = a[j - 1] * prefix / (std::ldexp(1.0, n - j - 1) * v);
    prefix *= out.argmin[j - 1];
  }
  out.argmin[n - 1] = std::pow(l * v, static_cast<double>(l));
  return out;
}

namespace {

Rational mu_alpha_factor_den(const SparsePolynomial& p, const ExponentVector& alpha) {
  return p.coefficient(alpha).abs();
}

double mu_alpha(const SparsePolynomial& p, const ExponentVector& alpha) {
  double mag = mu_alpha_factor_den(p, alpha).to_double();
  return 4.0 / std::pow(mag, 1.0 / alpha.total());
}

void require_valid_certificate(const SparsePolynomial& p, const AdmissibleCertificate& cert) {
  auto found = is_admissible(p, cert.alpha);
  if (!found) throw std::invalid_argument("certificate monomial is not admissible");
}

}  // namespace

BoundPrediction admissible_tube_bound(const SparsePolynomial& p, const AdmissibleCertificate& cert) {
  require_valid_certificate(p, cert);
  int n = p.dimension();
  int s = cert.alpha.total();
  BoundPrediction b;
  b.kind = BoundPrediction::Kind::volume;
  b.dimension = n;
  b.delta_exponent = Rational(1, s);
  b.secondary_delta_exponent = Rational(n, s);
  b.r_exponent = Rational(n - 1);
  b.known_factor = mu_alpha(p, cert.alpha);
  b.constant_fitted = true;
  b.constraint_text = "all r > 0, delta > 0";
  b.source = "admissible-tube";
  b.alpha = cert.alpha;
  return b;
}

BoundPrediction chain_volume_bound(const SparsePolynomial& p, int l,
                                   std::optional<ExponentVector> alpha_choice) {
  int n = p.dimension();
  if (l < 1 || l > n) throw std::invalid_argument("chain length out of range");
  auto chain = jacobian_chain(p, l);
  const SparsePolynomial& tail = chain.back();
  if (!tail.degree() || *tail.degree() < 1)
    throw std::domain_error("chain tail is constant; refined bound does not apply");

  ExponentVector alpha;
  if (alpha_choice) {
    if (!is_admissible(tail, *alpha_choice))
      throw std::invalid_argument("chosen monomial is not admissible for the chain tail");
    alpha = *alpha_choice;
  } else {
    alpha = admissible_degree(tail).argmin.alpha;
  }
  int s = alpha.total();
  auto [theta, tau] = theta_tau(l, s);

  BoundPrediction b;
  b.kind = BoundPrediction::Kind::volume;
  b.dimension = n;
  b.delta_exponent = tau;
  b.r_exponent = Rational(n - 1) + theta;
  b.known_factor = 1.0;
  b.constant_fitted = true;
  b.constraint_m = 1.0;
  b.constraint_delta_power = Rational(s, s + 1);
  b.constraint_text = "r > M*delta^(" + std::to_string(s) + "/" + std::to_string(s + 1) +
                      "), M fitted (default 1)";
  b.source = "jacobian-chain";
  b.theta = theta;
  b.tau = tau;
  b.alpha = alpha;
  b.chain_length = l;
  return b;
}

BoundPrediction degree_baseline_bound(const SparsePolynomial& p) {
  auto deg = p.degree();
  if (!deg || *deg < 1) throw std::domain_error("baseline bound needs degree at least 1");
  int d = *deg;
  int n = p.dimension();
  // graded-lex smallest top-degree support monomial
  std::optional<ExponentVector> alpha;
  for (const auto& [a, c] : p.terms()) {
    if (a.total() != d) continue;
    if (!alpha) alpha = a;  // terms iterate in increasing graded-lex order
  }
  double fact = 1.0;
  for (int i = 0; i < n; ++i)
    for (int k = 2; k <= (*alpha)[i]; ++k) fact *= k;
  double mag = p.coefficient(*alpha).abs().to_double();

  BoundPrediction b;
  b.kind = BoundPrediction::Kind::volume;
  b.dimension = n;
  b.delta_exponent = Rational(1, d);
  b.r_exponent = Rational(n - 1);
  b.known_factor = 1.0 / std::pow(fact * mag, 1.0 / d);
  b.constant_fitted = true;
  b.constraint_text = "all r > 0, delta > 0";
  b.source = "degree-baseline";
  b.alpha = alpha;
  return b;
}

double IntegrabilityBounds::growth_volume(double mu) const { return dimension - mu * ad; }

std::optional<std::pair<double, double>> IntegrabilityBounds::growth_chain(double mu) const {
  if (!best_chain) return std::nullopt;
  double s = best_chain->alpha.total();
  double first = dimension - mu * (s + 1.0) / s;
  double second = dimension + best_chain->theta.to_double() - best_chain->tau.to_double() / mu;
  return std::make_pair(first, second);
}

IntegrabilityBounds integrability_bounds(const SparsePolynomial& p) {
  if (!p.coefficient(ExponentVector(p.dimension())).is_zero())
    throw std::domain_error("index bounds require P(0) = 0");
  auto deg = p.degree();
  if (!deg || *deg < 1) throw std::domain_error("index bounds require degree at least 1");

  IntegrabilityBounds out;
  int n = p.dimension();
  out.dimension = n;
  auto ad = admissible_degree(p);
  out.ad = ad.value;
  out.ad_alpha = ad.argmin.alpha;
  out.lower_ad = Rational(1, ad.value);

  for (int l = 1; l <= n; ++l) {
    BoundPrediction b;
    try {
      b = chain_volume_bound(p, l);
    } catch (const std::domain_error&) {
      continue;  // chain tail constant for this l
    }
    ChainIndexBound cb{l, *b.alpha, *b.theta, *b.tau};
    out.chain_bounds.push_back(cb);
    if (!out.best_chain || cb.tau > out.best_chain->tau) out.best_chain = cb;
  }

  out.nd = newton_distance(p).value;
  // gradient at the origin = constant terms of the partial derivatives
  ExponentVector zero(n);
  bool grad_zero = true;
  for (int i = 1; i <= n; ++i)
    if (!p.partial_derivative(i).coefficient(zero).is_zero()) {
      grad_zero = false;
      break;
    }
  out.gradient_vanishes = grad_zero;
  if (grad_zero && out.nd.sign() > 0) {
    out.upper_nd = Rational(1) / out.nd;
  } else if (!grad_zero) {
    out.note = "gradient at the origin is nonzero; the hull-distance upper bound on the index is omitted";
  }
  return out;
}

OscillatoryBound oscillatory_decay_bound(const SparsePolynomial& p) {
  auto deg = p.degree();
  if (!deg || *deg < 1) throw std::domain_error("decay bound needs degree at least 1");
  auto ad = admissible_degree(p);

  OscillatoryBound out;
  out.ad = ad.value;
  out.degree = *deg;
  out.baseline_lambda_exponent = Rational(-1, *deg);

  BoundPrediction b;
  b.kind = BoundPrediction::Kind::oscillatory;
  b.dimension = p.dimension();
  b.r_exponent = Rational(p.dimension() - 1);
  b.lambda_exponent = Rational(-1, ad.value);
  b.known_factor = 1.0;
  b.constant_fitted = true;
  b.constraint_text = "lambda > 1, r > 0";
  b.source = "oscillatory-decay";
  b.alpha = ad.argmin.alpha;
  out.bound = b;
  return out;
}

}  // namespace polyvol
