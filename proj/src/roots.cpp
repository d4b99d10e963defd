#include "polyvol/roots.hpp"

#include <algorithm>
#include <cmath>

namespace polyvol {

RatPoly rat_poly_trim(RatPoly c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
  return c;
}

RatPoly rat_poly_derivative(const RatPoly& c) {
  RatPoly d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * Rational(static_cast<long>(k)));
  return rat_poly_trim(std::move(d));
}

std::pair<RatPoly, RatPoly> rat_poly_divmod(const RatPoly& a, const RatPoly& b) {
  RatPoly divisor = rat_poly_trim(b);
  if (divisor.empty()) throw std::domain_error("polynomial division by zero");
  RatPoly rem = rat_poly_trim(a);
  if (rem.size() < divisor.size()) return {{}, rem};
  RatPoly quot(rem.size() - divisor.size() + 1, Rational(0));
  const Rational lead = divisor.back();
  for (std::size_t shift = quot.size(); shift-- > 0;) {
    std::size_t k = shift + divisor.size() - 1;
    if (rem[k].is_zero()) continue;
    Rational f = rem[k] / lead;
    quot[shift] = f;
    for (std::size_t j = 0; j < divisor.size(); ++j) rem[shift + j] -= f * divisor[j];
  }
  return {rat_poly_trim(std::move(quot)), rat_poly_trim(std::move(rem))};
}

RatPoly rat_poly_gcd(RatPoly a, RatPoly b) {
  a = rat_poly_trim(std::move(a));
  b = rat_poly_trim(std::move(b));
  while (!b.empty()) {
    auto [q, r] = rat_poly_divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;  // monic normalization
  }
  return a;
}

RatPoly square_free_part(const RatPoly& c) {
  RatPoly p = rat_poly_trim(c);
  if (p.size() <= 1) return p;
  RatPoly g = rat_poly_gcd(p, rat_poly_derivative(p));
  if (g.size() <= 1) return p;
  auto [q, r] = rat_poly_divmod(p, g);
  return q;  // remainder is exactly zero by construction
}

namespace {

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

double bisect(const std::vector<double>& c, double a, double b, double fa, double tol) {
  for (int it = 0; it < 200 && b - a > tol * 0.5; ++it) {
    double m = 0.5 * (a + b);
    double fm = horner(c, m);
    if (fm == 0.0) return m;
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Roots of a square-free double polynomial by derivative recursion: the
// critical points partition [lo, hi] into monotone pieces.
void roots_monotone(const std::vector<double>& c, double lo, double hi, double tol,
                    std::vector<double>& out) {
  std::size_t deg = c.size() - 1;
  if (deg == 0) return;
  if (deg == 1) {
    double r = -c[0] / c[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return;
  }
  std::vector<double> dc(deg);
  for (std::size_t k = 1; k <= deg; ++k) dc[k - 1] = c[k] * static_cast<double>(k);
  std::vector<double> crit;
  roots_monotone(dc, lo, hi, tol, crit);

  std::vector<double> pts{lo};
  for (double t : crit)
    if (t > pts.back()) pts.push_back(t);
  if (hi > pts.back()) pts.push_back(hi);

  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    double fa = horner(c, a), fb = horner(c, b);
    if (fa == 0.0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) out.push_back(bisect(c, a, b, fa, tol));
  }
  if (horner(c, hi) == 0.0) out.push_back(hi);
}

}  // namespace

std::vector<double> real_roots_in(const RatPoly& c, double lo, double hi, double tol) {
  if (!(lo < hi)) throw std::invalid_argument("empty root interval");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  RatPoly p = rat_poly_trim(c);
  if (p.empty()) throw std::domain_error("root isolation on the zero polynomial");

  RatPoly sf = square_free_part(p);
  std::vector<double> dc(sf.size());
  double scale = 0.0;
  for (std::size_t k = 0; k < sf.size(); ++k) {
    dc[k] = sf[k].to_double();
    scale = std::max(scale, std::fabs(dc[k]));
  }
  if (scale > 0)
    for (auto& v : dc) v /= scale;

  std::vector<double> raw;
  roots_monotone(dc, lo, hi, tol, raw);
  std::sort(raw.begin(), raw.end());
  std::vector<double> out;
  for (double r : raw)
    if (out.empty() || r - out.back() > tol) out.push_back(r);
  return out;
}

std::vector<double> univariate_real_roots(const SparsePolynomial& q, double lo, double hi, double tol) {
  if (q.dimension() != 1) throw std::invalid_argument("root isolation expects one variable");
  return real_roots_in(dense_coefficients(q), lo, hi, tol);
}

RatPoly dense_coefficients(const SparsePolynomial& q) {
  if (q.dimension() != 1) throw std::invalid_argument("dense form expects one variable");
  RatPoly c;
  for (const auto& [a, coef] : q.terms()) {
    std::size_t k = static_cast<std::size_t>(a[0]);
    if (c.size() <= k) c.resize(k + 1, Rational(0));
    c[k] = coef;
  }
  return rat_poly_trim(std::move(c));
}

}  // namespace polyvol
