#include "polyvol/newton.hpp"

#include "polyvol/simplex.hpp"

namespace polyvol {

namespace {

std::vector<ExponentVector> support_of(const SparsePolynomial& p) {
  std::vector<ExponentVector> s;
  s.reserve(p.term_count());
  for (const auto& [a, c] : p.terms()) s.push_back(a);
  return s;
}

}  // namespace

NewtonDistance newton_distance(const SparsePolynomial& p) {
  if (p.is_zero()) throw std::domain_error("distance undefined for the zero polynomial");
  int n = p.dimension();
  auto supp = support_of(p);
  int s = static_cast<int>(supp.size());

  // Variables: lambda_1..lambda_s, then t. Minimize t subject to
  //   sum lambda_a * a_i - t <= 0   for each coordinate i
  //   sum lambda_a = 1
  std::vector<Rational> obj(s + 1, Rational(0));
  obj[s] = Rational(1);
  std::vector<lp::Row> rows;
  for (int i = 0; i < n; ++i) {
    lp::Row r;
    r.a.assign(s + 1, Rational(0));
    for (int k = 0; k < s; ++k) r.a[k] = Rational(supp[k][i]);
    r.a[s] = Rational(-1);
    r.rel = lp::Rel::le;
    r.b = Rational(0);
    rows.push_back(std::move(r));
  }
  lp::Row sum;
  sum.a.assign(s + 1, Rational(0));
  for (int k = 0; k < s; ++k) sum.a[k] = Rational(1);
  sum.rel = lp::Rel::eq;
  sum.b = Rational(1);
  rows.push_back(std::move(sum));

  auto sol = lp::solve(obj, rows);
  if (sol.status != lp::Status::optimal)
    throw std::runtime_error("distance LP did not reach an optimum");

  NewtonDistance out;
  out.value = sol.value;
  out.degenerate = p.is_constant();
  out.combination.assign(n, Rational(0));
  for (int k = 0; k < s; ++k) {
    if (sol.x[k].is_zero()) continue;
    out.weights.emplace_back(supp[k], sol.x[k]);
    for (int i = 0; i < n; ++i) out.combination[i] += sol.x[k] * Rational(supp[k][i]);
  }
  return out;
}

bool newton_membership_exact(const SparsePolynomial& p, const std::vector<Rational>& point) {
  if (p.is_zero()) return false;
  int n = p.dimension();
  if (static_cast<int>(point.size()) != n) throw std::invalid_argument("membership point dimension mismatch");
  for (const auto& v : point)
    if (v.sign() < 0) throw std::invalid_argument("membership point must be nonnegative");
  auto supp = support_of(p);
  int s = static_cast<int>(supp.size());

  std::vector<Rational> obj(s, Rational(0));
  std::vector<lp::Row> rows;
  for (int i = 0; i < n; ++i) {
    lp::Row r;
    r.a.assign(s, Rational(0));
    for (int k = 0; k < s; ++k) r.a[k] = Rational(supp[k][i]);
    r.rel = lp::Rel::le;
    r.b = point[i];
    rows.push_back(std::move(r));
  }
  lp::Row sum;
  sum.a.assign(s, Rational(1));
  sum.rel = lp::Rel::eq;
  sum.b = Rational(1);
  rows.push_back(std::move(sum));

  return lp::solve(obj, rows).status == lp::Status::optimal;
}

bool newton_membership(const SparsePolynomial& p, const std::vector<double>& point) {
  std::vector<Rational> q;
  q.reserve(point.size());
  for (double v : point) q.push_back(Rational::from_double(v));
  return newton_membership_exact(p, q);
}

}  // namespace polyvol
