#pragma once

// Reference implementations used only to cross-check the library. They share
// no code with it: a map-keyed polynomial with its own arithmetic and Laplace
// determinant, and a pairwise bisection oracle for the diagonal hull distance
// in two variables.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "polyvol/polynomial.hpp"
#include "polyvol/rational.hpp"

namespace testoracle {

using polyvol::Rational;
using Key = std::vector<int>;
using RefPoly = std::map<Key, Rational>;

inline RefPoly from_sparse(const polyvol::SparsePolynomial& p) {
  RefPoly out;
  for (const auto& [a, c] : p.terms()) out[a.e] = c;
  return out;
}

inline void add_term(RefPoly& p, const Key& k, const Rational& c) {
  auto it = p.find(k);
  if (it == p.end()) {
    if (!c.is_zero()) p.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) p.erase(it);
}

inline RefPoly add(const RefPoly& a, const RefPoly& b) {
  RefPoly out = a;
  for (const auto& [k, c] : b) add_term(out, k, c);
  return out;
}

inline RefPoly scale(const RefPoly& a, const Rational& c) {
  RefPoly out;
  if (c.is_zero()) return out;
  for (const auto& [k, v] : a) out[k] = v * c;
  return out;
}

inline RefPoly mul(const RefPoly& a, const RefPoly& b) {
  RefPoly out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      Key k(ka.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
      add_term(out, k, ca * cb);
    }
  return out;
}

inline RefPoly diff(const RefPoly& a, int axis) {  // 0-based
  RefPoly out;
  for (const auto& [k, c] : a) {
    if (k[axis] == 0) continue;
    Key kk = k;
    kk[axis] -= 1;
    add_term(out, kk, c * Rational(k[axis]));
  }
  return out;
}

inline RefPoly det(const std::vector<std::vector<RefPoly>>& m) {
  std::size_t n = m.size();
  if (n == 1) return m[0][0];
  RefPoly out;
  int sign = 1;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<RefPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<RefPoly> row;
      for (std::size_t jj = 0; jj < n; ++jj)
        if (jj != j) row.push_back(m[i][jj]);
      minor.push_back(row);
    }
    RefPoly term = mul(m[0][j], det(minor));
    if (sign < 0) term = scale(term, Rational(-1));
    out = add(out, term);
    sign = -sign;
  }
  return out;
}

/// Q_1..Q_{levels+1} with Q_{m+1} = det(d Q_i / d x_j)_{i,j<=m}, entirely in
/// the reference arithmetic.
inline std::vector<RefPoly> chain(const polyvol::SparsePolynomial& p, int levels) {
  std::vector<RefPoly> qs{from_sparse(p)};
  for (int m = 1; m <= levels; ++m) {
    std::vector<std::vector<RefPoly>> jac(m, std::vector<RefPoly>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) jac[i][j] = diff(qs[i], j);
    qs.push_back(det(jac));
  }
  return qs;
}

inline bool equal(const RefPoly& a, const polyvol::SparsePolynomial& b) {
  return a == from_sparse(b);
}

/// Smallest t with (t, t) in conv(support) + R_+^2, by bisection. At a given
/// t, feasibility is decided per support pair: a segment point theta*a +
/// (1-theta)*b lies at or below (t, t) for some theta in [0, 1]. The minimum
/// of max(y1, y2) over a planar polytope sits on a vertex or edge, so pairs
/// suffice in two variables.
inline double diagonal_bisection(const polyvol::SparsePolynomial& p) {
  std::vector<std::array<double, 2>> pts;
  for (const auto& [a, c] : p.terms()) pts.push_back({double(a[0]), double(a[1])});
  auto feasible = [&](double t) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i; j < pts.size(); ++j) {
        double lo = 0.0, hi = 1.0;
        for (int d = 0; d < 2; ++d) {
          double ai = pts[i][d], aj = pts[j][d];
          double num = t - aj, den = ai - aj;
          if (std::fabs(den) < 1e-12) {
            if (aj > t + 1e-12) lo = 2.0;
          } else if (den > 0) {
            hi = std::min(hi, num / den);
          } else {
            lo = std::max(lo, num / den);
          }
        }
        if (lo <= hi + 1e-12) return true;
      }
    return false;
  };
  double hi = 0.0;
  for (const auto& q : pts) hi = std::max({hi, q[0], q[1]});
  if (feasible(0.0)) return 0.0;
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

/// Numerical minimizer for f(x) = a1/x1 + a2 x1/x2 + ... + a_n x_{n-1}/x_n
/// + x_n^{1/l} by cyclic coordinate descent. Each coordinate solve is exact:
/// in x_i (i < n) the objective is A/t + B t with minimizer sqrt(A/B), and in
/// x_n it is A/t + t^{1/l} with minimizer (A l)^{l/(l+1)}.
inline std::pair<double, std::vector<double>> amgm_descent(const std::vector<double>& a, int l) {
  int n = static_cast<int>(a.size());
  std::vector<double> x(n, 1.0);
  auto objective = [&] {
    double v = 0.0, prefix = 1.0;
    for (int i = 0; i < n; ++i) {
      v += a[i] * prefix / x[i];
      prefix *= x[i];
    }
    return v + std::pow(x[n - 1], 1.0 / l);
  };
  double prev = objective();
  for (int sweep = 0; sweep < 500; ++sweep) {
    for (int i = 0; i < n; ++i) {
      double pre = 1.0;
      for (int k = 0; k < i; ++k) pre *= x[k];
      double A = a[i] * pre;
      if (i + 1 < n) {
        // x_i multiplies every later term through the prefix product
        double B = 0.0, run = pre;
        for (int j = i + 1; j < n; ++j) {
          B += a[j] * run / x[j];
          run *= x[j];
        }
        x[i] = std::sqrt(A / B);
      } else {
        x[i] = std::pow(A * l, double(l) / (l + 1));
      }
    }
    double cur = objective();
    if (std::fabs(prev - cur) <= 1e-14 * std::fabs(cur)) break;
    prev = cur;
  }
  return {objective(), x};
}

inline polyvol::SparsePolynomial random_poly(std::mt19937_64& rng, int dim, int max_terms,
                                             int max_exp) {
  std::uniform_int_distribution<int> nterms(1, max_terms), expd(0, max_exp), coef(-9, 9);
  polyvol::SparsePolynomial p(dim);
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    polyvol::ExponentVector a(dim);
    for (int d = 0; d < dim; ++d) a[d] = expd(rng);
    int c = coef(rng);
    if (c == 0) c = 1;
    p.set_coefficient(a, p.coefficient(a) + Rational(c));
  }
  return p;
}

/// Variable relabeling x_i -> x_{pi[i-1]} applied to every exponent vector.
inline polyvol::SparsePolynomial relabel(const polyvol::SparsePolynomial& p,
                                         const std::vector<int>& pi) {
  polyvol::SparsePolynomial q(p.dimension());
  for (const auto& [a, c] : p.terms()) {
    polyvol::ExponentVector b(p.dimension());
    for (int i = 0; i < p.dimension(); ++i) b[pi[i] - 1] = a[i];
    q.set_coefficient(b, c);
  }
  return q;
}

}  // namespace testoracle
