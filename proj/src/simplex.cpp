#include "polyvol/simplex.hpp"

#include <stdexcept>

namespace polyvol::lp {

namespace {

// Dense tableau: rows m x (cols + 1), last column is the right-hand side.
struct Tableau {
  int m, cols;
  std::vector<std::vector<Rational>> t;  // m rows
  std::vector<Rational> z;               // reduced-cost row, size cols + 1
  std::vector<int> basis;                // basis[i] = column basic in row i

  void pivot(int r, int c) {
    Rational p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || t[i][c].is_zero()) continue;
      Rational f = t[i][c];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
    }
    if (!z[c].is_zero()) {
      Rational f = z[c];
      for (int j = 0; j <= cols; ++j) z[j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Bland's rule: entering = smallest column with negative reduced cost,
  // leaving = smallest basis index among minimal ratios.
  Status run() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (z[j].sign() < 0) {
          enter = j;
          break;
        }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter].sign() <= 0) continue;
        Rational ratio = t[i][cols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Solution solve(const std::vector<Rational>& objective, const std::vector<Row>& rows) {
  int n = static_cast<int>(objective.size());
  int m = static_cast<int>(rows.size());
  for (const auto& r : rows)
    if (static_cast<int>(r.a.size()) != n) throw std::invalid_argument("lp row width mismatch");

  // Normalize to equalities with b >= 0, adding slack columns for
  // inequalities and artificial columns where no natural basis exists.
  struct Norm {
    std::vector<Rational> a;
    Rational b;
    int slack_sign;  // +1 slack, -1 surplus, 0 none
  };
  std::vector<Norm> eq(m);
  int slacks = 0;
  for (int i = 0; i < m; ++i) {
    Norm& e = eq[i];
    e.a = rows[i].a;
    e.b = rows[i].b;
    Rel rel = rows[i].rel;
    if (e.b.sign() < 0) {
      for (auto& v : e.a) v = -v;
      e.b = -e.b;
      if (rel == Rel::le)
        rel = Rel::ge;
      else if (rel == Rel::ge)
        rel = Rel::le;
    }
    e.slack_sign = rel == Rel::le ? 1 : rel == Rel::ge ? -1 : 0;
    if (e.slack_sign != 0) ++slacks;
  }

  int cols = n + slacks + m;  // worst case: one artificial per row
  Tableau tb;
  tb.m = m;
  tb.cols = cols;
  tb.t.assign(m, std::vector<Rational>(cols + 1, Rational(0)));
  tb.z.assign(cols + 1, Rational(0));
  tb.basis.assign(m, -1);

  int next_slack = n;
  int next_art = n + slacks;
  std::vector<int> artificial;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tb.t[i][j] = eq[i].a[j];
    tb.t[i][cols] = eq[i].b;
    if (eq[i].slack_sign != 0) {
      tb.t[i][next_slack] = Rational(eq[i].slack_sign);
      if (eq[i].slack_sign > 0) tb.basis[i] = next_slack;
      ++next_slack;
    }
    if (tb.basis[i] < 0) {
      tb.t[i][next_art] = Rational(1);
      tb.basis[i] = next_art;
      artificial.push_back(next_art);
      ++next_art;
    }
  }

  // Phase 1: minimize the sum of artificials.
  if (!artificial.empty()) {
    for (int c : artificial) tb.z[c] = Rational(1);
    for (int i = 0; i < m; ++i) {
      if (tb.z[tb.basis[i]].is_zero()) continue;
      Rational f = tb.z[tb.basis[i]];
      for (int j = 0; j <= cols; ++j) tb.z[j] -= f * tb.t[i][j];
    }
    if (tb.run() != Status::optimal) return {Status::infeasible, Rational(0), {}};
    if ((-tb.z[cols]).sign() > 0) return {Status::infeasible, Rational(0), {}};
    // Drive remaining artificials out of the basis where possible.
    for (int i = 0; i < m; ++i) {
      if (tb.basis[i] < n + slacks) continue;
      int c = -1;
      for (int j = 0; j < n + slacks; ++j)
        if (!tb.t[i][j].is_zero()) {
          c = j;
          break;
        }
      if (c >= 0) tb.pivot(i, c);
      // else the row is redundant; the artificial stays basic at zero
    }
  }

  // Phase 2 with the real objective; artificial columns are frozen out.
  tb.z.assign(cols + 1, Rational(0));
  for (int j = 0; j < n; ++j) tb.z[j] = objective[j];
  for (int c : artificial) tb.z[c] = Rational(0);
  for (int i = 0; i < m; ++i) {
    if (tb.z[tb.basis[i]].is_zero()) continue;
    Rational f = tb.z[tb.basis[i]];
    for (int j = 0; j <= cols; ++j) tb.z[j] -= f * tb.t[i][j];
  }
  // Forbid artificials from re-entering: their reduced costs were zeroed, and
  // Bland's rule only enters strictly negative columns, but a pivot could make
  // them negative. Guard by marking them with a large positive cost instead.
  // Exactness makes "large" awkward, so simply re-run and skip those columns.
  for (;;) {
    int enter = -1;
    for (int j = 0; j < n + slacks; ++j)
      if (tb.z[j].sign() < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (tb.t[i][enter].sign() <= 0) continue;
      Rational ratio = tb.t[i][cols] / tb.t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && tb.basis[i] < tb.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return {Status::unbounded, Rational(0), {}};
    tb.pivot(leave, enter);
  }

  std::vector<Rational> x(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (tb.basis[i] < n) x[tb.basis[i]] = tb.t[i][cols];
  Rational value(0);
  for (int j = 0; j < n; ++j) value += objective[j] * x[j];
  return {Status::optimal, value, x};
}

}  // namespace polyvol::lp
