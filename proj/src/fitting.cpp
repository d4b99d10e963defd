#include "polyvol/fitting.hpp"

#include <cmath>
#include <stdexcept>

namespace polyvol {

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& rel_err) {
  std::size_t m = x.size();
  if (y.size() != m || (!rel_err.empty() && rel_err.size() != m))
    throw std::invalid_argument("fit input lengths differ");
  if (m < 2) throw std::domain_error("fit needs at least 2 points");

  bool weighted = !rel_err.empty();
  if (weighted)
    for (double e : rel_err)
      if (!(e > 0.0)) {
        weighted = false;  // degenerate error bars: fall back to OLS
        break;
      }

  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("fit needs positive data");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    double w = weighted ? 1.0 / (rel_err[i] * rel_err[i]) : 1.0;
    sw += w;
    swx += w * lx[i];
    swy += w * ly[i];
    swxx += w * lx[i] * lx[i];
    swxy += w * lx[i] * ly[i];
  }
  double det = sw * swxx - swx * swx;
  if (!(det > 0.0)) throw std::domain_error("fit abscissae are degenerate");

  PowerLawFit f;
  f.points = static_cast<int>(m);
  f.weighted = weighted;
  f.exponent = (sw * swxy - swx * swy) / det;
  f.intercept = (swxx * swy - swx * swxy) / det;
  f.constant = std::exp(f.intercept);

  double var;
  if (weighted) {
    var = sw / det;  // known-variance covariance (X'WX)^{-1}
  } else {
    double ssr = 0;
    for (std::size_t i = 0; i < m; ++i) {
      double resid = ly[i] - (f.intercept + f.exponent * lx[i]);
      ssr += resid * resid;
    }
    double s2 = m > 2 ? ssr / (m - 2) : 0.0;
    var = s2 * sw / det;
  }
  f.exponent_se = std::sqrt(var);
  f.ci_lo = f.exponent - 1.96 * f.exponent_se;
  f.ci_hi = f.exponent + 1.96 * f.exponent_se;
  return f;
}

EnvelopeFit fit_log_envelope(const std::vector<double>& x, const std::vector<double>& y, int windows) {
  if (x.size() != y.size()) throw std::invalid_argument("envelope input lengths differ");
  if (windows < 2) throw std::invalid_argument("need at least 2 windows");
  double lo = 0, hi = 0;
  bool any = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::domain_error("envelope abscissae must be positive");
    if (!any || x[i] < lo) lo = any ? std::min(lo, x[i]) : x[i];
    hi = any ? std::max(hi, x[i]) : x[i];
    any = true;
  }
  if (!any) throw std::domain_error("no envelope data");

  double llo = std::log(lo), lhi = std::log(hi);
  double width = (lhi - llo) / windows;
  EnvelopeFit out;
  for (int w = 0; w < windows; ++w) {
    double best_y = 0, best_x = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (y[i] <= 0.0) continue;
      double u = std::log(x[i]);
      int bucket = width > 0 ? static_cast<int>((u - llo) / width) : 0;
      if (bucket >= windows) bucket = windows - 1;  // right endpoint
      if (bucket != w) continue;
      if (y[i] > best_y) {
        best_y = y[i];
        best_x = x[i];
      }
    }
    if (best_y > 0) {
      out.env_x.push_back(best_x);
      out.env_y.push_back(best_y);
    }
  }
  if (out.env_x.size() < 3) throw std::domain_error("too few nonzero envelope points");
  out.fit = fit_power_law(out.env_x, out.env_y);
  return out;
}

}  // namespace polyvol
