#pragma once

#include <vector>

namespace polyvol {

/// Power law y = constant * x^exponent fitted in log-log space.
struct PowerLawFit {
  double exponent = 0.0;
  double exponent_se = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;  // 95% interval on the exponent
  double intercept = 0.0;
  double constant = 1.0;            // exp(intercept)
  int points = 0;
  bool weighted = false;
};

/// Fits log y on log x. When rel_err (per-point relative standard errors of y)
/// is nonempty and all positive, uses weighted least squares with known
/// variances; otherwise ordinary least squares with residual-based variance.
/// Requires at least 2 points, all x and y positive.
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y,
                          const std::vector<double>& rel_err = {});

/// Upper envelope of a scatter: the maximal y within each of `windows`
/// log-uniform x-windows, located at the x attaining it. Points with y <= 0
/// are skipped. The fit runs on the envelope points.
struct EnvelopeFit {
  std::vector<double> env_x, env_y;
  PowerLawFit fit;
};

EnvelopeFit fit_log_envelope(const std::vector<double>& x, const std::vector<double>& y, int windows);

}  // namespace polyvol
