#pragma once

/// Least-squares trend fits used by the diagnostics and comparison
/// reports.  Sequences of interest behave like  c * k^beta * (ln k)^delta,
/// so besides the plain line fit in log-log coordinates there is a
/// three-parameter fit
///
///   log y = c + beta log k + delta log log k,
///
/// which recovers beta exactly for power-times-log data where a plain
/// slope would blur the logarithm into the exponent.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "rieszspec/types.hpp"

namespace rieszspec {

struct LineFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;  // standard error of the slope
  double rms = 0.0;       // residual RMS
  int n = 0;
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys)
{
  LineFit fit;
  fit.n = static_cast<int>(xs.size());
  if (xs.size() != ys.size() || xs.size() < 3)
    fail(Errc::InvalidConfig, "fit_line needs >= 3 points");
  const int n = fit.n;
  double mean_x = 0.0, mean_y = 0.0;
  for (int i = 0; i < n; ++i)
  {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i)
  {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (sxx == 0.0)
    fail(Errc::InvalidConfig, "fit_line needs distinct abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  double ss_res = 0.0;
  for (int i = 0; i < n; ++i)
  {
    const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss_res += e * e;
  }
  fit.rms = std::sqrt(ss_res / n);
  const double var = n > 2 ? ss_res / (n - 2) : 0.0;
  fit.slope_se = std::sqrt(var / sxx);
  return fit;
}

struct PowerLogFit
{
  double c = 0.0;      // log prefactor
  double beta = 0.0;   // power-law exponent
  double delta = 0.0;  // exponent of the ln k factor
  double beta_se = 0.0;
  double delta_se = 0.0;
  double rms = 0.0;
  int n = 0;
};

/// Fit of log y against [1, log k, log log k]; requires k >= 2 and y > 0.
inline PowerLogFit fit_power_log(const std::vector<double>& ks, const std::vector<double>& ys)
{
  PowerLogFit fit;
  fit.n = static_cast<int>(ks.size());
  if (ks.size() != ys.size() || ks.size() < 4)
    fail(Errc::InvalidConfig, "fit_power_log needs >= 4 points");
  const int n = fit.n;
  Eigen::MatrixXd X(n, 3);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i)
  {
    if (!(ks[i] >= 2.0) || !(ys[i] > 0.0))
      fail(Errc::InvalidConfig, "fit_power_log needs k >= 2 and positive values");
    const double lk = std::log(ks[i]);
    X(i, 0) = 1.0;
    X(i, 1) = lk;
    X(i, 2) = std::log(lk);
    y(i) = std::log(ys[i]);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::VectorXd coef = qr.solve(y);
  fit.c = coef(0);
  fit.beta = coef(1);
  fit.delta = coef(2);
  const Eigen::VectorXd resid = y - X * coef;
  fit.rms = std::sqrt(resid.squaredNorm() / n);
  const double var = n > 3 ? resid.squaredNorm() / (n - 3) : 0.0;
  const Eigen::MatrixXd cov = var * (X.transpose() * X).inverse();
  fit.beta_se = std::sqrt(std::max(0.0, cov(1, 1)));
  fit.delta_se = std::sqrt(std::max(0.0, cov(2, 2)));
  return fit;
}

}  // namespace rieszspec
