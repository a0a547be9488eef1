#include "ifs/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ifs/errors.hpp"

namespace ifs {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double kolmogorov_pvalue(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // The alternating series converges too slowly here; use the theta-dual
    // form 1 - sqrt(2*pi)/lambda * sum exp(-(2k-1)^2 pi^2 / (8 lambda^2)).
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double e = (2.0 * k - 1.0) * M_PI / lambda;
      const double term = std::exp(-e * e / 8.0);
      sum += term;
      if (term < 1e-18) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * M_PI) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample_normal(std::vector<double> samples, double sigma) {
  if (samples.empty()) throw ValidationError("ks: empty sample");
  if (!(sigma > 0.0)) throw ValidationError("ks: sigma must be positive");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = normal_cdf(samples[i] / sigma);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  KsResult r;
  r.statistic = d;
  r.p_value = kolmogorov_pvalue(std::sqrt(n) * d);
  return r;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= v) ++ia;
    while (ib < b.size() && b[ib] <= v) ++ib;
    d = std::max(d, std::abs(ia / na - ib / nb));
  }
  return d;
}

std::pair<double, double> mean_with_stderr(const std::vector<double>& xs) {
  if (xs.empty()) throw ValidationError("mean_with_stderr: empty sample");
  const double n = static_cast<double>(xs.size());
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  const double mean = s / n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  // Jackknife stderr of the mean coincides with sd/sqrt(n).
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw ValidationError("linear_fit: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (!(std::abs(denom) > 1e-30))
    throw ValidationError("linear_fit: degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / n};
}

double chi2_quantile(double p, double dof) {
  if (!(p > 0.0 && p < 1.0) || !(dof > 0.0))
    throw ValidationError("chi2_quantile: bad arguments");
  // Wilson-Hilferty cube approximation; adequate for test thresholds.
  // Inverse normal via Acklam-style rational approximation through erfc is
  // overkill here; use Newton on normal_cdf instead.
  double z = 0.0;
  for (int it = 0; it < 60; ++it) {
    const double f = normal_cdf(z) - p;
    const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    if (pdf < 1e-300) break;
    const double step = f / pdf;
    z -= step;
    if (std::abs(step) < 1e-12) break;
  }
  const double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
  return dof * t * t * t;
}

}  // namespace ifs
