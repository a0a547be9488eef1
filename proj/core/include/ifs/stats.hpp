#pragma once

#include <utility>
#include <vector>

namespace ifs {

// Standard normal CDF via erfc (accurate to ~1e-16 over the real line).
double normal_cdf(double z);

// Asymptotic Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1}
// exp(-2 k^2 lambda^2), evaluated with at least 10 terms (100 are used).
double kolmogorov_pvalue(double lambda);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// One-sample Kolmogorov-Smirnov test against N(0, sigma). sigma > 0.
KsResult ks_one_sample_normal(std::vector<double> samples, double sigma);

// Two-sample Kolmogorov-Smirnov statistic (no p-value).
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// Mean and jackknife standard error of the mean.
std::pair<double, double> mean_with_stderr(const std::vector<double>& xs);

// Least-squares fit y = a + b x; returns (slope, intercept).
std::pair<double, double> linear_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

// Approximate chi-square quantile (Wilson-Hilferty).
double chi2_quantile(double p, double dof);

}  // namespace ifs
