#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lzlab::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// P(K > lambda) for the Kolmogorov distribution.
double kolmogorov_survival(double lambda);

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
TestResult ks_one_sample(std::vector<double> data, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test with effective size n1 n2 / (n1 + n2).
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Pearson chi-squared goodness of fit; degrees of freedom = bins - 1 - fitted.
TestResult chi_squared_gof(std::span<const double> observed, std::span<const double> expected, int fitted = 0);

struct MeanEstimate {
  double mean = 0.0;
  double std_err = 0.0;
};

MeanEstimate mean_and_stderr(std::span<const double> x);

}  // namespace lzlab::stats
