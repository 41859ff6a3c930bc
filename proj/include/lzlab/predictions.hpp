#pragma once

#include "lzlab/common.hpp"
#include "lzlab/rational.hpp"
#include "lzlab/testfn.hpp"

#include <span>
#include <vector>

namespace lzlab {

/// Limit of the n-th centered moment of the linear statistic.
struct MomentPrediction {
  Parity parity = Parity::even;
  int n = 0;
  double sigma = 0.0;
  double gaussian_part = 0.0;
  double correction = 0.0;
  double value = 0.0;
};

/// Limit mean: hat(0) + (1/2) \int_{-1}^{1} hat, plus \int_{|y|>=1} hat for odd parity.
double mean_limit(Parity parity, const TestFunction& f);

/// 2 \int_{-range}^{range} |y| hat(y)^2 dy, exact.
double sigma2(const TestFunction& f, double range = 1.0);

/// (-1)^{n-1} 2^{n-1} [\int phi^n S(2x) dx - phi(0)^n / 2] with the integral by x-space quadrature.
double r_n(const TestFunction& f, int n);
/// Same quantity from the exact hat-side tail mass: (-1)^n 2^{n-2} \int hat^{*n} 1_{|t|>1}.
double r_n_hat(const TestFunction& f, int n);

/// \iint_A hat(u) hat(v) du dv with A = {|u+v| >= 1} and {|u-v| <= 1}, exact.
double variance_band_integral(const TestFunction& f);
/// 2 \int min(|y|,1) hat^2  +/- variance_band_integral (plus for even parity).
double variance_limit(Parity parity, const TestFunction& f);

/// Throws OutOfRangeError when sigma > 1/(n-1).
MomentPrediction centered_moment_prediction(Parity parity, int n, const TestFunction& f);

/// (2m-1)!! for n = 2m; 0 for odd n.
double gaussian_moment_factor(int n);

/// A composition (lambda_1, ..., lambda_m) of n with coefficient (-1)^{m+1}/m * n!/prod lambda_j!.
struct CompositionTerm {
  std::vector<int> lambda;
  Rational coefficient;
  int m() const { return static_cast<int>(lambda.size()); }
};

/// All 2^{n-1} compositions of n, ordered by their cut mask.
std::vector<CompositionTerm> compositions(int n);

enum class CompositionWeight { plain, two_pow_minus_2m };

/// Plain sum is [n == 1]; weighted sum is 2(-1)^n for n >= 2.
Rational composition_sum(int n, CompositionWeight weight);

/// Combinatorial kernel K(y_1..y_n); exact rational.
Rational kernel_K_exact(std::span<const double> y);
double kernel_K(std::span<const double> y);

struct QnOptions {
  /// Half-width of the x-space window; 0 selects max(40, 16/sigma).
  double window = 0.0;
  double panel_width = 0.5;
};

/// m-dimensional sinc-kernel integral for one composition:
/// \int prod phi(x_j)^{lambda_j} S(x_1-x_2) ... S(x_{m-1}-x_m) S(x_m+x_1) dx.
double q_n_term(const TestFunction& f, std::span<const int> lambda, const QnOptions& options = {});

/// 2^{n-1} times the composition-weighted sum of q_n_term, for n in {2, 3}.
double q_n_multidim(const TestFunction& f, int n, const QnOptions& options = {});

/// Raw moments 1..n from cumulants C_1..C_n via integer partitions.
std::vector<double> cumulants_to_moments(std::span<const double> cumulants);

}  // namespace lzlab
