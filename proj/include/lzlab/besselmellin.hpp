#pragma once

#include "lzlab/piecewise_poly.hpp"
#include "lzlab/testfn.hpp"

#include <complex>

namespace lzlab {

struct BesselIntegralParams {
  int k = 2;
  long long m = 1;
  long long b = 1;
  long long N = 1;

  /// Analytic conductor k^2 N.
  double R() const { return static_cast<double>(k) * k * static_cast<double>(N); }
  void validate() const;
};

/// 2^{s-1} Gamma((k-1+s)/2) / Gamma((k+1-s)/2) for 1-k < Re(s) < 3/2.
std::complex<double> mellin_g(int k, std::complex<double> s);

/// \int_X^\infty J_nu(x) x^a dx for a < 1/2, by repeated integration by parts.
/// `remainder_bound` receives a bound on the discarded term.
double bessel_tail_integral(int nu, double a, double X, double* remainder_bound = nullptr);

/// \int_0^X J_{k-1}(x) x^{s-1} dx + tail(X).
double bessel_mellin_integral(int k, double s, double X);

/// |bessel_mellin_integral(k, s, X) - mellin_g(k, s)|.
double bessel_mellin_residual(int k, double s, double X = 1e4);

/// \int_0^\infty J_{k-1}(x) hat(2 log(x/c) / log R) dx / log R, integrated in log x.
double bessel_hat_integral(const PiecewisePolynomial& hat, int k, double c, double log_r);

/// I_n = (b sqrt(N) / 2 pi m) (1/log R) \int J_{k-1}(x) hat-Phi_n(2 log(x/c)/log R) dx, c = 4 pi m/(b sqrt N).
double i_n_integral(const TestFunction& f, int n, const BesselIntegralParams& p);
/// Same quantity via (2/log R) \int J_{k-1}(c u) hat-Phi_n(2 log u / log R) du in the linear variable u.
double i_n_integral_alternate(const TestFunction& f, int n, const BesselIntegralParams& p);

struct IlsResult {
  long long N = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  /// Bound on the discarded b > b_cut part of lhs.
  double tail_bound = 0.0;
  long long m_max = 0;
};

/// Truncated m,b double sum against -(1/2)[\int Psi S(2x) dx - Psi(0)/2].
IlsResult ils_sum_residual(const TestFunction& psi, int k, long long N, double eps = 0.05, long long b_cut = 1000);

}  // namespace lzlab
