#pragma once

#include <complex>

namespace lzlab {

/// J_nu(x) for integer nu (negative orders via J_{-n} = (-1)^n J_n) and real x.
double bessel_j(int nu, double x);

/// log Gamma(z) for complex z off the non-positive integers; branch is unspecified.
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace lzlab
