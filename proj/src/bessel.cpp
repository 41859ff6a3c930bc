#include "lzlab/bessel.hpp"

#include "lzlab/errors.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace lzlab {

namespace {

double series(int nu, double x) {
  const long double h = 0.5L * x, h2 = h * h;
  long double term = 1.0L;
  for (int i = 1; i <= nu; ++i) term *= h / i;
  long double acc = term;
  for (int k = 1; k < 400; ++k) {
    term *= -h2 / (static_cast<long double>(k) * (k + nu));
    acc += term;
    if (std::fabs(term) < 1e-21L * std::fabs(acc) && k > h) break;
  }
  return static_cast<double>(acc);
}

// Hankel expansion, truncated before the smallest term.
double hankel(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 0.0, q = 0.0;
  double term = 1.0, prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (std::abs(term) >= prev) break;
    prev = std::abs(term);
    // term = a_k / x^k with a_k = prod_{j<=k} (mu - (2j-1)^2) / (k! 8^k); signs follow (-1)^{floor(k/2)}.
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 0) {
      p += signed_term;
    } else {
      q += signed_term;
    }
    if (std::abs(term) < 1e-17) break;
    const double odd = 2.0 * k + 1.0;
    term *= (mu - odd * odd) / ((k + 1) * 8.0 * x);
  }
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Miller backward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
double miller(int nu, double x) {
  int start = static_cast<int>(x) + 60 + nu;
  if (start % 2 == 1) ++start;
  double jp1 = 0.0, j = 1e-280, norm = 0.0, result = 0.0;
  for (int k = start; k >= 1; --k) {
    const double jm1 = 2.0 * k / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (k - 1 == nu) result = j;
    if ((k - 1) % 2 == 0) norm += (k - 1 == 0) ? j : 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
      result *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int nu, double x) {
  if (nu < 0) return (nu % 2 == 0 ? 1.0 : -1.0) * bessel_j(-nu, x);
  if (x < 0.0) return (nu % 2 == 0 ? 1.0 : -1.0) * bessel_j(nu, -x);
  if (!std::isfinite(x)) throw DomainError("bessel_j: argument must be finite");
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x <= 20.0) return series(nu, x);
  if (x >= std::max(30.0, 0.5 * nu * nu + 10.0)) return hankel(nu, x);
  return miller(nu, x);
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("log_gamma: pole at a non-positive integer");
  std::complex<double> shift(0.0, 0.0);
  while (z.real() < 10.0) {
    shift += std::log(z);
    z += 1.0;
  }
  static constexpr double kB[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6, -3617.0 / 510};
  const std::complex<double> zinv = 1.0 / z, zinv2 = zinv * zinv;
  std::complex<double> corr(0.0, 0.0), pw = zinv;
  for (int k = 1; k <= 8; ++k) {
    corr += kB[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * pw;
    pw *= zinv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + corr - shift;
}

}  // namespace lzlab
