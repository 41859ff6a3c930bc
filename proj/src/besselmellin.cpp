#include "lzlab/besselmellin.hpp"

#include "lzlab/arith.hpp"
#include "lzlab/bessel.hpp"
#include "lzlab/errors.hpp"
#include "lzlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lzlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kMaxExponent = 700.0;
}  // namespace

void BesselIntegralParams::validate() const {
  if (k < 2 || k % 2 != 0) throw ValidationError("bessel params: k must be even and >= 2");
  if (m < 1 || b < 1 || N < 1) throw ValidationError("bessel params: m, b, N must be positive");
}

std::complex<double> mellin_g(int k, std::complex<double> s) {
  if (k < 1) throw DomainError("mellin_g: k must be >= 1");
  if (!(s.real() > 1.0 - k)) throw DomainError("mellin_g: Re(s) <= 1 - k hits a pole of Gamma((k-1+s)/2)");
  if (!(s.real() < 1.5)) throw DomainError("mellin_g: Re(s) >= 3/2 lies outside the convergence strip");
  const std::complex<double> num = log_gamma(0.5 * (static_cast<double>(k) - 1.0 + s));
  const std::complex<double> den_arg = 0.5 * (static_cast<double>(k) + 1.0 - s);
  if (den_arg.imag() == 0.0 && den_arg.real() <= 0.0 && den_arg.real() == std::floor(den_arg.real())) return 0.0;
  return std::exp((s - 1.0) * std::log(2.0) + num - log_gamma(den_arg));
}

double bessel_tail_integral(int nu, double a, double X, double* remainder_bound) {
  if (!(a < 0.5)) throw ConvergenceError("bessel_tail_integral: exponent must be < 1/2");
  if (!(X > 0.0)) throw DomainError("bessel_tail_integral: X must be positive");
  // T(a, nu) = X^a J_{nu-1}(X) + (a + nu - 1) T(a - 1, nu - 1).
  constexpr int kSteps = 8;
  double acc = 0.0, coef = 1.0;
  for (int l = 0; l < kSteps; ++l) {
    acc += coef * std::pow(X, a - l) * bessel_j(nu - l - 1, X);
    coef *= a + nu - 1.0 - 2.0 * l;
  }
  // |J_n| <= 1 gives |T(a - L, .)| <= X^{a-L+1} / (L - a - 1).
  const double bound = std::abs(coef) * std::pow(X, a - kSteps + 1.0) / (kSteps - a - 1.0);
  if (remainder_bound) *remainder_bound = bound;
  if (!(bound <= 1e-8)) throw ConvergenceError("bessel_tail_integral: remainder bound too large; increase X");
  return acc;
}

double bessel_mellin_integral(int k, double s, double X) {
  if (k < 2) throw DomainError("bessel_mellin: k must be >= 2");
  if (!(s > 1.0 - k && s < 1.5)) throw DomainError("bessel_mellin: s outside the convergence strip");
  if (!(X >= 10.0)) throw DomainError("bessel_mellin: cutoff X must be >= 10");
  auto f = [&](double x) { return x == 0.0 ? 0.0 : bessel_j(k - 1, x) * std::pow(x, s - 1.0); };
  const double head = quad::tanh_sinh(f, 0.0, kPi, 1e-14);
  const double body = quad::panelled(f, kPi, X, kPi, {}, 1e-14);
  return head + body + bessel_tail_integral(k - 1, s - 1.0, X);
}

double bessel_mellin_residual(int k, double s, double X) {
  return std::abs(bessel_mellin_integral(k, s, X) - mellin_g(k, s).real());
}

namespace {

// Edges in x covering [x_lo, x_hi] with ratio <= 1.25 and spacing <= 1.5.
std::vector<double> x_edges(double x_lo, double x_hi) {
  std::vector<double> e{x_lo};
  while (e.back() < x_hi) {
    const double x = e.back();
    e.push_back(std::min(x_hi, std::min(1.25 * x, x + 1.5)));
  }
  return e;
}

}  // namespace

double bessel_hat_integral(const PiecewisePolynomial& hat, int k, double c, double log_r) {
  if (hat.empty()) return 0.0;
  if (!(c > 0.0) || !(log_r > 0.0)) throw DomainError("bessel_hat_integral: c and log R must be positive");
  const double half = 0.5 * log_r;
  const double lo = hat.support_lo(), hi = hat.support_hi();
  if (hi * half + std::log(c) > kMaxExponent || lo * half + std::log(c) < -kMaxExponent)
    throw DomainError("bessel_hat_integral: window c R^{y/2} overflows double range");
  // x = c exp(y log R / 2): the integral becomes (1/2) \int J(x(y)) x(y) hat(y) dy.
  auto x_of = [&](double y) { return c * std::exp(y * half); };
  auto g = [&](double y) {
    const double x = x_of(y);
    return 0.5 * bessel_j(k - 1, x) * x * hat(y);
  };
  std::vector<double> ys;
  for (const double x : x_edges(x_of(lo), x_of(hi))) ys.push_back(std::log(x / c) / half);
  for (const double bp : hat.breakpoints()) ys.push_back(bp);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  std::vector<double> parts;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const double a = std::max(ys[i], lo), b = std::min(ys[i + 1], hi);
    if (b > a) parts.push_back(quad::gauss_kronrod(g, a, b, 1e-14, 10));
  }
  return quad::pairwise_sum(parts);
}

namespace {

double phi_n_support_check(const TestFunction& f, int n, const BesselIntegralParams& p) {
  p.validate();
  if (n < 1) throw DomainError("i_n_integral: n must be >= 1");
  if (!(n * f.sigma() < 2.0)) throw DomainError("i_n_integral: need n sigma < 2");
  return 4.0 * kPi * static_cast<double>(p.m) / (static_cast<double>(p.b) * std::sqrt(static_cast<double>(p.N)));
}

}  // namespace

double i_n_integral(const TestFunction& f, int n, const BesselIntegralParams& p) {
  const double c = phi_n_support_check(f, n, p);
  const PiecewisePolynomial hat_n = hat_self_convolution(f, n);
  return 2.0 / c * bessel_hat_integral(hat_n, p.k, c, std::log(p.R()));
}

double i_n_integral_alternate(const TestFunction& f, int n, const BesselIntegralParams& p) {
  const double c = phi_n_support_check(f, n, p);
  const PiecewisePolynomial hat_n = hat_self_convolution(f, n);
  if (hat_n.empty()) return 0.0;
  const double log_r = std::log(p.R()), half = 0.5 * log_r;
  const double lo = hat_n.support_lo(), hi = hat_n.support_hi();
  if (hi * half > kMaxExponent) throw DomainError("i_n_integral: window R^{n sigma/2} overflows double range");
  auto g = [&](double u) { return bessel_j(p.k - 1, c * u) * hat_n(std::log(u) / half); };
  const double u_lo = std::exp(lo * half), u_hi = std::exp(hi * half);
  std::vector<double> us;
  for (const double x : x_edges(c * u_lo, c * u_hi)) us.push_back(x / c);
  for (const double bp : hat_n.breakpoints()) us.push_back(std::exp(bp * half));
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  std::vector<double> parts;
  for (std::size_t i = 0; i + 1 < us.size(); ++i) {
    const double a = std::max(us[i], u_lo), b = std::min(us[i + 1], u_hi);
    if (b > a) parts.push_back(quad::gauss_kronrod(g, a, b, 1e-14, 12));
  }
  return 2.0 / log_r * quad::pairwise_sum(parts);
}

IlsResult ils_sum_residual(const TestFunction& psi, int k, long long N, double eps, long long b_cut) {
  if (!is_prime(N)) throw ValidationError("ils_sum: N must be prime");
  if (k < 2 || k % 2 != 0) throw ValidationError("ils_sum: k must be even and >= 2");
  if (b_cut < 1000) throw DomainError("ils_sum: b_cut must be >= 1000");
  if (!(psi.sigma() < 2.0)) throw DomainError("ils_sum: support of hat-Psi must lie in (-2, 2)");
  if (!(eps >= 0.0)) throw DomainError("ils_sum: eps must be non-negative");
  IlsResult out;
  out.N = N;
  const double rt_n = std::sqrt(static_cast<double>(N));
  const double big_r = static_cast<double>(k) * k * static_cast<double>(N);
  const double log_r = std::log(big_r);
  out.m_max = static_cast<long long>(std::floor(std::pow(static_cast<double>(N), eps) + 1e-9));
  const PiecewisePolynomial& hat = psi.hat();
  const double abs_mass = hat.abs_integral();
  std::vector<double> terms;
  double tail = 0.0;
  for (long long m = 1; m <= out.m_max; ++m) {
    const long long m2 = m * m;
    for (long long b = 1; b <= b_cut; ++b) {
      if (gcd_ll(b, N) != 1) continue;
      const int mu_b = mobius(b);
      if (mu_b == 0) continue;
      const auto rb = static_cast<double>(ramanujan_sum_divisor(m2, b));
      if (rb == 0.0) continue;
      const double c = 4.0 * kPi * static_cast<double>(m) / (static_cast<double>(b) * rt_n);
      const double inner = bessel_hat_integral(hat, k, c, log_r);
      terms.push_back(rb * mu_b / static_cast<double>(euler_phi(b)) * inner / static_cast<double>(m2));
    }
    // |J(x)| <= x/2 on the window once c R^{sigma/2} <= 2 at b = b_cut.
    const double c_cut = 4.0 * kPi * static_cast<double>(m) / (static_cast<double>(b_cut) * rt_n);
    if (c_cut * std::pow(big_r, 0.5 * psi.sigma()) > 2.0) {
      tail = INFINITY;
    } else {
      long long sigma1 = 0;
      for (long long d = 1; d <= m2; ++d)
        if (m2 % d == 0) sigma1 += d;
      tail += static_cast<double>(sigma1) * 4.0 * kPi * kPi * std::pow(big_r, psi.sigma()) * abs_mass /
              static_cast<double>(N) * std::sqrt(2.0) * (2.0 / 3.0) * std::pow(static_cast<double>(b_cut), -1.5);
    }
  }
  out.lhs = quad::pairwise_sum(terms);
  out.rhs = -0.5 * (sinc_moment(psi, 1) - 0.5 * psi.phi0());
  out.residual = std::abs(out.lhs - out.rhs);
  out.tail_bound = tail;
  return out;
}

}  // namespace lzlab
