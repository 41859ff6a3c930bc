#include "lzlab/testfn.hpp"

#include "lzlab/errors.hpp"
#include "lzlab/quadrature.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace lzlab {

namespace {

constexpr double kPi = std::numbers::pi;

// E_k(z) = \int_0^1 s^k e^{i z s} ds for k = 0..d.
std::vector<std::complex<double>> unit_exp_moments(double z, std::size_t d) {
  std::vector<std::complex<double>> e(d + 1);
  const std::complex<double> iz(0.0, z);
  auto series = [&](std::size_t k) {
    std::complex<double> term(1.0, 0.0), acc(0.0, 0.0);
    for (std::size_t j = 0; j < 200; ++j) {
      const std::complex<double> add = term / static_cast<double>(k + j + 1);
      acc += add;
      if (static_cast<double>(j) > std::abs(z) && std::abs(add) < 1e-18 * std::max(1.0, std::abs(acc))) break;
      term *= iz / static_cast<double>(j + 1);
    }
    return acc;
  };
  const double az = std::abs(z);
  if (az < 1.0) {
    for (std::size_t k = 0; k <= d; ++k) e[k] = series(k);
    return e;
  }
  // Forward recurrence E_k = (e^{iz} - k E_{k-1}) / (iz) is stable while k <= |z|.
  const std::complex<double> eiz = std::polar(1.0, z);
  e[0] = (eiz - 1.0) / iz;
  for (std::size_t k = 1; k <= d; ++k) {
    if (static_cast<double>(k) <= az) {
      e[k] = (eiz - static_cast<double>(k) * e[k - 1]) / iz;
    } else {
      e[k] = series(k);
    }
  }
  return e;
}

PiecewisePolynomial fejer_hat(double sigma) {
  const double s2 = sigma * sigma;
  return PiecewisePolynomial({-sigma, 0.0, sigma}, {{0.0, 1.0 / s2}, {1.0 / sigma, -1.0 / s2}});
}

Envelope derive_envelope(const PiecewisePolynomial& hat) {
  if (hat.empty()) return {0.0, 2};
  if (hat.total_jump() <= 1e-12 * std::max(1.0, hat.integral())) {
    const PiecewisePolynomial d1 = hat.derivative();
    const PiecewisePolynomial d2 = d1.derivative();
    return {(d1.total_jump() + d2.abs_integral()) / (4.0 * kPi * kPi), 2};
  }
  return {(hat.total_jump() + hat.derivative().abs_integral()) / (2.0 * kPi), 1};
}

}  // namespace

double Envelope::at(double x) const { return amplitude / std::pow(std::abs(x), power); }

TestFunction TestFunction::fejer(double sigma) {
  if (!(sigma > 0.0 && sigma <= 1.0)) throw DomainError("fejer: sigma must lie in (0, 1]");
  TestFunction f;
  f.kind_ = Kind::fejer;
  f.sigma_ = sigma;
  f.phi0_ = 1.0;
  f.hat_ = fejer_hat(sigma);
  f.envelope_ = Envelope{1.0 / (kPi * kPi * sigma * sigma), 2};
  return f;
}

TestFunction TestFunction::hat_spline(PiecewisePolynomial hat, std::optional<Envelope> envelope) {
  if (!hat.empty()) {
    if (!std::isfinite(hat.support_lo()) || !std::isfinite(hat.support_hi()))
      throw ValidationError("hat spline: support must be bounded");
    if (!hat.is_even()) throw ValidationError("hat spline: transform must be even");
  }
  TestFunction f;
  f.kind_ = Kind::hat_spline;
  f.sigma_ = hat.empty() ? 0.0 : std::max(std::abs(hat.support_lo()), std::abs(hat.support_hi()));
  f.phi0_ = hat.integral();
  f.envelope_ = envelope ? *envelope : derive_envelope(hat);
  f.hat_ = std::move(hat);
  return f;
}

double cosine_panel_integral(std::span<const double> p, double lo, double h, double omega) {
  const double z = omega * h;
  const auto e = unit_exp_moments(z, p.size() == 0 ? 0 : p.size() - 1);
  std::complex<double> acc(0.0, 0.0);
  double hk = h;
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc += p[k] * hk * e[k];
    hk *= h;
  }
  return (std::polar(1.0, omega * lo) * acc).real();
}

double TestFunction::phi(double x) const {
  if (kind_ == Kind::fejer) {
    const double s = sinc(sigma_ * x);
    return s * s;
  }
  if (hat_.empty()) return 0.0;
  const double omega = 2.0 * kPi * x;
  double acc = 0.0;
  for (std::size_t i = 0; i < hat_.panel_count(); ++i)
    acc += cosine_panel_integral(hat_.panel(i), hat_.panel_lo(i), hat_.panel_hi(i) - hat_.panel_lo(i), omega);
  return acc;
}

double TestFunction::hat_at(double y) const {
  if (kind_ == Kind::fejer) {
    const double a = std::abs(y);
    return a >= sigma_ ? 0.0 : (1.0 - a / sigma_) / sigma_;
  }
  return hat_(y);
}

std::string TestFunction::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::fejer) {
    os << "fejer(sigma=" << sigma_ << ")";
  } else {
    os << "hat_spline(panels=" << hat_.panel_count() << ", sigma=" << sigma_ << ")";
  }
  return os.str();
}

TestFunction make_fejer(double sigma) { return TestFunction::fejer(sigma); }
TestFunction make_hat_spline(PiecewisePolynomial pp) { return TestFunction::hat_spline(std::move(pp)); }

double eval_phi(const TestFunction& f, double x) { return f.phi(x); }
double eval_hat(const TestFunction& f, double y) { return f.hat_at(y); }

double sinc(double x) {
  if (x == 0.0) return 1.0;
  return boost::math::sin_pi(x) / (kPi * x);
}

PiecewisePolynomial hat_self_convolution(const TestFunction& f, int n) {
  if (n < 1 || n > 8) throw DomainError("hat_self_convolution: n must lie in [1, 8]");
  if (f.hat().empty()) return PiecewisePolynomial::zero();
  PiecewisePolynomial out = f.hat();
  for (int k = 2; k <= n; ++k) out = out.convolve(f.hat());
  return out;
}

double sinc_moment(const TestFunction& f, int n, double tol) {
  if (n < 1) throw DomainError("sinc_moment: n must be >= 1");
  if (!f.envelope()) throw ValidationError("sinc_moment: test function has no decay envelope");
  const Envelope env = *f.envelope();
  if (env.amplitude == 0.0) return 0.0;
  const int pn = env.power * n;
  // Tail of |phi^n S(2x)| beyond X on both sides is at most A^n / (pi * pn * X^pn).
  const double a_n = std::pow(env.amplitude, n);
  const double cutoff = std::max(4.0, std::pow(10.0 * a_n / (kPi * pn * tol), 1.0 / pn));
  if (!(cutoff <= 1e7)) throw ConvergenceError("sinc_moment: envelope tail does not converge within x <= 1e7");
  auto integrand = [&](double x) { return std::pow(f.phi(x), n) * sinc(2.0 * x); };
  // The integrand is band-limited to |freq| <= n sigma + 1; panels hold at most one period.
  const double width = std::min(0.5, 1.0 / (n * f.sigma() + 1.0));
  return 2.0 * quad::gauss_legendre_panels(integrand, 0.0, cutoff, width);
}

double hat_tail_mass(const TestFunction& f, int n) {
  const PiecewisePolynomial h = hat_self_convolution(f, n);
  if (h.empty()) return 0.0;
  return h.integral() - h.integral(-1.0, 1.0);
}

double ft_identity_residual(const TestFunction& f, int n) {
  if (n < 1) throw DomainError("ft_identity_residual: n must be >= 1");
  if (n > 3) throw UnsupportedError("ft_identity_residual: only n <= 3 is supported");
  const double lhs = sinc_moment(f, n) - 0.5 * std::pow(f.phi0(), n);
  return lhs + 0.5 * hat_tail_mass(f, n);
}

}  // namespace lzlab
