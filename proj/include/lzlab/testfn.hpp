#pragma once

#include "lzlab/piecewise_poly.hpp"

#include <optional>
#include <string>

namespace lzlab {

/// Decay bound |phi(x)| <= amplitude / |x|^power, valid for all x != 0.
struct Envelope {
  double amplitude = 0.0;
  int power = 0;
  double at(double x) const;
};

/// An even test function phi whose Fourier transform hat-phi is a compactly
/// supported piecewise polynomial. Conventions: hat-phi(y) = \int phi(x) e(-xy) dx,
/// so phi(0) = \int hat-phi.
class TestFunction {
 public:
  enum class Kind { fejer, hat_spline };

  static TestFunction fejer(double sigma);
  /// `envelope` overrides the bound derived from the smoothness of `hat`.
  static TestFunction hat_spline(PiecewisePolynomial hat, std::optional<Envelope> envelope = std::nullopt);

  Kind kind() const { return kind_; }
  /// Half-width of the support of hat-phi.
  double sigma() const { return sigma_; }
  const PiecewisePolynomial& hat() const { return hat_; }
  const std::optional<Envelope>& envelope() const { return envelope_; }

  double phi(double x) const;
  double hat_at(double y) const;
  double phi0() const { return phi0_; }

  std::string describe() const;

 private:
  TestFunction() = default;
  Kind kind_ = Kind::fejer;
  double sigma_ = 0.0;
  double phi0_ = 0.0;
  PiecewisePolynomial hat_;
  std::optional<Envelope> envelope_;
};

TestFunction make_fejer(double sigma);
TestFunction make_hat_spline(PiecewisePolynomial pp);

double eval_phi(const TestFunction& f, double x);
double eval_hat(const TestFunction& f, double y);

/// S(x) = sin(pi x) / (pi x), exactly zero at nonzero integers.
double sinc(double x);

/// \int_{lo}^{lo+h} p(t - lo) cos(omega t) dt for a local-coefficient polynomial p.
double cosine_panel_integral(std::span<const double> p, double lo, double h, double omega);

/// Exact n-fold self-convolution of hat-phi, the Fourier transform of phi^n.
PiecewisePolynomial hat_self_convolution(const TestFunction& f, int n);

/// \int phi(x)^n S(2x) dx by x-space quadrature with an envelope tail cutoff.
double sinc_moment(const TestFunction& f, int n, double tol = 1e-8);

/// \int hat-phi^{*n}(t) 1_{|t| > 1} dt, exact.
double hat_tail_mass(const TestFunction& f, int n);

/// [\int phi^n S(2x) dx - phi(0)^n / 2] + (1/2) \int hat-phi^{*n} 1_{|t|>1}.
/// The first bracket comes from x-space quadrature, the second from exact hat convolution.
double ft_identity_residual(const TestFunction& f, int n);

}  // namespace lzlab
