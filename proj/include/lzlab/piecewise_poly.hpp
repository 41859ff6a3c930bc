#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace lzlab {

/// Dense polynomial coefficients, constant term first.
using Coeffs = std::vector<double>;

namespace poly {

double eval(std::span<const double> c, double t);
Coeffs add(std::span<const double> a, std::span<const double> b);
Coeffs scale(std::span<const double> a, double s);
Coeffs mul(std::span<const double> a, std::span<const double> b);
/// Antiderivative vanishing at t = 0.
Coeffs antiderivative(std::span<const double> c);
Coeffs derivative(std::span<const double> c);
/// Coefficients of t -> p(alpha + beta * t).
Coeffs compose_linear(std::span<const double> c, double alpha, double beta);
/// Coefficients of t -> p(t + d).
inline Coeffs shift(std::span<const double> c, double d) { return compose_linear(c, d, 1.0); }
/// Exact integral of p over [lo, hi].
double integrate(std::span<const double> c, double lo, double hi);
/// Drops trailing zeros (keeps at least one coefficient).
void trim(Coeffs& c);

}  // namespace poly

/// A compactly supported function given by one polynomial per panel.
///
/// Panel i covers [breakpoints[i], breakpoints[i+1]] and its coefficients are
/// stored in the local variable t = y - breakpoints[i]. The function is zero
/// outside [breakpoints.front(), breakpoints.back()].
class PiecewisePolynomial {
 public:
  /// Largest polynomial degree any panel may carry.
  static constexpr int kMaxDegree = 16;

  PiecewisePolynomial() = default;
  PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coeffs> local_panels);

  /// Builds from coefficients written in the global variable y.
  static PiecewisePolynomial from_global(std::vector<double> breakpoints,
                                         const std::vector<Coeffs>& global_panels);
  /// Identically zero function with empty support.
  static PiecewisePolynomial zero();

  /// Value at y. At an interior breakpoint the average of both one-sided limits is returned.
  double operator()(double y) const;
  double left_limit(double y) const;
  double right_limit(double y) const;

  bool empty() const { return panels_.empty(); }
  std::size_t panel_count() const { return panels_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const Coeffs& panel(std::size_t i) const { return panels_[i]; }
  double panel_lo(std::size_t i) const { return breakpoints_[i]; }
  double panel_hi(std::size_t i) const { return breakpoints_[i + 1]; }
  double support_lo() const;
  double support_hi() const;
  int degree() const;

  /// Coefficients of panel i rewritten in the global variable.
  Coeffs global_panel(std::size_t i) const;

  bool is_continuous(double tol = 1e-12) const;
  bool is_even(double tol = 1e-12) const;

  double integral() const;
  double integral(double lo, double hi) const;
  /// Integral of |p| (exact up to root finding inside panels).
  double abs_integral() const;

  /// Same function with additional breakpoints inserted (points outside the support are ignored).
  PiecewisePolynomial refined(std::span<const double> points) const;
  PiecewisePolynomial scaled(double s) const;
  PiecewisePolynomial squared() const;
  PiecewisePolynomial derivative() const;

  /// Exact convolution (f * g)(t) = \int f(s) g(t - s) ds.
  PiecewisePolynomial convolve(const PiecewisePolynomial& other, int max_degree = kMaxDegree) const;

  /// Sum of |jumps| of the function value across all breakpoints (including support ends).
  double total_jump() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Coeffs> panels_;

  std::size_t locate(double y) const;
};

/// A line v = intercept + slope * u bounding a planar region.
struct Line {
  double intercept;
  double slope;
  double at(double u) const { return intercept + slope * u; }
};

/// Exact \iint f(u) g(v) du dv over {(u,v) : max_k lower_k(u) <= v <= min_k upper_k(u)}.
/// Empty bound lists mean no constraint on that side.
double integrate_product_over_band(const PiecewisePolynomial& f, const PiecewisePolynomial& g,
                                   std::span<const Line> lower, std::span<const Line> upper);

/// Parses the hat-spline text format: a `breakpoints:` line followed by one
/// line of global-variable coefficients (constant term first) per panel.
PiecewisePolynomial parse_piecewise_polynomial(const std::string& text);
PiecewisePolynomial load_piecewise_polynomial(const std::string& path);
std::string format_piecewise_polynomial(const PiecewisePolynomial& p);

}  // namespace lzlab
