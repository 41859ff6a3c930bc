#include "lzlab/bessel.hpp"
#include "lzlab/besselmellin.hpp"
#include "lzlab/errors.hpp"
#include "lzlab/testfn.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace lzlab;

TEST_CASE("Bessel J values") {
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 1.0) == doctest::Approx(0.4400505857).epsilon(1e-10));
  CHECK(std::abs(bessel_j(1, 400.0)) <= 1.0 / std::sqrt(400.0));
  CHECK(bessel_j(-3, 2.5) == doctest::Approx(-bessel_j(3, 2.5)));
  CHECK(bessel_j(3, -2.5) == doctest::Approx(-bessel_j(3, 2.5)));
}

TEST_CASE("Bessel J against the power series oracle") {
  for (int nu = 0; nu <= 12; ++nu)
    for (double x = 0.05; x <= 20.0; x += 0.37)
      CHECK(bessel_j(nu, x) == doctest::Approx(oracle::bessel_series(nu, x)).epsilon(1e-12).scale(1e-3));
}

TEST_CASE("Bessel J against the standard library") {
  for (int nu = 0; nu <= 15; ++nu)
    for (double x = 0.1; x <= 400.0; x *= 1.13)
      CHECK(bessel_j(nu, x) == doctest::Approx(std::cyl_bessel_j(static_cast<double>(nu), x)).epsilon(1e-10).scale(1e-2));
}

TEST_CASE("derivative recurrence by finite differences") {
  const double h = 1e-4;
  for (int nu = 1; nu <= 6; ++nu)
    for (double x = 0.5; x <= 80.0; x += 1.7) {
      const double deriv = (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2 * h);
      CHECK(std::abs(2 * deriv - (bessel_j(nu - 1, x) - bessel_j(nu + 1, x))) <= 1e-6);
    }
}

TEST_CASE("complex log Gamma") {
  CHECK(std::exp(log_gamma({5.0, 0.0})).real() == doctest::Approx(24.0));
  CHECK(std::exp(log_gamma({0.5, 0.0})).real() == doctest::Approx(std::sqrt(M_PI)));
  for (double x = 0.3; x < 30.0; x *= 1.7) CHECK(log_gamma({x, 0.0}).real() == doctest::Approx(std::lgamma(x)));
  // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
  for (double t = 0.5; t < 10.0; t += 1.3)
    CHECK(2 * log_gamma({0.5, t}).real() == doctest::Approx(std::log(M_PI / std::cosh(M_PI * t))).epsilon(1e-12));
}

TEST_CASE("Mellin transform of J") {
  CHECK(std::abs(mellin_g(2, 1.0) - 1.0) <= 1e-12);
  CHECK(std::abs(mellin_g(4, 1.0) - 1.0) <= 1e-12);
  CHECK(mellin_g(2, 0.5).real() == doctest::Approx(0.955978).epsilon(1e-6));
  CHECK(mellin_g(2, 0.5).real() ==
        doctest::Approx(std::pow(2.0, -0.5) * std::tgamma(0.75) / std::tgamma(1.25)).epsilon(1e-13));
  CHECK_THROWS_AS(mellin_g(2, 1.6), DomainError);
  CHECK_THROWS_AS(mellin_g(2, -1.0), DomainError);
  for (const int k : {2, 4})
    for (const double s : {0.5, 1.0, 1.3}) CHECK(bessel_mellin_residual(k, s) <= 1e-4);
}

TEST_CASE("tail integral is consistent with direct quadrature") {
  for (const int nu : {1, 3})
    for (const double a : {-0.5, 0.0, 0.3}) {
      const double X = 100.0, Y = 200.0;
      const double direct = oracle::gl([&](double x) { return std::cyl_bessel_j(nu, x) * std::pow(x, a); }, X, Y, 120);
      double bound_x = 0.0, bound_y = 0.0;
      const double tail_x = bessel_tail_integral(nu, a, X, &bound_x);
      const double tail_y = bessel_tail_integral(nu, a, Y, &bound_y);
      CHECK(std::abs(tail_x - (direct + tail_y)) <= bound_x + bound_y + 1e-11);
      CHECK(bound_x <= 1e-8);
    }
  CHECK_THROWS_AS(bessel_tail_integral(1, 0.6, 30.0), ConvergenceError);
}

namespace {

// (b sqrt N / (2 pi m)) (1/2) \int J_{k-1}(x(y)) x(y) hat_n(y) dy with x(y) = c exp(y log R / 2).
double i_n_oracle(double sigma, int n, int k, double m, double b, double N) {
  const double c = 4 * M_PI * m / (b * std::sqrt(N)), logr = std::log(k * k * N);
  const double integral = oracle::gl_split(
      [&](double y) {
        const double x = c * std::exp(y * logr / 2);
        return oracle::bessel_series(k - 1, x) * x * oracle::fejer_hat_conv(sigma, n, y);
      },
      -n * sigma, n * sigma, {0.0, -sigma, sigma}, 40);
  return b * std::sqrt(N) / (2 * M_PI * m) * 0.5 * integral;
}

}  // namespace

TEST_CASE("I_n integral") {
  const auto f = make_fejer(0.4);
  const BesselIntegralParams p{2, 1, 1, 10000};
  const double direct = i_n_integral(f, 2, p);
  CHECK(direct == doctest::Approx(i_n_integral_alternate(f, 2, p)).epsilon(1e-6));
  CHECK(direct == doctest::Approx(i_n_oracle(0.4, 2, 2, 1, 1, 10000)).epsilon(1e-6));
  const BesselIntegralParams p2{2, 1, 2, 10000};
  CHECK(i_n_integral(f, 2, p2) == doctest::Approx(i_n_oracle(0.4, 2, 2, 1, 2, 10000)).epsilon(1e-6));
  CHECK(i_n_integral(make_hat_spline(PiecewisePolynomial::zero()), 2, p) == 0.0);
  CHECK_THROWS(i_n_integral(make_fejer(0.9), 3, p));
}

TEST_CASE("ILS diagnostic degenerate cases") {
  const auto r = ils_sum_residual(make_hat_spline(PiecewisePolynomial::zero()), 2, 1009);
  CHECK(r.lhs == 0.0);
  CHECK(r.rhs == 0.0);
  CHECK_THROWS_AS(ils_sum_residual(make_fejer(0.8), 2, 1000), ValidationError);
}
