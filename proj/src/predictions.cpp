#include "lzlab/predictions.hpp"

#include "lzlab/errors.hpp"
#include "lzlab/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <string>

namespace lzlab {

namespace {

// \int w(y) p(y) dy over the panels of `p` refined at `cuts`, where w is linear per panel.
double weighted_integral(const PiecewisePolynomial& p, std::span<const double> cuts,
                         const std::function<Coeffs(double lo, double mid)>& weight) {
  if (p.empty()) return 0.0;
  const PiecewisePolynomial r = p.refined(cuts);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.panel_count(); ++i) {
    const double lo = r.panel_lo(i), hi = r.panel_hi(i);
    const Coeffs w = weight(lo, 0.5 * (lo + hi));
    acc += poly::integrate(poly::mul(r.panel(i), w), 0.0, hi - lo);
  }
  return acc;
}

double ipow(double x, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= x;
  return out;
}

}  // namespace

double mean_limit(Parity parity, const TestFunction& f) {
  const PiecewisePolynomial& h = f.hat();
  double mu = f.hat_at(0.0) + 0.5 * h.integral(-1.0, 1.0);
  if (parity == Parity::odd) mu += h.integral() - h.integral(-1.0, 1.0);
  return mu;
}

double sigma2(const TestFunction& f, double range) {
  if (!(range >= 0.0)) throw DomainError("sigma2: range must be non-negative");
  const double cuts[] = {-range, 0.0, range};
  return 2.0 * weighted_integral(f.hat().squared(), cuts, [&](double lo, double mid) -> Coeffs {
           if (std::abs(mid) > range) return {0.0};
           return mid >= 0.0 ? Coeffs{lo, 1.0} : Coeffs{-lo, -1.0};
         });
}

double r_n(const TestFunction& f, int n) {
  if (n < 1) throw DomainError("r_n: n must be >= 1");
  const double sign = (n % 2 == 1) ? 1.0 : -1.0;
  return sign * std::ldexp(1.0, n - 1) * (sinc_moment(f, n) - 0.5 * ipow(f.phi0(), n));
}

double r_n_hat(const TestFunction& f, int n) {
  if (n < 1) throw DomainError("r_n_hat: n must be >= 1");
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * std::ldexp(1.0, n - 2) * hat_tail_mass(f, n);
}

double variance_band_integral(const TestFunction& f) {
  const PiecewisePolynomial& h = f.hat();
  // {v >= 1 - u or v <= -1 - u} intersected with u - 1 <= v <= u + 1.
  const Line upper_diag{1.0, 1.0}, lower_diag{-1.0, 1.0};
  const Line above_anti{1.0, -1.0}, below_anti{-1.0, -1.0};
  const Line band1_lo[] = {above_anti, lower_diag};
  const Line band1_hi[] = {upper_diag};
  const Line band2_lo[] = {lower_diag};
  const Line band2_hi[] = {below_anti, upper_diag};
  return integrate_product_over_band(h, h, band1_lo, band1_hi) + integrate_product_over_band(h, h, band2_lo, band2_hi);
}

double variance_limit(Parity parity, const TestFunction& f) {
  const double cuts[] = {-1.0, 0.0, 1.0};
  const double base = 2.0 * weighted_integral(f.hat().squared(), cuts, [](double lo, double mid) -> Coeffs {
                        if (std::abs(mid) > 1.0) return {1.0};
                        return mid >= 0.0 ? Coeffs{lo, 1.0} : Coeffs{-lo, -1.0};
                      });
  return base + parity_sign(parity) * variance_band_integral(f);
}

double gaussian_moment_factor(int n) {
  if (n % 2 == 1) return 0.0;
  double out = 1.0;
  for (int k = n - 1; k > 1; k -= 2) out *= k;
  return out;
}

MomentPrediction centered_moment_prediction(Parity parity, int n, const TestFunction& f) {
  if (n < 1) throw DomainError("centered_moment_prediction: n must be >= 1");
  if (n >= 2 && f.sigma() > 1.0 / (n - 1) + 1e-12)
    throw OutOfRangeError("centered_moment_prediction: support half-width must be <= 1/(n-1) = " +
                          std::to_string(1.0 / (n - 1)));
  MomentPrediction p;
  p.parity = parity;
  p.n = n;
  p.sigma = f.sigma();
  if (n == 1) return p;
  if (n % 2 == 0) p.gaussian_part = gaussian_moment_factor(n) * ipow(sigma2(f), n / 2);
  // hat^{*n} lives in [-n sigma, n sigma], so the correction vanishes identically once n sigma <= 1.
  p.correction = (n * f.sigma() <= 1.0) ? 0.0 : parity_sign(parity) * r_n(f, n);
  p.value = p.gaussian_part + p.correction;
  return p;
}

std::vector<CompositionTerm> compositions(int n) {
  if (n < 1 || n > 20) throw DomainError("compositions: n must lie in [1, 20]");
  std::vector<CompositionTerm> out;
  const BigInt nfact = factorial(static_cast<unsigned>(n));
  // Bit i of `cuts` set means a part ends after position i + 1.
  for (unsigned long cuts = 0; cuts < (1UL << (n - 1)); ++cuts) {
    CompositionTerm t;
    int run = 1;
    for (int i = 0; i < n - 1; ++i) {
      if (cuts & (1UL << i)) {
        t.lambda.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    t.lambda.push_back(run);
    BigInt denom = 1;
    for (const int l : t.lambda) denom *= factorial(static_cast<unsigned>(l));
    const int m = t.m();
    t.coefficient = Rational(nfact, denom * m);
    if (m % 2 == 0) t.coefficient = -t.coefficient;
    out.push_back(std::move(t));
  }
  return out;
}

Rational composition_sum(int n, CompositionWeight weight) {
  if (n < 1 || n > 12) throw DomainError("composition_sum: n must lie in [1, 12]");
  Rational acc = 0;
  for (const auto& t : compositions(n)) {
    if (weight == CompositionWeight::plain) {
      acc += t.coefficient;
    } else {
      acc += t.coefficient * (BigInt(1) << n) - t.coefficient * (2 * t.m());
    }
  }
  return acc;
}

Rational kernel_K_exact(std::span<const double> y) {
  const int n = static_cast<int>(y.size());
  if (n < 2 || n > 8) throw DomainError("kernel_K: n must lie in [2, 8]");
  Rational acc = 0;
  for (const auto& t : compositions(n)) {
    std::vector<int> ends;
    int s = 0;
    for (const int l : t.lambda) ends.push_back(s += l);
    long long count = 0;
    for (unsigned eps = 0; eps < (1U << n); ++eps) {
      bool all = true;
      for (std::size_t l = 0; l < ends.size() && all; ++l) {
        double sum = 0.0;
        for (int j = 0; j < n; ++j) {
          const double e = (eps & (1U << j)) ? -1.0 : 1.0;
          const double eta = (j + 1 <= ends[l]) ? 1.0 : -1.0;
          sum += eta * e * y[static_cast<std::size_t>(j)];
        }
        all = std::abs(sum) <= 1.0;
      }
      if (all) ++count;
    }
    acc += t.coefficient * count;
  }
  return acc;
}

double kernel_K(std::span<const double> y) { return to_double(kernel_K_exact(y)); }

double q_n_term(const TestFunction& f, std::span<const int> lambda, const QnOptions& options) {
  if (lambda.empty()) throw DomainError("q_n_term: empty composition");
  if (!(f.sigma() > 0.0)) return 0.0;
  const double window = options.window > 0.0 ? options.window : std::max(40.0, 16.0 / f.sigma());
  const quad::Rule rule = quad::gauss_legendre_composite(-window, window, options.panel_width, 10);
  const auto npts = static_cast<Eigen::Index>(rule.nodes.size());
  Eigen::VectorXd x(npts), phi(npts), w(npts);
  for (Eigen::Index i = 0; i < npts; ++i) {
    x(i) = rule.nodes[static_cast<std::size_t>(i)];
    w(i) = rule.weights[static_cast<std::size_t>(i)];
    phi(i) = f.phi(x(i));
  }
  auto diag = [&](int power) {
    Eigen::VectorXd d(npts);
    for (Eigen::Index i = 0; i < npts; ++i) d(i) = w(i) * ipow(phi(i), power);
    return d;
  };
  const std::size_t m = lambda.size();
  if (m == 1) {
    const Eigen::VectorXd d = diag(lambda[0]);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < npts; ++i) acc += d(i) * sinc(2.0 * x(i));
    return acc;
  }
  Eigen::MatrixXd kminus(npts, npts), kplus(npts, npts);
  for (Eigen::Index j = 0; j < npts; ++j)
    for (Eigen::Index i = 0; i < npts; ++i) {
      kminus(i, j) = sinc(x(i) - x(j));
      kplus(i, j) = sinc(x(i) + x(j));
    }
  // chain = D_1 K- D_2 K- ... D_{m-1} K-, then trace(chain D_m K+).
  Eigen::MatrixXd chain = diag(lambda[0]).asDiagonal() * kminus;
  for (std::size_t l = 1; l + 1 < m; ++l) chain = chain * (diag(lambda[l]).asDiagonal() * kminus);
  const Eigen::VectorXd dm = diag(lambda[m - 1]);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < npts; ++i)
    for (Eigen::Index k = 0; k < npts; ++k) acc += chain(i, k) * dm(k) * kplus(k, i);
  return acc;
}

double q_n_multidim(const TestFunction& f, int n, const QnOptions& options) {
  if (n != 2 && n != 3) throw UnsupportedError("q_n_multidim: only n = 2 and n = 3 are supported");
  if (f.sigma() > 1.0 / (n - 1) + 1e-12)
    throw OutOfRangeError("q_n_multidim: support half-width must be <= 1/(n-1)");
  if (!f.envelope()) throw ValidationError("q_n_multidim: test function has no decay envelope");
  double acc = 0.0;
  for (const auto& t : compositions(n)) acc += to_double(t.coefficient) * q_n_term(f, t.lambda, options);
  return std::ldexp(acc, n - 1);
}

std::vector<double> cumulants_to_moments(std::span<const double> cumulants) {
  const int len = static_cast<int>(cumulants.size());
  if (len > 10) throw DomainError("cumulants_to_moments: at most 10 cumulants");
  std::vector<double> fact(static_cast<std::size_t>(len) + 1, 1.0);
  for (int i = 1; i <= len; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * i;
  std::vector<double> out;
  for (int n = 1; n <= len; ++n) {
    // Sum over k_1..k_n >= 0 with sum j k_j = n of prod (C_j/j!)^{k_j} / k_j!, times n!.
    std::function<double(int, int)> rec = [&](int j, int remaining) -> double {
      if (remaining == 0) return 1.0;
      if (j > remaining) return 0.0;
      const double c = cumulants[static_cast<std::size_t>(j) - 1] / fact[static_cast<std::size_t>(j)];
      double acc = 0.0, term = 1.0;
      for (int k = 0; k * j <= remaining; ++k) {
        acc += term * rec(j + 1, remaining - k * j);
        term *= c / (k + 1);
      }
      return acc;
    };
    out.push_back(fact[static_cast<std::size_t>(n)] * rec(1, n));
  }
  return out;
}

}  // namespace lzlab
