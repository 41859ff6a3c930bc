// One PASS/FAIL line per acceptance criterion. Optional arguments select criteria by number.

#include "lzlab/arith.hpp"
#include "lzlab/bessel.hpp"
#include "lzlab/besselmellin.hpp"
#include "lzlab/predictions.hpp"
#include "lzlab/rmt.hpp"
#include "lzlab/stats.hpp"
#include "lzlab/testfn.hpp"
#include "lzlab/vanishing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace lzlab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Centered MC moments against the closed-form limits, gate 3 std_err (+ 5/M for odd n).
void gate_moments(Outcome& o, int M, const TestFunction& f, int n_min, int n_max, long long samples,
                  std::uint64_t seed, std::vector<MomentEstimate>* keep = nullptr) {
  const EnsembleSpec spec = EnsembleSpec::of(M);
  const auto est = mc_moments(spec, f, n_max, samples, seed, Centering::empirical, default_workers());
  for (const auto& e : est) {
    if (e.n < n_min) continue;
    const double pred = centered_moment_prediction(spec.parity, e.n, f).value;
    const double slack = 3.0 * e.std_err + (e.n % 2 ? 5.0 / M : 0.0);
    const double dev = std::abs(e.value - pred);
    o.detail << "M=" << M << " n=" << e.n << " est=" << fmt(e.value) << " pred=" << fmt(pred) << " dev/gate="
             << fmt(dev / slack) << "; ";
    o.require(dev <= slack, "M=" + std::to_string(M) + " n=" + std::to_string(e.n));
  }
  if (keep) *keep = est;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto f = make_fejer(0.3);
  o.require(std::abs(sigma2(f) - 1.0 / 3.0) < 1e-14, "sigma2 = 1/3");
  gate_moments(o, 60, f, 2, 4, 100000, 101);
  gate_moments(o, 61, f, 2, 4, 100000, 102);
  const double t = seconds_since(t0);
  o.detail << "runtime=" << fmt(t) << "s";
  o.require(t <= 600.0, "runtime <= 10 min");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto f = make_fejer(0.45);
  const double r3 = r_n(f, 3);
  o.detail << "R3=" << fmt(r3) << "; ";
  std::vector<MomentEstimate> even, odd;
  gate_moments(o, 100, f, 3, 3, 200000, 201, &even);
  gate_moments(o, 101, f, 3, 3, 200000, 202, &odd);
  const double diff = even[2].value - odd[2].value;
  o.detail << "even-odd=" << fmt(diff) << " predicted sign of 2R3=" << (r3 < 0 ? "-" : "+");
  o.require((diff < 0) == (r3 < 0), "sign of even-odd difference");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto f = make_fejer(0.8);
  for (const int M : {100, 101}) {
    const EnsembleSpec spec = EnsembleSpec::of(M);
    const auto est = mc_moments(spec, f, 2, 100000, 300 + M, Centering::empirical, default_workers());
    const double v = variance_limit(spec.parity, f);
    const double dev = std::abs(est[1].value - v);
    o.detail << "M=" << M << " var=" << fmt(est[1].value) << " closed=" << fmt(v) << " dev/se="
             << fmt(dev / est[1].std_err) << "; ";
    o.require(dev <= 3.0 * est[1].std_err, "variance M=" + std::to_string(M));
  }
  const double gap = variance_limit(Parity::even, f) - variance_limit(Parity::odd, f);
  const double cross = 4.0 * std::abs(sinc_moment(f, 2) - 0.5);
  o.detail << "even-odd=" << fmt(gap) << " 4|sinc-1/2|=" << fmt(cross);
  o.require(std::abs(std::abs(gap) - cross) <= 1e-6, "closed-form gap vs sinc moment");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(4);
  for (const int n : {2, 3}) {
    std::uniform_real_distribution<double> u(0.05, 1.0 / (n - 1));
    const double tol = n == 2 ? 1e-3 : 1e-2;
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const auto f = make_fejer(u(rng));
      const double closed = std::pow(-1.0, n - 1) * std::pow(2.0, n - 1) * (sinc_moment(f, n) - 0.5);
      worst = std::max(worst, std::abs(q_n_multidim(f, n) - closed));
    }
    o.detail << "n=" << n << " worst=" << fmt(worst) << "; ";
    o.require(worst <= tol, "Q_" + std::to_string(n));
  }
  const double t = seconds_since(t0);
  o.detail << "runtime=" << fmt(t) << "s";
  o.require(t <= 300.0, "runtime <= 5 min");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto t0 = Clock::now();
  for (int n = 2; n <= 12; ++n) {
    o.require(composition_sum(n, CompositionWeight::plain) == 0, "plain sum n=" + std::to_string(n));
    o.require(composition_sum(n, CompositionWeight::two_pow_minus_2m) == (n % 2 == 0 ? 2 : -2),
              "weighted sum n=" + std::to_string(n));
  }
  std::mt19937_64 rng(5);
  long long checked = 0;
  for (int n = 2; n <= 6; ++n) {
    std::uniform_real_distribution<double> small(0.0, 1.0 / n), big(0.0, 1.0 / (n - 1));
    std::vector<double> y(static_cast<std::size_t>(n));
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
      for (double& v : y) v = small(rng);
      bad += kernel_K_exact(y) != 0;
      double sum = 0.0;
      do {
        sum = 0.0;
        for (double& v : y) sum += (v = big(rng));
      } while (sum <= 1.0);
      bad += kernel_K_exact(y) != (n % 2 == 0 ? 2 : -2);
      checked += 2;
    }
    o.require(bad == 0, "kernel n=" + std::to_string(n));
  }
  const double t = seconds_since(t0);
  o.detail << "kernel tuples=" << checked << " runtime=" << fmt(t) << "s";
  o.require(t <= 60.0, "runtime < 1 min");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto t0 = Clock::now();
  long long c1 = 0, c4 = 0, g2 = 0;
  double worst1 = 0.0, worst4 = 0.0, worstg = 0.0;
  for (const long long N : {3LL, 5LL, 7LL, 11LL})
    for (long long b = 1; b <= 12; ++b)
      for (long long m = 1; m <= 5; ++m)
        for (long long a = 1; a <= 30; ++a) {
          if (std::gcd(a, b) == 1 && std::gcd(N, b) == 1 && std::gcd(m, N) == 1) {
            worst1 = std::max(worst1, kloosterman_char_expansion_residual({.m = m, .P = a, .b = b, .N = N}));
            ++c1;
          }
          const long long r = std::gcd(a, b);
          if (std::gcd(a, N) == 1 && std::gcd(N, b) == 1 && std::gcd(r, b / r) == 1) {
            worst4 = std::max(worst4, kloosterman_char_expansion_r_residual({.m = m, .Q = a, .b = b, .N = N}));
            ++c4;
          }
        }
  for (long long q = 1; q <= 50; ++q)
    for (long long n = 1; n <= q; ++n) {
      worstg = std::max(worstg, std::abs(gauss_square_identity(q, n)));
      ++g2;
    }
  o.detail << "expansion: " << c1 << " cases worst=" << fmt(worst1) << "; r-expansion: " << c4 << " cases worst="
           << fmt(worst4) << "; gauss-square: " << g2 << " cases worst=" << fmt(worstg) << "; ";
  o.require(worst1 <= 1e-9, "expansion residual");
  o.require(worst4 <= 1e-9, "r-expansion residual");
  o.require(worstg <= 1e-6, "gauss square identity");
  const double t = seconds_since(t0);
  o.detail << "runtime=" << fmt(t) << "s";
  o.require(t <= 120.0, "runtime < 2 min");
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sig(0.2, 1.0), val(0.1, 2.0);
  double worst12 = 0.0, worst3 = 0.0;
  for (int i = 0; i < 50; ++i) {
    TestFunction f = make_fejer(sig(rng));
    if (i % 2) {
      // Nonnegative even continuous piecewise-linear hat on [-s, s].
      const double s = sig(rng), a = val(rng), c = val(rng);
      f = make_hat_spline(PiecewisePolynomial({-s, -s / 2, 0.0, s / 2, s},
                                              {{0.0, 2 * a / s}, {a, 2 * (c - a) / s}, {c, 2 * (a - c) / s},
                                               {a, -2 * a / s}}));
    }
    for (int n = 1; n <= 3; ++n) {
      const double r = std::abs(ft_identity_residual(f, n));
      (n <= 2 ? worst12 : worst3) = std::max(n <= 2 ? worst12 : worst3, r);
    }
  }
  o.detail << "worst n<=2: " << fmt(worst12) << " worst n=3: " << fmt(worst3);
  o.require(worst12 <= 1e-5, "n <= 2");
  o.require(worst3 <= 1e-4, "n = 3");
  return o;
}

Outcome criterion8() {
  Outcome o;
  for (const int k : {2, 4})
    for (const double s : {0.5, 1.0}) {
      const double r = bessel_mellin_residual(k, s);
      o.detail << "k=" << k << " s=" << s << " residual=" << fmt(r) << "; ";
      o.require(r <= 1e-4, "mellin k=" + std::to_string(k));
    }
  double worst = 0.0;
  const double h = 1e-4;
  for (int nu = 1; nu <= 8; ++nu)
    for (double x = 0.25; x <= 200.0; x *= 1.05) {
      const double d = (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2 * h);
      worst = std::max(worst, std::abs(2 * d - (bessel_j(nu - 1, x) - bessel_j(nu + 1, x))));
    }
  o.detail << "recurrence worst=" << fmt(worst);
  o.require(worst <= 1e-6, "derivative recurrence");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto f = make_fejer(0.8);
  std::vector<double> res;
  for (const long long N : {1009LL, 10007LL, 100003LL}) {
    const IlsResult r = ils_sum_residual(f, 2, N);
    res.push_back(r.residual);
    o.detail << "N=" << N << " residual=" << fmt(r.residual) << "; ";
  }
  o.require(res[1] <= 1.0, "residual at N ~ 1e4");
  o.require(res[1] <= 1.2 * res[0] && res[2] <= 1.2 * res[1], "non-increasing within 20%");
  return o;
}

Outcome criterion10() {
  Outcome o;
  const Rational third(1, 3);
  const Rational p3 = order_vanishing_bound_exact(3, 2, third).probability_bound;
  const Rational p5 = order_vanishing_bound_exact(5, 2, third).probability_bound;
  o.detail << "exact r=3: " << to_string(p3) << " r=5: " << to_string(p5) << " p1 >= " << to_string(1 - p3) << "; ";
  o.require(p3 == Rational(4, 27), "4/27");
  o.require(p5 == Rational(4, 147), "4/147");
  o.require(1 - p3 == Rational(23, 27), "23/27");
  const auto rows = vanishing_table(make_fejer(0.999), Parity::odd, 2, 3);
  const double B = rows.front().B, bound = rows.front().probability_bound;
  const double limit_B = 0.25, limit_bound = limit_B / (1.5 * 1.5);
  o.detail << "sigma=0.999: B=" << fmt(B) << " (limit " << fmt(limit_B) << ") bound=" << fmt(bound) << " (limit "
           << fmt(limit_bound) << ")";
  o.require(std::abs(B - limit_B) <= 2e-2, "B near its limit");
  o.require(std::abs(bound - limit_bound) <= 2e-2, "bound near its limit");
  o.require(B <= 1.0 / 3.0 + 2e-2, "B below 1/3 + slack");
  return o;
}

Outcome criterion11() {
  Outcome o;
  const long long n = 100000;
  std::vector<double> so2;
  for (long long i = 0; i < n; ++i) {
    Rng rng = derive_stream(1101, static_cast<std::uint64_t>(i));
    const Eigen::MatrixXd q = sample_haar_so_matrix(2, rng);
    so2.push_back(std::atan2(q(1, 0), q(0, 0)));
  }
  const auto ks = stats::ks_one_sample(so2, [](double t) { return std::clamp((t + M_PI) / (2 * M_PI), 0.0, 1.0); });
  o.detail << "SO(2) KS p=" << fmt(ks.p_value) << "; ";
  o.require(ks.p_value > 0.01, "SO(2) uniformity");

  const int bins = 50;
  std::vector<double> observed(bins, 0.0), expected(bins, 0.0);
  const auto f = make_fejer(0.8);
  std::vector<double> z;
  for (long long i = 0; i < n; ++i) {
    Rng rng = derive_stream(1102, static_cast<std::uint64_t>(i));
    const Eigenangles e = sample_haar_so(3, rng);
    double theta = 0.0;
    for (const double a : e.angles) theta = std::max(theta, std::abs(a));
    observed[std::min(bins - 1, static_cast<int>(theta / M_PI * bins))] += 1.0;
    z.push_back(z_statistic(e, f));
  }
  const auto cdf = [](double t) { return (t - std::sin(t)) / M_PI; };
  for (int b = 0; b < bins; ++b) expected[b] = n * (cdf(M_PI * (b + 1) / bins) - cdf(M_PI * b / bins));
  const auto chi = stats::chi_squared_gof(observed, expected);
  o.detail << "SO(3) chi2 p=" << fmt(chi.p_value) << "; ";
  o.require(chi.p_value > 0.01, "SO(3) density");

  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double t) { return z_statistic(Eigenangles{{t, -t, 0.0}, Parity::odd}, f) * (1 - std::cos(t)) / M_PI; },
      0.0, M_PI, 15, 1e-13);
  const auto me = stats::mean_and_stderr(z);
  o.detail << "SO(3) E[Z]=" << fmt(me.mean) << " oracle=" << fmt(oracle) << " dev/se="
           << fmt(std::abs(me.mean - oracle) / me.std_err);
  o.require(std::abs(me.mean - oracle) <= 3 * me.std_err, "SO(3) mean of Z");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10, criterion11};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failures += !o.pass;
    std::printf("criterion %d: %s (%.1fs) %s\n", id, o.pass ? "PASS" : "FAIL", seconds_since(t0),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
