#include "lzlab/vanishing.hpp"

#include "lzlab/errors.hpp"
#include "lzlab/predictions.hpp"

#include <cmath>
#include <string>

namespace lzlab {

double moment_bound(const TestFunction& f, Parity parity, int n) {
  if (n < 2 || n % 2 != 0) throw DomainError("moment_bound: n must be even and >= 2");
  if (std::abs(f.phi0() - 1.0) > 1e-9) throw ValidationError("moment_bound: phi(0) must equal 1");
  if (f.kind() != TestFunction::Kind::fejer) {
    const double span = 50.0 / std::max(f.sigma(), 1e-3);
    for (int i = 0; i <= 4000; ++i) {
      const double x = span * i / 4000.0;
      if (f.phi(x) < -1e-12) throw ValidationError("moment_bound: phi is negative at x = " + std::to_string(x));
    }
  }
  return centered_moment_prediction(parity, n, f).value;
}

double epsilon_slack(const TestFunction& f) { return mean_limit(Parity::odd, f) - 1.5; }

VanishingBound order_vanishing_bound(int r, int n, double B, double epsilon) {
  if (r < 3) throw OutOfRangeError("order_vanishing_bound: r must be >= 3");
  if (n < 2 || n % 2 != 0) throw DomainError("order_vanishing_bound: n must be even and >= 2");
  if (!(B >= 0.0)) throw DomainError("order_vanishing_bound: B must be non-negative");
  VanishingBound v;
  v.r = r;
  v.n = n;
  v.B = B;
  v.epsilon_slack = epsilon;
  const double raw = B / std::pow(r - 1.5, n);
  v.clamped = raw > 1.0;
  v.probability_bound = std::min(raw, 1.0);
  const double gap = r - 1.5 - epsilon;
  v.probability_bound_with_slack = gap > 0.0 ? std::min(B / std::pow(gap, n), 1.0) : 1.0;
  return v;
}

ExactVanishingBound order_vanishing_bound_exact(int r, int n, const Rational& B) {
  if (r < 3) throw OutOfRangeError("order_vanishing_bound: r must be >= 3");
  if (n < 2 || n % 2 != 0) throw DomainError("order_vanishing_bound: n must be even and >= 2");
  if (B < 0) throw DomainError("order_vanishing_bound: B must be non-negative");
  // (r - 3/2)^n = (2r - 3)^n / 2^n
  BigInt num = 1, den = 1;
  for (int i = 0; i < n; ++i) {
    num *= 2;
    den *= 2 * r - 3;
  }
  return {r, n, B, B * Rational(num, den)};
}

std::vector<VanishingBound> vanishing_table(const TestFunction& f, Parity parity, int n, int r_max) {
  const double B = moment_bound(f, parity, n);
  const double eps = epsilon_slack(f);
  std::vector<VanishingBound> rows;
  for (int r = parity == Parity::odd ? 3 : 4; r <= r_max; r += 2) rows.push_back(order_vanishing_bound(r, n, B, eps));
  return rows;
}

}  // namespace lzlab
