#pragma once

#include "lzlab/common.hpp"
#include "lzlab/rational.hpp"
#include "lzlab/testfn.hpp"

#include <vector>

namespace lzlab {

struct VanishingBound {
  int r = 3;
  int n = 2;
  double B = 0.0;
  /// B / (r - 3/2)^n, clamped to [0, 1].
  double probability_bound = 0.0;
  /// Finite-support excess of the odd mean over 3/2; zero in the limit.
  double epsilon_slack = 0.0;
  /// B / (r - 3/2 - epsilon_slack)^n, the finite-sigma version.
  double probability_bound_with_slack = 0.0;
  bool clamped = false;
};

struct ExactVanishingBound {
  int r = 3;
  int n = 2;
  Rational B;
  Rational probability_bound;
};

/// (n-1)!! sigma_phi^n +/- R_n(phi) for phi >= 0 with phi(0) = 1 and even n.
double moment_bound(const TestFunction& f, Parity parity, int n);

/// mean_limit(odd, f) - 3/2.
double epsilon_slack(const TestFunction& f);

VanishingBound order_vanishing_bound(int r, int n, double B, double epsilon = 0.0);
ExactVanishingBound order_vanishing_bound_exact(int r, int n, const Rational& B);

/// Rows r = 3, 5, ... (odd parity) or r = 4, 6, ... (even parity) up to r_max.
std::vector<VanishingBound> vanishing_table(const TestFunction& f, Parity parity, int n, int r_max);

}  // namespace lzlab
