#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lzlab::quad {

using Integrand = std::function<double(double)>;

/// Adaptive 31-point Gauss-Kronrod on [a, b].
double gauss_kronrod(const Integrand& f, double a, double b, double tol = 1e-13, unsigned max_depth = 12,
                     double* error = nullptr);

/// Sum of adaptive Gauss-Kronrod integrals over consecutive panels of the given width.
/// Breakpoints listed in `cuts` are always panel edges.
double panelled(const Integrand& f, double a, double b, double width, std::span<const double> cuts = {},
                double tol = 1e-13);

/// Double-exponential rule on [a, b]; tolerant of endpoint singularities.
/// Fixed 20-point Gauss-Legendre on consecutive panels of the given width; for smooth band-limited integrands.
double gauss_legendre_panels(const Integrand& f, double a, double b, double width);

double tanh_sinh(const Integrand& f, double a, double b, double tol = 1e-12);

/// Nodes and weights of a composite rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite Gauss-Legendre with `order` nodes per panel (order is 10 or 20).
Rule gauss_legendre_composite(double a, double b, double panel_width, int order = 10);

/// Pairwise (cascade) summation; fixed association order for reproducibility.
double pairwise_sum(std::span<const double> v);

}  // namespace lzlab::quad
