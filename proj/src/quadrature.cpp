#include "lzlab/quadrature.hpp"

#include "lzlab/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>

namespace lzlab::quad {

double gauss_kronrod(const Integrand& f, double a, double b, double tol, unsigned max_depth, double* error) {
  if (a == b) return 0.0;
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &err);
  if (error) *error = err;
  return v;
}

double panelled(const Integrand& f, double a, double b, double width, std::span<const double> cuts, double tol) {
  if (!(b > a)) return 0.0;
  if (!(width > 0.0)) throw DomainError("panelled quadrature: width must be positive");
  std::vector<double> edges;
  const auto count = static_cast<long long>(std::ceil((b - a) / width));
  edges.reserve(static_cast<std::size_t>(count) + cuts.size() + 1);
  for (long long i = 0; i < count; ++i) edges.push_back(a + static_cast<double>(i) * width);
  edges.push_back(b);
  for (const double c : cuts)
    if (c > a && c < b) edges.push_back(c);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::vector<double> parts;
  parts.reserve(edges.size());
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) parts.push_back(gauss_kronrod(f, edges[i], edges[i + 1], tol, 8));
  return pairwise_sum(parts);
}

double gauss_legendre_panels(const Integrand& f, double a, double b, double width) {
  if (!(b > a)) return 0.0;
  if (!(width > 0.0)) throw DomainError("gauss_legendre_panels: width must be positive");
  const auto count = static_cast<std::size_t>(std::ceil((b - a) / width));
  std::vector<double> parts(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double lo = a + static_cast<double>(i) * width;
    const double hi = i + 1 == count ? b : lo + width;
    parts[i] = boost::math::quadrature::gauss<double, 20>::integrate(f, lo, hi);
  }
  return pairwise_sum(parts);
}

double tanh_sinh(const Integrand& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(f, a, b, tol);
}

namespace {
template <unsigned N>
void append_panel(Rule& r, double lo, double hi) {
  using G = boost::math::quadrature::gauss<double, N>;
  const auto& x = G::abscissa();
  const auto& w = G::weights();
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  // Boost stores the non-negative half; index 0 is the centre when N is odd.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      r.nodes.push_back(c);
      r.weights.push_back(h * w[i]);
      continue;
    }
    r.nodes.push_back(c - h * x[i]);
    r.weights.push_back(h * w[i]);
    r.nodes.push_back(c + h * x[i]);
    r.weights.push_back(h * w[i]);
  }
}
}  // namespace

Rule gauss_legendre_composite(double a, double b, double panel_width, int order) {
  if (!(b > a) || !(panel_width > 0.0)) throw DomainError("gauss_legendre_composite: bad interval");
  const auto panels = static_cast<long long>(std::ceil((b - a) / panel_width - 1e-12));
  const double h = (b - a) / static_cast<double>(panels);
  Rule r;
  for (long long p = 0; p < panels; ++p) {
    const double lo = a + static_cast<double>(p) * h, hi = (p + 1 == panels) ? b : lo + h;
    if (order == 10) {
      append_panel<10>(r, lo, hi);
    } else if (order == 20) {
      append_panel<20>(r, lo, hi);
    } else {
      throw UnsupportedError("gauss_legendre_composite: order must be 10 or 20");
    }
  }
  // Sort nodes so matrices built from them have monotone rows.
  std::vector<std::size_t> idx(r.nodes.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return r.nodes[i] < r.nodes[j]; });
  Rule sorted;
  for (const std::size_t i : idx) {
    sorted.nodes.push_back(r.nodes[i]);
    sorted.weights.push_back(r.weights[i]);
  }
  return sorted;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace lzlab::quad
