#include "lzlab/piecewise_poly.hpp"

#include "lzlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace lzlab {

namespace poly {

double eval(std::span<const double> c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Coeffs add(std::span<const double> a, std::span<const double> b) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Coeffs scale(std::span<const double> a, double s) {
  Coeffs out(a.begin(), a.end());
  for (double& v : out) v *= s;
  return out;
}

Coeffs mul(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {0.0};
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Coeffs antiderivative(std::span<const double> c) {
  Coeffs out(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) out[i + 1] = c[i] / static_cast<double>(i + 1);
  return out;
}

Coeffs derivative(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  Coeffs out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * static_cast<double>(i);
  return out;
}

Coeffs compose_linear(std::span<const double> c, double alpha, double beta) {
  if (c.empty()) return {0.0};
  Coeffs out{c.back()};
  const Coeffs lin{alpha, beta};
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    out = mul(out, lin);
    out[0] += c[k];
  }
  out.resize(c.size(), 0.0);
  return out;
}

double integrate(std::span<const double> c, double lo, double hi) {
  // Evaluate the antiderivative without materializing it.
  double f_hi = 0.0, f_lo = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    const double w = c[k] / static_cast<double>(k + 1);
    f_hi = f_hi * hi + w;
    f_lo = f_lo * lo + w;
  }
  return f_hi * hi - f_lo * lo;
}

void trim(Coeffs& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

}  // namespace poly

PiecewisePolynomial::PiecewisePolynomial(std::vector<double> breakpoints, std::vector<Coeffs> local_panels)
    : breakpoints_(std::move(breakpoints)), panels_(std::move(local_panels)) {
  if (breakpoints_.empty() && panels_.empty()) return;
  if (breakpoints_.size() != panels_.size() + 1)
    throw ValidationError("piecewise polynomial: need exactly one panel per breakpoint interval");
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1]))
      throw ValidationError("piecewise polynomial: breakpoints must be strictly increasing");
  }
  for (const double b : breakpoints_)
    if (!std::isfinite(b)) throw ValidationError("piecewise polynomial: support must be bounded");
  for (auto& p : panels_) {
    if (p.empty()) p.push_back(0.0);
    if (static_cast<int>(p.size()) - 1 > kMaxDegree)
      throw ValidationError("piecewise polynomial: panel degree exceeds cap " + std::to_string(kMaxDegree));
    for (const double v : p)
      if (!std::isfinite(v)) throw ValidationError("piecewise polynomial: non-finite coefficient");
  }
}

PiecewisePolynomial PiecewisePolynomial::from_global(std::vector<double> breakpoints,
                                                     const std::vector<Coeffs>& global_panels) {
  if (breakpoints.size() != global_panels.size() + 1)
    throw ValidationError("piecewise polynomial: need exactly one panel per breakpoint interval");
  std::vector<Coeffs> local;
  local.reserve(global_panels.size());
  for (std::size_t i = 0; i < global_panels.size(); ++i) local.push_back(poly::shift(global_panels[i], breakpoints[i]));
  return PiecewisePolynomial(std::move(breakpoints), std::move(local));
}

PiecewisePolynomial PiecewisePolynomial::zero() { return PiecewisePolynomial(); }

std::size_t PiecewisePolynomial::locate(double y) const {
  auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), y);
  std::size_t idx = static_cast<std::size_t>(it - breakpoints_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  return std::min(idx, panels_.size() - 1);
}

double PiecewisePolynomial::support_lo() const { return empty() ? 0.0 : breakpoints_.front(); }
double PiecewisePolynomial::support_hi() const { return empty() ? 0.0 : breakpoints_.back(); }

int PiecewisePolynomial::degree() const {
  int d = 0;
  for (const auto& p : panels_) d = std::max(d, static_cast<int>(p.size()) - 1);
  return d;
}

double PiecewisePolynomial::right_limit(double y) const {
  if (empty() || y < breakpoints_.front() || y >= breakpoints_.back()) return 0.0;
  const std::size_t i = locate(y);
  return poly::eval(panels_[i], y - breakpoints_[i]);
}

double PiecewisePolynomial::left_limit(double y) const {
  if (empty() || y <= breakpoints_.front() || y > breakpoints_.back()) return 0.0;
  auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), y);
  const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  return poly::eval(panels_[i], y - breakpoints_[i]);
}

double PiecewisePolynomial::operator()(double y) const {
  if (empty() || y < breakpoints_.front() || y > breakpoints_.back()) return 0.0;
  if (std::binary_search(breakpoints_.begin(), breakpoints_.end(), y))
    return 0.5 * (left_limit(y) + right_limit(y));
  const std::size_t i = locate(y);
  return poly::eval(panels_[i], y - breakpoints_[i]);
}

Coeffs PiecewisePolynomial::global_panel(std::size_t i) const { return poly::shift(panels_[i], -breakpoints_[i]); }

bool PiecewisePolynomial::is_continuous(double tol) const {
  // Continuity on the whole line: the function vanishes outside the support.
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double b = breakpoints_[i];
    const double l = i == 0 ? 0.0 : poly::eval(panels_[i - 1], b - breakpoints_[i - 1]);
    const double r = i + 1 == breakpoints_.size() ? 0.0 : poly::eval(panels_[i], 0.0);
    if (std::abs(l - r) > tol * std::max({1.0, std::abs(l), std::abs(r)})) return false;
  }
  return true;
}

bool PiecewisePolynomial::is_even(double tol) const {
  if (empty()) return true;
  const std::size_t k = breakpoints_.size();
  const double scale = std::max(std::abs(breakpoints_.front()), std::abs(breakpoints_.back()));
  for (std::size_t i = 0; i < k; ++i)
    if (std::abs(breakpoints_[i] + breakpoints_[k - 1 - i]) > tol * std::max(1.0, scale)) return false;
  double vmax = 0.0;
  for (std::size_t i = 0; i < panels_.size(); ++i)
    for (int j = 0; j <= 4; ++j)
      vmax = std::max(vmax, std::abs((*this)(panel_lo(i) + (panel_hi(i) - panel_lo(i)) * j / 4.0)));
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    const double lo = panel_lo(i), hi = panel_hi(i);
    for (int j = 1; j < 8; ++j) {
      const double y = lo + (hi - lo) * j / 8.0;
      if (std::abs((*this)(y) - (*this)(-y)) > 1e-10 * std::max(1.0, vmax)) return false;
    }
  }
  return true;
}

double PiecewisePolynomial::integral() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < panels_.size(); ++i) acc += poly::integrate(panels_[i], 0.0, panel_hi(i) - panel_lo(i));
  return acc;
}

double PiecewisePolynomial::integral(double lo, double hi) const {
  if (hi < lo) return -integral(hi, lo);
  double acc = 0.0;
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    const double a = std::max(lo, panel_lo(i));
    const double b = std::min(hi, panel_hi(i));
    if (b > a) acc += poly::integrate(panels_[i], a - panel_lo(i), b - panel_lo(i));
  }
  return acc;
}

double PiecewisePolynomial::abs_integral() const {
  constexpr int kGrid = 256;
  double acc = 0.0;
  for (std::size_t i = 0; i < panels_.size(); ++i) {
    const double h = panel_hi(i) - panel_lo(i);
    const Coeffs& p = panels_[i];
    std::vector<double> cuts{0.0};
    double prev = poly::eval(p, 0.0);
    for (int j = 1; j <= kGrid; ++j) {
      const double t = h * j / kGrid;
      const double cur = poly::eval(p, t);
      if (cur == 0.0 && j < kGrid) {
        cuts.push_back(t);
      } else if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0)) {
        double a = h * (j - 1) / kGrid, b = t;
        double fa = prev;
        for (int it = 0; it < 80; ++it) {
          const double m = 0.5 * (a + b);
          const double fm = poly::eval(p, m);
          if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
          } else {
            b = m;
          }
        }
        cuts.push_back(0.5 * (a + b));
      }
      prev = cur;
    }
    cuts.push_back(h);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) acc += std::abs(poly::integrate(p, cuts[c], cuts[c + 1]));
  }
  return acc;
}

PiecewisePolynomial PiecewisePolynomial::refined(std::span<const double> points) const {
  if (empty()) return *this;
  std::vector<double> bps = breakpoints_;
  const double scale = std::max(1.0, std::max(std::abs(support_lo()), std::abs(support_hi())));
  for (const double p : points) {
    if (p <= support_lo() || p >= support_hi()) continue;
    auto it = std::lower_bound(bps.begin(), bps.end(), p);
    const bool near_lo = it != bps.begin() && std::abs(*(it - 1) - p) <= 1e-14 * scale;
    const bool near_hi = it != bps.end() && std::abs(*it - p) <= 1e-14 * scale;
    if (!near_lo && !near_hi) bps.insert(it, p);
  }
  std::vector<Coeffs> panels;
  panels.reserve(bps.size() - 1);
  for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
    const std::size_t src = locate(0.5 * (bps[k] + bps[k + 1]));
    panels.push_back(poly::shift(panels_[src], bps[k] - breakpoints_[src]));
  }
  return PiecewisePolynomial(std::move(bps), std::move(panels));
}

PiecewisePolynomial PiecewisePolynomial::scaled(double s) const {
  PiecewisePolynomial out = *this;
  for (auto& p : out.panels_)
    for (double& v : p) v *= s;
  return out;
}

PiecewisePolynomial PiecewisePolynomial::squared() const {
  PiecewisePolynomial out = *this;
  for (auto& p : out.panels_) p = poly::mul(p, p);
  return out;
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  PiecewisePolynomial out = *this;
  for (auto& p : out.panels_) p = poly::derivative(p);
  return out;
}

double PiecewisePolynomial::total_jump() const {
  double acc = 0.0;
  for (const double b : breakpoints_) acc += std::abs(right_limit(b) - left_limit(b));
  return acc;
}

namespace {

// \int_{lower(tau)}^{upper(tau)} p(s) q(tau - s) ds on one tau-regime, as a polynomial in tau.
Coeffs convolve_piece(const Coeffs& p, const Coeffs& q, bool lower_is_shifted, double hg, bool upper_is_tau,
                      double hf) {
  const std::size_t dp = p.size(), dq = q.size();
  // B[i][j]: coefficient of s^i tau^j in p(s) q(tau - s).
  std::vector<Coeffs> bivar(dp + dq, Coeffs(dq, 0.0));
  for (std::size_t a = 0; a < dp; ++a) {
    for (std::size_t b = 0; b < dq; ++b) {
      double binom = 1.0;
      for (std::size_t r = 0; r <= b; ++r) {
        // (tau - s)^b = sum_r C(b,r) tau^{b-r} (-s)^r
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        bivar[a + r][b - r] += p[a] * q[b] * binom * sign;
        binom = binom * static_cast<double>(b - r) / static_cast<double>(r + 1);
      }
    }
  }
  // Antiderivative in s, evaluated at s = alpha + beta * tau for each limit.
  auto eval_at = [&](double alpha, double beta) {
    Coeffs out(dp + dq, 0.0);
    for (std::size_t i = 0; i < bivar.size(); ++i) {
      Coeffs col(bivar[i]);
      bool any = false;
      for (double v : col) any = any || v != 0.0;
      if (!any) continue;
      // s^{i+1}/(i+1) at s = alpha + beta tau
      Coeffs pw{1.0};
      const Coeffs lin{alpha, beta};
      for (std::size_t k = 0; k < i + 1; ++k) pw = poly::mul(pw, lin);
      const Coeffs term = poly::mul(pw, poly::scale(col, 1.0 / static_cast<double>(i + 1)));
      for (std::size_t k = 0; k < term.size() && k < out.size(); ++k) out[k] += term[k];
    }
    return out;
  };
  const Coeffs up = upper_is_tau ? eval_at(0.0, 1.0) : eval_at(hf, 0.0);
  const Coeffs lo = lower_is_shifted ? eval_at(-hg, 1.0) : eval_at(0.0, 0.0);
  return poly::add(up, poly::scale(lo, -1.0));
}

}  // namespace

PiecewisePolynomial PiecewisePolynomial::convolve(const PiecewisePolynomial& other, int max_degree) const {
  if (empty() || other.empty()) return zero();
  const int out_degree = degree() + other.degree() + 1;
  if (out_degree > max_degree)
    throw UnsupportedError("convolution degree " + std::to_string(out_degree) + " exceeds cap " +
                           std::to_string(max_degree));

  std::vector<double> grid;
  for (const double a : breakpoints_)
    for (const double b : other.breakpoints_) grid.push_back(a + b);
  std::sort(grid.begin(), grid.end());
  const double scale = std::max({1.0, std::abs(grid.front()), std::abs(grid.back())});
  std::vector<double> merged;
  for (const double g : grid)
    if (merged.empty() || g - merged.back() > 1e-12 * scale) merged.push_back(g);
  // Snap the outer support exactly.
  merged.front() = grid.front();
  merged.back() = grid.back();

  std::vector<Coeffs> out(merged.size() - 1, Coeffs(static_cast<std::size_t>(out_degree) + 1, 0.0));
  auto index_of = [&](double x) {
    auto it = std::lower_bound(merged.begin(), merged.end(), x - 1e-12 * scale);
    return static_cast<std::size_t>(it - merged.begin());
  };

  for (std::size_t i = 0; i < panels_.size(); ++i) {
    const double a = panel_lo(i), hf = panel_hi(i) - a;
    for (std::size_t j = 0; j < other.panels_.size(); ++j) {
      const double b = other.panel_lo(j), hg = other.panel_hi(j) - b;
      double cuts[4] = {0.0, std::min(hf, hg), std::max(hf, hg), hf + hg};
      for (int r = 0; r < 3; ++r) {
        const double t0 = cuts[r], t1 = cuts[r + 1];
        if (t1 - t0 <= 1e-14 * scale) continue;
        const double tm = 0.5 * (t0 + t1);
        const bool lower_shifted = tm > hg;
        const bool upper_tau = tm < hf;
        const Coeffs piece = convolve_piece(panels_[i], other.panels_[j], lower_shifted, hg, upper_tau, hf);
        const std::size_t k0 = index_of(a + b + t0);
        const std::size_t k1 = index_of(a + b + t1);
        for (std::size_t k = k0; k < k1 && k < out.size(); ++k) {
          const Coeffs shifted = poly::shift(piece, merged[k] - a - b);
          for (std::size_t c = 0; c < shifted.size(); ++c) out[k][c] += shifted[c];
        }
      }
    }
  }
  return PiecewisePolynomial(std::move(merged), std::move(out));
}

double integrate_product_over_band(const PiecewisePolynomial& f, const PiecewisePolynomial& g,
                                   std::span<const Line> lower, std::span<const Line> upper) {
  if (f.empty() || g.empty()) return 0.0;
  std::vector<Line> lines(lower.begin(), lower.end());
  lines.insert(lines.end(), upper.begin(), upper.end());

  std::vector<double> cuts = f.breakpoints();
  for (const Line& l : lines) {
    if (l.slope == 0.0) continue;
    for (const double vb : g.breakpoints()) cuts.push_back((vb - l.intercept) / l.slope);
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i].slope != lines[j].slope)
        cuts.push_back((lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope));
  const double ulo = f.support_lo(), uhi = f.support_hi();
  std::erase_if(cuts, [&](double c) { return !(c >= ulo && c <= uhi); });
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Coeffs> g_anti;
  for (std::size_t j = 0; j < g.panel_count(); ++j) g_anti.push_back(poly::antiderivative(g.panel(j)));

  const double scale = std::max({1.0, std::abs(ulo), std::abs(uhi)});
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double u0 = cuts[c], u1 = cuts[c + 1];
    if (u1 - u0 <= 1e-15 * scale) continue;
    const double um = 0.5 * (u0 + u1);
    const auto fi_it = std::upper_bound(f.breakpoints().begin(), f.breakpoints().end(), um);
    const std::size_t fi = static_cast<std::size_t>(fi_it - f.breakpoints().begin()) - 1;
    const double a = f.panel_lo(fi);

    const Line* lo_line = nullptr;
    for (const Line& l : lower)
      if (!lo_line || l.at(um) > lo_line->at(um)) lo_line = &l;
    const Line* up_line = nullptr;
    for (const Line& l : upper)
      if (!up_line || l.at(um) < up_line->at(um)) up_line = &l;

    for (std::size_t j = 0; j < g.panel_count(); ++j) {
      const double bj = g.panel_lo(j), bj1 = g.panel_hi(j);
      const bool use_lo_line = lo_line && lo_line->at(um) > bj;
      const bool use_up_line = up_line && up_line->at(um) < bj1;
      const double lo_val = use_lo_line ? lo_line->at(um) : bj;
      const double up_val = use_up_line ? up_line->at(um) : bj1;
      if (!(lo_val < up_val)) continue;
      auto bound_poly = [&](bool use_line, const Line* line, double constant) -> Coeffs {
        if (use_line)
          return poly::compose_linear(g_anti[j], line->intercept + line->slope * a - bj, line->slope);
        return Coeffs{poly::eval(g_anti[j], constant - bj)};
      };
      const Coeffs inner = poly::add(bound_poly(use_up_line, up_line, bj1),
                                     poly::scale(bound_poly(use_lo_line, lo_line, bj), -1.0));
      total += poly::integrate(poly::mul(f.panel(fi), inner), u0 - a, u1 - a);
    }
  }
  return total;
}

namespace {
constexpr int kMaxInputDegree = 8;

std::vector<double> parse_numbers(const std::string& line, int line_no) {
  std::istringstream is(line);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size())
      throw ValidationError("hat spline line " + std::to_string(line_no) + ": bad number '" + tok + "'");
    out.push_back(v);
  }
  return out;
}
}  // namespace

PiecewisePolynomial parse_piecewise_polynomial(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::vector<double> breakpoints;
  bool have_breakpoints = false;
  std::vector<Coeffs> panels;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (!have_breakpoints) {
      const std::string key = "breakpoints:";
      if (line.compare(first, key.size(), key) != 0)
        throw ValidationError("hat spline: first line must start with 'breakpoints:'");
      breakpoints = parse_numbers(line.substr(first + key.size()), line_no);
      if (breakpoints.size() < 2) throw ValidationError("hat spline: need at least two breakpoints");
      have_breakpoints = true;
      continue;
    }
    Coeffs c = parse_numbers(line, line_no);
    if (c.empty()) continue;
    if (static_cast<int>(c.size()) - 1 > kMaxInputDegree)
      throw ValidationError("hat spline line " + std::to_string(line_no) + ": degree above " +
                            std::to_string(kMaxInputDegree));
    panels.push_back(std::move(c));
  }
  if (!have_breakpoints) throw ValidationError("hat spline: missing breakpoints line");
  if (panels.size() + 1 != breakpoints.size())
    throw ValidationError("hat spline: expected " + std::to_string(breakpoints.size() - 1) +
                          " coefficient lines, got " + std::to_string(panels.size()));
  return PiecewisePolynomial::from_global(std::move(breakpoints), panels);
}

PiecewisePolynomial load_piecewise_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open hat spline file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_piecewise_polynomial(ss.str());
}

std::string format_piecewise_polynomial(const PiecewisePolynomial& p) {
  std::ostringstream os;
  os << std::setprecision(17) << "breakpoints:";
  for (const double b : p.breakpoints()) os << ' ' << b;
  os << '\n';
  for (std::size_t i = 0; i < p.panel_count(); ++i) {
    const Coeffs g = p.global_panel(i);
    for (std::size_t k = 0; k < g.size(); ++k) os << (k ? " " : "") << g[k];
    os << '\n';
  }
  return os.str();
}

}  // namespace lzlab
