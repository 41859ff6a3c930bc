#include "lzlab/arith.hpp"

#include "lzlab/errors.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <numeric>
#include <string>

namespace lzlab {

long long gcd_ll(long long a, long long b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

namespace {

struct PrimePower {
  long long p;
  int k;
  long long pk;
};

std::vector<PrimePower> factorize(long long n) {
  std::vector<PrimePower> out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    PrimePower pp{p, 0, 1};
    while (n % p == 0) {
      n /= p;
      ++pp.k;
      pp.pk *= p;
    }
    out.push_back(pp);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

long long mod(long long a, long long q) {
  const long long r = a % q;
  return r < 0 ? r + q : r;
}

long long pow_mod(long long base, long long e, long long q) {
  long long out = 1 % q;
  base = mod(base, q);
  while (e > 0) {
    if (e & 1) out = static_cast<long long>(static_cast<__int128>(out) * base % q);
    base = static_cast<long long>(static_cast<__int128>(base) * base % q);
    e >>= 1;
  }
  return out;
}

// Primitive root modulo an odd prime power p^k.
long long primitive_root(long long p, long long pk) {
  const long long order = pk / p * (p - 1);
  const auto primes = factorize(order);
  for (long long g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (const auto& f : primes)
      if (pow_mod(g, order / f.p, pk) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // pk == 2 only
}

// One cyclic factor of (Z/p^k)^x: generator g of order `order`, and log[a mod pk] (-1 off the subgroup).
struct CyclicFactor {
  long long order;
  std::vector<long long> log;
};

// Decomposes (Z/p^k)^x into cyclic factors with a discrete-log table for each.
std::vector<CyclicFactor> cyclic_factors(const PrimePower& pp) {
  std::vector<CyclicFactor> out;
  const long long pk = pp.pk;
  if (pp.p != 2) {
    const long long order = pk / pp.p * (pp.p - 1);
    const long long g = primitive_root(pp.p, pk);
    CyclicFactor f{order, std::vector<long long>(static_cast<std::size_t>(pk), -1)};
    long long x = 1;
    for (long long t = 0; t < order; ++t) {
      f.log[static_cast<std::size_t>(x)] = t;
      x = x * g % pk;
    }
    out.push_back(std::move(f));
    return out;
  }
  if (pk == 2) return out;
  // a = (-1)^s 5^t modulo 2^k; for k = 2 the 5-part is trivial.
  CyclicFactor sign{2, std::vector<long long>(static_cast<std::size_t>(pk), -1)};
  const long long order5 = pk / 4;
  CyclicFactor five{order5, std::vector<long long>(static_cast<std::size_t>(pk), -1)};
  long long x = 1;
  for (long long t = 0; t < order5; ++t) {
    sign.log[static_cast<std::size_t>(x)] = 0;
    sign.log[static_cast<std::size_t>(pk - x)] = 1;
    five.log[static_cast<std::size_t>(x)] = t;
    five.log[static_cast<std::size_t>(pk - x)] = t;
    x = x * 5 % pk;
  }
  out.push_back(std::move(sign));
  if (order5 > 1) out.push_back(std::move(five));
  return out;
}

}  // namespace

long long euler_phi(long long q) {
  if (q < 1) throw DomainError("euler_phi: q must be >= 1");
  long long out = q;
  for (const auto& f : factorize(q)) out = out / f.p * (f.p - 1);
  return out;
}

int mobius(long long n) {
  if (n < 1) throw DomainError("mobius: n must be >= 1");
  int out = 1;
  for (const auto& f : factorize(n)) {
    if (f.k > 1) return 0;
    out = -out;
  }
  return out;
}

long long divisor_count(long long n) {
  if (n < 1) throw DomainError("divisor_count: n must be >= 1");
  long long out = 1;
  for (const auto& f : factorize(n)) out *= f.k + 1;
  return out;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

long long next_prime(long long n) {
  long long p = std::max<long long>(n, 2);
  while (!is_prime(p)) ++p;
  return p;
}

long long mod_inverse(long long a, long long q) {
  long long old_r = mod(a, q), r = q, old_s = 1, s = 0;
  while (r != 0) {
    const long long quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  if (old_r != 1 && q != 1) throw DomainError("mod_inverse: argument not invertible");
  return mod(old_s, q);
}

Complex e_frac(long long a, long long q) {
  const long long r = mod(a, q);
  const double x = 2.0 * static_cast<double>(r) / static_cast<double>(q);
  return {boost::math::cos_pi(x), boost::math::sin_pi(x)};
}

Complex DirichletCharacter::operator()(long long a) const { return values[static_cast<std::size_t>(mod(a, q))]; }

CharacterGroup character_group(long long q) {
  if (q < 1) throw DomainError("character_group: q must be >= 1");
  if (q > 10000) throw DomainError("character_group: q must be <= 10^4");
  struct Factor {
    long long pk;
    CyclicFactor cyc;
  };
  std::vector<Factor> factors;
  for (const auto& pp : factorize(q))
    for (auto& c : cyclic_factors(pp)) factors.push_back({pp.pk, std::move(c)});

  long long denom = 1;
  for (const auto& f : factors) denom = std::lcm(denom, f.cyc.order);

  // Per-unit exponent vector t_c (discrete logs), computed once.
  std::vector<std::vector<long long>> logs(static_cast<std::size_t>(q));
  for (long long a = 0; a < q; ++a) {
    if (gcd_ll(a, q) != 1) continue;
    for (const auto& f : factors) logs[static_cast<std::size_t>(a)].push_back(f.cyc.log[static_cast<std::size_t>(a % f.pk)]);
  }

  CharacterGroup g;
  g.q = q;
  const long long count = euler_phi(q);
  std::vector<long long> idx(factors.size(), 0);
  for (long long c = 0; c < count; ++c) {
    DirichletCharacter chi;
    chi.q = q;
    chi.values.assign(static_cast<std::size_t>(q), Complex(0.0, 0.0));
    chi.order = 1;
    chi.is_principal = true;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const long long ord = factors[i].cyc.order;
      chi.order = std::lcm(chi.order, ord / std::gcd(idx[i], ord));
      if (idx[i] != 0) chi.is_principal = false;
    }
    for (long long a = 0; a < q; ++a) {
      const auto& t = logs[static_cast<std::size_t>(a)];
      if (gcd_ll(a, q) != 1) continue;
      long long phase = 0;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        const long long ord = factors[i].cyc.order;
        phase = (phase + (idx[i] * t[i] % ord) * (denom / ord)) % denom;
      }
      chi.values[static_cast<std::size_t>(a)] = e_frac(phase, denom);
    }
    if (q == 1) chi.values[0] = 1.0;
    g.characters.push_back(std::move(chi));
    // Mixed-radix increment of the character index.
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (++idx[i] < factors[i].cyc.order) break;
      idx[i] = 0;
    }
  }
  return g;
}

Complex gauss_sum(const DirichletCharacter& chi, long long n) {
  Complex acc(0.0, 0.0);
  for (long long a = 0; a < chi.q; ++a) {
    const Complex v = chi.values[static_cast<std::size_t>(a)];
    if (v == Complex(0.0, 0.0)) continue;
    acc += v * e_frac(static_cast<long long>(static_cast<__int128>(a) * mod(n, chi.q) % chi.q), chi.q);
  }
  return acc;
}

double ramanujan_sum_exponential(long long n, long long q) {
  if (q < 1) throw DomainError("ramanujan_sum: q must be >= 1");
  double acc = 0.0;
  const long long nr = mod(n, q);
  for (long long a = 0; a < q; ++a)
    if (gcd_ll(a, q) == 1) acc += e_frac(static_cast<long long>(static_cast<__int128>(a) * nr % q), q).real();
  return acc;
}

long long ramanujan_sum_divisor(long long n, long long q) {
  if (q < 1) throw DomainError("ramanujan_sum: q must be >= 1");
  const long long g = gcd_ll(n, q);
  long long acc = 0;
  for (long long d = 1; d <= g; ++d)
    if (g % d == 0) acc += mobius(q / d) * d;
  return acc;
}

double ramanujan_sum(long long n, long long q) {
  const double exp_form = ramanujan_sum_exponential(n, q);
  const auto div_form = static_cast<double>(ramanujan_sum_divisor(n, q));
  if (std::abs(exp_form - div_form) > 1e-9)
    throw InvariantError("ramanujan_sum: exponential and divisor forms disagree for n=" + std::to_string(n) +
                         ", q=" + std::to_string(q));
  return div_form;
}

double kloosterman_weil_bound(long long m, long long n, long long q) {
  const long long gmq = gcd_ll(m, q), gnq = gcd_ll(n, q);
  const long long g = gcd_ll(gmq, n);
  const double inner = std::min(static_cast<double>(q / gmq), static_cast<double>(q / gnq));
  return static_cast<double>(g) * std::sqrt(inner) * static_cast<double>(divisor_count(q));
}

double kloosterman_sum(long long m, long long n, long long q) {
  if (q < 1) throw DomainError("kloosterman_sum: q must be >= 1");
  if (q > 100000) throw DomainError("kloosterman_sum: q must be <= 10^5");
  const long long mr = mod(m, q), nr = mod(n, q);
  Complex acc(0.0, 0.0);
  for (long long d = 0; d < q; ++d) {
    if (gcd_ll(d, q) != 1) continue;
    const long long dinv = mod_inverse(d, q);
    const auto k = static_cast<long long>((static_cast<__int128>(mr) * d + static_cast<__int128>(nr) * dinv) % q);
    acc += e_frac(k, q);
  }
  if (std::abs(acc.imag()) > 1e-9)
    throw InvariantError("kloosterman_sum: imaginary part " + std::to_string(acc.imag()) + " exceeds 1e-9");
  if (std::abs(acc.real()) > kloosterman_weil_bound(m, n, q) * (1.0 + 1e-12) + 1e-9)
    throw InvariantError("kloosterman_sum: Weil-type bound violated for q=" + std::to_string(q));
  return acc.real();
}

double kloosterman_char_expansion_residual(const SumParams& p) {
  if (!is_prime(p.N)) throw ValidationError("lemma c1: N must be prime");
  if (p.b < 1 || p.m < 1) throw ValidationError("lemma c1: b and m must be positive");
  if (gcd_ll(p.P, p.b) != 1) throw ValidationError("lemma c1: need (P, b) = 1");
  if (gcd_ll(p.N, p.b) != 1) throw ValidationError("lemma c1: need (N, b) = 1");
  if (gcd_ll(p.m, p.N) != 1) throw ValidationError("lemma c1: need (m, N) = 1");
  const long long m2 = p.m * p.m;
  const double lhs = kloosterman_sum(m2, p.P * p.N, p.N * p.b);
  const CharacterGroup g = character_group(p.b);
  Complex acc(0.0, 0.0);
  for (const auto& chi : g.characters)
    acc += chi(p.N) * gauss_sum(chi, m2) * gauss_sum(chi, 1) * std::conj(chi(p.P));
  const Complex rhs = -acc / static_cast<double>(euler_phi(p.b));
  return std::abs(Complex(lhs, 0.0) - rhs);
}

double kloosterman_char_expansion_r_residual(const SumParams& p) {
  if (!is_prime(p.N)) throw ValidationError("lemma c4: N must be prime");
  if (p.b < 1 || p.m < 1 || p.Q < 1) throw ValidationError("lemma c4: b, m and Q must be positive");
  if (gcd_ll(p.Q, p.N) != 1) throw ValidationError("lemma c4: need (Q, N) = 1");
  if (gcd_ll(p.N, p.b) != 1) throw ValidationError("lemma c4: need (N, b) = 1");
  const long long r = gcd_ll(p.Q, p.b);
  if (gcd_ll(r, p.b / r) != 1) throw ValidationError("lemma c4: need (r, b/r) = 1 with r = (Q, b)");
  const long long m2 = p.m * p.m;
  const double lhs = kloosterman_sum(m2, p.Q, p.N * p.b);
  const long long modulus = p.N * p.b / r;
  const CharacterGroup g = character_group(modulus);
  const double rs = static_cast<double>(ramanujan_sum_divisor(m2, r));
  Complex acc(0.0, 0.0);
  for (const auto& chi : g.characters)
    acc += std::conj(chi(p.Q / r)) * chi(r) * rs * gauss_sum(chi, m2) * gauss_sum(chi, 1);
  const Complex rhs = acc / static_cast<double>(euler_phi(modulus));
  return std::abs(Complex(lhs, 0.0) - rhs);
}

double gauss_square_identity(long long q, long long n) {
  const CharacterGroup g = character_group(q);
  double acc = 0.0;
  for (const auto& chi : g.characters) acc += std::norm(gauss_sum(chi, n));
  const auto ph = static_cast<double>(euler_phi(q));
  return acc - ph * ph;
}

std::vector<HeckeTerm> hecke_power_coeffs(int n) {
  if (n < 1 || n > 30) throw DomainError("hecke_power_coeffs: n must lie in [1, 30]");
  auto binom = [](int a, int b) -> long long {
    if (b < 0 || b > a) return 0;
    return std::llround(boost::math::binomial_coefficient<double>(static_cast<unsigned>(a), static_cast<unsigned>(b)));
  };
  const int m = n / 2, odd = n % 2;
  std::vector<HeckeTerm> out;
  for (int r = 0; r <= m; ++r) out.push_back({r, 2 * r + odd, binom(n, m - r) - binom(n, m - r - 1)});
  return out;
}

double hecke_power_residual(int n, std::span<const double> thetas) {
  const auto terms = hecke_power_coeffs(n);
  double worst = 0.0;
  for (const double theta : thetas) {
    const double s = std::sin(theta);
    const double lhs = std::pow(2.0 * std::cos(theta), n);
    double rhs = 0.0, scale = 1.0;
    for (const auto& t : terms) {
      const double lam = std::sin((t.index + 1) * theta) / s;
      rhs += static_cast<double>(t.coefficient) * lam;
      scale += std::abs(static_cast<double>(t.coefficient) * lam);
    }
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

}  // namespace lzlab
