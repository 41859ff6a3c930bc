#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace lzlab {

using Complex = std::complex<double>;

long long gcd_ll(long long a, long long b);
long long euler_phi(long long q);
int mobius(long long n);
long long divisor_count(long long n);
bool is_prime(long long n);
/// Smallest prime >= n.
long long next_prime(long long n);
/// Inverse of a modulo q (gcd(a, q) = 1 required).
long long mod_inverse(long long a, long long q);
/// e(a/q) = exp(2 pi i a/q) with a reduced modulo q first.
Complex e_frac(long long a, long long q);

/// Dense value table of a Dirichlet character modulo q.
struct DirichletCharacter {
  long long q = 1;
  std::vector<Complex> values;
  bool is_principal = true;
  long long order = 1;

  Complex operator()(long long a) const;
};

struct CharacterGroup {
  long long q = 1;
  std::vector<DirichletCharacter> characters;
};

/// All phi(q) characters, built from prime-power components.
CharacterGroup character_group(long long q);

Complex gauss_sum(const DirichletCharacter& chi, long long n);

/// Restricted exponential sum over units a mod q of e(an/q).
double ramanujan_sum_exponential(long long n, long long q);
/// sum_{d | (n,q)} mu(q/d) d.
long long ramanujan_sum_divisor(long long n, long long q);
/// Both forms; throws InvariantError if they disagree beyond 1e-9.
double ramanujan_sum(long long n, long long q);

/// (m,n,q) sqrt(min(q/(m,q), q/(n,q))) tau(q).
double kloosterman_weil_bound(long long m, long long n, long long q);
/// Real part of S(m,n;q); throws InvariantError if the imaginary part exceeds 1e-9 or the bound fails.
double kloosterman_sum(long long m, long long n, long long q);

struct SumParams {
  long long m = 1;
  long long n = 0;
  long long P = 1;
  long long Q = 1;
  long long b = 1;
  long long N = 3;
};

/// |S(m^2, PN; Nb) + (1/phi(b)) sum_{chi mod b} chi(N) G(m^2) G(1) conj chi(P)|.
/// Requires N prime, (P,b) = (N,b) = 1 and (m,N) = 1.
double kloosterman_char_expansion_residual(const SumParams& p);

/// |S(m^2, Q; Nb) - (1/phi(Nb/r)) sum_{chi mod Nb/r} conj chi(Q/r) chi(r) R(m^2,r) G(m^2) G(1)|
/// with r = (Q,b). Requires N prime, (Q,N) = (N,b) = 1 and (r, b/r) = 1.
double kloosterman_char_expansion_r_residual(const SumParams& p);

/// sum_{chi mod q} |G_chi(n)|^2 - phi(q)^2.
double gauss_square_identity(long long q, long long n);

/// lambda(p)^n = sum_r coefficient * lambda(p^{index}); index = 2r + (n mod 2).
struct HeckeTerm {
  int r = 0;
  int index = 0;
  long long coefficient = 0;
};

std::vector<HeckeTerm> hecke_power_coeffs(int n);

/// max over theta of |lhs - rhs| / (1 + sum |c_r lambda(p^j)|) with lambda(p) = 2 cos theta.
double hecke_power_residual(int n, std::span<const double> thetas);

}  // namespace lzlab
