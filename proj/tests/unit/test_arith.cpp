#include "lzlab/arith.hpp"
#include "lzlab/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace lzlab;

TEST_CASE("elementary number theory") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(97) == 96);
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK(divisor_count(12) == 6);
  CHECK(is_prime(10007));
  CHECK_FALSE(is_prime(10001));
  CHECK(next_prime(1000) == 1009);
  CHECK(mod_inverse(3, 7) == 5);
  CHECK_THROWS(mod_inverse(2, 4));
  CHECK(std::abs(e_frac(1, 4) - Complex(0.0, 1.0)) <= 1e-15);
  CHECK(e_frac(5, 5) == Complex(1.0, 0.0));
}

TEST_CASE("character groups") {
  const auto g1 = character_group(1);
  REQUIRE(g1.characters.size() == 1);
  CHECK(g1.characters[0](0) == Complex(1.0, 0.0));
  const auto g3 = character_group(3);
  REQUIRE(g3.characters.size() == 2);
  int nonprincipal = 0;
  for (const auto& chi : g3.characters)
    if (!chi.is_principal) {
      ++nonprincipal;
      CHECK(std::abs(chi(2) - Complex(-1.0, 0.0)) <= 1e-14);
    }
  CHECK(nonprincipal == 1);
  std::vector<long long> orders;
  for (const auto& chi : character_group(5).characters) orders.push_back(chi.order);
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<long long>{1, 2, 4, 4});
}

TEST_CASE("property: characters are multiplicative and orthogonal") {
  for (const long long q : {8LL, 9LL, 12LL, 15LL, 16LL, 21LL, 40LL}) {
    const auto g = character_group(q);
    CHECK(static_cast<long long>(g.characters.size()) == euler_phi(q));
    for (const auto& chi : g.characters)
      for (long long a = 0; a < q; ++a)
        for (long long b = 0; b < q; ++b) CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) <= 1e-12);
    for (std::size_t i = 0; i < g.characters.size(); ++i)
      for (std::size_t j = 0; j < g.characters.size(); ++j) {
        Complex s = 0;
        for (long long a = 0; a < q; ++a) s += g.characters[i](a) * std::conj(g.characters[j](a));
        CHECK(std::abs(s - Complex(i == j ? static_cast<double>(euler_phi(q)) : 0.0, 0.0)) <= 1e-10);
      }
  }
}

TEST_CASE("Gauss sums") {
  for (const auto& chi : character_group(3).characters) {
    if (chi.is_principal) continue;
    const Complex g = gauss_sum(chi, 1);
    CHECK(std::abs(g - Complex(0.0, std::sqrt(3.0))) <= 1e-12);
  }
  for (const auto& chi : character_group(5).characters)
    if (!chi.is_principal) CHECK(std::norm(gauss_sum(chi, 1)) == doctest::Approx(5.0).epsilon(1e-10));
  for (const long long q : {6LL, 10LL, 12LL})
    for (long long n = 0; n < 15; ++n) {
      const auto g = character_group(q);
      CHECK(gauss_sum(g.characters[0], n).real() == doctest::Approx(ramanujan_sum(n, q)));
    }
}

TEST_CASE("Ramanujan sums") {
  for (long long q = 1; q <= 30; ++q) CHECK(ramanujan_sum(1, q) == doctest::Approx(mobius(q)));
  CHECK(ramanujan_sum(4, 6) == doctest::Approx(-1.0));
  CHECK(ramanujan_sum(8, 8) == doctest::Approx(4.0));
  CHECK(ramanujan_sum_divisor(8, 8) == 4);
}

TEST_CASE("Kloosterman sums") {
  CHECK(kloosterman_sum(0, 0, 12) == doctest::Approx(4.0));
  CHECK(kloosterman_sum(1, 1, 3) == doctest::Approx(-1.0));
  CHECK(kloosterman_sum(1, 1, 5) == doctest::Approx(2.0 + 2.0 * std::cos(4 * M_PI / 5)));
  for (long long q = 1; q <= 40; ++q)
    for (long long m = 0; m <= 6; ++m)
      for (long long n = 0; n <= 6; ++n) {
        const double s = kloosterman_sum(m, n, q);
        CHECK(s == doctest::Approx(oracle::kloosterman(m, n, q)).epsilon(1e-10).scale(1.0));
        CHECK(std::abs(s) <= kloosterman_weil_bound(m, n, q) + 1e-9);
      }
}

TEST_CASE("character expansion of Kloosterman sums") {
  CHECK(kloosterman_char_expansion_residual({.m = 1, .P = 1, .b = 2, .N = 3}) <= 1e-9);
  CHECK(kloosterman_char_expansion_residual({.m = 1, .P = 2, .b = 3, .N = 5}) <= 1e-9);
  CHECK(kloosterman_char_expansion_residual({.m = 2, .P = 3, .b = 4, .N = 7}) <= 1e-9);
  CHECK_THROWS_AS(kloosterman_char_expansion_residual({.m = 1, .P = 2, .b = 4, .N = 3}), ValidationError);
  CHECK_THROWS_AS(kloosterman_char_expansion_residual({.m = 1, .P = 1, .b = 2, .N = 4}), ValidationError);
  CHECK(kloosterman_char_expansion_r_residual({.m = 1, .Q = 1, .b = 1, .N = 3}) <= 1e-9);
  CHECK(kloosterman_char_expansion_r_residual({.m = 1, .Q = 2, .b = 6, .N = 5}) <= 1e-9);
  CHECK_THROWS_AS(kloosterman_char_expansion_r_residual({.m = 1, .Q = 2, .b = 4, .N = 3}), ValidationError);
}

TEST_CASE("Gauss square identity") {
  CHECK(std::abs(gauss_square_identity(3, 1)) <= 1e-9);
  CHECK(std::abs(gauss_square_identity(1, 1)) <= 1e-9);
  CHECK(std::abs(gauss_square_identity(12, 5)) <= 1e-6);
  CHECK(std::abs(gauss_square_identity(12, 4)) <= 1e-6);
}

TEST_CASE("Hecke power expansion") {
  auto coeffs = [](int n) {
    std::vector<std::pair<int, long long>> out;
    for (const auto& t : hecke_power_coeffs(n)) out.emplace_back(t.index, t.coefficient);
    return out;
  };
  CHECK(coeffs(1) == std::vector<std::pair<int, long long>>{{1, 1}});
  CHECK(coeffs(2) == std::vector<std::pair<int, long long>>{{0, 1}, {2, 1}});
  CHECK(coeffs(3) == std::vector<std::pair<int, long long>>{{1, 2}, {3, 1}});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, M_PI);
  std::vector<double> thetas(30);
  for (double& t : thetas) t = u(rng);
  for (int n = 1; n <= 30; ++n) CHECK(hecke_power_residual(n, thetas) <= 1e-9);
}
