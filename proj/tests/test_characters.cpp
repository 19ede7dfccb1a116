#include <gmpxx.h>

#include <random>

#include "doctest.h"
#include "wt1/characters.hpp"

using namespace wt1;

TEST_CASE("unit group generators") {
  CHECK(unit_group_generators(1).empty());
  CHECK(unit_group_generators(124) == std::vector<long>{63, 65});
  CHECK(unit_group_generators(148) == std::vector<long>{75, 113});
  CHECK(unit_group_generators(633) == std::vector<long>{212, 424});
  CHECK(unit_group_generator_orders(16) == std::vector<long>{2, 4});
  for (long N = 1; N <= 300; ++N) {
    long prod = 1;
    for (long d : unit_group_generator_orders(N)) prod *= d;
    CHECK(prod == euler_phi(N));
  }
}

TEST_CASE("kronecker symbol agrees with GMP") {
  std::mt19937_64 rng(11);
  for (long D = -300; D <= 300; ++D) {
    for (long n = -60; n <= 60; ++n) {
      REQUIRE(kronecker(D, n) == mpz_kronecker_si(mpz_class(D).get_mpz_t(), n));
    }
  }
  std::uniform_int_distribution<long> big(-(1L << 40), 1L << 40);
  for (int t = 0; t < 20000; ++t) {
    const long D = big(rng), n = big(rng);
    REQUIRE(kronecker(D, n) == mpz_kronecker_si(mpz_class(D).get_mpz_t(), n));
  }
}

TEST_CASE("kronecker character is multiplicative and matches the symbol") {
  for (long D : {-3L, -4L, -23L, -31L, 5L, 8L, -8L, 12L}) {
    const long N = std::abs(D) * 3;
    const auto chi = DirichletCharacter::kronecker_character(D, N);
    CHECK(chi.order() == 2);
    CHECK(chi.conductor() == std::abs(D));
    CHECK(chi.is_odd() == (D < 0));
    for (long n = 1; n < 3 * N; ++n) {
      if (gcd(n, N) != 1) continue;
      CHECK(chi(n) == CycNumber(kronecker(D, n)));
    }
  }
}

TEST_CASE("characters modulo N") {
  const auto chi = DirichletCharacter::from_generator_values(124, 6, {3, 2});
  CHECK(chi.order() == 6);
  CHECK(chi.is_odd());
  CHECK(chi.conductor() == 124);
  for (long a = 1; a < 124; ++a) {
    for (long b = 1; b < 124; ++b) {
      CHECK(chi(a * b) == chi(a) * chi(b));
    }
  }
  const auto sq = chi * chi;
  CHECK(sq.order() == 3);
  CHECK(sq.conductor() == 31);
  CHECK(sq.primitive().modulus() == 31);
  CHECK(sq.primitive().lift(124) == sq);
  CHECK((chi * chi.conjugate()).is_principal());
  CHECK_THROWS_AS(DirichletCharacter::from_generator_values(124, 6, {1, 0}), ArithmeticError);
  CHECK_THROWS_AS(DirichletCharacter::from_generator_values(124, 6, {3}), ArithmeticError);
}

TEST_CASE("conductor by brute force on all characters modulo small N") {
  for (long N = 2; N <= 60; ++N) {
    const auto orders = unit_group_generator_orders(N);
    long d = 1;
    for (long o : orders) d = lcm(d, o);
    std::vector<long> k(orders.size(), 0);
    while (true) {
      std::vector<long> exps;
      for (std::size_t i = 0; i < k.size(); ++i) exps.push_back(k[i] * (d / orders[i]));
      const auto chi = DirichletCharacter::from_generator_values(N, d, exps);
      long f = N;
      for (long c : divisors(N)) {
        bool periodic = true;
        for (long n = 1; n < N && periodic; ++n) {
          if (gcd(n, N) != 1) continue;
          for (long m = n + c; m < N + n; m += c) {
            if (gcd(m, N) == 1 && chi(m) != chi(n)) {
              periodic = false;
              break;
            }
          }
        }
        if (periodic) {
          f = c;
          break;
        }
      }
      CHECK(chi.conductor() == f);
      std::size_t i = 0;
      for (; i < k.size(); ++i) {
        if (++k[i] < orders[i]) break;
        k[i] = 0;
      }
      if (i == k.size()) break;
    }
  }
}

TEST_CASE("fundamental discriminants") {
  auto values = [](long N) {
    std::vector<long> out;
    for (const auto& d : enumerate_fundamental_discriminants(N)) out.push_back(d.value);
    return out;
  };
  CHECK(values(12) == std::vector<long>{-3, -4, 8, -8, 12, 24, -24});
  CHECK(values(23) == std::vector<long>{-23});
  CHECK_THROWS_AS(FundamentalDiscriminant(-12 * 4), ArithmeticError);
  CHECK_THROWS_AS(FundamentalDiscriminant(1), ArithmeticError);
  // oracle: every fundamental D with |D| <= 2000 whose primes divide N
  for (long N : {12L, 30L, 105L, 124L, 148L, 633L, 840L}) {
    const auto got = values(N);
    for (long D = -20000; D <= 20000; ++D) {
      if (!is_fundamental_discriminant(D)) continue;
      bool divides = true;
      for (long p : prime_divisors(std::abs(D))) divides = divides && (N % p == 0);
      CHECK((std::find(got.begin(), got.end(), D) != got.end()) == divides);
    }
  }
}
