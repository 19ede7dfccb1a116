#include <set>

#include "doctest.h"
#include "wt1/abelian.hpp"

using namespace wt1;

TEST_CASE("smith normal form invariants") {
  const FiniteAbelianGroup g({{2, 0}, {0, 3}}, 2);
  CHECK(g.invariants() == std::vector<long>{6});
  const FiniteAbelianGroup h({{4, 0}, {0, 6}}, 2);
  CHECK(h.invariants() == std::vector<long>{12, 2});
  CHECK(h.order() == 24);
  CHECK(h.exponent() == 12);
  const FiniteAbelianGroup trivial({{1}}, 1);
  CHECK(trivial.rank() == 0);
  CHECK(trivial.order() == 1);
  CHECK_THROWS_AS(FiniteAbelianGroup({{2, 0}}, 2), ArithmeticError);
}

TEST_CASE("reduce is a homomorphism killing relations") {
  const IntMatrix rel{{6, 4, 2}, {2, 8, 0}, {0, 0, 10}, {4, 4, 4}};
  const FiniteAbelianGroup g(rel, 3);
  for (const auto& row : rel) {
    for (long y : g.reduce(row)) CHECK(y == 0);
  }
  long count = 1;
  for (long d : g.invariants()) count *= d;
  // every element is hit by some combination
  std::set<std::vector<long>> images;
  for (long a = 0; a < 20; ++a)
    for (long b = 0; b < 20; ++b)
      for (long c = 0; c < 20; ++c) images.insert(g.reduce(std::vector<long>{a, b, c}));
  CHECK(static_cast<long>(images.size()) == count);
}

TEST_CASE("enumerated unit groups modulo n") {
  for (long n = 2; n <= 200; ++n) {
    std::vector<std::size_t> units;
    for (long a = 0; a < n; ++a) {
      if (gcd(a, n) == 1) units.push_back(static_cast<std::size_t>(a));
    }
    const auto e = enumerate_abelian_group(units, static_cast<std::size_t>(n), 1 % n, [n](std::size_t a, std::size_t b) {
      return static_cast<std::size_t>(mulmod(static_cast<long>(a), static_cast<long>(b), n));
    });
    const FiniteAbelianGroup g(e.relations, e.generators.size());
    CHECK(g.order() == euler_phi(n));
    // Carmichael function by brute force
    long lambda = 1;
    for (std::size_t u : units) {
      long k = 1, x = static_cast<long>(u);
      while (x != 1 % n) {
        x = mulmod(x, static_cast<long>(u), n);
        ++k;
      }
      lambda = lcm(lambda, k);
    }
    CHECK(g.exponent() == lambda);
  }
}
