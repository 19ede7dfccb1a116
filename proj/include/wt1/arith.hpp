#pragma once

// Small-integer number theory helpers shared by every module.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wt1 {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

struct PrimePower {
  long prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

long gcd(long a, long b);
long lcm(long a, long b);

/// a mod m in [0, m).
long mod(long a, long m);

long mulmod(long a, long b, long m);
long powmod(long base, long exp, long m);

/// Inverse of a modulo m; throws ArithmeticError if gcd(a, m) != 1.
long inverse_mod(long a, long m);

bool is_prime(long n);

/// Factorization by trial division, primes in increasing order. n >= 1.
std::vector<PrimePower> factor(long n);

std::vector<long> prime_divisors(long n);
std::vector<long> divisors(long n);
std::vector<long> primes_up_to(long n);

long euler_phi(long n);

/// Exponent of the largest power of p dividing n (n != 0).
int valuation(long n, long p);

/// Overflow-checked product; throws ArithmeticError on overflow.
long checked_mul(long a, long b);
long checked_add(long a, long b);

/// x with x = r1 mod m1 and x = r2 mod m2 for coprime moduli, in [0, m1*m2).
long crt(long r1, long m1, long r2, long m2);

}  // namespace wt1
