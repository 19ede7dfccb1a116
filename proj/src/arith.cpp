#include "wt1/arith.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace wt1 {

long gcd(long a, long b) { return std::gcd(a, b); }

long lcm(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(std::abs(a) / gcd(a, b), std::abs(b));
}

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long mulmod(long a, long b, long m) {
  return static_cast<long>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

long powmod(long base, long exp, long m) {
  if (m == 1) return 0;
  long result = 1;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

long inverse_mod(long a, long m) {
  long old_r = mod(a, m), r = m;
  long old_s = 1, s = 0;
  while (r != 0) {
    long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1) {
    throw ArithmeticError("inverse_mod: " + std::to_string(a) + " is not invertible modulo " +
                          std::to_string(m));
  }
  return mod(old_s, m);
}

bool is_prime(long n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (long d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<PrimePower> factor(long n) {
  if (n < 1) throw ArithmeticError("factor: argument must be positive");
  std::vector<PrimePower> out;
  for (long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> out;
  for (const auto& pp : factor(n)) out.push_back(pp.prime);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out{1};
  for (const auto& [p, e] : factor(n)) {
    const std::size_t count = out.size();
    long pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<long> primes_up_to(long n) {
  std::vector<long> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

long euler_phi(long n) {
  long result = n;
  for (long p : prime_divisors(n)) result = result / p * (p - 1);
  return result;
}

int valuation(long n, long p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticError("integer overflow in multiplication");
  return r;
}

long checked_add(long a, long b) {
  long r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("integer overflow in addition");
  return r;
}

long crt(long r1, long m1, long r2, long m2) {
  // x = r1 + m1 * t, m1 * t = r2 - r1 (mod m2)
  long t = mulmod(mod(r2 - r1, m2), inverse_mod(m1, m2), m2);
  return mod(r1 + checked_mul(m1, t), checked_mul(m1, m2));
}

}  // namespace wt1
