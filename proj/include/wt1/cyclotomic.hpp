#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// An element of order m is stored in the power basis 1, z, ..., z^(phi(m)-1)
// with z = zeta_m, reduced modulo the m-th cyclotomic polynomial. The
// representation is canonical: two elements of the same order are equal iff
// their coefficient vectors are equal. Mixed-order arithmetic embeds both
// operands into Q(zeta_lcm) first.

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wt1/arith.hpp"

namespace wt1 {

using Integer = mpz_class;
using Rational = mpq_class;

/// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(long m);

class CycNumber {
 public:
  /// Zero of Q.
  CycNumber();
  CycNumber(long value);  // NOLINT(google-explicit-constructor)
  explicit CycNumber(Rational value, long order = 1);

  /// zeta_order^exponent.
  static CycNumber zeta(long order, long exponent = 1);

  /// Builds sum coeffs[i] z^i with z = zeta_order; coeffs may be longer than
  /// phi(order), the result is reduced.
  static CycNumber from_powers(long order, std::vector<Rational> coeffs);

  /// Parses the textual syntax `3/2*z^4 - z + 1` with z = zeta_order.
  static CycNumber parse(std::string_view text, long order);

  long order() const { return order_; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Valid only if is_rational().
  Rational rational_value() const;

  /// The same field element in Q(zeta_target); order() must divide target.
  CycNumber embed(long target) const;

  /// sigma_a with sigma_a(zeta_m) = zeta_m^a; requires gcd(a, m) = 1.
  CycNumber galois(long a) const;

  CycNumber pow(long e) const;
  CycNumber inverse() const;

  /// Canonical text: terms by decreasing exponent, `0` for zero.
  std::string to_string() const;

  CycNumber operator-() const;
  CycNumber& operator+=(const CycNumber& other);
  CycNumber& operator-=(const CycNumber& other);
  CycNumber& operator*=(const CycNumber& other);
  CycNumber& operator/=(const CycNumber& other);

  friend CycNumber operator+(CycNumber a, const CycNumber& b) { return a += b; }
  friend CycNumber operator-(CycNumber a, const CycNumber& b) { return a -= b; }
  friend CycNumber operator*(CycNumber a, const CycNumber& b) { return a *= b; }
  friend CycNumber operator/(CycNumber a, const CycNumber& b) { return a /= b; }

  /// Field equality; operands of different order are compared in Q(zeta_lcm).
  friend bool operator==(const CycNumber& a, const CycNumber& b);

 private:
  CycNumber(long order, std::vector<Rational> reduced);
  static std::vector<Rational> reduce(long order, std::vector<Rational> poly);

  long order_;
  std::vector<Rational> coeffs_;
};

/// The quadratic Gauss sum sum_{k=1}^{4} (k|5) zeta_5^k, equal to sqrt(5), in Q(zeta_m); 5 | m.
CycNumber gauss_sum_sqrt5(long m);

/// Residues a in [1, m) with gcd(a, m) = 1.
std::vector<long> unit_residues(long m);

/// True iff the subfield of Q(zeta_m) generated by `generators` contains sqrt(5).
bool contains_sqrt5(std::span<const CycNumber> generators, long m);

/// True iff the subfield of Q(zeta_m) generated by `generators` is unramified at the prime p.
bool subfield_unramified_at(std::span<const CycNumber> generators, long m, long p);

}  // namespace wt1
