#pragma once

// Dirichlet characters, Kronecker symbols and the quadratic fields
// unramified outside a given modulus.

#include <memory>
#include <optional>
#include <vector>

#include "wt1/cyclotomic.hpp"

namespace wt1 {

/// Deterministic generators of (Z/N)^*: for 2^e the classes of -1 (e >= 2)
/// and 5 (e >= 3), then the smallest primitive root of each odd prime power
/// p^k in increasing order of p, each lifted by CRT to be 1 modulo the other
/// prime-power parts. Generators of trivial order are omitted.
std::vector<long> unit_group_generators(long modulus);

/// Multiplicative orders of unit_group_generators(modulus), in the same order.
std::vector<long> unit_group_generator_orders(long modulus);

/// A Dirichlet character modulo N, stored by its values chi(g_i) = zeta_d^{k_i}
/// on unit_group_generators(N). The order d is always the exact order of chi.
class DirichletCharacter {
 public:
  /// Principal character modulo N.
  explicit DirichletCharacter(long modulus = 1);

  /// chi(g_i) = zeta_d^{exponents[i]} on the standard generators; d need not
  /// be the exact order. Throws if a value is incompatible with the
  /// generator's order.
  static DirichletCharacter from_generator_values(long modulus, long d, std::vector<long> exponents);

  /// The Kronecker character n -> (D|n) viewed modulo `modulus`; |D| | modulus
  /// when D is a fundamental discriminant.
  static DirichletCharacter kronecker_character(long D, long modulus);

  long modulus() const { return modulus_; }
  long order() const { return order_; }
  long conductor() const { return conductor_; }
  /// chi(-1) in {+1, -1}.
  int parity() const;
  bool is_odd() const { return parity() == -1; }
  bool is_principal() const { return order_ == 1; }

  const std::vector<long>& generators() const;
  /// Value exponents k_i with chi(g_i) = zeta_order^{k_i}.
  const std::vector<long>& exponents() const { return exponents_; }

  /// k with chi(n) = zeta_order^k, or nullopt when gcd(n, N) > 1.
  std::optional<long> exponent_at(long n) const;

  /// chi(n) as an element of Q(zeta_order); zero when gcd(n, N) > 1.
  CycNumber operator()(long n) const;

  /// The same character viewed modulo a multiple of the modulus.
  DirichletCharacter lift(long new_modulus) const;
  /// The primitive character modulo the conductor inducing this one.
  DirichletCharacter primitive() const;

  DirichletCharacter pow(long e) const;
  DirichletCharacter conjugate() const { return pow(-1); }

  /// Product, computed modulo lcm of the two moduli.
  friend DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b);
  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);

 private:
  struct Tables;
  void build();

  long modulus_ = 1;
  long order_ = 1;
  long conductor_ = 1;
  std::vector<long> exponents_;
  std::shared_ptr<const Tables> tables_;
};

/// Full Kronecker symbol (D|n) with the standard conventions at 2, 0 and negative arguments.
int kronecker(long D, long n);

bool is_fundamental_discriminant(long D);

struct FundamentalDiscriminant {
  long value;

  /// Throws ArithmeticError if D is not a fundamental discriminant.
  explicit FundamentalDiscriminant(long D);
  bool imaginary() const { return value < 0; }
  bool operator==(const FundamentalDiscriminant&) const = default;
};

/// All fundamental discriminants D != 1 whose prime divisors all divide N,
/// ordered by |D| and then positive before negative.
std::vector<FundamentalDiscriminant> enumerate_fundamental_discriminants(long N);

}  // namespace wt1
