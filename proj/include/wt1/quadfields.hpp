#pragma once

// Imaginary quadratic fields: ideals, binary quadratic forms, class groups,
// ray class groups, Hecke characters and their theta series.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wt1/abelian.hpp"
#include "wt1/characters.hpp"
#include "wt1/cyclotomic.hpp"

namespace wt1 {

/// x + y*w in O_K, w = (delta + sqrt(D))/2 with delta = D mod 4 in {0, 1}.
struct QuadElement {
  long x = 0;
  long y = 0;
  bool operator==(const QuadElement&) const = default;
};

/// The ideal content * (a Z + ((b + sqrt(D))/2) Z) with a > 0,
/// b^2 = D (mod 4a) and b normalized into [0, 2a).
struct QuadIdeal {
  long D = -4;
  long content = 1;
  long a = 1;
  long b = 0;

  long norm() const;
  bool is_unit_ideal() const { return content == 1 && a == 1; }
  std::string to_string() const;
  auto operator<=>(const QuadIdeal&) const = default;
};

/// Positive definite binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
  long a = 1;
  long b = 0;
  long c = 1;
  long discriminant() const { return b * b - 4 * a * c; }
  bool is_reduced() const;
  auto operator<=>(const QuadForm&) const = default;
};

/// Arithmetic in the maximal order of Q(sqrt(D)), D < 0 fundamental.
class ImaginaryQuadraticField {
 public:
  explicit ImaginaryQuadraticField(long D);

  long discriminant() const { return D_; }

  QuadElement multiply(const QuadElement& u, const QuadElement& v) const;
  QuadElement conjugate(const QuadElement& u) const;
  long norm(const QuadElement& u) const;
  /// Generators of the unit group: -1, or a primitive 4th/6th root of unity.
  QuadElement unit_generator() const;
  long unit_count() const;

  QuadIdeal unit_ideal() const;
  QuadIdeal principal(long n) const;
  QuadIdeal principal(const QuadElement& u) const;
  QuadIdeal multiply(const QuadIdeal& I, const QuadIdeal& J) const;
  QuadIdeal conjugate(const QuadIdeal& I) const;
  /// I + J; I and J are coprime iff this is the unit ideal.
  QuadIdeal sum(const QuadIdeal& I, const QuadIdeal& J) const;
  bool coprime(const QuadIdeal& I, const QuadIdeal& J) const { return sum(I, J).is_unit_ideal(); }
  bool contains(const QuadIdeal& I, const QuadElement& u) const;
  /// I / J for an integral ideal J dividing I.
  QuadIdeal divide(const QuadIdeal& I, const QuadIdeal& J) const;

  /// Prime ideals above p, one for ramified or inert p, two (sorted) for split p.
  std::vector<QuadIdeal> primes_above(long p) const;
  /// Primitive ideals of norm n (not divisible by any rational integer > 1).
  std::vector<QuadIdeal> primitive_ideals_of_norm(long n) const;

  /// Norm form of the primitive part of I.
  QuadForm form_of(const QuadIdeal& I) const;
  /// Primitive ideal whose norm form is f (f of discriminant D).
  QuadIdeal ideal_of(const QuadForm& f) const;

  /// A generator of I when it is principal.
  std::optional<QuadElement> generator(const QuadIdeal& I) const;

 private:
  long D_;
  long delta_;
};

/// Reduces a positive definite form; `transform`, if given, receives the
/// matrix M (row-major m11 m12 m21 m22) with f(M (x, y)) = reduced(x, y).
QuadForm reduce_form(QuadForm f, long* transform = nullptr);

/// Gaussian composition of primitive forms of the same discriminant, reduced.
QuadForm compose_forms(const QuadForm& f, const QuadForm& g);

/// All reduced primitive forms of discriminant D < 0, ordered by (a, b).
std::vector<QuadForm> reduced_forms(long D);

/// Integral ideals of norm exactly n, in a deterministic order.
std::vector<QuadIdeal> ideals_of_norm(long D, long n);

/// The ray class group Cl_f of an imaginary quadratic field, built from the
/// exact sequence O^* -> (O/f)^* -> Cl_f -> Cl -> 1 and put in Smith normal form.
class RayClassGroup {
 public:
  RayClassGroup(long D, const QuadIdeal& modulus);

  long discriminant() const { return field_.discriminant(); }
  const ImaginaryQuadraticField& field() const { return field_; }
  const QuadIdeal& modulus() const { return modulus_; }
  /// Cyclic orders d_1, d_2, ... with d_{i+1} | d_i.
  const std::vector<long>& structure() const { return group_.invariants(); }
  long order() const { return group_.order(); }
  long exponent() const { return group_.exponent(); }
  /// Ideals representing the cyclic generators of structure().
  const std::vector<QuadIdeal>& generators() const { return generators_; }

  long class_number() const { return static_cast<long>(class_forms_.size()); }
  const std::vector<QuadForm>& class_forms() const { return class_forms_; }
  long residue_unit_count() const { return static_cast<long>(unit_residues_.size()); }
  long unit_image_order() const { return unit_image_order_; }

  bool coprime_to_modulus(const QuadIdeal& I) const;
  /// Coordinates of the class of I (coprime to the modulus) in structure().
  std::vector<long> dlog(const QuadIdeal& I) const;
  /// Coordinates of the principal ideal (u), u coprime to the modulus.
  std::vector<long> dlog(const QuadElement& u) const;

  /// Classes of (u) for u = 1 mod modulus/P, as coordinates; P a prime dividing the modulus.
  std::vector<std::vector<long>> kernel_to_smaller_modulus(const QuadIdeal& prime) const;

  /// Whether the modulus is stable under complex conjugation.
  bool conjugation_stable() const { return conjugation_stable_; }
  /// Matrix T with dlog(conj(g_i)) = row i of T, when conjugation_stable().
  const IntMatrix& conjugation_action() const { return conjugation_; }

 private:
  std::size_t residue_index(const QuadElement& u) const;
  std::vector<long> raw_dlog_unit(const QuadElement& u) const;
  std::vector<long> raw_dlog(const QuadIdeal& I) const;

  ImaginaryQuadraticField field_;
  QuadIdeal modulus_;
  long hnf_a_ = 1, hnf_b_ = 0, hnf_c_ = 1;  // modulus lattice (A, 0), (B, C)
  std::vector<QuadElement> unit_residues_;
  std::vector<long> residue_slot_;          // residue index -> position in unit table, or -1
  std::vector<std::vector<long>> unit_dlog_;  // per residue index, over unit generators
  std::size_t unit_rank_ = 0;
  long unit_image_order_ = 1;
  std::vector<QuadForm> class_forms_;
  std::vector<QuadIdeal> class_reps_;
  FiniteAbelianGroup group_;
  std::vector<QuadIdeal> generators_;
  bool conjugation_stable_ = true;
  IntMatrix conjugation_;
};

RayClassGroup class_group(long D);
RayClassGroup ray_class_group(long D, const QuadIdeal& modulus);

/// A character psi of a ray class group: psi(g_i) = zeta_order^{exponents[i]}
/// on the generators of structure().
struct HeckeCharacter {
  std::shared_ptr<const RayClassGroup> group;
  std::vector<long> exponents;
  long order = 1;
  /// Position of psi o conj in the same enumeration, if the modulus is conjugation stable.
  std::optional<std::size_t> conjugate_index;

  /// k with psi(I) = zeta_order^k, nullopt when I is not coprime to the modulus.
  std::optional<long> exponent_at(const QuadIdeal& I) const;
  CycNumber operator()(const QuadIdeal& I) const;
  /// psi o conj when the modulus is conjugation stable.
  std::optional<HeckeCharacter> composed_with_conjugation() const;
  bool equals_its_conjugate() const;
};

/// Characters of Cl_f with conductor exactly f and psi != psi o conj, in
/// lexicographic order of their exponent vectors.
std::vector<HeckeCharacter> enumerate_hecke_characters(long D, const QuadIdeal& modulus);

struct ThetaSeries {
  long level = 1;
  DirichletCharacter character;
  long cyc_order = 1;
  std::vector<CycNumber> coeffs;  // a_1 .. a_M
};

/// q-expansion of the weight-one form induced from psi, to M terms.
ThetaSeries theta_series(const HeckeCharacter& psi, long M);

}  // namespace wt1
