#pragma once

// Projective image classification of weight one newforms from their
// q-expansions, with certificates that can be replayed independently.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wt1/newform.hpp"
#include "wt1/quadfields.hpp"

namespace wt1 {

inline constexpr const char* kVersion = "1.0.0";

/// Order of the projective image of Frob_p read off from c_p; 0 stands for
/// a value outside the table, which only a dihedral image can produce.
enum class OrderClass { DihedralOnly = 0, One = 1, Two = 2, Three = 3, Four = 4, Five = 5 };

std::string to_string(OrderClass c);

/// Exact classification of c = trace^2/det: 4, 0, 1, 2, (3 +- sqrt 5)/2.
OrderClass order_class_of(const CycNumber& c);

struct ProjectiveInvariant {
  long prime;
  CycNumber value;  // a_p^2 / chi(p)
  OrderClass order_class;
};

/// Requires p prime, p not dividing N and p <= M.
ProjectiveInvariant projective_invariant(const NewformRecord& r, long p);

enum class Guess { ProbablyDihedral, ProbablyA4, ProbablyS4, ProbablyA5 };
std::string to_string(Guess g);

/// Ordering hint only, never used as evidence.
Guess heuristic_guess(const NewformRecord& r);

struct ClassifierConfig {
  /// Largest prime examined in witness searches; unset means every p <= M.
  std::optional<long> prime_budget;
};

/// (D, p, value): p is inert in Q(sqrt D) and does not divide N; value is
/// a_p for non-dihedral witnesses and c_p for not-S4 witnesses.
struct InertWitness {
  long D;
  long p;
  CycNumber value;
};

struct WitnessSearch {
  bool success = false;
  std::vector<InertWitness> witnesses;
  std::optional<long> stuck;  // first D without a witness
};

WitnessSearch prove_not_dihedral(const NewformRecord& r, const ClassifierConfig& config = {});
WitnessSearch prove_not_S4(const NewformRecord& r, const ClassifierConfig& config = {});

struct DihedralData {
  long D;
  QuadIdeal conductor;
  long order;                  // of psi
  std::vector<long> exponents; // psi on the ray class group generators
  long compared_through;       // coefficients a_1 .. a_k agree
};

struct DihedralSearch {
  std::optional<DihedralData> match;
  long characters_tried = 0;
  std::vector<long> discriminants_tried;
};

DihedralSearch prove_dihedral(const NewformRecord& r);

struct NotA5Evidence {
  enum class Kind { NoSqrt5, TwistUnramifiedAt5 };
  Kind kind = Kind::NoSqrt5;
  long field_order = 1;      // cyclotomic field holding the generators
  long generator_count = 0;  // distinct generators examined
  long bound = 0;            // coefficients used
  // twist data, for TwistUnramifiedAt5
  long xi_modulus = 1;
  long xi_order = 1;
  std::vector<long> xi_exponents;
  long twisted_level = 0;
};

struct NotA5Result {
  std::optional<NotA5Evidence> evidence;
  std::string failure;  // why no evidence was produced
};

/// Throws PrecisionError when the twist branch needs more coefficients.
NotA5Result prove_not_A5(const NewformRecord& r);

struct OrderWitness {
  long p;
  CycNumber value;
  int order;
};

std::optional<OrderWitness> find_order_witness(const NewformRecord& r, int target,
                                               const ClassifierConfig& config = {});

enum class Verdict { Dihedral, A4, S4, A5, Inconclusive };
std::string to_string(Verdict v);

struct Certificate {
  std::string version = kVersion;
  std::optional<long> prime_budget;
  long level = 0;
  long character_order = 0;
  long precision = 0;
  long sturm = 0;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<InertWitness> non_dihedral;
  std::optional<OrderWitness> order_witness;
  std::vector<InertWitness> not_s4;
  std::optional<NotA5Evidence> not_a5;
  std::optional<DihedralData> dihedral;
  std::vector<std::string> inconclusive_reasons;
};

/// The theta series of psi to M terms as a newform record.
NewformRecord dihedral_record(const HeckeCharacter& psi, long M);

/// Raised when a record fails the preconditions of classification.
class RefusalError : public Error {
 public:
  using Error::Error;
};

/// Deterministic in (r, config). Throws RefusalError or PrecisionError when
/// the record is too short or violates a Hecke relation.
Certificate classify(const NewformRecord& r, const ClassifierConfig& config = {});

std::string serialize(const Certificate& c);
Certificate parse_certificate(std::string_view text);

struct VerificationReport {
  std::vector<std::string> discrepancies;
  long checks = 0;
  bool ok() const { return discrepancies.empty(); }
};

/// Recomputes every claim in the certificate from the record.
VerificationReport verify(const NewformRecord& r, const Certificate& c);

}  // namespace wt1
