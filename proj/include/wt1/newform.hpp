#pragma once

// Newform q-expansion records: the .wt1 text format, Hecke relation checks,
// Sturm bounds, twisting and the field generated by the first coefficients.

#include <string>
#include <string_view>
#include <vector>

#include "wt1/characters.hpp"
#include "wt1/cyclotomic.hpp"

namespace wt1 {

/// Raised when a record has fewer coefficients than an operation requires.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

class RecordError : public ParseError {
 public:
  enum class Kind { Malformed, UnknownKey, NotNormalized, EvenCharacter, CoefficientOrder, HeaderMismatch };
  RecordError(Kind kind, long line, const std::string& message);
  Kind kind() const { return kind_; }
  long line() const { return line_; }

 private:
  Kind kind_;
  long line_;
};

struct NewformRecord {
  long level = 1;
  DirichletCharacter character;
  long cyc_order = 1;
  std::vector<CycNumber> coeffs;  // a_1 .. a_M, each in Q(zeta_cyc_order)
  std::string source;

  long precision() const { return static_cast<long>(coeffs.size()); }
  /// a_n for 1 <= n <= precision().
  const CycNumber& a(long n) const;
};

/// Parses the line-oriented format: level, cycorder, chi, gen..., source,
/// coeffs, then one `a <n> <element>` line per coefficient.
NewformRecord parse_record(std::string_view text);
std::string serialize(const NewformRecord& record);

struct SturmBound {
  long level;
  long index;  // [SL_2(Z) : Gamma_0(N)]
  long bound;  // ceil(index / 12)
};

SturmBound sturm_bound(long N);

struct HeckeIssue {
  long n;
  std::string relation;
};

struct HeckeReport {
  std::vector<HeckeIssue> violations;
  /// Bad primes whose a_p is neither 0 nor a root of unity.
  std::vector<HeckeIssue> warnings;
  bool ok() const { return violations.empty(); }
};

/// Checks every n <= M against one relation: a_n = a_q a_{n/q} for the
/// smallest prime power q || n when n is not a prime power, the Hecke
/// recursion for p^r with p not dividing N, and a_{p^r} = a_p a_{p^{r-1}} for p | N.
HeckeReport validate_hecke(const NewformRecord& record);

/// The twist by the primitive character inducing xi: coefficients a_n xi(n),
/// declared level N cond(xi)^2, character chi xi^2.
NewformRecord twist(const NewformRecord& record, const DirichletCharacter& xi);

struct CoefficientField {
  long order;                        // everything lives in Q(zeta_order)
  long bound;                        // coefficients a_1 .. a_bound were used
  std::vector<CycNumber> generators; // chi(g_i), then a_1 .. a_bound, distinct
};

/// Generators of the field cut out by the character values and the
/// coefficients through the Sturm bound of the declared level.
/// Throws PrecisionError when the record is too short.
CoefficientField coefficient_field_generators(const NewformRecord& record);

/// Throws PrecisionError unless the record has at least `needed` coefficients.
void require_precision(const NewformRecord& record, long needed, const std::string& what);

}  // namespace wt1
