#pragma once

// Finite abelian groups presented by generators and relations, reduced to
// Smith normal form.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wt1/arith.hpp"

namespace wt1 {

using IntMatrix = std::vector<std::vector<long>>;

/// Z^n modulo the row span of a relation matrix, assumed finite.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;

  /// Each row of `relations` is a vector r with sum r_i g_i = 0 in the group
  /// generated by g_1..g_n. Throws ArithmeticError if the quotient is infinite.
  FiniteAbelianGroup(const IntMatrix& relations, std::size_t generator_count);

  /// Cyclic orders d_1, d_2, ... with d_{i+1} | d_i, all > 1.
  const std::vector<long>& invariants() const { return invariants_; }
  long order() const;
  /// Largest invariant, or 1 for the trivial group.
  long exponent() const;
  std::size_t rank() const { return invariants_.size(); }
  std::size_t generator_count() const { return generator_count_; }

  /// Coordinates of sum x_i g_i in the invariant decomposition, each reduced
  /// into [0, d_j).
  std::vector<long> reduce(std::span<const long> x) const;

  /// Coordinates of the input generator g_i.
  std::vector<long> generator_image(std::size_t i) const;

 private:
  std::size_t generator_count_ = 0;
  std::vector<long> invariants_;
  // projection_[i][j]: contribution of input generator i to coordinate j
  IntMatrix projection_;
};

/// A finite abelian group given by a multiplication table on element indices
/// 0..size-1, walked from the identity to find generators and relations.
struct EnumeratedGroup {
  std::vector<std::size_t> generators;   // element indices
  IntMatrix relations;                   // rows over `generators`
  std::vector<std::vector<long>> dlog;   // per element, exponents over `generators`
  std::vector<bool> member;              // which indices belong to the group
};

/// `elements` lists the indices that form the group (must include identity);
/// `multiply` returns the index of the product of two elements.
EnumeratedGroup enumerate_abelian_group(std::span<const std::size_t> elements, std::size_t index_bound,
                                        std::size_t identity,
                                        const std::function<std::size_t(std::size_t, std::size_t)>& multiply);

}  // namespace wt1
