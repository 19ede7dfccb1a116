#include "wt1/abelian.hpp"

#include <gmpxx.h>

#include <algorithm>

namespace wt1 {

namespace {

using BigMatrix = std::vector<std::vector<mpz_class>>;

struct SmithResult {
  std::vector<mpz_class> diagonal;  // ascending divisibility chain
  BigMatrix column_transform;       // V with R V = U^{-1} S
};

SmithResult smith_normal_form(const IntMatrix& relations, std::size_t n) {
  const std::size_t m = relations.size();
  BigMatrix a(m, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (relations[i].size() != n) throw ArithmeticError("relation row has wrong length");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = relations[i][j];
  }
  BigMatrix v(n, std::vector<mpz_class>(n));
  for (std::size_t j = 0; j < n; ++j) v[j][j] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : v) std::swap(row[x], row[y]);
  };
  auto sub_col = [&](std::size_t dst, std::size_t src, const mpz_class& q) {
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : v) row[dst] -= q * row[src];
  };

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // pivot: smallest nonzero entry of the trailing block
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] == 0) continue;
          if (pi == m || abs(a[i][j]) < abs(a[pi][pj])) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == m) break;
      std::swap(a[t], a[pi]);
      swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        sub_col(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // the pivot must divide the whole trailing block
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (a[t][t] < 0) {
      for (auto& row : a) row[t] = -row[t];
      for (auto& row : v) row[t] = -row[t];
    }
  }
  SmithResult out;
  for (std::size_t t = 0; t < n; ++t) out.diagonal.push_back(t < m ? a[t][t] : mpz_class(0));
  out.column_transform = std::move(v);
  return out;
}

}  // namespace

FiniteAbelianGroup::FiniteAbelianGroup(const IntMatrix& relations, std::size_t generator_count)
    : generator_count_(generator_count) {
  if (generator_count == 0) return;
  const SmithResult snf = smith_normal_form(relations, generator_count);
  // keep nontrivial factors, largest first
  std::vector<std::size_t> columns;
  for (std::size_t t = snf.diagonal.size(); t-- > 0;) {
    if (snf.diagonal[t] == 0) throw ArithmeticError("presented abelian group is infinite");
    if (snf.diagonal[t] != 1) columns.push_back(t);
  }
  for (std::size_t col : columns) {
    if (!snf.diagonal[col].fits_slong_p()) throw ArithmeticError("abelian group invariant too large");
    invariants_.push_back(snf.diagonal[col].get_si());
  }
  projection_.assign(generator_count, std::vector<long>(columns.size(), 0));
  for (std::size_t i = 0; i < generator_count; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), snf.column_transform[i][columns[j]].get_mpz_t(),
                 snf.diagonal[columns[j]].get_mpz_t());
      projection_[i][j] = r.get_si();
    }
  }
}

long FiniteAbelianGroup::order() const {
  long n = 1;
  for (long d : invariants_) n = checked_mul(n, d);
  return n;
}

long FiniteAbelianGroup::exponent() const { return invariants_.empty() ? 1 : invariants_.front(); }

std::vector<long> FiniteAbelianGroup::reduce(std::span<const long> x) const {
  if (x.size() != generator_count_) throw ArithmeticError("coordinate vector has wrong length");
  std::vector<long> y(invariants_.size(), 0);
  for (std::size_t j = 0; j < invariants_.size(); ++j) {
    const long d = invariants_[j];
    long acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0 && projection_[i][j] != 0) acc = mod(acc + mulmod(x[i], projection_[i][j], d), d);
    }
    y[j] = acc;
  }
  return y;
}

std::vector<long> FiniteAbelianGroup::generator_image(std::size_t i) const {
  std::vector<long> x(generator_count_, 0);
  x.at(i) = 1;
  return reduce(x);
}

EnumeratedGroup enumerate_abelian_group(std::span<const std::size_t> elements, std::size_t index_bound,
                                        std::size_t identity,
                                        const std::function<std::size_t(std::size_t, std::size_t)>& multiply) {
  EnumeratedGroup g;
  g.member.assign(index_bound, false);
  for (std::size_t e : elements) g.member.at(e) = true;
  if (!g.member.at(identity)) throw ArithmeticError("group element list lacks the identity");
  g.dlog.assign(index_bound, {});
  std::vector<bool> in_subgroup(index_bound, false);
  std::vector<std::size_t> subgroup{identity};
  in_subgroup[identity] = true;

  for (std::size_t candidate : elements) {
    if (in_subgroup[candidate]) continue;
    const std::size_t gen_index = g.generators.size();
    g.generators.push_back(candidate);
    for (std::size_t h : subgroup) g.dlog[h].resize(gen_index + 1, 0);
    // relative order of the candidate modulo the current subgroup
    long k = 1;
    std::size_t x = candidate;
    while (!in_subgroup[x]) {
      x = multiply(x, candidate);
      ++k;
    }
    std::vector<long> relation(gen_index + 1, 0);
    for (std::size_t i = 0; i < gen_index; ++i) relation[i] = -g.dlog[x][i];
    relation[gen_index] = k;
    for (auto& row : g.relations) row.resize(gen_index + 1, 0);
    g.relations.push_back(std::move(relation));

    const std::size_t old_size = subgroup.size();
    for (std::size_t s = 0; s < old_size; ++s) {
      std::size_t y = subgroup[s];
      for (long i = 1; i < k; ++i) {
        y = multiply(y, candidate);
        in_subgroup[y] = true;
        g.dlog[y] = g.dlog[subgroup[s]];
        g.dlog[y][gen_index] = i;
        subgroup.push_back(y);
      }
    }
  }
  const std::size_t rank = g.generators.size();
  for (std::size_t h : subgroup) g.dlog[h].resize(rank, 0);
  for (std::size_t e : elements) {
    if (!in_subgroup[e]) throw ArithmeticError("element list is not closed under multiplication");
  }
  return g;
}

}  // namespace wt1
