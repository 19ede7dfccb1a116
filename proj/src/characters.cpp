#include "wt1/characters.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>

namespace wt1 {

namespace {

long smallest_primitive_root(long p, int k) {
  long pk = 1;
  for (int i = 0; i < k; ++i) pk *= p;
  const long phi = pk / p * (p - 1);
  const auto qs = prime_divisors(phi);
  for (long g = 2; g < pk; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (long q : qs) {
      if (powmod(g, phi / q, pk) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ArithmeticError("no primitive root modulo " + std::to_string(pk));
}

// x = r (mod part), x = 1 (mod modulus / part)
long lift_component(long r, long part, long modulus) {
  const long rest = modulus / part;
  if (rest == 1) return mod(r, part);
  return crt(mod(r, part), part, 1, rest);
}

struct UnitGroup {
  std::vector<long> generators;
  std::vector<long> orders;
  std::vector<long> dlog;  // dlog[n * rank + i], -1 in slot 0 when gcd(n, N) > 1
};

UnitGroup compute_unit_group(long N) {
  UnitGroup g;
  for (const auto& [p, e] : factor(N)) {
    long pk = 1;
    for (int i = 0; i < e; ++i) pk *= p;
    if (p == 2) {
      if (e >= 2) {
        g.generators.push_back(lift_component(pk - 1, pk, N));
        g.orders.push_back(2);
      }
      if (e >= 3) {
        g.generators.push_back(lift_component(5, pk, N));
        g.orders.push_back(pk / 4);
      }
    } else {
      g.generators.push_back(lift_component(smallest_primitive_root(p, e), pk, N));
      g.orders.push_back(pk / p * (p - 1));
    }
  }
  const std::size_t rank = g.generators.size();
  const std::size_t width = std::max<std::size_t>(rank, 1);
  g.dlog.assign(static_cast<std::size_t>(N) * width, -1);
  // walk all exponent tuples in mixed radix, tracking the product
  std::vector<long> digits(rank, 0);
  long value = 1 % N;
  while (true) {
    for (std::size_t i = 0; i < rank; ++i) g.dlog[value * width + i] = digits[i];
    if (rank == 0) g.dlog[value * width] = 0;
    std::size_t i = 0;
    for (; i < rank; ++i) {
      if (++digits[i] < g.orders[i]) {
        value = mulmod(value, g.generators[i], N);
        break;
      }
      digits[i] = 0;
      // undo the full cycle g_i^{order_i} = 1 by multiplying once more
      value = mulmod(value, g.generators[i], N);
    }
    if (i == rank) break;
  }
  return g;
}

struct UnitGroupCache {
  std::mutex mutex;
  std::map<long, std::shared_ptr<const UnitGroup>> groups;
};

UnitGroupCache& unit_group_cache() {
  static UnitGroupCache cache;
  return cache;
}

std::shared_ptr<const UnitGroup> unit_group(long N) {
  if (N < 1) throw ArithmeticError("modulus must be positive");
  auto& cache = unit_group_cache();
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.groups.find(N);
    if (it != cache.groups.end()) return it->second;
  }
  auto g = std::make_shared<const UnitGroup>(compute_unit_group(N));
  std::lock_guard lock(cache.mutex);
  return cache.groups.emplace(N, std::move(g)).first->second;
}

}  // namespace

struct DirichletCharacter::Tables {
  std::shared_ptr<const UnitGroup> group;
};

std::vector<long> unit_group_generators(long modulus) { return unit_group(modulus)->generators; }

std::vector<long> unit_group_generator_orders(long modulus) { return unit_group(modulus)->orders; }

DirichletCharacter::DirichletCharacter(long modulus) : modulus_(modulus) {
  if (modulus < 1) throw ArithmeticError("character modulus must be positive");
  auto tables = std::make_shared<Tables>();
  tables->group = unit_group(modulus);
  tables_ = std::move(tables);
  exponents_.assign(tables_->group->generators.size(), 0);
  build();
}

DirichletCharacter DirichletCharacter::from_generator_values(long modulus, long d,
                                                             std::vector<long> exponents) {
  if (d < 1) throw ArithmeticError("character value order must be positive");
  DirichletCharacter chi(modulus);
  const auto& group = *chi.tables_->group;
  if (exponents.size() != group.generators.size()) {
    throw ArithmeticError("character modulo " + std::to_string(modulus) + " needs " +
                          std::to_string(group.generators.size()) + " generator values, got " +
                          std::to_string(exponents.size()));
  }
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    exponents[i] = mod(exponents[i], d);
    if (mulmod(exponents[i], group.orders[i], d) != 0) {
      throw ArithmeticError("value zeta_" + std::to_string(d) + "^" + std::to_string(exponents[i]) +
                            " is incompatible with generator " + std::to_string(group.generators[i]) +
                            " of order " + std::to_string(group.orders[i]));
    }
  }
  chi.order_ = d;
  chi.exponents_ = std::move(exponents);
  chi.build();
  return chi;
}

DirichletCharacter DirichletCharacter::kronecker_character(long D, long modulus) {
  std::vector<long> exps;
  for (long g : unit_group_generators(modulus)) exps.push_back(kronecker(D, g) == -1 ? 1 : 0);
  return from_generator_values(modulus, 2, std::move(exps));
}

void DirichletCharacter::build() {
  // reduce to the exact order
  long g = order_;
  for (long k : exponents_) g = gcd(g, k);
  if (g > 1) {
    order_ /= g;
    for (long& k : exponents_) k /= g;
  }
  if (order_ == 1) {
    conductor_ = 1;
    return;
  }
  for (long f : divisors(modulus_)) {
    bool trivial = true;
    for (long n = 1 + f; n < modulus_ && trivial; n += f) {
      auto k = exponent_at(n);
      if (k && *k != 0) trivial = false;
    }
    if (trivial) {
      conductor_ = f;
      return;
    }
  }
  conductor_ = modulus_;
}

const std::vector<long>& DirichletCharacter::generators() const { return tables_->group->generators; }

std::optional<long> DirichletCharacter::exponent_at(long n) const {
  const auto& group = *tables_->group;
  const long r = mod(n, modulus_);
  const std::size_t rank = group.generators.size();
  const std::size_t width = std::max<std::size_t>(rank, 1);
  if (group.dlog[r * width] < 0) return std::nullopt;
  long k = 0;
  for (std::size_t i = 0; i < rank; ++i) k = (k + group.dlog[r * width + i] * exponents_[i]) % order_;
  return k;
}

CycNumber DirichletCharacter::operator()(long n) const {
  auto k = exponent_at(n);
  if (!k) return CycNumber(Rational(0), order_);
  return CycNumber::zeta(order_, *k);
}

int DirichletCharacter::parity() const {
  auto k = exponent_at(-1);
  return (*k == 0) ? 1 : -1;
}

DirichletCharacter DirichletCharacter::lift(long new_modulus) const {
  if (new_modulus % modulus_ != 0) {
    throw ArithmeticError("cannot lift a character modulo " + std::to_string(modulus_) + " to modulus " +
                          std::to_string(new_modulus));
  }
  if (new_modulus == modulus_) return *this;
  std::vector<long> exps;
  for (long g : unit_group_generators(new_modulus)) exps.push_back(*exponent_at(g));
  return from_generator_values(new_modulus, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::primitive() const {
  if (conductor_ == modulus_) return *this;
  std::vector<long> exps;
  for (long h : unit_group_generators(conductor_)) {
    long n = h;
    while (gcd(n, modulus_) != 1) n += conductor_;
    exps.push_back(*exponent_at(n));
  }
  return from_generator_values(conductor_, order_, std::move(exps));
}

DirichletCharacter DirichletCharacter::pow(long e) const {
  std::vector<long> exps = exponents_;
  for (long& k : exps) k = mulmod(k, mod(e, order_), order_);
  return from_generator_values(modulus_, order_, std::move(exps));
}

DirichletCharacter operator*(const DirichletCharacter& a, const DirichletCharacter& b) {
  const long modulus = lcm(a.modulus_, b.modulus_);
  const DirichletCharacter la = a.lift(modulus);
  const DirichletCharacter lb = b.lift(modulus);
  const long d = lcm(a.order_, b.order_);
  std::vector<long> exps(la.exponents_.size());
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exps[i] = mod(la.exponents_[i] * (d / a.order_) + lb.exponents_[i] * (d / b.order_), d);
  }
  return DirichletCharacter::from_generator_values(modulus, d, std::move(exps));
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
  return a.modulus_ == b.modulus_ && a.order_ == b.order_ && a.exponents_ == b.exponents_;
}

int kronecker(long D, long n) {
  static constexpr int tab2[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (a|2) indexed by a mod 8
  long a = D, b = n;
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if ((a & 1) == 0 && (b & 1) == 0) return 0;
  int v = 0;
  while ((b & 1) == 0) {
    b /= 2;
    ++v;
  }
  int k = (v & 1) ? tab2[a & 7] : 1;
  if (b < 0) {
    b = -b;
    if (a < 0) k = -k;
  }
  // b is odd and positive: Jacobi symbol (a|b) with reciprocity
  while (true) {
    if (a == 0) return b > 1 ? 0 : k;
    v = 0;
    while ((a & 1) == 0) {
      a /= 2;
      ++v;
    }
    if (v & 1) k *= tab2[b & 7];
    // (-1)^((a-1)(b-1)/4), computed on the two's complement bits of a
    if (a & b & 2) k = -k;
    const long r = std::abs(a);
    a = b % r;
    b = r;
  }
}

bool is_fundamental_discriminant(long D) {
  if (D == 0 || D == 1) return false;
  auto squarefree = [](long m) {
    for (const auto& pp : factor(std::abs(m))) {
      if (pp.exponent > 1) return false;
    }
    return true;
  };
  const long r = mod(D, 4);
  if (r == 1) return squarefree(D);
  if (r != 0) return false;
  const long m = D / 4;
  const long rm = mod(m, 4);
  return (rm == 2 || rm == 3) && squarefree(m);
}

FundamentalDiscriminant::FundamentalDiscriminant(long D) : value(D) {
  if (!is_fundamental_discriminant(D)) {
    throw ArithmeticError(std::to_string(D) + " is not a fundamental discriminant");
  }
}

std::vector<FundamentalDiscriminant> enumerate_fundamental_discriminants(long N) {
  if (N < 1) throw ArithmeticError("enumerate_fundamental_discriminants: N must be positive");
  std::vector<long> products{1};
  for (long p : prime_divisors(N)) {
    std::vector<long> choices;
    if (p == 2) {
      choices = {-4, 8, -8};
    } else {
      choices = {(p % 4 == 1) ? p : -p};
    }
    const std::size_t count = products.size();
    for (long c : choices) {
      for (std::size_t i = 0; i < count; ++i) products.push_back(checked_mul(products[i], c));
    }
  }
  std::vector<FundamentalDiscriminant> out;
  for (long D : products) {
    if (D != 1) out.emplace_back(D);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    const long ax = std::abs(x.value), ay = std::abs(y.value);
    if (ax != ay) return ax < ay;
    return x.value > y.value;
  });
  return out;
}

}  // namespace wt1
