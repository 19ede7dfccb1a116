#include "wt1/quadfields.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

namespace wt1 {

namespace {

long to_long(__int128 v) {
  if (v > static_cast<__int128>(LONG_MAX) || v < static_cast<__int128>(LONG_MIN)) {
    throw ArithmeticError("integer overflow in quadratic field arithmetic");
  }
  return static_cast<long>(v);
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// u a + v b = g = gcd(a, b) >= 0
long ext_gcd(long a, long b, long& u, long& v) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const long q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
    old_t -= q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  u = old_s;
  v = old_t;
  return old_r;
}

// Z-lattice in coordinates (1, w) with basis (A, 0), (B, C).
struct Lattice {
  long A = 0, B = 0, C = 0;
};

Lattice hnf(const std::vector<QuadElement>& vectors) {
  long A = 0, B = 0, C = 0;
  for (const auto& [x, y] : vectors) {
    if (y == 0) {
      A = gcd(A, x);
      continue;
    }
    if (C == 0) {
      B = x;
      C = y;
      continue;
    }
    long u, v;
    const long g = ext_gcd(C, y, u, v);
    const long new_b = to_long(static_cast<__int128>(u) * B + static_cast<__int128>(v) * x);
    const long other = to_long(static_cast<__int128>(y / g) * B - static_cast<__int128>(C / g) * x);
    A = gcd(A, other);
    B = new_b;
    C = g;
  }
  if (C < 0) {
    B = -B;
    C = -C;
  }
  A = std::abs(A);
  if (A == 0 || C == 0) throw ArithmeticError("lattice is not of full rank");
  B = mod(B, A);
  return {A, B, C};
}

}  // namespace

// ---------------------------------------------------------------------------
// ideals and forms

long QuadIdeal::norm() const { return checked_mul(checked_mul(content, content), a); }

std::string QuadIdeal::to_string() const {
  return "[" + std::to_string(content) + " " + std::to_string(a) + " " + std::to_string(b) + "]";
}

bool QuadForm::is_reduced() const {
  if (std::abs(b) > a || a > c) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

QuadForm reduce_form(QuadForm f, long* transform) {
  if (f.a <= 0 || f.discriminant() >= 0) throw ArithmeticError("reduce_form: form is not positive definite");
  long m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  while (true) {
    if (f.b > f.a || f.b <= -f.a) {
      const long t = floor_div(f.a - f.b, 2 * f.a);
      f.c = to_long(static_cast<__int128>(f.a) * t * t + static_cast<__int128>(f.b) * t + f.c);
      f.b = f.b + 2 * f.a * t;
      m12 += m11 * t;
      m22 += m21 * t;
    }
    if (f.a > f.c || (f.a == f.c && f.b < 0)) {
      std::swap(f.a, f.c);
      f.b = -f.b;
      const long n11 = m12, n12 = -m11, n21 = m22, n22 = -m21;
      m11 = n11;
      m12 = n12;
      m21 = n21;
      m22 = n22;
      continue;
    }
    break;
  }
  if (transform) {
    transform[0] = m11;
    transform[1] = m12;
    transform[2] = m21;
    transform[3] = m22;
  }
  return f;
}

QuadForm compose_forms(const QuadForm& f, const QuadForm& g) {
  if (f.discriminant() != g.discriminant()) throw ArithmeticError("compose_forms: discriminants differ");
  QuadForm f1 = f, f2 = g;
  if (f1.a > f2.a) std::swap(f1, f2);
  const long s = (f1.b + f2.b) / 2;
  const long n = f2.b - s;
  long y1 = 0, d = f1.a;
  if (f2.a % f1.a != 0) {
    long u, v;
    d = ext_gcd(f2.a, f1.a, u, v);
    y1 = u;
  }
  long x2 = 0, y2 = -1, d1 = d;
  if (s % d != 0) {
    long u, v;
    d1 = ext_gcd(s, d, u, v);
    x2 = u;
    y2 = -v;
  }
  const long v1 = f1.a / d1;
  const long v2 = f2.a / d1;
  const long r = mod(to_long(static_cast<__int128>(y1) * y2 * n - static_cast<__int128>(x2) * f2.c), v1);
  QuadForm h;
  h.b = f2.b + 2 * v2 * r;
  h.a = v1 * v2;
  h.c = to_long((static_cast<__int128>(f2.c) * d1 + static_cast<__int128>(r) * (f2.b + v2 * r)) / v1);
  return reduce_form(h);
}

std::vector<QuadForm> reduced_forms(long D) {
  if (D >= 0) throw ArithmeticError("reduced_forms: discriminant must be negative");
  std::vector<QuadForm> out;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (mod(b - D, 2) != 0) continue;
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (gcd(gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// the field

ImaginaryQuadraticField::ImaginaryQuadraticField(long D) : D_(D), delta_(mod(D, 4)) {
  if (D >= 0) throw ArithmeticError("only imaginary quadratic fields are supported (D = " + std::to_string(D) + ")");
  if (!is_fundamental_discriminant(D)) throw ArithmeticError(std::to_string(D) + " is not a fundamental discriminant");
}

QuadElement ImaginaryQuadraticField::multiply(const QuadElement& u, const QuadElement& v) const {
  const __int128 yy = static_cast<__int128>(u.y) * v.y;
  const __int128 x = static_cast<__int128>(u.x) * v.x + yy * ((D_ - delta_) / 4);
  const __int128 y = static_cast<__int128>(u.x) * v.y + static_cast<__int128>(v.x) * u.y + yy * delta_;
  return {to_long(x), to_long(y)};
}

QuadElement ImaginaryQuadraticField::conjugate(const QuadElement& u) const {
  return {checked_add(u.x, checked_mul(delta_, u.y)), -u.y};
}

long ImaginaryQuadraticField::norm(const QuadElement& u) const {
  const __int128 n = static_cast<__int128>(u.x) * u.x + static_cast<__int128>(delta_) * u.x * u.y +
                     static_cast<__int128>(u.y) * u.y * ((delta_ - D_) / 4);
  return to_long(n);
}

QuadElement ImaginaryQuadraticField::unit_generator() const {
  if (D_ == -4 || D_ == -3) return {0, 1};  // i, resp. (1 + sqrt(-3))/2
  return {-1, 0};
}

long ImaginaryQuadraticField::unit_count() const {
  if (D_ == -4) return 4;
  if (D_ == -3) return 6;
  return 2;
}

namespace {

Lattice lattice_of(const QuadIdeal& I, long delta) {
  return {checked_mul(I.content, I.a), I.content * ((I.b - delta) / 2), I.content};
}

}  // namespace

QuadIdeal ImaginaryQuadraticField::unit_ideal() const { return {D_, 1, 1, delta_}; }

QuadIdeal ImaginaryQuadraticField::principal(long n) const {
  if (n == 0) throw ArithmeticError("the zero ideal is not supported");
  return {D_, std::abs(n), 1, delta_};
}

namespace {

QuadIdeal ideal_from_lattice(const Lattice& L, long D, long delta) {
  if (L.A % L.C != 0 || L.B % L.C != 0) throw ArithmeticError("lattice is not an ideal");
  QuadIdeal I;
  I.D = D;
  I.content = L.C;
  I.a = L.A / L.C;
  I.b = mod(2 * (L.B / L.C) + delta, 2 * I.a);
  if (mod(I.b * I.b - D, 4 * I.a) != 0) throw ArithmeticError("lattice is not an ideal");
  return I;
}

}  // namespace

QuadIdeal ImaginaryQuadraticField::principal(const QuadElement& u) const {
  if (u.x == 0 && u.y == 0) throw ArithmeticError("the zero ideal is not supported");
  return ideal_from_lattice(hnf({u, multiply(u, {0, 1})}), D_, delta_);
}

QuadIdeal ImaginaryQuadraticField::multiply(const QuadIdeal& I, const QuadIdeal& J) const {
  const Lattice li = lattice_of(I, delta_), lj = lattice_of(J, delta_);
  const QuadElement a1{li.A, 0}, b1{li.B, li.C}, a2{lj.A, 0}, b2{lj.B, lj.C};
  return ideal_from_lattice(hnf({multiply(a1, a2), multiply(a1, b2), multiply(b1, a2), multiply(b1, b2)}), D_,
                            delta_);
}

QuadIdeal ImaginaryQuadraticField::conjugate(const QuadIdeal& I) const {
  QuadIdeal out = I;
  out.b = mod(-I.b, 2 * I.a);
  return out;
}

QuadIdeal ImaginaryQuadraticField::sum(const QuadIdeal& I, const QuadIdeal& J) const {
  const Lattice li = lattice_of(I, delta_), lj = lattice_of(J, delta_);
  return ideal_from_lattice(hnf({{li.A, 0}, {li.B, li.C}, {lj.A, 0}, {lj.B, lj.C}}), D_, delta_);
}

bool ImaginaryQuadraticField::contains(const QuadIdeal& I, const QuadElement& u) const {
  const Lattice l = lattice_of(I, delta_);
  if (u.y % l.C != 0) return false;
  const long q = u.y / l.C;
  return mod(to_long(static_cast<__int128>(u.x) - static_cast<__int128>(q) * l.B), l.A) == 0;
}

QuadIdeal ImaginaryQuadraticField::divide(const QuadIdeal& I, const QuadIdeal& J) const {
  const QuadIdeal prod = multiply(I, conjugate(J));
  Lattice l = lattice_of(prod, delta_);
  const long n = J.norm();
  if (l.A % n != 0 || l.B % n != 0 || l.C % n != 0) throw ArithmeticError("ideal division is not exact");
  l.A /= n;
  l.B /= n;
  l.C /= n;
  return ideal_from_lattice(l, D_, delta_);
}

std::vector<QuadIdeal> ImaginaryQuadraticField::primitive_ideals_of_norm(long n) const {
  std::vector<QuadIdeal> out;
  for (long b = delta_; b < 2 * n; b += 2) {
    if (mod(checked_mul(b, b) - D_, 4 * n) == 0) out.push_back({D_, 1, n, b});
  }
  return out;
}

std::vector<QuadIdeal> ImaginaryQuadraticField::primes_above(long p) const {
  if (!is_prime(p)) throw ArithmeticError(std::to_string(p) + " is not prime");
  if (kronecker(D_, p) == -1) return {principal(p)};
  return primitive_ideals_of_norm(p);
}

QuadForm ImaginaryQuadraticField::form_of(const QuadIdeal& I) const {
  return {I.a, I.b, (I.b * I.b - D_) / (4 * I.a)};
}

QuadIdeal ImaginaryQuadraticField::ideal_of(const QuadForm& f) const {
  if (f.discriminant() != D_) throw ArithmeticError("form has the wrong discriminant");
  return {D_, 1, f.a, mod(f.b, 2 * f.a)};
}

std::optional<QuadElement> ImaginaryQuadraticField::generator(const QuadIdeal& I) const {
  long m[4];
  const QuadForm reduced = reduce_form(form_of(I), m);
  if (reduced.a != 1) return std::nullopt;
  // gamma = m11 * a + m21 * (b + sqrt(D))/2
  QuadElement gamma{to_long(static_cast<__int128>(m[0]) * I.a + static_cast<__int128>(m[2]) * ((I.b - delta_) / 2)),
                    m[2]};
  gamma.x = checked_mul(gamma.x, I.content);
  gamma.y = checked_mul(gamma.y, I.content);
  return gamma;
}

std::vector<QuadIdeal> ideals_of_norm(long D, long n) {
  if (n < 1) throw ArithmeticError("ideals_of_norm: n must be positive");
  const ImaginaryQuadraticField K(D);
  std::vector<QuadIdeal> result{K.unit_ideal()};
  for (const auto& [p, e] : factor(n)) {
    std::vector<QuadIdeal> options;
    auto power = [&K](const QuadIdeal& P, int k) {
      QuadIdeal out = K.unit_ideal();
      for (int i = 0; i < k; ++i) out = K.multiply(out, P);
      return out;
    };
    const int kr = kronecker(D, p);
    if (kr == -1) {
      if (e % 2 != 0) return {};
      long pk = 1;
      for (int i = 0; i < e / 2; ++i) pk *= p;
      options.push_back(K.principal(pk));
    } else {
      const auto primes = K.primes_above(p);
      if (primes.size() == 1) {
        options.push_back(power(primes[0], e));
      } else {
        for (int i = 0; i <= e; ++i) options.push_back(K.multiply(power(primes[0], i), power(primes[1], e - i)));
      }
    }
    std::vector<QuadIdeal> next;
    for (const auto& x : result) {
      for (const auto& y : options) next.push_back(K.multiply(x, y));
    }
    result = std::move(next);
  }
  std::sort(result.begin(), result.end());
  return result;
}

// ---------------------------------------------------------------------------
// ray class groups

RayClassGroup::RayClassGroup(long D, const QuadIdeal& modulus) : field_(D) {
  if (modulus.D != D) throw ArithmeticError("modulus belongs to a different field");
  if (modulus.a < 1 || modulus.content < 1 || mod(modulus.b * modulus.b - D, 4 * modulus.a) != 0) {
    throw ArithmeticError("modulus " + modulus.to_string() + " is not an integral ideal");
  }
  modulus_ = modulus;
  modulus_.b = mod(modulus.b, 2 * modulus.a);
  const long delta = mod(D, 4);
  const Lattice lm = lattice_of(modulus_, delta);
  hnf_a_ = lm.A;
  hnf_b_ = lm.B;
  hnf_c_ = lm.C;
  const long F = modulus_.norm();
  const std::size_t size = static_cast<std::size_t>(F);

  // (O/f)^*
  residue_slot_.assign(size, -1);
  std::vector<std::size_t> units;
  for (std::size_t idx = 0; idx < size; ++idx) {
    const QuadElement u{static_cast<long>(idx % hnf_a_), static_cast<long>(idx / hnf_a_)};
    const bool is_unit = (F == 1) || (u != QuadElement{0, 0} && field_.coprime(field_.principal(u), modulus_));
    if (is_unit) {
      residue_slot_[idx] = static_cast<long>(unit_residues_.size());
      unit_residues_.push_back(u);
      units.push_back(idx);
    }
  }
  const std::size_t identity = residue_index({1, 0});
  const EnumeratedGroup units_group = enumerate_abelian_group(
      units, size, identity, [this](std::size_t i, std::size_t j) {
        const QuadElement u{static_cast<long>(i % hnf_a_), static_cast<long>(i / hnf_a_)};
        const QuadElement v{static_cast<long>(j % hnf_a_), static_cast<long>(j / hnf_a_)};
        return residue_index(field_.multiply(u, v));
      });
  unit_rank_ = units_group.generators.size();
  unit_dlog_ = units_group.dlog;

  {
    const QuadElement eps = field_.unit_generator();
    std::set<std::size_t> seen;
    QuadElement power{1, 0};
    for (long i = 0; i < field_.unit_count(); ++i) {
      seen.insert(residue_index(power));
      power = field_.multiply(power, eps);
    }
    unit_image_order_ = static_cast<long>(seen.size());
  }

  // Cl and representatives coprime to f
  class_forms_ = reduced_forms(D);
  const std::size_t h = class_forms_.size();
  std::map<QuadForm, std::size_t> class_index;
  for (std::size_t i = 0; i < h; ++i) class_index[class_forms_[i]] = i;
  auto class_of = [&](const QuadIdeal& I) { return class_index.at(reduce_form(field_.form_of(I))); };

  class_reps_.assign(h, QuadIdeal{});
  std::vector<bool> have(h, false);
  class_reps_[0] = field_.unit_ideal();
  have[0] = true;
  std::size_t found = 1;
  for (long n = 2; found < h; ++n) {
    if (gcd(n, F) != 1) continue;
    for (const auto& J : field_.primitive_ideals_of_norm(n)) {
      const std::size_t k = class_of(J);
      if (!have[k]) {
        have[k] = true;
        class_reps_[k] = J;
        ++found;
      }
    }
  }

  std::vector<std::size_t> class_ids(h);
  for (std::size_t i = 0; i < h; ++i) class_ids[i] = i;
  const EnumeratedGroup cl = enumerate_abelian_group(class_ids, h, 0, [&](std::size_t i, std::size_t j) {
    return class_of(field_.multiply(field_.ideal_of(class_forms_[i]), field_.ideal_of(class_forms_[j])));
  });

  // relations over [unit generators | class representatives]
  const std::size_t width = unit_rank_ + h;
  IntMatrix relations;
  auto unit_row = [&](const QuadElement& u) {
    std::vector<long> row(width, 0);
    const auto raw = raw_dlog_unit(u);
    for (std::size_t i = 0; i < unit_rank_; ++i) row[i] = raw[i];
    return row;
  };
  for (const auto& rel : units_group.relations) {
    std::vector<long> row(width, 0);
    std::copy(rel.begin(), rel.end(), row.begin());
    relations.push_back(std::move(row));
  }
  relations.push_back(unit_row(field_.unit_generator()));
  {
    std::vector<long> row(width, 0);
    row[unit_rank_] = 1;
    relations.push_back(std::move(row));
  }
  for (std::size_t c = 0; c < h; ++c) {
    for (std::size_t g : cl.generators) {
      const QuadIdeal prod = field_.multiply(class_reps_[c], class_reps_[g]);
      const std::size_t cg = class_of(prod);
      const auto gamma = field_.generator(field_.multiply(prod, field_.conjugate(class_reps_[cg])));
      if (!gamma) throw ArithmeticError("internal error: expected a principal ideal");
      // e_c + e_g - e_cg = u(gamma) - u(N(rep_cg))
      std::vector<long> row = unit_row(*gamma);
      const auto norm_row = unit_row({class_reps_[cg].norm(), 0});
      for (std::size_t i = 0; i < width; ++i) row[i] = norm_row[i] - row[i];
      row[unit_rank_ + c] += 1;
      row[unit_rank_ + g] += 1;
      row[unit_rank_ + cg] -= 1;
      relations.push_back(std::move(row));
    }
  }
  group_ = FiniteAbelianGroup(relations, width);

  // ideal representatives of the cyclic generators
  const std::size_t rank = group_.rank();
  generators_.assign(rank, QuadIdeal{});
  std::vector<bool> have_gen(rank, false);
  std::size_t gens_found = 0;
  for (long n = 1; gens_found < rank; ++n) {
    if (n > 5'000'000) throw ArithmeticError("could not find ideal representatives of ray class generators");
    for (const auto& J : field_.primitive_ideals_of_norm(n)) {
      if (!coprime_to_modulus(J)) continue;
      const auto y = dlog(J);
      std::size_t nonzero = 0, pos = 0;
      for (std::size_t j = 0; j < rank; ++j) {
        if (y[j] != 0) {
          ++nonzero;
          pos = j;
        }
      }
      if (nonzero == 1 && y[pos] == 1 && !have_gen[pos]) {
        have_gen[pos] = true;
        generators_[pos] = J;
        ++gens_found;
      }
    }
  }

  conjugation_stable_ = field_.conjugate(modulus_) == modulus_;
  if (conjugation_stable_) {
    for (const auto& g : generators_) conjugation_.push_back(dlog(field_.conjugate(g)));
  }
}

std::size_t RayClassGroup::residue_index(const QuadElement& u) const {
  const long y0 = mod(u.y, hnf_c_);
  const long q = (u.y - y0) / hnf_c_;
  const long x0 = mod(to_long(static_cast<__int128>(u.x) - static_cast<__int128>(q) * hnf_b_), hnf_a_);
  return static_cast<std::size_t>(y0 * hnf_a_ + x0);
}

std::vector<long> RayClassGroup::raw_dlog_unit(const QuadElement& u) const {
  const std::size_t idx = residue_index(u);
  if (residue_slot_[idx] < 0) throw ArithmeticError("element is not coprime to the modulus");
  std::vector<long> out = unit_dlog_[idx];
  out.resize(unit_rank_ + class_forms_.size(), 0);
  return out;
}

bool RayClassGroup::coprime_to_modulus(const QuadIdeal& I) const {
  return modulus_.is_unit_ideal() || field_.coprime(I, modulus_);
}

std::vector<long> RayClassGroup::raw_dlog(const QuadIdeal& I) const {
  if (I.D != discriminant()) throw ArithmeticError("ideal belongs to a different field");
  if (!coprime_to_modulus(I)) throw ArithmeticError("ideal " + I.to_string() + " is not coprime to the modulus");
  const QuadIdeal J{I.D, 1, I.a, I.b};
  const QuadForm reduced = reduce_form(field_.form_of(J));
  const auto it = std::find(class_forms_.begin(), class_forms_.end(), reduced);
  const std::size_t k = static_cast<std::size_t>(it - class_forms_.begin());
  const auto beta = field_.generator(field_.multiply(J, field_.conjugate(class_reps_[k])));
  if (!beta) throw ArithmeticError("internal error: expected a principal ideal");
  std::vector<long> raw = raw_dlog_unit(*beta);
  const auto norm_part = raw_dlog_unit({class_reps_[k].norm(), 0});
  for (std::size_t i = 0; i < raw.size(); ++i) raw[i] -= norm_part[i];
  if (I.content != 1) {
    const auto content_part = raw_dlog_unit({I.content, 0});
    for (std::size_t i = 0; i < raw.size(); ++i) raw[i] += content_part[i];
  }
  raw[unit_rank_ + k] += 1;
  return raw;
}

std::vector<long> RayClassGroup::dlog(const QuadIdeal& I) const { return group_.reduce(raw_dlog(I)); }

std::vector<long> RayClassGroup::dlog(const QuadElement& u) const { return group_.reduce(raw_dlog_unit(u)); }

std::vector<std::vector<long>> RayClassGroup::kernel_to_smaller_modulus(const QuadIdeal& prime) const {
  const QuadIdeal smaller = field_.divide(modulus_, prime);
  std::set<std::vector<long>> seen;
  for (const auto& u : unit_residues_) {
    if (field_.contains(smaller, {u.x - 1, u.y})) seen.insert(dlog(u));
  }
  return {seen.begin(), seen.end()};
}

RayClassGroup class_group(long D) {
  const ImaginaryQuadraticField K(D);
  return RayClassGroup(D, K.unit_ideal());
}

RayClassGroup ray_class_group(long D, const QuadIdeal& modulus) { return RayClassGroup(D, modulus); }

// ---------------------------------------------------------------------------
// Hecke characters

std::optional<long> HeckeCharacter::exponent_at(const QuadIdeal& I) const {
  if (!group->coprime_to_modulus(I)) return std::nullopt;
  const auto y = group->dlog(I);
  long k = 0;
  for (std::size_t i = 0; i < y.size(); ++i) k = mod(k + mulmod(exponents[i], y[i], order), order);
  return k;
}

CycNumber HeckeCharacter::operator()(const QuadIdeal& I) const {
  const auto k = exponent_at(I);
  if (!k) return CycNumber(Rational(0), order);
  return CycNumber::zeta(order, *k);
}

std::optional<HeckeCharacter> HeckeCharacter::composed_with_conjugation() const {
  if (!group->conjugation_stable()) return std::nullopt;
  const IntMatrix& t = group->conjugation_action();
  HeckeCharacter out = *this;
  out.conjugate_index.reset();
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    long k = 0;
    for (std::size_t j = 0; j < exponents.size(); ++j) k = mod(k + mulmod(t[i][j], exponents[j], order), order);
    out.exponents[i] = k;
  }
  return out;
}

bool HeckeCharacter::equals_its_conjugate() const {
  const auto conj = composed_with_conjugation();
  return conj && conj->exponents == exponents;
}

std::vector<HeckeCharacter> enumerate_hecke_characters(long D, const QuadIdeal& modulus) {
  auto group = std::make_shared<const RayClassGroup>(D, modulus);
  const auto& dims = group->structure();
  const auto& K = group->field();

  std::vector<std::vector<std::vector<long>>> kernels;
  for (long p : prime_divisors(modulus.norm())) {
    for (const auto& P : K.primes_above(p)) {
      if (K.sum(group->modulus(), P) == P) kernels.push_back(group->kernel_to_smaller_modulus(P));
    }
  }

  std::vector<HeckeCharacter> out;
  std::vector<long> k(dims.size(), 0);
  while (true) {
    long order = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) order = lcm(order, dims[i] / gcd(dims[i], k[i]));
    HeckeCharacter psi{group, std::vector<long>(dims.size()), order, std::nullopt};
    for (std::size_t i = 0; i < dims.size(); ++i) psi.exponents[i] = k[i] * (order / dims[i]);

    bool exact = true;
    for (const auto& kernel : kernels) {
      bool nontrivial = false;
      for (const auto& y : kernel) {
        long v = 0;
        for (std::size_t i = 0; i < y.size(); ++i) v = mod(v + mulmod(psi.exponents[i], y[i], order), order);
        if (v != 0) {
          nontrivial = true;
          break;
        }
      }
      if (!nontrivial) {
        exact = false;
        break;
      }
    }
    if (exact && !psi.equals_its_conjugate()) out.push_back(std::move(psi));

    std::size_t i = dims.size();
    while (i > 0) {
      --i;
      if (++k[i] < dims[i]) break;
      k[i] = 0;
      if (i == 0) {
        i = dims.size() + 1;
        break;
      }
    }
    if (dims.empty() || i == dims.size() + 1) break;
  }

  std::map<std::vector<long>, std::size_t> index;
  for (std::size_t i = 0; i < out.size(); ++i) index[out[i].exponents] = i;
  for (auto& psi : out) {
    if (const auto conj = psi.composed_with_conjugation()) {
      const auto it = index.find(conj->exponents);
      if (it != index.end()) psi.conjugate_index = it->second;
    }
  }
  return out;
}

ThetaSeries theta_series(const HeckeCharacter& psi, long M) {
  if (psi.equals_its_conjugate()) {
    throw ArithmeticError("psi equals its conjugate: the induced representation is reducible");
  }
  const RayClassGroup& G = *psi.group;
  const long D = G.discriminant();
  const auto& K = G.field();
  ThetaSeries out;
  out.level = checked_mul(-D, G.modulus().norm());

  const long value_order = lcm(2, psi.order);
  std::vector<long> exps;
  for (long g : unit_group_generators(out.level)) {
    const long kr = kronecker(D, g);
    const auto kpsi = psi.exponent_at(K.principal(g));
    if (!kpsi || kr == 0) throw ArithmeticError("internal error: generator not coprime to the level");
    exps.push_back(mod((kr == -1 ? value_order / 2 : 0) + *kpsi * (value_order / psi.order), value_order));
  }
  out.character = DirichletCharacter::from_generator_values(out.level, value_order, std::move(exps));
  out.cyc_order = lcm(psi.order, out.character.order());

  out.coeffs.reserve(static_cast<std::size_t>(std::max(M, 0L)));
  for (long n = 1; n <= M; ++n) {
    std::vector<Rational> counts(static_cast<std::size_t>(psi.order), Rational(0));
    for (const auto& I : ideals_of_norm(D, n)) {
      if (const auto k = psi.exponent_at(I)) counts[*k] += 1;
    }
    out.coeffs.push_back(CycNumber::from_powers(psi.order, std::move(counts)).embed(out.cyc_order));
  }
  return out;
}

}  // namespace wt1
