#include "wt1/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <utility>

namespace wt1 {

namespace {

struct CyclotomicCache {
  std::mutex mutex;
  std::map<long, std::vector<long>> polys;
};

CyclotomicCache& cyclotomic_cache() {
  static CyclotomicCache cache;
  return cache;
}

// (x^m - 1) / prod_{d | m, d < m} Phi_d by repeated exact division.
std::vector<long> compute_cyclotomic(long m) {
  std::vector<long> num(static_cast<std::size_t>(m) + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (long d : divisors(m)) {
    if (d == m) break;
    const std::vector<long>& div = cyclotomic_polynomial(d);
    const std::size_t dd = div.size() - 1;
    std::vector<long> quot(num.size() - dd, 0);
    for (std::size_t i = num.size(); i-- > dd;) {
      const long c = num[i];  // divisor is monic
      quot[i - dd] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * div[j];
    }
    num = std::move(quot);
  }
  return num;
}

Rational parse_rational(std::string_view s) {
  Rational q;
  if (q.set_str(std::string(s), 10) != 0) throw ParseError("malformed rational '" + std::string(s) + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(long m) {
  if (m < 1) throw ArithmeticError("cyclotomic_polynomial: order must be positive");
  auto& cache = cyclotomic_cache();
  {
    std::lock_guard lock(cache.mutex);
    auto it = cache.polys.find(m);
    if (it != cache.polys.end()) return it->second;
  }
  std::vector<long> poly;
  if (m == 1) {
    poly = {-1, 1};
  } else {
    poly = compute_cyclotomic(m);
  }
  std::lock_guard lock(cache.mutex);
  // std::map never invalidates references, so a concurrent insert of the same key is harmless.
  return cache.polys.emplace(m, std::move(poly)).first->second;
}

CycNumber::CycNumber() : order_(1), coeffs_(1) {}

CycNumber::CycNumber(long value) : order_(1), coeffs_{Rational(value)} {}

CycNumber::CycNumber(Rational value, long order) : order_(order) {
  if (order < 1) throw ArithmeticError("CycNumber: order must be positive");
  value.canonicalize();
  coeffs_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
  coeffs_[0] = std::move(value);
}

CycNumber::CycNumber(long order, std::vector<Rational> reduced)
    : order_(order), coeffs_(std::move(reduced)) {}

CycNumber CycNumber::zeta(long order, long exponent) {
  if (order < 1) throw ArithmeticError("CycNumber::zeta: order must be positive");
  std::vector<Rational> poly(static_cast<std::size_t>(order), Rational(0));
  poly[mod(exponent, order)] = 1;
  return CycNumber(order, reduce(order, std::move(poly)));
}

CycNumber CycNumber::from_powers(long order, std::vector<Rational> coeffs) {
  if (order < 1) throw ArithmeticError("CycNumber: order must be positive");
  for (auto& c : coeffs) c.canonicalize();
  return CycNumber(order, reduce(order, std::move(coeffs)));
}

std::vector<Rational> CycNumber::reduce(long order, std::vector<Rational> poly) {
  const std::size_t m = static_cast<std::size_t>(order);
  if (poly.size() > m) {
    for (std::size_t i = m; i < poly.size(); ++i) {
      if (poly[i] != 0) poly[i % m] += poly[i];
    }
    poly.resize(m);
  }
  const std::vector<long>& phi_poly = cyclotomic_polynomial(order);
  const std::size_t deg = phi_poly.size() - 1;
  for (std::size_t i = poly.size(); i-- > deg;) {
    if (poly[i] == 0) continue;
    const Rational c = poly[i];
    for (std::size_t j = 0; j < deg; ++j) {
      if (phi_poly[j] != 0) poly[i - deg + j] -= c * phi_poly[j];
    }
    poly[i] = 0;
  }
  poly.resize(deg, Rational(0));
  return poly;
}

bool CycNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycNumber::is_rational() const {
  return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c == 0; });
}

bool CycNumber::is_one() const { return is_rational() && coeffs_[0] == 1; }

Rational CycNumber::rational_value() const { return coeffs_[0]; }

CycNumber CycNumber::embed(long target) const {
  if (target < 1 || target % order_ != 0) {
    throw ArithmeticError("embed: order " + std::to_string(order_) + " does not divide " +
                          std::to_string(target));
  }
  if (target == order_) return *this;
  const long step = target / order_;
  std::vector<Rational> poly(static_cast<std::size_t>(target), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) poly[i * step] = coeffs_[i];
  return CycNumber(target, reduce(target, std::move(poly)));
}

CycNumber CycNumber::galois(long a) const {
  if (gcd(a, order_) != 1) {
    throw ArithmeticError("galois: " + std::to_string(a) + " is not a unit modulo " +
                          std::to_string(order_));
  }
  const long aa = mod(a, order_);
  std::vector<Rational> poly(static_cast<std::size_t>(order_), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) poly[mod(static_cast<long>(i) * aa, order_)] += coeffs_[i];
  }
  return CycNumber(order_, reduce(order_, std::move(poly)));
}

CycNumber CycNumber::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNumber result(Rational(1), order_);
  CycNumber base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

CycNumber CycNumber::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero in Q(zeta_" + std::to_string(order_) + ")");
  if (is_rational()) return CycNumber(1 / coeffs_[0], order_);
  // x^-1 = (product of the other conjugates) / norm(x)
  CycNumber others(Rational(1), order_);
  for (long a : unit_residues(order_)) {
    if (a != 1) others *= galois(a);
  }
  const CycNumber norm = others * *this;
  return CycNumber(others.order_, others.coeffs_) * CycNumber(1 / norm.coeffs_[0], order_);
}

CycNumber CycNumber::operator-() const {
  CycNumber out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

CycNumber& CycNumber::operator+=(const CycNumber& other) {
  if (other.order_ != order_) {
    const long target = lcm(order_, other.order_);
    *this = embed(target);
    return *this += other.embed(target);
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycNumber& CycNumber::operator-=(const CycNumber& other) { return *this += -other; }

CycNumber& CycNumber::operator*=(const CycNumber& other) {
  if (other.order_ != order_) {
    const long target = lcm(order_, other.order_);
    *this = embed(target);
    return *this *= other.embed(target);
  }
  if (is_rational()) {
    const Rational c = coeffs_[0];
    coeffs_ = other.coeffs_;
    for (auto& x : coeffs_) x *= c;
    return *this;
  }
  if (other.is_rational()) {
    for (auto& x : coeffs_) x *= other.coeffs_[0];
    return *this;
  }
  const std::size_t n = coeffs_.size();
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (other.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = reduce(order_, std::move(prod));
  return *this;
}

CycNumber& CycNumber::operator/=(const CycNumber& other) { return *this *= other.inverse(); }

bool operator==(const CycNumber& a, const CycNumber& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const long target = lcm(a.order_, b.order_);
  return a.embed(target).coeffs_ == b.embed(target).coeffs_;
}

std::string CycNumber::to_string() const {
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "z";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

CycNumber CycNumber::parse(std::string_view text, long order) {
  if (order < 1) throw ParseError("element order must be positive");
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty cyclotomic element");
  std::vector<Rational> poly(static_cast<std::size_t>(order), Rational(0));
  std::size_t pos = 0;
  bool first = true;
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' in '" + std::string(text) + "'");
    }
    first = false;
    Rational coef(1);
    bool have_coef = false;
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (pos > start) {
      coef = parse_rational(std::string_view(s).substr(start, pos - start));
      have_coef = true;
    }
    long exponent = 0;
    if (pos < s.size() && s[pos] == '*') {
      if (!have_coef) throw ParseError("dangling '*' in '" + std::string(text) + "'");
      ++pos;
      if (pos >= s.size() || s[pos] != 'z') throw ParseError("expected 'z' after '*' in '" + std::string(text) + "'");
    }
    if (pos < s.size() && s[pos] == 'z') {
      ++pos;
      exponent = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("missing exponent in '" + std::string(text) + "'");
        exponent = std::stol(s.substr(start, pos - start));
      }
    } else if (!have_coef) {
      throw ParseError("malformed term in '" + std::string(text) + "'");
    }
    poly[mod(exponent, order)] += negative ? Rational(-coef) : coef;
  }
  return CycNumber(order, reduce(order, std::move(poly)));
}

CycNumber gauss_sum_sqrt5(long m) {
  if (m % 5 != 0) throw ArithmeticError("sqrt(5) does not lie in Q(zeta_" + std::to_string(m) + ")");
  // (k|5) = +1 for k = 1, 4 and -1 for k = 2, 3
  std::vector<Rational> poly{0, 1, -1, -1, 1};
  return CycNumber::from_powers(5, std::move(poly)).embed(m);
}

std::vector<long> unit_residues(long m) {
  std::vector<long> out;
  if (m == 1) return {1};
  for (long a = 1; a < m; ++a) {
    if (gcd(a, m) == 1) out.push_back(a);
  }
  return out;
}

namespace {

bool fixes_all(std::span<const CycNumber> generators, long a) {
  return std::all_of(generators.begin(), generators.end(),
                     [a](const CycNumber& x) { return x.galois(a) == x; });
}

void check_orders(std::span<const CycNumber> generators, long m) {
  for (const auto& x : generators) {
    if (x.order() != m) {
      throw ArithmeticError("generator of order " + std::to_string(x.order()) +
                            " is not embedded in Q(zeta_" + std::to_string(m) + ")");
    }
  }
}

}  // namespace

bool contains_sqrt5(std::span<const CycNumber> generators, long m) {
  check_orders(generators, m);
  if (m % 5 != 0) return false;
  const CycNumber root5 = gauss_sum_sqrt5(m);
  for (long a : unit_residues(m)) {
    if (fixes_all(generators, a) && root5.galois(a) != root5) return false;
  }
  return true;
}

bool subfield_unramified_at(std::span<const CycNumber> generators, long m, long p) {
  if (!is_prime(p)) throw ArithmeticError(std::to_string(p) + " is not prime");
  check_orders(generators, m);
  long rest = m;
  while (rest % p == 0) rest /= p;
  if (rest == m) return true;
  for (long a : unit_residues(m)) {
    if (mod(a, rest) == mod(1, rest) && !fixes_all(generators, a)) return false;
  }
  return true;
}

}  // namespace wt1
