#include "wt1/classifier.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace wt1 {

std::string to_string(OrderClass c) {
  return c == OrderClass::DihedralOnly ? "dihedral_only" : std::to_string(static_cast<int>(c));
}

std::string to_string(Guess g) {
  switch (g) {
    case Guess::ProbablyDihedral: return "probably_dihedral";
    case Guess::ProbablyA4: return "probably_A4";
    case Guess::ProbablyS4: return "probably_S4";
    case Guess::ProbablyA5: return "probably_A5";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Dihedral: return "DIHEDRAL";
    case Verdict::A4: return "A4";
    case Verdict::S4: return "S4";
    case Verdict::A5: return "A5";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

OrderClass order_class_of(const CycNumber& c) {
  if (c == CycNumber(4)) return OrderClass::One;
  if (c.is_zero()) return OrderClass::Two;
  if (c.is_one()) return OrderClass::Three;
  if (c == CycNumber(2)) return OrderClass::Four;
  if (c.is_rational()) return OrderClass::DihedralOnly;
  const long m = lcm(c.order(), 5);
  const CycNumber s = gauss_sum_sqrt5(m);
  const CycNumber half(Rational(1, 2));
  if (c == (CycNumber(3) + s) * half || c == (CycNumber(3) - s) * half) return OrderClass::Five;
  return OrderClass::DihedralOnly;
}

ProjectiveInvariant projective_invariant(const NewformRecord& r, long p) {
  if (!is_prime(p)) throw ArithmeticError(std::to_string(p) + " is not prime");
  if (r.level % p == 0) {
    throw ArithmeticError("projective invariant at the bad prime " + std::to_string(p) + " of level " +
                          std::to_string(r.level));
  }
  const CycNumber& ap = r.a(p);
  CycNumber value = ap * ap / r.character(p);
  const OrderClass cls = order_class_of(value);
  return {p, std::move(value), cls};
}

namespace {

long prime_cap(const NewformRecord& r, const ClassifierConfig& config) {
  long cap = r.precision();
  if (config.prime_budget) cap = std::min(cap, *config.prime_budget);
  return cap;
}

std::vector<long> good_primes(const NewformRecord& r, long cap) {
  std::vector<long> out;
  for (long p : primes_up_to(cap)) {
    if (r.level % p != 0) out.push_back(p);
  }
  return out;
}

template <class Accept>
WitnessSearch inert_search(const NewformRecord& r, const ClassifierConfig& config, Accept accept) {
  WitnessSearch out;
  const auto primes = good_primes(r, prime_cap(r, config));
  for (const auto& disc : enumerate_fundamental_discriminants(r.level)) {
    const long D = disc.value;
    bool found = false;
    for (long p : primes) {
      if (kronecker(D, p) != -1) continue;
      if (auto value = accept(p)) {
        out.witnesses.push_back({D, p, std::move(*value)});
        found = true;
        break;
      }
    }
    if (!found) {
      out.stuck = D;
      return out;
    }
  }
  out.success = true;
  return out;
}

}  // namespace

Guess heuristic_guess(const NewformRecord& r) {
  long total = 0, zeros = 0;
  bool four = false, five = false;
  for (long p : good_primes(r, r.precision())) {
    ++total;
    const auto inv = projective_invariant(r, p);
    if (inv.order_class == OrderClass::Two) ++zeros;
    if (inv.order_class == OrderClass::Four) four = true;
    if (inv.order_class == OrderClass::Five) five = true;
  }
  if (total > 0 && 10 * zeros >= 4 * total) return Guess::ProbablyDihedral;
  if (five) return Guess::ProbablyA5;
  if (four) return Guess::ProbablyS4;
  return Guess::ProbablyA4;
}

WitnessSearch prove_not_dihedral(const NewformRecord& r, const ClassifierConfig& config) {
  return inert_search(r, config, [&r](long p) -> std::optional<CycNumber> {
    if (r.a(p).is_zero()) return std::nullopt;
    return r.a(p);
  });
}

WitnessSearch prove_not_S4(const NewformRecord& r, const ClassifierConfig& config) {
  return inert_search(r, config, [&r](long p) -> std::optional<CycNumber> {
    auto inv = projective_invariant(r, p);
    if (inv.order_class == OrderClass::Two || inv.order_class == OrderClass::Four) return std::nullopt;
    return std::move(inv.value);
  });
}

DihedralSearch prove_dihedral(const NewformRecord& r) {
  DihedralSearch out;
  const long bound = sturm_bound(r.level).bound;
  require_precision(r, bound, "the theta series comparison (Sturm bound for level " + std::to_string(r.level) + ")");
  for (const auto& disc : enumerate_fundamental_discriminants(r.level)) {
    const long D = disc.value;
    if (D > 0 || r.level % D != 0) continue;
    out.discriminants_tried.push_back(D);
    const long norm = r.level / -D;
    for (const auto& f : ideals_of_norm(D, norm)) {
      for (const auto& psi : enumerate_hecke_characters(D, f)) {
        ++out.characters_tried;
        if (theta_series(psi, 0).character != r.character) continue;
        const ThetaSeries theta = theta_series(psi, bound);
        bool equal = true;
        for (long n = 1; n <= bound && equal; ++n) equal = theta.coeffs[n - 1] == r.a(n);
        if (equal) {
          out.match = DihedralData{D, f, psi.order, psi.exponents, bound};
          return out;
        }
      }
    }
  }
  return out;
}

NotA5Result prove_not_A5(const NewformRecord& r) {
  NotA5Result out;
  const CoefficientField cf = coefficient_field_generators(r);
  if (!contains_sqrt5(cf.generators, cf.order)) {
    NotA5Evidence ev;
    ev.field_order = cf.order;
    ev.generator_count = static_cast<long>(cf.generators.size());
    ev.bound = cf.bound;
    out.evidence = std::move(ev);
    return out;
  }
  const long order = r.character.order();
  if (order % 5 != 0) {
    out.failure = "coefficient field contains sqrt 5 and the character order " + std::to_string(order) +
                  " is prime to 5";
    return out;
  }
  long five_d = 1;
  for (int k = 0; k < valuation(order, 5); ++k) five_d *= 5;
  const DirichletCharacter xi = r.character.pow((five_d - 1) / 2).primitive();
  const long twisted_level = checked_mul(r.level, checked_mul(xi.modulus(), xi.modulus()));
  require_precision(r, sturm_bound(twisted_level).bound,
                    "the not-A5 twist (Sturm bound for level " + std::to_string(twisted_level) + ")");
  const NewformRecord twisted = twist(r, xi);
  const CoefficientField tf = coefficient_field_generators(twisted);
  if (!subfield_unramified_at(tf.generators, tf.order, 5)) {
    out.failure = "the coefficient field of the twist by a character mod " + std::to_string(xi.modulus()) +
                  " is ramified at 5";
    return out;
  }
  NotA5Evidence ev;
  ev.kind = NotA5Evidence::Kind::TwistUnramifiedAt5;
  ev.field_order = tf.order;
  ev.generator_count = static_cast<long>(tf.generators.size());
  ev.bound = tf.bound;
  ev.xi_modulus = xi.modulus();
  ev.xi_order = xi.order();
  ev.xi_exponents = xi.exponents();
  ev.twisted_level = twisted.level;
  out.evidence = std::move(ev);
  return out;
}

std::optional<OrderWitness> find_order_witness(const NewformRecord& r, int target, const ClassifierConfig& config) {
  for (long p : good_primes(r, prime_cap(r, config))) {
    auto inv = projective_invariant(r, p);
    if (static_cast<int>(inv.order_class) == target) return OrderWitness{p, std::move(inv.value), target};
  }
  return std::nullopt;
}

NewformRecord dihedral_record(const HeckeCharacter& psi, long M) {
  ThetaSeries theta = theta_series(psi, M);
  NewformRecord r;
  r.level = theta.level;
  r.character = std::move(theta.character);
  r.cyc_order = theta.cyc_order;
  r.coeffs = std::move(theta.coeffs);
  const QuadIdeal& f = psi.group->modulus();
  std::ostringstream src;
  src << "theta series D=" << psi.group->discriminant() << " conductor=" << f.content << ',' << f.a << ','
      << f.b << " order=" << psi.order << " exponents=";
  for (std::size_t i = 0; i < psi.exponents.size(); ++i) src << (i ? "," : "") << psi.exponents[i];
  if (psi.exponents.empty()) src << '-';
  r.source = src.str();
  return r;
}

Certificate classify(const NewformRecord& r, const ClassifierConfig& config) {
  Certificate c;
  c.prime_budget = config.prime_budget;
  c.level = r.level;
  c.character_order = r.character.order();
  c.precision = r.precision();
  c.sturm = sturm_bound(r.level).bound;
  require_precision(r, c.sturm, "classification (Sturm bound for level " + std::to_string(r.level) + ")");
  if (!r.character.is_odd()) throw RefusalError("the character is even");
  const HeckeReport report = validate_hecke(r);
  if (!report.ok()) {
    throw RefusalError("record violates " + std::to_string(report.violations.size()) +
                       " Hecke relation(s), first at n = " + std::to_string(report.violations.front().n) + ": " +
                       report.violations.front().relation);
  }

  const Guess guess = heuristic_guess(r);
  WitnessSearch nd = prove_not_dihedral(r, config);
  c.non_dihedral = nd.witnesses;
  if (nd.success) {
    const std::vector<int> targets = guess == Guess::ProbablyS4 ? std::vector<int>{4, 5} : std::vector<int>{5, 4};
    for (int t : targets) {
      if (auto w = find_order_witness(r, t, config)) {
        c.verdict = t == 5 ? Verdict::A5 : Verdict::S4;
        c.order_witness = std::move(w);
        return c;
      }
    }
    const WitnessSearch s4 = prove_not_S4(r, config);
    c.not_s4 = s4.witnesses;
    if (!s4.success) {
      c.inconclusive_reasons.push_back("no inert prime with c_p outside {0, 2} for D = " + std::to_string(*s4.stuck) +
                                       " within the prime budget");
    }
    try {
      NotA5Result a5 = prove_not_A5(r);
      if (a5.evidence) {
        c.not_a5 = std::move(a5.evidence);
      } else {
        c.inconclusive_reasons.push_back(a5.failure);
      }
    } catch (const PrecisionError& e) {
      c.inconclusive_reasons.push_back(e.what());
    }
    c.verdict = (s4.success && c.not_a5) ? Verdict::A4 : Verdict::Inconclusive;
    return c;
  }

  DihedralSearch ds = prove_dihedral(r);
  if (ds.match) {
    c.verdict = Verdict::Dihedral;
    c.dihedral = std::move(ds.match);
    return c;
  }
  c.verdict = Verdict::Inconclusive;
  c.inconclusive_reasons.push_back("no inert prime with a_p != 0 for D = " + std::to_string(*nd.stuck) +
                                   " within the prime budget");
  std::ostringstream searched;
  searched << "no theta series match among " << ds.characters_tried << " Hecke characters over D in {";
  for (std::size_t i = 0; i < ds.discriminants_tried.size(); ++i) {
    searched << (i ? ", " : "") << ds.discriminants_tried[i];
  }
  searched << "}";
  c.inconclusive_reasons.push_back(searched.str());
  c.inconclusive_reasons.push_back("dihedral suspected, induction source outside implemented scope (possibly real quadratic)");
  return c;
}

// ---------------------------------------------------------------------------
// certificate text

namespace {

std::string join(const std::vector<long>& v) {
  if (v.empty()) return "-";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

void write_inert(std::ostringstream& out, const char* key, const char* value_name, const InertWitness& w) {
  out << key << " D=" << w.D << " p=" << w.p << " field=" << w.value.order() << ' ' << value_name << '='
      << w.value.to_string() << '\n';
}

}  // namespace

std::string serialize(const Certificate& c) {
  std::ostringstream out;
  out << "wt1-certificate\n";
  out << "version " << c.version << '\n';
  out << "prime_budget " << (c.prime_budget ? std::to_string(*c.prime_budget) : std::string("all")) << '\n';
  out << "level " << c.level << '\n';
  out << "character_order " << c.character_order << '\n';
  out << "coefficients " << c.precision << '\n';
  out << "sturm_bound " << c.sturm << '\n';
  out << "verdict " << to_string(c.verdict) << '\n';
  for (const auto& w : c.non_dihedral) write_inert(out, "non_dihedral", "a_p", w);
  if (c.order_witness) {
    const auto& w = *c.order_witness;
    out << "order_witness p=" << w.p << " order=" << w.order << " field=" << w.value.order()
        << " c_p=" << w.value.to_string() << '\n';
  }
  for (const auto& w : c.not_s4) write_inert(out, "not_s4", "c_p", w);
  if (c.not_a5) {
    const auto& e = *c.not_a5;
    if (e.kind == NotA5Evidence::Kind::NoSqrt5) {
      out << "not_a5 no_sqrt5 field=" << e.field_order << " generators=" << e.generator_count << " bound=" << e.bound
          << '\n';
    } else {
      out << "not_a5 twist_unramified_at_5 field=" << e.field_order << " generators=" << e.generator_count
          << " bound=" << e.bound << " xi_modulus=" << e.xi_modulus << " xi_order=" << e.xi_order
          << " xi_exponents=" << join(e.xi_exponents) << " twisted_level=" << e.twisted_level << '\n';
    }
  }
  if (c.dihedral) {
    const auto& d = *c.dihedral;
    out << "dihedral D=" << d.D << " conductor=" << d.conductor.content << ',' << d.conductor.a << ','
        << d.conductor.b << " norm=" << d.conductor.norm() << " order=" << d.order
        << " exponents=" << join(d.exponents) << " compared_through=" << d.compared_through << '\n';
  }
  for (const auto& reason : c.inconclusive_reasons) out << "inconclusive " << reason << '\n';
  out << "end\n";
  return out.str();
}

namespace {

// name=value tokens; the token named `tail` takes the rest of the line
std::map<std::string, std::string> fields(const std::string& rest, long line, const char* tail = nullptr) {
  std::map<std::string, std::string> out;
  std::size_t i = 0;
  while (i < rest.size()) {
    while (i < rest.size() && rest[i] == ' ') ++i;
    if (i >= rest.size()) break;
    const std::size_t eq = rest.find('=', i);
    if (eq == std::string::npos) throw ParseError("certificate line " + std::to_string(line) + ": expected name=value");
    const std::string name = rest.substr(i, eq - i);
    std::size_t end = (tail && name == tail) ? rest.size() : rest.find(' ', eq);
    if (end == std::string::npos) end = rest.size();
    out[name] = rest.substr(eq + 1, end - eq - 1);
    i = end;
  }
  return out;
}

long field_long(const std::map<std::string, std::string>& f, const std::string& name, long line) {
  const auto it = f.find(name);
  if (it == f.end()) throw ParseError("certificate line " + std::to_string(line) + ": missing " + name);
  try {
    std::size_t used = 0;
    const long v = std::stol(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(name);
    return v;
  } catch (const std::exception&) {
    throw ParseError("certificate line " + std::to_string(line) + ": bad integer for " + name);
  }
}

std::vector<long> field_list(const std::map<std::string, std::string>& f, const std::string& name, long line) {
  const auto it = f.find(name);
  if (it == f.end()) throw ParseError("certificate line " + std::to_string(line) + ": missing " + name);
  std::vector<long> out;
  if (it->second == "-") return out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stol(item));
    } catch (const std::exception&) {
      throw ParseError("certificate line " + std::to_string(line) + ": bad list for " + name);
    }
  }
  return out;
}

CycNumber field_element(const std::map<std::string, std::string>& f, const std::string& name, long line) {
  const long order = field_long(f, "field", line);
  const auto it = f.find(name);
  if (it == f.end()) throw ParseError("certificate line " + std::to_string(line) + ": missing " + name);
  return CycNumber::parse(it->second, order);
}

Verdict verdict_from(const std::string& s, long line) {
  for (Verdict v : {Verdict::Dihedral, Verdict::A4, Verdict::S4, Verdict::A5, Verdict::Inconclusive}) {
    if (to_string(v) == s) return v;
  }
  throw ParseError("certificate line " + std::to_string(line) + ": unknown verdict '" + s + "'");
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  Certificate c;
  std::istringstream in{std::string(text)};
  std::string raw;
  long line = 0;
  bool header = false, ended = false;
  while (std::getline(in, raw)) {
    ++line;
    if (raw.empty()) continue;
    if (ended) throw ParseError("certificate line " + std::to_string(line) + ": content after 'end'");
    const std::size_t sp = raw.find(' ');
    const std::string key = raw.substr(0, sp);
    const std::string rest = sp == std::string::npos ? "" : raw.substr(sp + 1);
    auto as_long = [&]() { return field_long({{"value", rest}}, "value", line); };
    if (!header) {
      if (key != "wt1-certificate") throw ParseError("not a certificate: missing 'wt1-certificate' header");
      header = true;
    } else if (key == "version") {
      c.version = rest;
    } else if (key == "prime_budget") {
      if (rest == "all") {
        c.prime_budget.reset();
      } else {
        c.prime_budget = as_long();
      }
    } else if (key == "level") {
      c.level = as_long();
    } else if (key == "character_order") {
      c.character_order = as_long();
    } else if (key == "coefficients") {
      c.precision = as_long();
    } else if (key == "sturm_bound") {
      c.sturm = as_long();
    } else if (key == "verdict") {
      c.verdict = verdict_from(rest, line);
    } else if (key == "non_dihedral" || key == "not_s4") {
      const bool nd = key == "non_dihedral";
      const auto f = fields(rest, line, nd ? "a_p" : "c_p");
      InertWitness w{field_long(f, "D", line), field_long(f, "p", line), field_element(f, nd ? "a_p" : "c_p", line)};
      (nd ? c.non_dihedral : c.not_s4).push_back(std::move(w));
    } else if (key == "order_witness") {
      const auto f = fields(rest, line, "c_p");
      c.order_witness = OrderWitness{field_long(f, "p", line), field_element(f, "c_p", line),
                                     static_cast<int>(field_long(f, "order", line))};
    } else if (key == "not_a5") {
      const std::size_t sp2 = rest.find(' ');
      const std::string kind = rest.substr(0, sp2);
      const auto f = fields(sp2 == std::string::npos ? "" : rest.substr(sp2 + 1), line);
      NotA5Evidence e;
      e.field_order = field_long(f, "field", line);
      e.generator_count = field_long(f, "generators", line);
      e.bound = field_long(f, "bound", line);
      if (kind == "twist_unramified_at_5") {
        e.kind = NotA5Evidence::Kind::TwistUnramifiedAt5;
        e.xi_modulus = field_long(f, "xi_modulus", line);
        e.xi_order = field_long(f, "xi_order", line);
        e.xi_exponents = field_list(f, "xi_exponents", line);
        e.twisted_level = field_long(f, "twisted_level", line);
      } else if (kind != "no_sqrt5") {
        throw ParseError("certificate line " + std::to_string(line) + ": unknown not_a5 kind '" + kind + "'");
      }
      c.not_a5 = std::move(e);
    } else if (key == "dihedral") {
      const auto f = fields(rest, line);
      const auto cond = field_list(f, "conductor", line);
      if (cond.size() != 3) throw ParseError("certificate line " + std::to_string(line) + ": bad conductor");
      const long D = field_long(f, "D", line);
      c.dihedral = DihedralData{D, QuadIdeal{D, cond[0], cond[1], cond[2]}, field_long(f, "order", line),
                                field_list(f, "exponents", line), field_long(f, "compared_through", line)};
      if (c.dihedral->conductor.norm() != field_long(f, "norm", line)) {
        throw ParseError("certificate line " + std::to_string(line) + ": conductor norm mismatch");
      }
    } else if (key == "inconclusive") {
      c.inconclusive_reasons.push_back(rest);
    } else if (key == "end") {
      ended = true;
    } else {
      throw ParseError("certificate line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (!header) throw ParseError("not a certificate: empty input");
  if (!ended) throw ParseError("certificate is truncated (no 'end' line)");
  return c;
}

// ---------------------------------------------------------------------------
// verifier: recomputes each claim without calling the search routines

namespace {

struct Checker {
  VerificationReport report;
  void expect(bool ok, const std::string& what) {
    ++report.checks;
    if (!ok) report.discrepancies.push_back(what);
  }
};

int gmp_kronecker(long D, long p) { return mpz_kronecker_si(mpz_class(D).get_mpz_t(), p); }

long sturm_exact(long N) {
  mpq_class index(N);
  for (long p : prime_divisors(N)) index *= mpq_class(p + 1, p);
  index.canonicalize();
  mpz_class q = index.get_num() / index.get_den();
  if (q * index.get_den() != index.get_num()) throw ArithmeticError("index is not integral");
  const mpz_class bound = (q + 11) / 12;
  return bound.get_si();
}

// Fundamental discriminants supported on the primes of N, found by scanning
// divisors of 8 rad(N).
std::set<long> discriminants_by_scan(long N) {
  long rad = 8;
  for (long p : prime_divisors(N)) {
    if (p != 2) rad = checked_mul(rad, p);
  }
  std::set<long> out;
  for (long d : divisors(rad)) {
    for (long D : {d, -d}) {
      if (!is_fundamental_discriminant(D)) continue;
      bool ok = true;
      for (long p : prime_divisors(d)) ok = ok && N % p == 0;
      if (ok) out.insert(D);
    }
  }
  return out;
}

// c_p = a_p^2 chi(p^{-1})
CycNumber invariant_by_inverse(const NewformRecord& r, long p) {
  const CycNumber& ap = r.a(p);
  return ap * ap * r.character(inverse_mod(p, r.level == 1 ? 2 : r.level));
}

// order k <= 5 with c = 2 + zeta + zeta^{-1} for a primitive k-th root zeta, or 0
int order_by_roots(const CycNumber& c) {
  for (int k = 1; k <= 5; ++k) {
    for (long j = 0; j < k; ++j) {
      if (gcd(j, k) != 1 && k != 1) continue;
      const CycNumber candidate = CycNumber(2) + CycNumber::zeta(k, j) + CycNumber::zeta(k, k - j);
      if (candidate == c) return k;
    }
  }
  return 0;
}

std::vector<CycNumber> field_generators(const NewformRecord& r, long order, long bound) {
  std::vector<CycNumber> gens;
  for (long g : unit_group_generators(r.level)) gens.push_back(r.character(g).embed(order));
  for (long n = 1; n <= bound; ++n) gens.push_back(r.a(n).embed(order));
  return gens;
}

bool fixed_by(const std::vector<CycNumber>& gens, long a) {
  for (const auto& x : gens) {
    if (x.galois(a) != x) return false;
  }
  return true;
}

void check_inert(Checker& ck, const NewformRecord& r, const InertWitness& w, const std::string& tag) {
  const std::string where = tag + " (D=" + std::to_string(w.D) + ", p=" + std::to_string(w.p) + ")";
  ck.expect(is_fundamental_discriminant(w.D), where + ": D is not a fundamental discriminant");
  ck.expect(is_prime(w.p), where + ": p is not prime");
  ck.expect(r.level % w.p != 0, where + ": p divides the level");
  ck.expect(w.p <= r.precision(), where + ": p exceeds the record precision");
  ck.expect(gmp_kronecker(w.D, w.p) == -1, where + ": p is not inert");
}

void check_complete(Checker& ck, const NewformRecord& r, const std::vector<InertWitness>& list,
                    const std::string& tag) {
  std::set<long> got;
  for (const auto& w : list) got.insert(w.D);
  ck.expect(got == discriminants_by_scan(r.level), tag + ": witness list does not cover every discriminant");
}

}  // namespace

VerificationReport verify(const NewformRecord& r, const Certificate& c) {
  Checker ck;
  ck.expect(c.level == r.level, "certificate level differs from the record");
  ck.expect(c.character_order == r.character.order(), "certificate character order differs from the record");
  ck.expect(c.precision == r.precision(), "certificate coefficient count differs from the record");
  const long bound = sturm_exact(r.level);
  ck.expect(c.sturm == bound, "certificate Sturm bound is wrong");
  if (!ck.report.ok()) return ck.report;

  for (const auto& w : c.non_dihedral) {
    check_inert(ck, r, w, "non_dihedral");
    if (w.p <= r.precision()) {
      ck.expect(!w.value.is_zero() && r.a(w.p) == w.value, "non_dihedral p=" + std::to_string(w.p) + ": a_p mismatch or zero");
    }
  }
  for (const auto& w : c.not_s4) {
    check_inert(ck, r, w, "not_s4");
    if (w.p <= r.precision() && r.level % w.p != 0) {
      ck.expect(invariant_by_inverse(r, w.p) == w.value, "not_s4 p=" + std::to_string(w.p) + ": c_p mismatch");
      const int k = order_by_roots(w.value);
      ck.expect(k != 2 && k != 4, "not_s4 p=" + std::to_string(w.p) + ": c_p lies in {0, 2}");
    }
  }
  if (c.order_witness) {
    const auto& w = *c.order_witness;
    const std::string where = "order_witness p=" + std::to_string(w.p);
    ck.expect(is_prime(w.p) && r.level % w.p != 0 && w.p <= r.precision(), where + ": unusable prime");
    if (is_prime(w.p) && r.level % w.p != 0 && w.p <= r.precision()) {
      ck.expect(invariant_by_inverse(r, w.p) == w.value, where + ": c_p mismatch");
      ck.expect(order_by_roots(w.value) == w.order, where + ": c_p does not have the claimed order");
    }
  }
  if (c.not_a5) {
    const auto& e = *c.not_a5;
    if (e.kind == NotA5Evidence::Kind::NoSqrt5) {
      ck.expect(e.bound == bound && e.bound <= r.precision(), "not_a5: wrong coefficient bound");
      ck.expect(e.field_order == lcm(r.cyc_order, r.character.order()), "not_a5: wrong field");
      if (e.bound <= r.precision() && e.field_order == lcm(r.cyc_order, r.character.order())) {
        const auto gens = field_generators(r, e.field_order, e.bound);
        // sqrt 5 is moved by sigma_a exactly when (a|5) = -1
        bool moved = e.field_order % 5 != 0;
        for (long a : unit_residues(e.field_order)) {
          if (moved) break;
          if (gmp_kronecker(a, 5) == -1 && fixed_by(gens, a)) moved = true;
        }
        ck.expect(moved, "not_a5: the generated field contains sqrt 5");
      }
    } else {
      long five_d = 1;
      for (int k = 0; k < valuation(r.character.order(), 5); ++k) five_d *= 5;
      const DirichletCharacter expected = r.character.pow((five_d - 1) / 2).primitive();
      ck.expect(five_d > 1, "not_a5: the character order is prime to 5");
      ck.expect(expected.modulus() == e.xi_modulus && expected.order() == e.xi_order &&
                    expected.exponents() == e.xi_exponents,
                "not_a5: twisting character differs from chi^((5^d-1)/2)");
      if (five_d > 1 && expected.modulus() == e.xi_modulus) {
        const NewformRecord t = twist(r, expected);
        const long tb = sturm_exact(t.level);
        ck.expect(t.level == e.twisted_level, "not_a5: twisted level mismatch");
        ck.expect(e.bound == tb && tb <= t.precision(), "not_a5: insufficient coefficients for the twist");
        ck.expect(gcd(t.character.order(), 5) == 1, "not_a5: twisted character order divisible by 5");
        if (tb <= t.precision()) {
          const long order = lcm(t.cyc_order, t.character.order());
          const auto gens = field_generators(t, order, tb);
          long rest = order;
          while (rest % 5 == 0) rest /= 5;
          bool unramified = true;
          for (long a = 1; a < order && unramified; a += rest) {
            if (gcd(a, order) == 1) unramified = fixed_by(gens, a);
          }
          ck.expect(unramified, "not_a5: twisted coefficient field is ramified at 5");
        }
      }
    }
  }
  if (c.dihedral) {
    const auto& d = *c.dihedral;
    const std::string where = "dihedral (D=" + std::to_string(d.D) + ")";
    bool usable = d.D < 0 && is_fundamental_discriminant(d.D) && d.conductor.D == d.D;
    ck.expect(usable, where + ": not an imaginary quadratic discriminant");
    if (usable) {
      usable = d.conductor.a >= 1 && d.conductor.content >= 1 && d.conductor.b >= 0 && d.conductor.b < 2 * d.conductor.a &&
               mod(d.conductor.b * d.conductor.b - d.D, 4 * d.conductor.a) == 0;
      ck.expect(usable, where + ": conductor is not an ideal");
    }
    if (usable) {
      ck.expect(-d.D * d.conductor.norm() == r.level, where + ": |D| N(f) differs from the level");
      ck.expect(d.compared_through >= bound && d.compared_through <= r.precision(),
                where + ": comparison does not reach the Sturm bound");
      const auto group = std::make_shared<const RayClassGroup>(d.D, d.conductor);
      HeckeCharacter psi{group, d.exponents, d.order, std::nullopt};
      bool shape = d.exponents.size() == group->structure().size() && d.order >= 1;
      for (std::size_t i = 0; shape && i < d.exponents.size(); ++i) {
        shape = mulmod(mod(d.exponents[i], d.order), group->structure()[i], d.order) == 0;
      }
      ck.expect(shape, where + ": exponents do not define a character of the ray class group");
      if (shape && -d.D * d.conductor.norm() == r.level) {
        ck.expect(!psi.equals_its_conjugate(), where + ": psi equals its conjugate");
        const ImaginaryQuadraticField& K = group->field();
        for (long g : unit_group_generators(r.level)) {
          const auto k = psi.exponent_at(K.principal(g));
          const CycNumber eps = CycNumber(kronecker(d.D, g)) * (k ? CycNumber::zeta(d.order, *k) : CycNumber());
          ck.expect(eps == r.character(g), where + ": nebentypus differs at " + std::to_string(g));
        }
        const long upto = std::min(d.compared_through, r.precision());
        for (long n = 1; n <= upto; ++n) {
          // ideals of norm n are k J with k^2 | n and J primitive of norm n / k^2
          std::vector<Rational> counts(static_cast<std::size_t>(d.order), Rational(0));
          for (long k = 1; k * k <= n; ++k) {
            if (n % (k * k) != 0) continue;
            for (QuadIdeal J : K.primitive_ideals_of_norm(n / (k * k))) {
              J.content = k;
              if (const auto e = psi.exponent_at(J)) counts[*e] += 1;
            }
          }
          const CycNumber an = CycNumber::from_powers(d.order, std::move(counts));
          if (an != r.a(n)) {
            ck.expect(false, where + ": theta coefficient a_" + std::to_string(n) + " differs");
            break;
          }
        }
        ++ck.report.checks;
      }
    }
  }

  switch (c.verdict) {
    case Verdict::Dihedral:
      ck.expect(c.dihedral.has_value(), "DIHEDRAL verdict without dihedral data");
      break;
    case Verdict::A5:
    case Verdict::S4: {
      const int need = c.verdict == Verdict::A5 ? 5 : 4;
      ck.expect(c.order_witness && c.order_witness->order == need, to_string(c.verdict) + " verdict without an order-" +
                                                                      std::to_string(need) + " witness");
      check_complete(ck, r, c.non_dihedral, "non_dihedral");
      break;
    }
    case Verdict::A4:
      check_complete(ck, r, c.non_dihedral, "non_dihedral");
      check_complete(ck, r, c.not_s4, "not_s4");
      ck.expect(c.not_a5.has_value(), "A4 verdict without not-A5 evidence");
      break;
    case Verdict::Inconclusive:
      ck.expect(!c.inconclusive_reasons.empty(), "INCONCLUSIVE verdict without reasons");
      break;
  }
  return ck.report;
}

}  // namespace wt1
