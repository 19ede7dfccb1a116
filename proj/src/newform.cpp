#include "wt1/newform.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace wt1 {

RecordError::RecordError(Kind kind, long line, const std::string& message)
    : ParseError(line > 0 ? "line " + std::to_string(line) + ": " + message : message), kind_(kind), line_(line) {}

const CycNumber& NewformRecord::a(long n) const {
  if (n < 1 || n > precision()) {
    throw PrecisionError("coefficient a_" + std::to_string(n) + " requested but the record has " +
                         std::to_string(precision()) + " coefficients");
  }
  return coeffs[static_cast<std::size_t>(n - 1)];
}

void require_precision(const NewformRecord& record, long needed, const std::string& what) {
  if (record.precision() < needed) {
    throw PrecisionError("insufficient precision: " + what + " needs " + std::to_string(needed) +
                         " coefficients, the record has " + std::to_string(record.precision()));
  }
}

// ---------------------------------------------------------------------------
// text format

namespace {

using Kind = RecordError::Kind;

struct Line {
  long number;
  std::string key;
  std::string rest;
};

long parse_long(std::string_view s, long line, const char* what) {
  long v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw RecordError(Kind::Malformed, line, std::string("expected an integer ") + what + ", got '" +
                                                 std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool known_key(const std::string& k) {
  static const std::set<std::string> keys{"level", "cycorder", "chi", "gen", "source", "coeffs", "a"};
  return keys.count(k) > 0;
}

}  // namespace

NewformRecord parse_record(std::string_view text) {
  std::vector<Line> lines;
  long number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (raw.find_first_not_of(' ') == std::string_view::npos) continue;
    const std::size_t sp = raw.find(' ');
    Line l{number, std::string(raw.substr(0, sp)), ""};
    if (sp != std::string_view::npos) l.rest = std::string(raw.substr(sp + 1));
    if (!known_key(l.key)) throw RecordError(Kind::UnknownKey, number, "unknown key '" + l.key + "'");
    lines.push_back(std::move(l));
    if (end == text.size()) break;
  }

  std::size_t i = 0;
  auto expect = [&](const char* key) -> const Line& {
    if (i >= lines.size()) throw RecordError(Kind::Malformed, number, std::string("missing '") + key + "' line");
    if (lines[i].key != key) {
      throw RecordError(Kind::Malformed, lines[i].number,
                        std::string("expected '") + key + "', found '" + lines[i].key + "'");
    }
    return lines[i++];
  };

  NewformRecord r;
  {
    const Line& l = expect("level");
    r.level = parse_long(l.rest, l.number, "level");
    if (r.level < 1) throw RecordError(Kind::Malformed, l.number, "level must be positive");
  }
  {
    const Line& l = expect("cycorder");
    r.cyc_order = parse_long(l.rest, l.number, "cyclotomic order");
    if (r.cyc_order < 1) throw RecordError(Kind::Malformed, l.number, "cyclotomic order must be positive");
  }
  long chi_modulus = 0, chi_order = 0;
  long chi_line = 0;
  {
    const Line& l = expect("chi");
    const auto w = split_words(l.rest);
    if (w.size() != 2) throw RecordError(Kind::Malformed, l.number, "expected 'chi <N> <d>'");
    chi_modulus = parse_long(w[0], l.number, "modulus");
    chi_order = parse_long(w[1], l.number, "order");
    chi_line = l.number;
    if (chi_modulus != r.level) {
      throw RecordError(Kind::HeaderMismatch, l.number,
                        "character modulus " + std::to_string(chi_modulus) + " differs from level " +
                            std::to_string(r.level));
    }
    if (chi_order < 1) throw RecordError(Kind::Malformed, l.number, "character order must be positive");
  }
  const auto standard = unit_group_generators(r.level);
  std::vector<long> exps;
  while (i < lines.size() && lines[i].key == "gen") {
    const Line& l = lines[i++];
    const auto w = split_words(l.rest);
    if (w.size() != 2) throw RecordError(Kind::Malformed, l.number, "expected 'gen <g> <k>'");
    const long g = parse_long(w[0], l.number, "generator");
    const long k = parse_long(w[1], l.number, "exponent");
    const std::size_t idx = exps.size();
    if (idx >= standard.size() || mod(g, r.level) != standard[idx]) {
      throw RecordError(Kind::HeaderMismatch, l.number,
                        "generator " + std::to_string(g) + " is not the expected generator " +
                            (idx < standard.size() ? std::to_string(standard[idx]) : std::string("(none)")) +
                            " of (Z/" + std::to_string(r.level) + ")^*");
    }
    exps.push_back(k);
  }
  if (exps.size() != standard.size()) {
    throw RecordError(Kind::HeaderMismatch, chi_line,
                      "character needs " + std::to_string(standard.size()) + " generator values, got " +
                          std::to_string(exps.size()));
  }
  try {
    r.character = DirichletCharacter::from_generator_values(r.level, chi_order, exps);
  } catch (const ArithmeticError& e) {
    throw RecordError(Kind::HeaderMismatch, chi_line, e.what());
  }
  if (r.character.order() != chi_order) {
    throw RecordError(Kind::HeaderMismatch, chi_line,
                      "character has exact order " + std::to_string(r.character.order()) + ", header says " +
                          std::to_string(chi_order));
  }
  if (r.cyc_order % chi_order != 0) {
    throw RecordError(Kind::HeaderMismatch, chi_line,
                      "character values do not lie in Q(zeta_" + std::to_string(r.cyc_order) + ")");
  }
  if (!r.character.is_odd()) throw RecordError(Kind::EvenCharacter, chi_line, "character is even");
  r.source = expect("source").rest;
  long count = 0;
  long coeffs_line = 0;
  {
    const Line& l = expect("coeffs");
    count = parse_long(l.rest, l.number, "coefficient count");
    coeffs_line = l.number;
    if (count < 1) throw RecordError(Kind::CoefficientOrder, l.number, "coefficient count must be positive");
  }
  r.coeffs.reserve(static_cast<std::size_t>(std::min<long>(count, 1'000'000)));
  while (i < lines.size()) {
    const Line& l = lines[i++];
    if (l.key != "a") throw RecordError(Kind::Malformed, l.number, "unexpected '" + l.key + "' after coefficients");
    const std::size_t sp = l.rest.find(' ');
    if (sp == std::string::npos) throw RecordError(Kind::Malformed, l.number, "expected 'a <n> <element>'");
    const long n = parse_long(std::string_view(l.rest).substr(0, sp), l.number, "index");
    const long expected = r.precision() + 1;
    if (n != expected) {
      throw RecordError(Kind::CoefficientOrder, l.number,
                        "coefficient a_" + std::to_string(n) + " found where a_" + std::to_string(expected) +
                            " was expected");
    }
    if (n > count) {
      throw RecordError(Kind::CoefficientOrder, l.number,
                        "more coefficients than the declared " + std::to_string(count));
    }
    try {
      r.coeffs.push_back(CycNumber::parse(std::string_view(l.rest).substr(sp + 1), r.cyc_order));
    } catch (const ParseError& e) {
      throw RecordError(Kind::Malformed, l.number, e.what());
    }
    if (n == 1 && !r.coeffs.front().is_one()) {
      throw RecordError(Kind::NotNormalized, l.number, "a_1 must be 1, got " + r.coeffs.front().to_string());
    }
  }
  if (r.precision() != count) {
    throw RecordError(Kind::CoefficientOrder, coeffs_line,
                      "declared " + std::to_string(count) + " coefficients, found " +
                          std::to_string(r.precision()));
  }
  return r;
}

std::string serialize(const NewformRecord& r) {
  std::ostringstream out;
  out << "level " << r.level << '\n';
  out << "cycorder " << r.cyc_order << '\n';
  out << "chi " << r.character.modulus() << ' ' << r.character.order() << '\n';
  const auto& gens = r.character.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) out << "gen " << gens[i] << ' ' << r.character.exponents()[i] << '\n';
  out << "source";
  if (!r.source.empty()) out << ' ' << r.source;
  out << '\n';
  out << "coeffs " << r.coeffs.size() << '\n';
  for (std::size_t n = 0; n < r.coeffs.size(); ++n) {
    out << "a " << n + 1 << ' ' << r.coeffs[n].embed(r.cyc_order).to_string() << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------

SturmBound sturm_bound(long N) {
  if (N < 1) throw ArithmeticError("sturm_bound: level must be positive");
  long index = 1;
  for (const auto& [p, e] : factor(N)) {
    index = checked_mul(index, p + 1);
    for (int k = 1; k < e; ++k) index = checked_mul(index, p);
  }
  return {N, index, (index + 11) / 12};
}

HeckeReport validate_hecke(const NewformRecord& r) {
  HeckeReport report;
  const long M = r.precision();
  const long root_order = lcm(2, r.cyc_order);
  auto chi = [&](long p) { return r.character(p); };
  for (long n = 2; n <= M; ++n) {
    const auto f = factor(n);
    const long p = f.front().prime;
    const int e = f.front().exponent;
    long q = 1;
    for (int k = 0; k < e; ++k) q *= p;
    if (f.size() > 1) {
      if (r.a(n) != r.a(q) * r.a(n / q)) {
        report.violations.push_back(
            {n, "a_" + std::to_string(n) + " = a_" + std::to_string(q) + " a_" + std::to_string(n / q)});
      }
      continue;
    }
    if (e == 1) {
      if (r.level % p == 0) {
        const CycNumber& ap = r.a(p);
        if (!ap.is_zero() && !ap.pow(root_order).is_one()) {
          report.warnings.push_back({p, "a_" + std::to_string(p) + " at a bad prime is neither 0 nor a root of unity"});
        }
      }
      continue;
    }
    const long prev = q / p;
    const std::string tag = "a_" + std::to_string(q);
    if (r.level % p == 0) {
      if (r.a(q) != r.a(p) * r.a(prev)) {
        report.violations.push_back({n, tag + " = a_" + std::to_string(p) + " a_" + std::to_string(prev)});
      }
    } else {
      const CycNumber expected = r.a(p) * r.a(prev) - chi(p) * r.a(prev / p);
      if (r.a(q) != expected) {
        report.violations.push_back({n, tag + " = a_" + std::to_string(p) + " a_" + std::to_string(prev) +
                                            " - chi(" + std::to_string(p) + ") a_" + std::to_string(prev / p)});
      }
    }
  }
  return report;
}

NewformRecord twist(const NewformRecord& r, const DirichletCharacter& xi) {
  const DirichletCharacter prim = xi.primitive();
  if (prim.is_principal()) return r;
  const long f = prim.modulus();
  NewformRecord out;
  out.level = checked_mul(r.level, checked_mul(f, f));
  out.character = (r.character * prim * prim).lift(out.level);
  out.cyc_order = lcm(lcm(r.cyc_order, prim.order()), out.character.order());
  out.coeffs.reserve(r.coeffs.size());
  for (long n = 1; n <= r.precision(); ++n) {
    out.coeffs.push_back((r.a(n) * prim(n)).embed(out.cyc_order));
  }
  std::ostringstream src;
  src << "twist by character mod " << f << " of order " << prim.order() << " [";
  for (std::size_t i = 0; i < prim.exponents().size(); ++i) src << (i ? " " : "") << prim.exponents()[i];
  src << "] of: " << r.source;
  out.source = src.str();
  return out;
}

CoefficientField coefficient_field_generators(const NewformRecord& r) {
  CoefficientField out;
  out.bound = sturm_bound(r.level).bound;
  require_precision(r, out.bound, "the coefficient field (Sturm bound for level " + std::to_string(r.level) + ")");
  out.order = lcm(r.cyc_order, r.character.order());
  std::set<std::string> seen;
  auto add = [&](const CycNumber& x) {
    CycNumber y = x.embed(out.order);
    if (seen.insert(y.to_string()).second) out.generators.push_back(std::move(y));
  };
  for (long g : r.character.generators()) add(r.character(g));
  for (long n = 1; n <= out.bound; ++n) add(r.a(n));
  return out;
}

}  // namespace wt1
