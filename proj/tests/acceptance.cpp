// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <gmpxx.h>

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "support.hpp"
#include "wt1/arith.hpp"
#include "wt1/cli.hpp"

using namespace wt1;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kDihedralSeconds = 10.0;
constexpr double kFixtureSeconds = 60.0;
constexpr long kHeckeTerms = 1000;
constexpr long kHeckeLevel = 400;
constexpr int kHeckeSamples = 50;
constexpr int kRaySamples = 100;
constexpr long kRayNorm = 30;
constexpr long kSturmLimit = 10000;
constexpr std::uint32_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

// Every (record, certificate) pair produced below, replayed at the end.
std::vector<std::pair<NewformRecord, Certificate>> emitted;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CliResult {
  int code;
  std::string out;
};

CliResult cli_run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str()};
}

bool equals_integer(const CycNumber& x, long v) { return x.is_rational() && x.rational_value() == Rational(v); }

bool same_value(const CycNumber& a, const CycNumber& b) {
  const long L = std::lcm(a.order(), b.order());
  return a.embed(L) == b.embed(L);
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(3);
  os << s << "s";
  return os.str();
}

Outcome dihedral_end_to_end() {
  Outcome o;
  const auto t0 = Clock::now();
  const CliResult gen = cli_run({"gen-dihedral", "-23", "1", "--char", "1", "--terms", "20"});
  if (gen.code != 0) {
    o.fail("gen-dihedral exit " + std::to_string(gen.code));
    return o;
  }
  const CliResult cls = cli_run({"classify", "-"}, gen.out);
  const double elapsed = seconds_since(t0);
  const NewformRecord r = parse_record(gen.out);
  const Certificate c = parse_certificate(cls.out);
  emitted.emplace_back(r, c);
  if (cls.code != cli::kDefinitive || c.verdict != Verdict::Dihedral) o.fail("verdict " + to_string(c.verdict));
  else if (c.dihedral->D != -23 || !c.dihedral->conductor.is_unit_ideal() || c.dihedral->order != 3)
    o.fail("unexpected induction data");
  const std::vector<long> eta = testing_support::eta_product_23(20);
  for (long n = 1; n <= 20 && o.pass; ++n) {
    if (!equals_integer(r.a(n), eta[n])) o.fail("a_" + std::to_string(n) + " differs from eta product");
  }
  if (elapsed >= kDihedralSeconds) o.fail("took " + fmt_seconds(elapsed));
  if (o.pass) o.detail = "D=-23 f=(1) order 3, 20 terms match, " + fmt_seconds(elapsed);
  return o;
}

Outcome exotic_fixtures() {
  Outcome o;
  struct Expect {
    const char* file;
    Verdict verdict;
    long level;
    long chi_order;
  };
  const Expect cases[] = {{"level124_a4.wt1", Verdict::A4, 124, 6},
                          {"level148_s4.wt1", Verdict::S4, 148, 4},
                          {"level633_a5.wt1", Verdict::A5, 633, 10}};
  std::string detail;
  for (const Expect& e : cases) {
    const auto t0 = Clock::now();
    const CliResult res = cli_run({"classify", testing_support::fixture(e.file)});
    const double elapsed = seconds_since(t0);
    const Certificate c = parse_certificate(res.out);
    emitted.emplace_back(testing_support::load_fixture(e.file), c);
    if (c.verdict != e.verdict) o.fail(std::string(e.file) + ": " + to_string(c.verdict));
    if (c.level != e.level || c.character_order != e.chi_order) o.fail(std::string(e.file) + ": header mismatch");
    if (elapsed >= kFixtureSeconds) o.fail(std::string(e.file) + ": took " + fmt_seconds(elapsed));
    detail += std::to_string(c.level) + "/" + std::to_string(c.character_order) + " " + to_string(c.verdict) +
              " " + fmt_seconds(elapsed) + "; ";
  }
  if (o.pass) o.detail = detail;
  return o;
}

struct Triple {
  long D;
  QuadIdeal modulus;
  std::size_t index;
};

std::vector<Triple> sample_triples() {
  std::vector<Triple> all;
  for (long D = -3; -D <= kHeckeLevel; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    for (long n = 1; -D * n <= kHeckeLevel; ++n) {
      for (const QuadIdeal& f : ideals_of_norm(D, n)) {
        const auto chars = enumerate_hecke_characters(D, f);
        for (std::size_t i = 0; i < chars.size(); ++i) all.push_back({D, f, i});
      }
    }
  }
  std::mt19937 rng(kSeed);
  std::vector<Triple> picked;
  while (static_cast<int>(picked.size()) < kHeckeSamples && !all.empty()) {
    const std::size_t k = rng() % all.size();
    picked.push_back(all[k]);
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return picked;
}

Outcome hecke_property_suite() {
  Outcome o;
  const std::vector<Triple> triples = sample_triples();
  if (static_cast<int>(triples.size()) < kHeckeSamples) o.fail("only " + std::to_string(triples.size()) + " triples");
  long inert_checks = 0;
  long max_level = 0;
  long ramified = 0;
  for (const Triple& t : triples) {
    if (!t.modulus.is_unit_ideal()) ++ramified;
    const HeckeCharacter psi = enumerate_hecke_characters(t.D, t.modulus).at(t.index);
    const NewformRecord r = dihedral_record(psi, kHeckeTerms);
    const std::string tag = "D=" + std::to_string(t.D) + " f=" + t.modulus.to_string();
    max_level = std::max(max_level, r.level);
    if (r.level > kHeckeLevel) o.fail(tag + ": level " + std::to_string(r.level));
    const HeckeReport report = validate_hecke(r);
    if (!report.ok()) o.fail(tag + ": Hecke violation at n=" + std::to_string(report.violations.front().n));
    for (long p : primes_up_to(kHeckeTerms)) {
      if (r.level % p == 0 || kronecker(t.D, p) != -1) continue;
      ++inert_checks;
      if (!r.a(p).is_zero()) o.fail(tag + ": a_" + std::to_string(p) + " nonzero at inert prime");
    }
    // exclusivity: a theta series must come back dihedral
    const Certificate c = classify(r);
    emitted.emplace_back(r, c);
    if (c.verdict != Verdict::Dihedral) o.fail(tag + ": classified " + to_string(c.verdict));
  }
  if (o.pass)
    o.detail = std::to_string(triples.size()) + " series to " + std::to_string(kHeckeTerms) + " terms, max level " +
               std::to_string(max_level) + ", " + std::to_string(ramified) + " with f != (1), " + std::to_string(inert_checks) + " inert zeros, all DIHEDRAL";
  return o;
}

Outcome order_class_oracle() {
  Outcome o;
  struct Root {
    long m;
    long i;
  };
  std::vector<Root> roots;
  for (long m = 1; m <= 12; ++m)
    for (long i = 0; i < m; ++i)
      if (std::gcd(i, m) == 1) roots.push_back({m, i});
  long pairs = 0;
  for (const Root& x : roots) {
    for (const Root& y : roots) {
      const long L = std::lcm(x.m, y.m);
      // alpha / beta = zeta_L^k, whose exact order is the projective order
      const long k = ((x.i * (L / x.m) - y.i * (L / y.m)) % L + L) % L;
      const long ratio_order = L / std::gcd(k, L);
      const OrderClass expected = ratio_order <= 5 ? static_cast<OrderClass>(ratio_order) : OrderClass::DihedralOnly;
      const CycNumber alpha = CycNumber::zeta(L, x.i * (L / x.m));
      const CycNumber beta = CycNumber::zeta(L, y.i * (L / y.m));
      const CycNumber trace = alpha + beta;
      const CycNumber c = trace * trace * (alpha * beta).inverse();
      ++pairs;
      if (order_class_of(c) != expected)
        o.fail("zeta_" + std::to_string(x.m) + "^" + std::to_string(x.i) + ", zeta_" + std::to_string(y.m) + "^" +
               std::to_string(y.i));
    }
  }
  if (o.pass) o.detail = std::to_string(pairs) + " eigenvalue pairs agree";
  return o;
}

// Reduced forms of discriminant D counted straight from the definition.
long brute_class_number(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      const long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const long c = num / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

Outcome class_number_oracle() {
  Outcome o;
  long discs = 0;
  std::map<long, long> h;
  for (long D = -3; D >= -500; --D) {
    if (!is_fundamental_discriminant(D)) continue;
    ++discs;
    h[D] = brute_class_number(D);
    const long got = class_group(D).order();
    if (got != h[D]) o.fail("h(" + std::to_string(D) + ") = " + std::to_string(got) + ", expected " + std::to_string(h[D]));
  }
  std::vector<std::pair<long, QuadIdeal>> pairs;
  for (const auto& [D, hD] : h)
    for (long n = 2; n <= kRayNorm; ++n)
      for (const QuadIdeal& f : ideals_of_norm(D, n)) pairs.emplace_back(D, f);
  std::mt19937 rng(kSeed + 1);
  long checked = 0;
  for (int s = 0; s < kRaySamples && !pairs.empty(); ++s) {
    const std::size_t k = rng() % pairs.size();
    const auto [D, f] = pairs[k];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(k));
    const ImaginaryQuadraticField K(D);
    // |(O/f)^x| = N(f) prod_{P | f} (1 - 1/N(P))
    mpq_class phi = f.norm();
    for (long p : prime_divisors(f.norm()))
      for (const QuadIdeal& P : K.primes_above(p))
        if (K.sum(f, P) == P) phi *= mpq_class(P.norm() - 1, P.norm());
    // units congruent to 1 mod f
    long fixed = 0;
    QuadElement u{1, 0};
    for (long e = 0; e < K.unit_count(); ++e) {
      if (K.contains(f, QuadElement{u.x - 1, u.y})) ++fixed;
      u = K.multiply(u, K.unit_generator());
    }
    const mpq_class expected = mpq_class(h[D]) * phi * fixed / K.unit_count();
    const long got = ray_class_group(D, f).order();
    ++checked;
    if (expected != got)
      o.fail("ray class group D=" + std::to_string(D) + " f=" + f.to_string() + ": " + std::to_string(got) +
             " vs " + expected.get_str());
  }
  if (checked < kRaySamples) o.fail("only " + std::to_string(checked) + " ray pairs");
  if (o.pass) o.detail = std::to_string(discs) + " class numbers, " + std::to_string(checked) + " ray class groups";
  return o;
}

Outcome sturm_values() {
  Outcome o;
  for (long N = 1; N <= kSturmLimit; ++N) {
    mpq_class index = N;
    long m = N;
    for (long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      index *= mpq_class(p + 1, p);
      while (m % p == 0) m /= p;
    }
    if (m > 1) index *= mpq_class(m + 1, m);
    index.canonicalize();
    mpz_class bound;
    mpz_cdiv_q(bound.get_mpz_t(), index.get_num_mpz_t(), mpz_class(12).get_mpz_t());
    const SturmBound s = sturm_bound(N);
    if (index.get_den() != 1 || s.index != index.get_num() || s.bound != bound)
      o.fail("N=" + std::to_string(N));
  }
  const SturmBound s23 = sturm_bound(23), s124 = sturm_bound(124);
  if (s23.index != 24 || s23.bound != 2) o.fail("spot value 23");
  if (s124.index != 192 || s124.bound != 16) o.fail("spot value 124");
  if (o.pass) o.detail = "N <= " + std::to_string(kSturmLimit) + ", 23 -> 24/2, 124 -> 192/16";
  return o;
}

Outcome twist_invariance() {
  Outcome o;
  const std::vector<DirichletCharacter> xis = {
      DirichletCharacter::kronecker_character(-4, 4), DirichletCharacter::kronecker_character(5, 5),
      DirichletCharacter::from_generator_values(7, 3, {1}), DirichletCharacter::from_generator_values(13, 4, {1}),
      DirichletCharacter::from_generator_values(9, 6, {1})};
  long comparisons = 0;
  for (const char* file : {"level124_a4.wt1", "level148_s4.wt1", "level633_a5.wt1"}) {
    const NewformRecord r = testing_support::load_fixture(file);
    for (const DirichletCharacter& xi : xis) {
      const NewformRecord t = twist(r, xi);
      for (long p : primes_up_to(t.precision())) {
        if (t.level % p == 0) continue;
        ++comparisons;
        if (!same_value(projective_invariant(r, p).value, projective_invariant(t, p).value))
          o.fail(std::string(file) + ": c_" + std::to_string(p) + " changes under twist mod " +
                 std::to_string(xi.modulus()));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(comparisons) + " exact comparisons over 3 fixtures and 5 characters";
  return o;
}

std::map<std::string, std::string> read_certs(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".cert") out[e.path().filename().string()] = testing_support::read_file(e.path().string());
  return out;
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / "wt1_acceptance_batch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (const auto& e : fs::directory_iterator(WT1_FIXTURE_DIR))
    if (e.path().extension() == ".wt1") fs::copy_file(e.path(), dir / e.path().filename());
  const int first = cli_run({"batch", dir.string(), "--jobs", "1"}).code;
  const auto certs1 = read_certs(dir);
  const int second = cli_run({"batch", dir.string(), "--jobs", "4"}).code;
  const auto certs2 = read_certs(dir);
  if (first != 0 || second != 0) o.fail("batch exit codes " + std::to_string(first) + ", " + std::to_string(second));
  if (certs1.size() != 3) o.fail(std::to_string(certs1.size()) + " certificates written");
  if (certs1 != certs2) o.fail("certificates differ between runs");
  fs::remove_all(dir);
  if (o.pass) o.detail = std::to_string(certs1.size()) + " certificates byte-identical across runs";
  return o;
}

Outcome certificate_replay() {
  Outcome o;
  long checks = 0;
  for (const auto& [r, c] : emitted) {
    // replay goes through the text form, as an external checker would
    const VerificationReport v = verify(r, parse_certificate(serialize(c)));
    checks += v.checks;
    if (!v.ok()) o.fail("level " + std::to_string(r.level) + ": " + v.discrepancies.front());
  }
  if (emitted.empty()) o.fail("no certificates emitted");
  if (o.pass)
    o.detail = std::to_string(emitted.size()) + " certificates, " + std::to_string(checks) + " checks, 0 discrepancies";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  // replay runs last so it sees every certificate emitted above it
  const std::vector<Criterion> criteria = {
      {"dihedral-end-to-end", dihedral_end_to_end}, {"exotic-fixtures", exotic_fixtures},
      {"hecke-property-suite", hecke_property_suite}, {"order-class-oracle", order_class_oracle},
      {"class-number-oracle", class_number_oracle}, {"sturm-values", sturm_values},
      {"twist-invariance", twist_invariance}, {"determinism", determinism},
      {"certificate-replay", certificate_replay}};
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << " [" << fmt_seconds(seconds_since(t0))
              << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
