#include "doctest.h"
#include "support.hpp"

using namespace wt1;
using testing_support::level23_record;
using testing_support::load_fixture;

namespace {

void check_replay(const NewformRecord& r, const Certificate& c) {
  const std::string text = serialize(c);
  const Certificate back = parse_certificate(text);
  CHECK(serialize(back) == text);
  const auto report = verify(r, back);
  for (const auto& d : report.discrepancies) MESSAGE(d);
  CHECK(report.ok());
  CHECK(report.checks > 0);
}

}  // namespace

TEST_CASE("order classes") {
  CHECK(order_class_of(CycNumber(4)) == OrderClass::One);
  CHECK(order_class_of(CycNumber(0)) == OrderClass::Two);
  CHECK(order_class_of(CycNumber(1)) == OrderClass::Three);
  CHECK(order_class_of(CycNumber(2)) == OrderClass::Four);
  CHECK(order_class_of(CycNumber(3)) == OrderClass::DihedralOnly);
  const CycNumber t = CycNumber::zeta(5, 1) + CycNumber::zeta(5, 4);
  CHECK(t * t == (CycNumber(3) - gauss_sum_sqrt5(5)) * CycNumber(Rational(1, 2)));
  CHECK(order_class_of(t * t) == OrderClass::Five);
  const CycNumber plus = (CycNumber(3) + gauss_sum_sqrt5(20)) * CycNumber(Rational(1, 2));
  CHECK(order_class_of(plus) == OrderClass::Five);
  CHECK(order_class_of(CycNumber::zeta(3, 1)) == OrderClass::DihedralOnly);
}

TEST_CASE("projective invariant") {
  const NewformRecord r = level23_record(100);
  // 5 is inert in Q(sqrt -23)
  const auto inv = projective_invariant(r, 5);
  CHECK(inv.value.is_zero());
  CHECK(inv.order_class == OrderClass::Two);
  // 2 splits into non-principal primes: a_2 = -1, chi(2) = 1
  CHECK(projective_invariant(r, 2).value == CycNumber(1));
  CHECK_THROWS_AS(projective_invariant(r, 23), ArithmeticError);
  CHECK_THROWS_AS(projective_invariant(r, 101), PrecisionError);
  CHECK_THROWS_AS(projective_invariant(r, 9), ArithmeticError);
}

TEST_CASE("heuristic guesses") {
  CHECK(heuristic_guess(level23_record(300)) == Guess::ProbablyDihedral);
  CHECK(heuristic_guess(load_fixture("level148_s4.wt1")) == Guess::ProbablyS4);
  CHECK(heuristic_guess(load_fixture("level633_a5.wt1")) == Guess::ProbablyA5);
  CHECK(heuristic_guess(load_fixture("level124_a4.wt1")) == Guess::ProbablyA4);
}

TEST_CASE("non-dihedral witnesses") {
  const auto d23 = prove_not_dihedral(level23_record(200));
  CHECK_FALSE(d23.success);
  CHECK(d23.stuck == std::optional<long>(-23));
  const NewformRecord a4 = load_fixture("level124_a4.wt1");
  const auto w = prove_not_dihedral(a4);
  CHECK(w.success);
  CHECK(w.witnesses.size() == enumerate_fundamental_discriminants(124).size());
  for (const auto& x : w.witnesses) {
    CHECK(kronecker(x.D, x.p) == -1);
    CHECK(x.p < 100);
  }
}

TEST_CASE("dihedral proof for the level 23 theta series") {
  const auto s = prove_dihedral(level23_record(50));
  REQUIRE(s.match.has_value());
  CHECK(s.match->D == -23);
  CHECK(s.match->conductor.is_unit_ideal());
  CHECK(s.match->order == 3);
  CHECK(s.match->compared_through == 2);
  CHECK_FALSE(prove_dihedral(load_fixture("level124_a4.wt1")).match.has_value());
}

TEST_CASE("S4 and A5 searches on the fixtures") {
  const NewformRecord a4 = load_fixture("level124_a4.wt1");
  const NewformRecord s4 = load_fixture("level148_s4.wt1");
  const NewformRecord a5 = load_fixture("level633_a5.wt1");
  CHECK(prove_not_S4(a4).success);
  CHECK_FALSE(prove_not_S4(s4).success);
  CHECK_FALSE(find_order_witness(a4, 4).has_value());
  CHECK_FALSE(find_order_witness(a4, 5).has_value());
  const auto w4 = find_order_witness(s4, 4);
  REQUIRE(w4.has_value());
  CHECK(w4->value == CycNumber(2));
  const auto w5 = find_order_witness(a5, 5);
  REQUIRE(w5.has_value());
  CHECK(order_class_of(w5->value) == OrderClass::Five);

  const auto na5 = prove_not_A5(a4);
  REQUIRE(na5.evidence.has_value());
  CHECK(na5.evidence->kind == NotA5Evidence::Kind::NoSqrt5);
  // the order-10 character puts sqrt 5 into the field; the twist needs far more data
  CHECK_THROWS_AS(prove_not_A5(a5), PrecisionError);
}

TEST_CASE("not-A5 twist branch on a quintic twist of the level 23 form") {
  const NewformRecord base = level23_record(32000);
  const auto quintic = DirichletCharacter::from_generator_values(11, 5, {1});
  const NewformRecord r = twist(base, quintic);
  CHECK(r.level == 23 * 121);
  CHECK(r.character.order() == 10);
  const auto res = prove_not_A5(r);
  REQUIRE(res.evidence.has_value());
  CHECK(res.evidence->kind == NotA5Evidence::Kind::TwistUnramifiedAt5);
  CHECK(res.evidence->xi_modulus == 11);
  CHECK(res.evidence->twisted_level == 23 * 121 * 121);
  Certificate c;
  c.level = r.level;
  c.character_order = r.character.order();
  c.precision = r.precision();
  c.sturm = sturm_bound(r.level).bound;
  c.not_a5 = res.evidence;
  c.inconclusive_reasons.push_back("synthetic");
  check_replay(r, c);
}

TEST_CASE("classification of the fixtures and the level 23 form") {
  struct Case {
    NewformRecord r;
    Verdict expected;
  };
  std::vector<Case> cases{{level23_record(30), Verdict::Dihedral},
                          {load_fixture("level124_a4.wt1"), Verdict::A4},
                          {load_fixture("level148_s4.wt1"), Verdict::S4},
                          {load_fixture("level633_a5.wt1"), Verdict::A5}};
  for (const auto& [r, expected] : cases) {
    const Certificate c = classify(r);
    CHECK(c.verdict == expected);
    check_replay(r, c);
    CHECK(serialize(classify(r)) == serialize(c));
  }
}

TEST_CASE("refusals and inconclusive outcomes") {
  NewformRecord r = level23_record(30);
  r.coeffs[5] = CycNumber(2).embed(r.cyc_order);
  CHECK_THROWS_AS(classify(r), RefusalError);
  CHECK_THROWS_AS(classify(load_fixture("level124_a4.wt1").coeffs.size() ? [] {
                    auto x = load_fixture("level124_a4.wt1");
                    x.coeffs.resize(10);
                    return x;
                  }()
                                                                         : NewformRecord{}),
                  PrecisionError);

  const NewformRecord a4 = load_fixture("level124_a4.wt1");
  ClassifierConfig tight;
  tight.prime_budget = 2;
  const Certificate c = classify(a4, tight);
  CHECK(c.verdict == Verdict::Inconclusive);
  CHECK(std::find(c.inconclusive_reasons.begin(), c.inconclusive_reasons.end(),
                  "dihedral suspected, induction source outside implemented scope (possibly real quadratic)") !=
        c.inconclusive_reasons.end());
  check_replay(a4, c);
}

TEST_CASE("larger budgets never flip a verdict") {
  const NewformRecord a4 = load_fixture("level124_a4.wt1");
  bool resolved = false;
  for (long budget : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 37L, 53L, 97L, 200L, 1000L}) {
    ClassifierConfig cfg;
    cfg.prime_budget = budget;
    const Verdict v = classify(a4, cfg).verdict;
    if (resolved) CHECK(v == Verdict::A4);
    CHECK((v == Verdict::A4 || v == Verdict::Inconclusive));
    resolved = resolved || v == Verdict::A4;
  }
  CHECK(resolved);
}

TEST_CASE("verifier catches tampering") {
  const NewformRecord s4 = load_fixture("level148_s4.wt1");
  Certificate c = classify(s4);
  REQUIRE(c.verdict == Verdict::S4);
  Certificate bad = c;
  bad.order_witness->value = CycNumber(1);
  CHECK_FALSE(verify(s4, bad).ok());
  bad = c;
  bad.non_dihedral.pop_back();
  CHECK_FALSE(verify(s4, bad).ok());
  bad = c;
  bad.verdict = Verdict::A5;
  CHECK_FALSE(verify(s4, bad).ok());
  bad = c;
  bad.non_dihedral.front().p = 37;
  CHECK_FALSE(verify(s4, bad).ok());

  const NewformRecord r = level23_record(30);
  Certificate d = classify(r);
  REQUIRE(d.dihedral.has_value());
  // psi and its conjugate give the same theta series, so both replay
  Certificate conj = d;
  conj.dihedral->exponents[0] = (conj.dihedral->exponents[0] * 2) % 3;
  CHECK(verify(r, conj).ok());
  Certificate trivial = d;
  trivial.dihedral->exponents[0] = 0;
  CHECK_FALSE(verify(r, trivial).ok());
  Certificate shallow = d;
  shallow.dihedral->compared_through = 1;
  CHECK_FALSE(verify(r, shallow).ok());
  CHECK_THROWS_AS(parse_certificate("wt1-certificate\nverdict A4\n"), ParseError);
  CHECK_THROWS_AS(parse_certificate("wt1-certificate\nmystery 1\nend\n"), ParseError);
}

TEST_CASE("twisting leaves projective invariants unchanged") {
  const NewformRecord r = load_fixture("level148_s4.wt1");
  const auto xi = DirichletCharacter::from_generator_values(7, 6, {1});
  const NewformRecord t = twist(r, xi);
  for (long p : primes_up_to(r.precision())) {
    if ((r.level * 7) % p == 0) continue;
    CHECK(projective_invariant(t, p).value == projective_invariant(r, p).value);
  }
}
