#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toeplitz/core.hpp"

#include <algorithm>
#include <set>

using namespace toeplitz;

namespace {

AlphabetPtr ab() { return make_alphabet({"a", "b"}); }

Substitution theta_ab_aa() {
  auto a = ab();
  return Substitution(a, a, {parse_word(a, "ab"), parse_word(a, "aa")});
}

Substitution chi() {
  auto a = ab();
  return Substitution(a, a, {parse_word(a, "aab"), parse_word(a, "abb")});
}

}  // namespace

TEST_CASE("alphabet rejects bad input") {
  CHECK_THROWS_AS(Alphabet({}), Error);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), Error);
  auto a = ab();
  CHECK(a->size() == 2);
  CHECK(a->index("b") == 1);
  CHECK_THROWS_AS(a->index("c"), Error);
}

TEST_CASE("word parsing and rendering") {
  auto a = ab();
  Word w = parse_word(a, "abba");
  CHECK(w.size() == 4);
  CHECK(w.render() == "abba");
  CHECK(w.subword(1, 2).render() == "bb");
  CHECK_THROWS_AS(w.subword(3, 2), Error);

  auto pairs = make_alphabet({"(a,1)", "(a,2)"});
  Word pw = make_word(pairs, {"(a,2)", "(a,1)"});
  CHECK(pw.render() == "(a,2).(a,1)");
}

TEST_CASE("compose chains substitutions") {
  auto a01 = make_alphabet({"0", "1"});
  auto aab = ab();
  auto acd = make_alphabet({"c", "d"});
  Substitution t1(aab, a01, {parse_word(a01, "011"), parse_word(a01, "100")});
  Substitution t2(acd, aab, {parse_word(aab, "ab"), parse_word(aab, "aa")});
  Substitution t3(acd, acd, {parse_word(acd, "ccd"), parse_word(acd, "ccd")});
  Substitution t123 = compose(compose(t1, t2), t3);
  CHECK(t123.image("c").render() == "011100011100011011");

  Substitution theta = theta_ab_aa();
  CHECK(compose(identity_substitution(aab), theta).image("a") == theta.image("a"));
  CHECK(compose(theta, theta).image("a").render() == "abaa");
  CHECK_THROWS_AS(compose(t2, t1), Error);
}

TEST_CASE("power iterates a substitution") {
  Substitution theta = theta_ab_aa();
  CHECK(power(theta, 3).image("a").render() == "abaaabab");
  CHECK(power(theta, 1).image("b").render() == theta.image("b").render());
  CHECK(power(chi(), 2).image("a").render() == "aabaababb");
  auto a01 = make_alphabet({"0", "1"});
  Substitution nonendo(ab(), a01, {parse_word(a01, "0"), parse_word(a01, "1")});
  CHECK_THROWS_AS(power(nonendo, 2), Error);
}

TEST_CASE("classify reports structure flags") {
  SubstitutionProfile p = classify(theta_ab_aa());
  CHECK(p.constant_length == 2);
  CHECK(p.left_proper);
  CHECK_FALSE(p.proper);
  CHECK(p.primitive_witness == 2);

  SubstitutionProfile q = classify(chi());
  CHECK(q.constant_length == 3);
  CHECK(q.left_proper);
  CHECK(q.proper);
  CHECK(q.primitive_witness == 1);

  auto one = make_alphabet({"a"});
  SubstitutionProfile r = classify(Substitution(one, one, {parse_word(one, "a")}));
  CHECK(r.constant_length == 1);
  CHECK(r.left_proper);
  CHECK(r.primitive_witness == 1);

  // Non-primitive: b never reaches a.
  auto aab = ab();
  SubstitutionProfile s =
      classify(Substitution(aab, aab, {parse_word(aab, "ab"), parse_word(aab, "bb")}));
  CHECK_FALSE(s.primitive_witness.has_value());
  CHECK(s.witness_bound == default_primitivity_bound(2));
}

TEST_CASE("fixed point prefix") {
  Substitution theta = theta_ab_aa();
  CHECK(fixed_point_prefix(theta, 0, 8).render() == "abaaabab");
  CHECK(fixed_point_prefix(theta, 0, 1).render() == "a");
  CHECK(fixed_point_prefix(chi(), 0, 9).render() == "aabaababb");
  CHECK_THROWS_AS(fixed_point_prefix(theta, 1, 4), Error);
}

TEST_CASE("language of a substitution") {
  Substitution theta = theta_ab_aa();
  LanguageResult two = language_of_length(theta, 2);
  std::set<std::string> got;
  for (const auto& w : two.words) got.insert(w.render());
  CHECK(got == std::set<std::string>{"aa", "ab", "ba"});
  CHECK(two.stabilized);

  LanguageResult one = language_of_length(theta, 1);
  CHECK(one.words.size() == 2);

  CHECK(language_of_length(chi(), 5).words.size() == 10);
}

TEST_CASE("s-adic system basics") {
  auto a01 = make_alphabet({"0", "1"});
  auto aab = ab();
  auto acd = make_alphabet({"c", "d"});
  Substitution t1(aab, a01, {parse_word(a01, "011"), parse_word(a01, "100")});
  Substitution t2(acd, aab, {parse_word(aab, "ab"), parse_word(aab, "aa")});
  Substitution t3(acd, acd, {parse_word(acd, "ccd"), parse_word(acd, "ccd")});
  SAdicSystem sys({t1, t2, t3}, SAdicSystem::Tail{3, 1});

  CHECK(sys.period_at(1) == 3);
  CHECK(sys.period_at(2) == 6);
  CHECK(sys.period_at(3) == 18);
  CHECK(&sys.at(5) == &sys.at(3));
  CHECK(sys.composite(3).image("c").render() == "011100011100011011");
  CHECK(sys.level_sequence(0, 18).render() == "011100011100011011");

  SAdicSystem cst = SAdicSystem::constant(theta_ab_aa());
  CHECK(cst.period_at(4) == 16);
  CHECK(cst.level_sequence(0, 8).render() == "abaaabab");
  CHECK(cst.level_sequence(2, 2).render() == "ab");

  LanguageResult lw = language_of_length(cst, 2);
  CHECK(lw.words.size() == 3);
}

TEST_CASE("checked arithmetic traps overflow") {
  CHECK(checked_mul(1 << 20, 1 << 20) == (int64_t(1) << 40));
  CHECK_THROWS_AS(checked_mul(int64_t(1) << 40, int64_t(1) << 40), Error);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Error);
}
