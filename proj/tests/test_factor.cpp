#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toeplitz/core.hpp"
#include "toeplitz/factor.hpp"
#include "toeplitz/recode.hpp"

using namespace toeplitz;

namespace {

Substitution chi() {
  auto a = make_alphabet({"a", "b"});
  return Substitution(a, a, {parse_word(a, "aab"), parse_word(a, "abb")});
}

bool has_map(const std::vector<FactorCandidate>& cands, const std::vector<int>& f, int64_t shift) {
  for (const auto& c : cands)
    if (c.letter_map == f && c.shift == shift && c.status == CandidateStatus::VerifiedOnLanguage)
      return true;
  return false;
}

}  // namespace

TEST_CASE("coincidence columns of squared substitutions") {
  CoincidenceProfile chi2 = coincidence_positions(power(chi(), 2));
  CHECK(chi2.length == 9);
  CHECK(chi2.fiber_positions() == std::vector<int64_t>{4});

  Substitution tau = constant_speedup_recode(chi(), 2).sub;
  CoincidenceProfile tau2 = coincidence_positions(power(tau, 2));
  CHECK(tau2.length == 9);
  CHECK(tau2.fiber_positions() == std::vector<int64_t>{2, 6});
  CHECK(tau2.columns[2] == std::vector<int>{1, 3});  // ab, bb
  CHECK(tau2.columns[6] == std::vector<int>{0, 1});  // aa, ab

  auto a = make_alphabet({"x", "y"});
  Substitution flat(a, a, {parse_word(a, "xy"), parse_word(a, "xy")});
  CHECK(coincidence_positions(flat).fiber_positions().empty());
}

TEST_CASE("two speedup factors onto the base system") {
  Substitution tau = constant_speedup_recode(chi(), 2).sub;
  auto cands = factor_map_search(tau, chi(), 7, 54);
  // A,C -> b and B,D -> a at shift 7; the {B,D} fiber collapses.
  CHECK(has_map(cands, {1, 0, 1, 0}, 7));
  bool found = false;
  for (const auto& c : cands)
    if (c.shift == 7 && c.letter_map == std::vector<int>{1, 0, 1, 0}) {
      CHECK(c.collapsed_fibers == std::vector<int64_t>{2});
      found = true;
    }
  CHECK(found);
  // The other alignment collapses the {A,B} fiber instead.
  bool alt = false;
  for (const auto& c : cands)
    if (c.shift == 2 && c.status == CandidateStatus::VerifiedOnLanguage &&
        c.letter_map[0] == c.letter_map[1] && c.letter_map[1] != c.letter_map[3])
      alt = true;
  CHECK(alt);
}

TEST_CASE("four speedup factors onto the two speedup") {
  Substitution c4 = constant_speedup_recode(chi(), 4).sub;
  Substitution c2 = constant_speedup_recode(chi(), 2).sub;
  auto cands = factor_map_search(c4, c2, 2, 54);
  // {5}->A, {4,6,7}->B, {0,3}->C, {1,2}->D, small shifted once.
  CHECK(has_map(cands, {2, 3, 3, 2, 1, 0, 1, 1}, 1));
}

TEST_CASE("five speedup factors onto the base system") {
  Substitution c5 = constant_speedup_recode(chi(), 5).sub;
  REQUIRE(c5.domain()->size() == 10);
  auto cands = factor_map_search(c5, chi(), 2, 54);
  // {A,B,E,F,H} -> a and {C,D,G,I,J} -> b.
  CHECK(has_map(cands, {0, 0, 1, 1, 0, 0, 1, 0, 1, 1}, 0));
}

TEST_CASE("divisor chains of larger speedups") {
  Substitution c8 = constant_speedup_recode(chi(), 8).sub;
  Substitution c4 = constant_speedup_recode(chi(), 4).sub;
  Substitution c2 = constant_speedup_recode(chi(), 2).sub;
  Substitution c10 = constant_speedup_recode(chi(), 10).sub;
  Substitution c5 = constant_speedup_recode(chi(), 5).sub;

  auto count_verified = [](const std::vector<FactorCandidate>& cands) {
    int n = 0;
    for (const auto& c : cands)
      if (c.status == CandidateStatus::VerifiedOnLanguage) ++n;
    return n;
  };
  CHECK(count_verified(factor_map_search(c8, c4, 8, 54)) > 0);
  CHECK(count_verified(factor_map_search(c10, c5, 8, 54)) > 0);
  CHECK(count_verified(factor_map_search(c10, c2, 8, 54)) > 0);
  CHECK(count_verified(factor_map_search(c10, chi(), 8, 54)) > 0);
}

TEST_CASE("identity factor and error cases") {
  Substitution x = chi();
  auto cands = factor_map_search(x, x, 0, 27);
  CHECK(has_map(cands, {0, 1}, 0));

  auto a = make_alphabet({"p", "q"});
  Substitution uneven(a, a, {parse_word(a, "pq"), parse_word(a, "p")});
  CHECK_THROWS_WITH_AS(factor_map_search(uneven, x, 0, 9), doctest::Contains("NotConstantLength"),
                       Error);
  Substitution len2(a, a, {parse_word(a, "pq"), parse_word(a, "pp")});
  CHECK_THROWS_WITH_AS(factor_map_search(len2, x, 0, 9), doctest::Contains("NoCommonLength"),
                       Error);
}
