#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toeplitz/core.hpp"
#include "toeplitz/decide.hpp"
#include "toeplitz/kr.hpp"
#include "toeplitz/recode.hpp"
#include "toeplitz/structure.hpp"

#include <memory>

using namespace toeplitz;

namespace {

Substitution theta_ab_aa() {
  auto a = make_alphabet({"a", "b"});
  return Substitution(a, a, {parse_word(a, "ab"), parse_word(a, "aa")});
}

Substitution chi() {
  auto a = make_alphabet({"a", "b"});
  return Substitution(a, a, {parse_word(a, "aab"), parse_word(a, "abb")});
}

SAdicPtr constant_system(const Substitution& s) {
  return std::make_shared<const SAdicSystem>(SAdicSystem::constant(s));
}

JumpFunction cylinder_jump(const SAdicSystem& sys) {
  Word w = parse_word(sys.alphabet_at(0), "abaaabab");
  return jump_from_cylinders(sys, 3, 2, {{w, 0, 3}, {w, 1, 1}});
}

SAdicPtr not_conjugate_system() {
  auto a01 = make_alphabet({"0", "1"});
  auto aab = make_alphabet({"a", "b"});
  Substitution t1(aab, a01, {parse_word(a01, "1001"), parse_word(a01, "1010")});
  Substitution x(aab, aab, {parse_word(aab, "aab"), parse_word(aab, "abb")});
  return std::make_shared<const SAdicSystem>(SAdicSystem({t1, x}, SAdicSystem::Tail{2, 1}));
}

SpeedupSystem pattern_speedup(const SAdicPtr& sys) {
  JumpFunction j = uniform_jump(*sys, 2, 2);
  const int64_t pattern[4] = {2, 2, 3, 1};
  for (auto& tower : j.values)
    for (size_t f = 0; f < tower.size(); ++f) tower[f] = pattern[f % 4];
  return SpeedupSystem{sys, j};
}

}  // namespace

TEST_CASE("gcd characterization") {
  PeriodStructure dyadic{{2, 4, 8}, "manual", {2}};
  CHECK(constant_speedup_toeplitz_test(dyadic, 3).outcome == Outcome::Yes);
  Verdict no = constant_speedup_toeplitz_test(dyadic, 2);
  CHECK(no.outcome == Outcome::No);
  CHECK(no.note.find("p_1") != std::string::npos);
  PeriodStructure triadic{{3, 9, 27}, "manual", {3}};
  CHECK(constant_speedup_toeplitz_test(triadic, 2).outcome == Outcome::Yes);
  CHECK(constant_speedup_toeplitz_test(triadic, 1).outcome == Outcome::Yes);
  CHECK(constant_speedup_toeplitz_test(triadic, 6).outcome == Outcome::No);
  PeriodStructure tailless{{2, 4}, "manual", {}};
  CHECK_THROWS_AS(constant_speedup_toeplitz_test(tailless, 3), Error);
}

TEST_CASE("sufficient condition check") {
  SAdicPtr nc = not_conjugate_system();
  SpeedupSystem sp = pattern_speedup(nc);
  OrbitLabeling lab = labeling_at_level(*nc, sp.jump, 2);
  Verdict yes = sufficient_condition_check(lab);
  CHECK(yes.outcome == Outcome::Yes);

  SAdicPtr dy = constant_system(theta_ab_aa());
  OrbitLabeling nne = labeling_at_level(*dy, cylinder_jump(*dy), 3);
  Verdict fails = sufficient_condition_check(nne);
  CHECK(fails.outcome == Outcome::Unknown);
  CHECK(fails.note.find("permutations differ") != std::string::npos);

  OrbitLabeling trivial = labeling_at_level(*dy, uniform_jump(*dy, 3, 1), 3);
  CHECK(sufficient_condition_check(trivial).outcome == Outcome::Yes);
}

TEST_CASE("semidecision eliminates periods on the cylinder example") {
  SAdicPtr sys = constant_system(theta_ab_aa());
  SpeedupSystem sp{sys, cylinder_jump(*sys)};
  OrbitLabeling lab = labeling_at_level(*sys, sp.jump, 3);
  Substitution tau2 = power(tau_substitution(sys->at(1), lab), 2);
  ReturnWordSystem rws = return_word_recode(tau2, "(a,1)", 400);
  JumpBlockEncoding enc = jump_block_encode(sp, rws, BlockNaming::ByWord);

  Verdict d1 = toeplitz_semidecision(rws.phi, enc.psi, 1);
  CHECK(d1.certificate.eliminations[0].bound == 24);
  CHECK(d1.outcome != Outcome::No);

  Verdict d2 = toeplitz_semidecision(rws.phi, enc.psi, 2);
  CHECK(d2.certificate.eliminations[1].bound == 96);

  Verdict d3 = toeplitz_semidecision(rws.phi, enc.psi, 3);
  CHECK(d3.certificate.eliminations[2].bound == 384);
  CHECK(d3.outcome == Outcome::No);
  CHECK(d3.certificate.divergence_ratio == 4);

  Verdict d4 = toeplitz_semidecision(rws.phi, enc.psi, 4);
  CHECK(d4.outcome == Outcome::No);
  // Bounds never decrease with depth.
  for (size_t i = 1; i < d4.certificate.eliminations.size(); ++i)
    CHECK(d4.certificate.eliminations[i].bound >= d4.certificate.eliminations[i - 1].bound);
}

TEST_CASE("sadic semidecision builds the period chain") {
  SAdicPtr nc = not_conjugate_system();
  SpeedupSystem sp = pattern_speedup(nc);
  Verdict v = toeplitz_semidecision_sadic(sp, 5);
  CHECK(v.outcome == Outcome::Yes);
  REQUIRE(v.certificate.positive_periods.size() == 5);
  CHECK(v.certificate.positive_periods == std::vector<int64_t>{12, 36, 108, 324, 972});
  // Divisibility chain; every other entry walks 12, 108, 972.
  for (size_t i = 1; i < v.certificate.positive_periods.size(); ++i)
    CHECK(v.certificate.positive_periods[i] % v.certificate.positive_periods[i - 1] == 0);
  CHECK(v.certificate.positive_periods[2] == 9 * v.certificate.positive_periods[0]);
  CHECK(v.certificate.positive_periods[4] == 9 * v.certificate.positive_periods[2]);
}

TEST_CASE("coboundary checks") {
  SAdicPtr dy = constant_system(theta_ab_aa());
  SpeedupSystem nne{dy, cylinder_jump(*dy)};
  CoboundaryReport rep = coboundary_check(nne, 3);
  CHECK(rep.outcome == Outcome::Yes);
  CHECK(rep.c == 2);
  // Normalize to g(a,0) = 0.
  int64_t base = rep.g[0][0];
  CHECK(rep.g[0][3] - base == -1);
  CHECK(rep.g[0][5] - base == -1);
  CHECK(rep.g[0][7] - base == -1);
  CHECK(rep.g[0][2] - base == 0);
  CHECK(rep.g[0][4] - base == 0);
  CHECK(rep.g[1][1] - base == -1);
  CHECK(rep.g[1][2] - base == 0);

  SAdicPtr cs = constant_system(chi());
  SpeedupSystem built = construct_toeplitz_speedup(cs, 2, 2);
  CoboundaryReport cb = coboundary_check(built, 2);
  CHECK(cb.outcome == Outcome::Yes);
  CHECK(cb.c == 2);

  CoboundaryReport unit = coboundary_check(SpeedupSystem{dy, uniform_jump(*dy, 3, 1)}, 3);
  CHECK(unit.outcome == Outcome::Yes);
  CHECK(unit.c == 1);
}

TEST_CASE("coboundary agrees with simulated first returns") {
  SAdicPtr dy = constant_system(theta_ab_aa());
  SpeedupSystem nne{dy, cylinder_jump(*dy)};
  CoboundaryReport rep = coboundary_check(nne, 3);
  REQUIRE(rep.outcome == Outcome::Yes);
  SpeedupTrajectory tr = simulate_speedup(nne, 0, 64);
  // p(x, n) = c*n + g(start) - g(end) along the orbit.
  int64_t h = dy->period_at(3);
  Word seq = dy->level_sequence(3, 64);
  auto g_at = [&](int64_t q) {
    return rep.g[static_cast<size_t>(seq[q / h])][static_cast<size_t>(q % h)];
  };
  for (size_t n = 1; n < tr.positions.size(); ++n)
    CHECK(tr.positions[n] - tr.positions[0] ==
          rep.c * static_cast<int64_t>(n) + g_at(tr.positions[0]) - g_at(tr.positions[n]));
}

TEST_CASE("conjugacy verdicts") {
  SAdicPtr cs = constant_system(chi());
  SpeedupSystem built = construct_toeplitz_speedup(cs, 2, 2);
  ConjugacyVerdict yes = conjugacy_verdict(built);
  CHECK(yes.outcome == ConjugacyOutcome::ConjugateToTc);
  CHECK(yes.c == 2);

  SAdicPtr nc = not_conjugate_system();
  ConjugacyVerdict tc = conjugacy_verdict(pattern_speedup(nc));
  CHECK(tc.outcome == ConjugacyOutcome::TcNotMinimal);

  SAdicPtr dy = constant_system(theta_ab_aa());
  ConjugacyVerdict unit = conjugacy_verdict(SpeedupSystem{dy, uniform_jump(*dy, 3, 1)});
  CHECK(unit.outcome == ConjugacyOutcome::ConjugateToTc);
}

TEST_CASE("same odometer reports") {
  PeriodStructure dyadic{{2, 4, 8}, "manual", {2}};
  PeriodStructure quads{{4, 16, 64}, "manual", {}};
  SameOdometerReport r1 = same_odometer_report(dyadic, quads);
  CHECK(r1.same);

  PeriodStructure nc{{4, 12, 36}, "manual", {3}};
  PeriodStructure sq{{12, 108, 972}, "manual", {}};
  CHECK(same_odometer_report(nc, sq).same);

  PeriodStructure triadic{{3, 9, 27}, "manual", {}};
  CHECK_FALSE(same_odometer_report(dyadic, triadic).same);

  CHECK(same_odometer_report(dyadic, dyadic).same);
}

TEST_CASE("window period structure basics") {
  auto a = make_alphabet({"a", "b"});
  Word w{a, std::vector<int>(64, 0)};
  WindowChain chain = window_period_structure(w, 1, 2, 32);
  REQUIRE(!chain.periods.empty());
  CHECK(chain.periods[0] == 1);

  Substitution theta = theta_ab_aa();
  Word fp = fixed_point_prefix(theta, 0, 256);
  WindowChain dy = window_period_structure(fp, 2, 3, 64);
  REQUIRE(dy.periods.size() == 3);
  CHECK(dy.periods[0] == 2);
  CHECK(dy.periods[1] == 4);
  CHECK(dy.periods[2] == 8);
}
