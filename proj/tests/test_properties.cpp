#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "toeplitz/core.hpp"
#include "toeplitz/kr.hpp"
#include "toeplitz/recode.hpp"
#include "toeplitz/structure.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <set>

using namespace toeplitz;

namespace {

std::mt19937 rng(0xC0FFEE);

int rnd(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

const std::vector<std::string> kLetters = {"a", "b", "c", "d"};

AlphabetPtr random_alphabet(int size) {
  return make_alphabet({kLetters.begin(), kLetters.begin() + size});
}

/// Random endomorphism; optional fixed image length and a seeded first image
/// (image of the first letter starts with that letter, length >= 2).
Substitution random_endo(const AlphabetPtr& a, int max_len, bool seeded, int const_len = 0) {
  std::vector<Word> images;
  for (int i = 0; i < a->size(); ++i) {
    int len = const_len > 0 ? const_len : rnd(1, max_len);
    Word w{a, {}};
    for (int j = 0; j < len; ++j) w.syms.push_back(rnd(0, a->size() - 1));
    if (seeded && i == 0) {
      if (w.size() < 2) w.syms.push_back(rnd(0, a->size() - 1));
      w.syms[0] = 0;
    }
    images.push_back(std::move(w));
  }
  return Substitution(a, a, std::move(images));
}

std::vector<int> random_perm(int c) {
  std::vector<int> p(c);
  for (int i = 0; i < c; ++i) p[i] = i + 1;
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST_CASE("compose is associative") {
  for (int it = 0; it < 400; ++it) {
    auto a = random_alphabet(rnd(2, 4));
    Substitution s = random_endo(a, 3, false);
    Substitution t = random_endo(a, 3, false);
    Substitution r = random_endo(a, 3, false);
    Substitution left = compose(compose(s, t), r);
    Substitution right = compose(s, compose(t, r));
    CHECK(left.images() == right.images());
    // Length bookkeeping of one composition.
    for (int x = 0; x < a->size(); ++x) {
      int64_t expected = 0;
      for (int y : t.image(x).syms) expected += s.image(y).size();
      CHECK(compose(s, t).image(x).size() == expected);
    }
  }
}

TEST_CASE("language via powers agrees with a fixed point scan") {
  int done = 0;
  while (done < 150) {
    auto a = random_alphabet(rnd(2, 3));
    Substitution theta = random_endo(a, 3, true);
    SubstitutionProfile prof = classify(theta);
    if (!prof.primitive_witness) continue;
    int n = rnd(2, 4);
    LanguageResult lang = language_of_length(theta, n);
    if (!lang.stabilized) continue;
    Word prefix = fixed_point_prefix(theta, 0, 3000);
    std::set<std::vector<int>> scanned;
    for (int64_t i = 0; i + n <= prefix.size(); ++i)
      scanned.insert(prefix.subword(i, n).syms);
    std::set<std::vector<int>> lang_set;
    for (const auto& w : lang.words) lang_set.insert(w.syms);
    // Every factor of the fixed point lies in the language, and for primitive
    // substitutions a long prefix already exhibits the whole language.
    CHECK(std::includes(lang_set.begin(), lang_set.end(), scanned.begin(), scanned.end()));
    CHECK(scanned == lang_set);
    ++done;
  }
}

TEST_CASE("orbit labelings partition the floors") {
  auto a = make_alphabet({"a", "b"});
  std::vector<Substitution> bases = {
      Substitution(a, a, {parse_word(a, "ab"), parse_word(a, "aa")}),
      Substitution(a, a, {parse_word(a, "aab"), parse_word(a, "abb")})};
  int valid = 0, it = 0;
  while (valid < 150 && it < 4000) {
    ++it;
    SAdicPtr sys =
        std::make_shared<const SAdicSystem>(SAdicSystem::constant(bases[rnd(0, 1)]));
    int level = rnd(2, 3);
    int period = rnd(1, 4);
    std::vector<int64_t> pattern;
    for (int i = 0; i < period; ++i) pattern.push_back(rnd(1, 4));
    JumpFunction j = uniform_jump(*sys, level, 1);
    for (auto& tower : j.values)
      for (size_t f = 0; f < tower.size(); ++f) tower[f] = pattern[f % pattern.size()];
    KRPartition kr = build_kr(*sys, level);
    if (!validate_jump(*sys, kr, j).ok) continue;
    ++valid;
    OrbitLabeling lab = orbit_labeling(*sys, kr, j);
    int64_t pk = sys->period_at(level);
    for (size_t i = 0; i < lab.labels.size(); ++i) {
      REQUIRE(static_cast<int64_t>(lab.labels[i].size()) == pk);
      std::map<int, int64_t> counts;
      for (int l : lab.labels[i]) {
        CHECK(l >= 1);
        CHECK(l <= lab.c);
        ++counts[l];
      }
      int64_t total = 0;
      for (int l = 1; l <= lab.c; ++l) {
        CHECK(lab.heights[i][static_cast<size_t>(l - 1)] == counts[l]);
        total += lab.heights[i][static_cast<size_t>(l - 1)];
      }
      CHECK(total == pk);
    }
  }
  REQUIRE(valid >= 150);
}

TEST_CASE("lifted substitutions keep image lengths and multiply alphabets") {
  for (int it = 0; it < 200; ++it) {
    auto a = random_alphabet(rnd(2, 3));
    Substitution inner = random_endo(a, 4, false);
    int c = rnd(2, 4);
    std::vector<std::vector<int>> perms;
    for (int i = 0; i < a->size(); ++i) perms.push_back(random_perm(c));
    Substitution lifted = lift_substitution(inner, perms, c);
    CHECK(lifted.domain()->size() == a->size() * c);
    for (int x = 0; x < a->size(); ++x)
      for (int l = 0; l < c; ++l)
        CHECK(lifted.image(x * c + l).size() == inner.image(x).size());
  }
}

TEST_CASE("c word recoding matches direct decimation of the fixed point") {
  int done = 0;
  while (done < 200) {
    auto a = random_alphabet(rnd(2, 3));
    int len = rnd(2, 3);
    Substitution theta = random_endo(a, 0, true, len);
    if (!classify(theta).primitive_witness) continue;
    int c = rnd(2, 5);
    if (std::gcd(static_cast<int64_t>(c), static_cast<int64_t>(len)) != 1) continue;
    ConstantRecoding rec = constant_speedup_recode(theta, c);
    int64_t steps = 120;
    Word x = fixed_point_prefix(theta, 0, (steps + 1) * c);
    Word head = x.subword(0, c);
    int seed = -1;
    for (size_t i = 0; i < rec.c_words.size(); ++i)
      if (rec.c_words[i] == head) seed = static_cast<int>(i);
    REQUIRE(seed >= 0);
    Word y = fixed_point_prefix(rec.sub, seed, steps);
    for (int64_t n = 0; n < steps; ++n)
      CHECK(rec.c_words[static_cast<size_t>(y[n])] == x.subword(n * c, c));
    ++done;
  }
}

TEST_CASE("forced residues only shrink as the window grows") {
  auto a = make_alphabet({"a", "b"});
  Substitution chi(a, a, {parse_word(a, "aab"), parse_word(a, "abb")});
  Word base = fixed_point_prefix(chi, 0, 700);
  for (int it = 0; it < 200; ++it) {
    int64_t p = rnd(2, 24);
    int64_t short_len = rnd(static_cast<int>(p), 300);
    int64_t long_len = rnd(static_cast<int>(short_len), 700);
    WindowedSequence s{0, base.subword(0, short_len), "prefix"};
    WindowedSequence l{0, base.subword(0, long_len), "prefix"};
    PerPWindow ws = per_p_window(s, p);
    PerPWindow wl = per_p_window(l, p);
    std::set<int64_t> forced_short, forced_long;
    for (const auto& rs : ws.forced) forced_short.insert(rs.residue);
    for (const auto& rs : wl.forced) forced_long.insert(rs.residue);
    CHECK(std::includes(forced_short.begin(), forced_short.end(), forced_long.begin(),
                        forced_long.end()));
    // Symbols agree where both force a residue.
    std::map<int64_t, int> short_sym;
    for (const auto& rs : ws.forced) short_sym[rs.residue] = rs.symbol;
    for (const auto& rs : wl.forced) CHECK(short_sym.at(rs.residue) == rs.symbol);
  }
}
