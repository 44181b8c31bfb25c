#include "toeplitz/kr.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace toeplitz {

int64_t JumpFunction::max_value() const {
  int64_t m = 0;
  for (const auto& tower : values)
    for (int64_t v : tower) m = std::max(m, v);
  return m;
}

KRPartition build_kr(const SAdicSystem& system, int k) {
  if (k < 1) fail("Range", "level must be >= 1");
  KRPartition kr;
  kr.level = k;
  kr.height = system.period_at(k);
  kr.letters = system.alphabet_at(k);
  kr.base_words = system.composite(k).images();
  std::set<Word> seen;
  for (const auto& w : kr.base_words)
    if (!seen.insert(w).second)
      fail("DuplicateBaseWords", "two towers share a base word at level " + std::to_string(k));
  return kr;
}

std::vector<int> successor_letters(const SAdicSystem& system, int k, int tower) {
  const Substitution& next = system.at(k + 1);
  std::set<int> succ;
  bool at_end = false;
  for (const auto& im : next.images()) {
    for (int64_t t = 0; t < im.size(); ++t)
      if (im[t] == tower) {
        if (t + 1 < im.size())
          succ.insert(im[t + 1]);
        else
          at_end = true;
      }
  }
  if (at_end) {
    // The following block starts a fresh image one level up.
    for (const auto& im : next.images()) succ.insert(im.syms.front());
  }
  return {succ.begin(), succ.end()};
}

JumpFunction uniform_jump(const SAdicSystem& system, int level, int64_t p) {
  if (p < 1) fail("Range", "jump values must be positive");
  JumpFunction j;
  j.level = level;
  int64_t h = system.period_at(level);
  j.values.assign(system.alphabet_at(level)->size(),
                  std::vector<int64_t>(static_cast<size_t>(h), p));
  return j;
}

JumpFunction jump_from_floors(
    const SAdicSystem& system, int level, int64_t default_p,
    const std::vector<std::tuple<std::string, int64_t, int64_t>>& floors) {
  JumpFunction j = uniform_jump(system, level, default_p);
  AlphabetPtr letters = system.alphabet_at(level);
  int64_t h = system.period_at(level);
  for (const auto& [tower, floor, p] : floors) {
    int i = letters->index(tower);
    if (floor < 0 || floor >= h) fail("Range", "floor out of range in jump data");
    if (p < 1) fail("Range", "jump values must be positive");
    j.values[i][static_cast<size_t>(floor)] = p;
  }
  return j;
}

namespace {

enum class Tri { Match, NoMatch, Unknown };

Tri cylinder_state(const SAdicSystem& system, int level, int tower, int64_t floor,
                   const CylinderRule& rule, int depth_left) {
  int64_t pk = system.period_at(level);
  const Word& base = system.composite(level).image(tower);
  int64_t from = floor - rule.offset;
  if (from >= 0 && from + rule.word.size() <= pk)
    return base.subword(from, rule.word.size()).syms == rule.word.syms ? Tri::Match : Tri::NoMatch;
  if (depth_left == 0) return Tri::Unknown;
  bool any_match = false, any_nomatch = false, any_unknown = false;
  const Substitution& next = system.at(level + 1);
  for (int alpha = 0; alpha < next.domain()->size(); ++alpha) {
    const Word& im = next.image(alpha);
    for (int64_t t = 0; t < im.size(); ++t) {
      if (im[t] != tower) continue;
      Tri r = cylinder_state(system, level + 1, alpha, t * pk + floor, rule, depth_left - 1);
      if (r == Tri::Match) any_match = true;
      if (r == Tri::NoMatch) any_nomatch = true;
      if (r == Tri::Unknown) any_unknown = true;
    }
  }
  if (any_match && any_nomatch)
    fail("NotFloorConstant", "cylinder rule splits a floor at level " + std::to_string(level));
  if (any_match) return Tri::Match;
  if (any_nomatch) return Tri::NoMatch;
  (void)any_unknown;
  return Tri::Unknown;
}

}  // namespace

JumpFunction jump_from_cylinders(const SAdicSystem& system, int level, int64_t default_p,
                                 const std::vector<CylinderRule>& cylinders) {
  JumpFunction j = uniform_jump(system, level, default_p);
  int64_t h = system.period_at(level);
  for (int i = 0; i < static_cast<int>(j.values.size()); ++i) {
    for (int64_t f = 0; f < h; ++f) {
      std::optional<int64_t> value;
      for (const auto& rule : cylinders) {
        Tri s = cylinder_state(system, level, i, f, rule, 4);
        if (s == Tri::Unknown)
          fail("CylinderUnresolved", "cylinder could not be resolved against the towers");
        if (s == Tri::Match) {
          if (value && *value != rule.p)
            fail("CylinderConflict", "two cylinder rules disagree on one floor");
          value = rule.p;
        }
      }
      if (value) j.values[i][static_cast<size_t>(f)] = *value;
    }
  }
  return j;
}

JumpFunction jump_at_level(const SAdicSystem& system, const JumpFunction& jump, int level) {
  if (level == jump.level) return jump;
  int64_t pk = system.period_at(jump.level);
  if (level > jump.level) {
    // Expand A_level letters into A_{jump.level} words.
    Substitution expand = system.at(jump.level + 1);
    for (int m = jump.level + 2; m <= level; ++m) expand = compose(expand, system.at(m));
    JumpFunction out;
    out.level = level;
    int64_t h = system.period_at(level);
    for (int a = 0; a < expand.domain()->size(); ++a) {
      std::vector<int64_t> col(static_cast<size_t>(h));
      const Word& w = expand.image(a);
      for (int64_t f = 0; f < h; ++f) col[static_cast<size_t>(f)] = jump.at(w[f / pk], f % pk);
      out.values.push_back(std::move(col));
    }
    return out;
  }
  // Project down; the data must be constant on the coarser floors.
  int64_t pl = system.period_at(level);
  Substitution expand = system.at(level + 1);
  for (int m = level + 2; m <= jump.level; ++m) expand = compose(expand, system.at(m));
  int n_low = system.alphabet_at(level)->size();
  std::vector<std::vector<std::optional<int64_t>>> table(
      n_low, std::vector<std::optional<int64_t>>(static_cast<size_t>(pl)));
  for (int a = 0; a < expand.domain()->size(); ++a) {
    const Word& w = expand.image(a);
    for (int64_t g = 0; g < pk; ++g) {
      int i = w[g / pl];
      int64_t f = g % pl;
      int64_t v = jump.at(a, g);
      auto& slot = table[i][static_cast<size_t>(f)];
      if (slot && *slot != v)
        fail("NotFloorConstant", "jump is not floor constant at level " + std::to_string(level));
      slot = v;
    }
  }
  JumpFunction out;
  out.level = level;
  for (int i = 0; i < n_low; ++i) {
    std::vector<int64_t> col;
    for (auto& slot : table[i]) {
      if (!slot) fail("NotFloorConstant", "some floor never occurs at the higher level");
      col.push_back(*slot);
    }
    out.values.push_back(std::move(col));
  }
  return out;
}

int least_kr_level(const SAdicSystem& system, int64_t max_p) {
  for (int k = 1; k <= 64; ++k)
    if (system.period_at(k) > max_p) return k;
  fail("NonGrowing", "tower heights never exceed the jump bound");
}

JumpValidation validate_jump(const SAdicSystem& system, const KRPartition& kr,
                             const JumpFunction& jump) {
  if (jump.level != kr.level) fail("Range", "jump and partition level disagree");
  JumpValidation rep;
  auto flag = [&](std::string code, std::string detail) {
    rep.ok = false;
    rep.violations.push_back({std::move(code), std::move(detail)});
  };
  int64_t h = kr.height;
  int64_t maxp = jump.max_value();
  int n = kr.letters->size();
  if (static_cast<int>(jump.values.size()) != n) fail("Range", "jump tower count mismatch");
  for (int i = 0; i < n; ++i)
    if (static_cast<int64_t>(jump.values[i].size()) != h) fail("Range", "jump floor count mismatch");
  if (maxp >= h) flag("TowerTooShort", "tower height " + std::to_string(h) +
                                           " is not greater than max jump " + std::to_string(maxp));
  for (int i = 0; i < n; ++i)
    for (int64_t f = 0; f < h; ++f)
      if (jump.at(i, f) < 1) flag("NonPositive", "jump value below 1");
  if (!rep.ok) return rep;

  // In-tower landings and exit offsets per tower.
  std::vector<std::set<int64_t>> in_tower(n), exits(n);
  for (int i = 0; i < n; ++i) {
    for (int64_t f = 0; f < h; ++f) {
      int64_t g = f + jump.at(i, f);
      if (g < h) {
        if (!in_tower[i].insert(g).second)
          flag("NotInjective", "two floors of tower " + kr.letters->letter(i) +
                                   " land on floor " + std::to_string(g));
      } else {
        if (!exits[i].insert(g - h).second)
          flag("NotInjective", "two exits of tower " + kr.letters->letter(i) +
                                   " land at offset " + std::to_string(g - h));
      }
    }
  }
  // Exits into a successor tower must not land on an in-tower image there.
  for (int i = 0; i < n; ++i)
    for (int s : successor_letters(system, kr.level, i))
      for (int64_t off : exits[i])
        if (in_tower[s].count(off))
          flag("NotInjective", "exit of tower " + kr.letters->letter(i) +
                                   " collides inside tower " + kr.letters->letter(s) +
                                   " at floor " + std::to_string(off));
  return rep;
}

OrbitLabeling orbit_labeling(const SAdicSystem& system, const KRPartition& kr,
                             const JumpFunction& jump) {
  JumpValidation v = validate_jump(system, kr, jump);
  if (!v.ok) fail("InvalidJump", v.violations.front().code + ": " + v.violations.front().detail);
  OrbitLabeling lab;
  lab.level = kr.level;
  int n = kr.letters->size();
  int64_t h = kr.height;
  lab.labels.assign(n, std::vector<int>(static_cast<size_t>(h), 0));
  std::vector<std::vector<int64_t>> chain_tops(n);
  int c = 0;
  for (int i = 0; i < n; ++i) {
    int used = 0;
    int64_t cursor = 0;
    while (true) {
      while (cursor < h && lab.labels[i][static_cast<size_t>(cursor)] != 0) ++cursor;
      if (cursor == h) break;
      ++used;
      int64_t f = cursor;
      while (true) {
        lab.labels[i][static_cast<size_t>(f)] = used;
        int64_t g = f + jump.at(i, f);
        if (g >= h) {
          chain_tops[i].push_back(f);
          break;
        }
        f = g;
      }
    }
    if (i == 0)
      c = used;
    else if (used != c)
      fail("InconsistentOrbitNumber", "towers disagree on the orbit number");
  }
  lab.c = c;
  int64_t maxp = jump.max_value();
  for (int i = 0; i < n; ++i) {
    std::vector<int> pi(c, 0);
    for (int l = 1; l <= c; ++l) {
      int64_t top = chain_tops[i][static_cast<size_t>(l - 1)];
      int64_t off = top + jump.at(i, top) - h;
      if (off >= maxp) fail("LandingAmbiguous", "chain lands above the jump bound");
      int landing_label = 0;
      for (int s : successor_letters(system, kr.level, i)) {
        int sl = lab.labels[s][static_cast<size_t>(off)];
        if (landing_label == 0)
          landing_label = sl;
        else if (sl != landing_label)
          fail("InconsistentLanding", "successor towers disagree on the landing label");
      }
      pi[static_cast<size_t>(l - 1)] = landing_label;
    }
    std::set<int> image(pi.begin(), pi.end());
    if (static_cast<int>(image.size()) != c)
      fail("NotBijective", "tower permutation is not a bijection");
    lab.perms.push_back(std::move(pi));
  }
  lab.heights.assign(n, std::vector<int64_t>(c, 0));
  for (int i = 0; i < n; ++i)
    for (int64_t f = 0; f < h; ++f) ++lab.heights[i][static_cast<size_t>(lab.labels[i][f] - 1)];
  return lab;
}

OrbitLabeling labeling_at_level(const SAdicSystem& system, const JumpFunction& jump, int level) {
  return orbit_labeling(system, build_kr(system, level), jump_at_level(system, jump, level));
}

PermShape perm_shape(const std::vector<int>& perm) {
  int c = static_cast<int>(perm.size());
  bool id = true;
  for (int l = 1; l <= c; ++l)
    if (perm[static_cast<size_t>(l - 1)] != l) id = false;
  if (id) return PermShape::Identity;
  int cur = 1, len = 0;
  do {
    cur = perm[static_cast<size_t>(cur - 1)];
    ++len;
  } while (cur != 1 && len <= c);
  return len == c ? PermShape::FullCycle : PermShape::SmallerCycles;
}

AlphabetPtr lifted_alphabet(const AlphabetPtr& base, int c) {
  std::vector<std::string> letters;
  for (const auto& a : base->letters())
    for (int l = 1; l <= c; ++l) letters.push_back("(" + a + "," + std::to_string(l) + ")");
  return make_alphabet(letters);
}

Substitution lift_substitution(const Substitution& inner,
                               const std::vector<std::vector<int>>& perms, int c) {
  if (static_cast<int>(perms.size()) != inner.codomain()->size())
    fail("Range", "one permutation per codomain letter required");
  AlphabetPtr dom = lifted_alphabet(inner.domain(), c);
  AlphabetPtr cod = lifted_alphabet(inner.codomain(), c);
  std::vector<Word> images;
  for (int a = 0; a < inner.domain()->size(); ++a) {
    for (int l = 1; l <= c; ++l) {
      Word im{cod, {}};
      int cur = l;
      for (int b : inner.image(a).syms) {
        im.syms.push_back(b * c + (cur - 1));
        cur = perms[b][static_cast<size_t>(cur - 1)];
      }
      images.push_back(std::move(im));
    }
  }
  return Substitution(dom, cod, std::move(images));
}

Substitution tau_substitution(const Substitution& theta, const OrbitLabeling& labeling) {
  if (!theta.endomorphism()) fail("AlphabetMismatch", "lift of a non-endomorphism needs levels");
  return lift_substitution(theta, labeling.perms, labeling.c);
}

Substitution tau_window(const SAdicSystem& system, const JumpFunction& jump, int l, int k) {
  if (l > k) fail("Range", "window levels must satisfy l <= k");
  OrbitLabeling base = labeling_at_level(system, jump, std::max(l, 1));
  int c = base.c;
  if (l == k) return identity_substitution(lifted_alphabet(system.alphabet_at(l), c));
  Substitution out = lift_substitution(system.at(l + 1), base.perms, c);
  for (int m = l + 2; m <= k; ++m) {
    OrbitLabeling lower = labeling_at_level(system, jump, m - 1);
    out = compose(out, lift_substitution(system.at(m), lower.perms, lower.c));
  }
  return out;
}

MinimalityVerdict minimality_check(const SpeedupSystem& speedup, int depth) {
  const SAdicSystem& sys = *speedup.system;
  int k0 = speedup.jump.level;
  OrbitLabeling lab = labeling_at_level(sys, speedup.jump, k0);
  MinimalityVerdict mv;
  mv.depth = depth;

  // Labels reachable from 1 under every tower permutation.
  std::set<int> reach{1};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& pi : lab.perms)
      for (int l : std::vector<int>(reach.begin(), reach.end()))
        if (reach.insert(pi[static_cast<size_t>(l - 1)]).second) grew = true;
  }
  if (static_cast<int>(reach.size()) < lab.c) {
    mv.outcome = MinimalityOutcome::NotMinimal;
    mv.trapped_labels.assign(reach.begin(), reach.end());
    return mv;
  }

  if (sys.rules().size() == 1) {
    OrbitLabeling above = labeling_at_level(sys, speedup.jump, k0 + 1);
    if (above.perms == lab.perms) {
      Substitution tau = tau_substitution(sys.at(1), lab);
      SubstitutionProfile prof = classify(tau);
      if (prof.primitive_witness) {
        mv.outcome = MinimalityOutcome::Minimal;
        mv.tau_witness = prof.primitive_witness;
        return mv;
      }
      mv.outcome = MinimalityOutcome::Unknown;
      return mv;
    }
  }

  int l_min = k0;
  for (int l = 1; l < k0; ++l) {
    try {
      labeling_at_level(sys, speedup.jump, l);
      l_min = l;
      break;
    } catch (const Error&) {
    }
  }
  for (int l = l_min; l < l_min + depth; ++l) {
    bool found = false;
    for (int k = l + 1; k <= l + depth && !found; ++k) {
      Substitution tw = tau_window(sys, speedup.jump, l, k);
      bool all_cover = true;
      for (const auto& im : tw.images()) {
        std::set<int> seen(im.syms.begin(), im.syms.end());
        if (static_cast<int>(seen.size()) != tw.codomain()->size()) {
          all_cover = false;
          break;
        }
      }
      if (all_cover) {
        mv.coverage_witness[l] = k;
        found = true;
      }
    }
    if (!found) {
      mv.outcome = MinimalityOutcome::Unknown;
      return mv;
    }
  }
  mv.outcome = mv.coverage_witness.empty() ? MinimalityOutcome::Unknown : MinimalityOutcome::Minimal;
  return mv;
}

SpeedupTrajectory simulate_speedup(const SpeedupSystem& speedup, int64_t start, int64_t steps) {
  if (start < 0 || steps < 0) fail("Range", "start and steps must be nonnegative");
  const SAdicSystem& sys = *speedup.system;
  int k = speedup.jump.level;
  int64_t pk = sys.period_at(k);
  int64_t maxp = speedup.jump.max_value();
  int64_t need = checked_add(checked_add(start, checked_mul(steps, std::max<int64_t>(maxp, 1))),
                             pk);
  Word x = sys.level_sequence(0, need);
  Word z = sys.level_sequence(k, need / pk + 1);
  OrbitLabeling lab = labeling_at_level(sys, speedup.jump, k);
  SpeedupTrajectory tr;
  int64_t q = start;
  tr.positions.push_back(q);
  for (int64_t t = 0; t < steps; ++t) {
    int tower = z[q / pk];
    int64_t floor = q % pk;
    int64_t p = speedup.jump.at(tower, floor);
    if (q + p > x.size()) fail("WindowExhausted", "trajectory leaves the simulated window");
    tr.jump_words.push_back(x.subword(q, p));
    tr.floor_labels.push_back(lab.labels[tower][static_cast<size_t>(floor)]);
    q += p;
    tr.positions.push_back(q);
  }
  return tr;
}

SpeedupSystem construct_toeplitz_speedup(const SAdicPtr& system, int c, int M) {
  if (c < 1) fail("Range", "orbit number must be positive");
  const SAdicSystem& sys = *system;
  int levels = sys.explicit_levels() + sys.tail().period;
  for (int i = M + 1; i <= levels + M; ++i) {
    auto len = sys.at(i).constant_length();
    if (!len) fail("NotConstantLength", "level " + std::to_string(i) + " is not constant length");
    if (std::gcd(c, *len) != 1)
      fail("GcdObstruction", "gcd(c, |theta_" + std::to_string(i) + "|) > 1");
  }
  int64_t h = sys.period_at(M);
  if (h <= 2 * c) fail("LevelTooLow", "need p_M > 2c");
  JumpFunction jump;
  jump.level = M;
  int n = sys.alphabet_at(M)->size();
  for (int i = 0; i < n; ++i) {
    std::vector<int64_t> col(static_cast<size_t>(h));
    for (int64_t f = 0; f < h; ++f) {
      if (f < h - c) {
        col[static_cast<size_t>(f)] = c;
      } else {
        int64_t label = (f % c) + 1;
        int64_t d = label % c;
        col[static_cast<size_t>(f)] = h - f + d;
      }
    }
    jump.values.push_back(std::move(col));
  }
  return SpeedupSystem{system, jump};
}

}  // namespace toeplitz
