#include "toeplitz/decide.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace toeplitz {

Verdict constant_speedup_toeplitz_test(const PeriodStructure& ps, int64_t c) {
  if (c < 1) fail("Range", "speedup constant must be positive");
  if (ps.periods.empty()) fail("Range", "empty period structure");
  if (ps.tail_ratios.empty()) fail("Range", "gcd test needs an eventually periodic ratio tail");
  Verdict v;
  if (c == 1) {
    v.outcome = Outcome::Yes;
    v.note = "c = 1";
    return v;
  }
  for (size_t k = 0; k < ps.periods.size(); ++k) {
    if (std::gcd(c, ps.periods[k]) != 1) {
      v.outcome = Outcome::No;
      v.note = "gcd(c, p_" + std::to_string(k + 1) + ") = " +
               std::to_string(std::gcd(c, ps.periods[k]));
      return v;
    }
  }
  for (int64_t r : ps.tail_ratios) {
    if (std::gcd(c, r) != 1) {
      v.outcome = Outcome::No;
      v.note = "gcd(c, tail ratio " + std::to_string(r) + ") > 1";
      return v;
    }
  }
  v.outcome = Outcome::Yes;
  v.note = "gcd(c, p_k) = 1 on the prefix and the ratio tail";
  return v;
}

Verdict sufficient_condition_check(const OrbitLabeling& labeling) {
  Verdict v;
  for (size_t i = 1; i < labeling.perms.size(); ++i)
    if (labeling.perms[i] != labeling.perms[0]) {
      v.outcome = Outcome::Unknown;
      v.note = "hypothesis fails: tower permutations differ";
      return v;
    }
  if (labeling.c > 1 && perm_shape(labeling.perms[0]) != PermShape::FullCycle) {
    v.outcome = Outcome::Unknown;
    v.note = "hypothesis fails: shared permutation is not a full cycle";
    return v;
  }
  for (size_t i = 1; i < labeling.heights.size(); ++i)
    if (labeling.heights[i] != labeling.heights[0]) {
      v.outcome = Outcome::Unknown;
      v.note = "hypothesis fails: per-label heights differ across towers";
      return v;
    }
  v.outcome = Outcome::Yes;
  v.note = "same cyclic permutation and same per-label heights on every tower";
  return v;
}

namespace {

/// Residues mod t whose in-window positions carry one common symbol.
std::vector<std::pair<int64_t, int>> forced_residues(const Word& w, int64_t t) {
  std::vector<std::pair<int64_t, int>> out;
  for (int64_t r = 0; r < t; ++r) {
    int sym = -1;
    bool ok = true;
    for (int64_t p = r; p < w.size(); p += t) {
      if (sym < 0)
        sym = w[p];
      else if (w[p] != sym) {
        ok = false;
        break;
      }
    }
    if (ok && sym >= 0) out.push_back({r, sym});
  }
  return out;
}

}  // namespace

WindowChain window_period_structure(const Word& window, int64_t min_period, int depth,
                                    int64_t max_period) {
  WindowChain chain;
  if (window.empty() || depth < 1) return chain;
  int64_t q = 0;
  for (int64_t t = std::max<int64_t>(1, min_period); t <= max_period && 2 * t <= window.size();
       ++t) {
    auto forced = forced_residues(window, t);
    if (!forced.empty()) {
      q = t;
      chain.periods.push_back(t);
      chain.residues.push_back(forced.front().first);
      break;
    }
  }
  if (q == 0) return chain;
  while (static_cast<int>(chain.periods.size()) < depth) {
    // Residue classes already carried by the chain.
    std::vector<std::pair<int64_t, int64_t>> covered;  // (period, residue)
    for (size_t i = 0; i < chain.periods.size(); ++i)
      for (const auto& [r, s] : forced_residues(window, chain.periods[i])) {
        (void)s;
        covered.push_back({chain.periods[i], r});
      }
    int64_t next = 0, new_residue = -1;
    for (int64_t m = 2; m * q <= max_period && 2 * m * q <= window.size(); ++m) {
      for (const auto& [r, s] : forced_residues(window, m * q)) {
        (void)s;
        bool fresh = true;
        for (const auto& [cp, cr] : covered)
          if (r % cp == cr) {
            fresh = false;
            break;
          }
        if (fresh) {
          next = m * q;
          new_residue = r;
          break;
        }
      }
      if (next) break;
    }
    if (!next) break;
    chain.periods.push_back(next);
    chain.residues.push_back(new_residue);
    q = next;
  }
  return chain;
}

namespace {

/// Every word starts with the anchor, so a period t of the anchor forces the
/// anchor at every in-range multiple of t from the word start.
bool anchored_multiples_hold(const std::vector<Word>& words, int64_t t, int anchor) {
  for (const auto& w : words)
    for (int64_t p = t; p < w.size(); p += t)
      if (w[p] != anchor) return false;
  return true;
}

void detect_divergence(Verdict& v, int64_t bound_cap) {
  const auto& el = v.certificate.eliminations;
  for (size_t i = 0; i + 2 < el.size(); ++i) {
    int64_t a = el[i].bound, b = el[i + 1].bound, c = el[i + 2].bound;
    if (a > bound_cap || b > bound_cap || c > bound_cap) continue;
    if (a > 1 && b % a == 0 && b / a > 1 && c * a == b * b) {
      v.certificate.divergence_ratio = b / a;
      v.outcome = Outcome::No;
      v.note = "elimination bounds diverge with verified ratio " + std::to_string(b / a);
      return;
    }
  }
}

}  // namespace

Verdict toeplitz_semidecision(const Substitution& phi, const Substitution& psi, int depth,
                              int64_t period_bound) {
  if (depth < 1) fail("Range", "depth must be >= 1");
  if (*psi.domain() != *phi.domain()) fail("AlphabetMismatch", "psi must encode phi's alphabet");
  Verdict v;
  v.depth_used = depth;
  if (period_bound <= 0) {
    Word w1{phi.domain(), {0}};
    period_bound = 4 * psi.apply(phi.apply(phi.apply(w1))).size();
  }
  int anchor = 0;
  std::set<int64_t> alive;
  for (int64_t t = 1; t <= period_bound; ++t) alive.insert(t);
  Substitution phik = phi;
  Word deepest_w1{psi.codomain(), {}};
  for (int k = 1; k <= depth; ++k) {
    if (k > 1) phik = compose(phi, phik);
    std::vector<Word> words;
    for (int a = 0; a < phi.domain()->size(); ++a) words.push_back(psi.apply(phik.image(a)));
    deepest_w1 = words.front();
    for (auto it = alive.begin(); it != alive.end();)
      it = anchored_multiples_hold(words, *it, anchor) ? std::next(it) : alive.erase(it);
    int64_t bound = alive.empty() ? period_bound + 1 : *alive.begin();
    v.certificate.eliminations.push_back({k, bound});
  }
  detect_divergence(v, period_bound);
  if (v.outcome == Outcome::No) return v;
  if (alive.empty()) {
    v.note = "all candidates up to the bound eliminated, no certified divergence";
    return v;
  }
  v.certificate.survivors.assign(alive.begin(),
                                 std::next(alive.begin(), std::min<size_t>(alive.size(), 32)));
  WindowChain chain =
      window_period_structure(deepest_w1, *alive.begin(), depth, deepest_w1.size() / 2);
  if (chain.periods.size() >= 2) {
    v.outcome = Outcome::Yes;
    v.certificate.positive_periods = chain.periods;
    v.certificate.positive_residues = chain.residues;
    v.certificate.window_length = deepest_w1.size();
    v.note = "period structure prefix verified on the encoded window";
  } else {
    v.note = "candidates survive but no period chain was verified";
  }
  return v;
}

Verdict toeplitz_semidecision_sadic(const SpeedupSystem& speedup, int depth, int64_t steps) {
  if (depth < 1) fail("Range", "depth must be >= 1");
  if (steps <= 0) steps = 512LL << depth;
  Verdict v;
  v.depth_used = depth;
  OrbitEncoding enc = orbit_block_encoding(speedup, steps);
  int64_t base = speedup.system->period_at(speedup.jump.level);
  WindowChain chain = window_period_structure(enc.encoded, base, depth, enc.encoded.size() / 2);
  v.certificate.window_length = enc.encoded.size();
  if (static_cast<int>(chain.periods.size()) >= depth) {
    v.outcome = Outcome::Yes;
    v.certificate.positive_periods = chain.periods;
    v.certificate.positive_residues = chain.residues;
    v.note = "period structure prefix verified on the encoded orbit";
  } else {
    v.certificate.positive_periods = chain.periods;
    v.certificate.positive_residues = chain.residues;
    v.note = "window too short to extend the period chain to the requested depth";
  }
  return v;
}

CoboundaryReport coboundary_check(const SpeedupSystem& speedup, int level) {
  const SAdicSystem& sys = *speedup.system;
  KRPartition kr = build_kr(sys, level);
  JumpFunction jump = jump_at_level(sys, speedup.jump, level);
  OrbitLabeling lab = orbit_labeling(sys, kr, jump);
  CoboundaryReport rep;
  rep.level = level;
  rep.c = lab.c;
  int n = kr.letters->size();
  int64_t h = kr.height;
  rep.g.assign(n, std::vector<int64_t>(static_cast<size_t>(h), 0));
  // Undirected propagation: g is determined up to one constant per weakly
  // connected component, so seed each component once and check every edge.
  auto node = [&](int i, int64_t f) { return i * h + f; };
  std::vector<std::vector<std::pair<int64_t, int64_t>>> adj(
      static_cast<size_t>(n * h));  // (neighbor, g difference)
  for (int i = 0; i < n; ++i) {
    for (int64_t f = 0; f < h; ++f) {
      int64_t delta = rep.c - jump.at(i, f);
      int64_t g2 = f + jump.at(i, f);
      std::vector<std::pair<int, int64_t>> nexts;
      if (g2 < h)
        nexts.push_back({i, g2});
      else
        for (int s : successor_letters(sys, level, i)) nexts.push_back({s, g2 - h});
      for (auto [j, f2] : nexts) {
        adj[static_cast<size_t>(node(i, f))].push_back({node(j, f2), delta});
        adj[static_cast<size_t>(node(j, f2))].push_back({node(i, f), -delta});
      }
    }
  }
  std::vector<int64_t> gv(static_cast<size_t>(n * h), 0);
  std::vector<bool> seen(static_cast<size_t>(n * h), false);
  for (int64_t s0 = 0; s0 < n * h; ++s0) {
    if (seen[static_cast<size_t>(s0)]) continue;
    seen[static_cast<size_t>(s0)] = true;
    std::vector<int64_t> queue{s0};
    while (!queue.empty()) {
      int64_t u = queue.back();
      queue.pop_back();
      for (auto [w, d] : adj[static_cast<size_t>(u)]) {
        int64_t gw = gv[static_cast<size_t>(u)] + d;
        if (!seen[static_cast<size_t>(w)]) {
          seen[static_cast<size_t>(w)] = true;
          gv[static_cast<size_t>(w)] = gw;
          queue.push_back(w);
        } else if (gv[static_cast<size_t>(w)] != gw) {
          rep.outcome = Outcome::No;
          rep.conflict = "floor (" + kr.letters->letter(static_cast<int>(w / h)) + "," +
                         std::to_string(w % h) + ") receives g = " + std::to_string(gw) +
                         " and g = " + std::to_string(gv[static_cast<size_t>(w)]);
          return rep;
        }
      }
    }
  }
  for (int i = 0; i < n; ++i)
    for (int64_t f = 0; f < h; ++f) rep.g[i][static_cast<size_t>(f)] = gv[static_cast<size_t>(node(i, f))];
  rep.outcome = Outcome::Yes;
  return rep;
}

ConjugacyVerdict conjugacy_verdict(const SpeedupSystem& speedup) {
  const SAdicSystem& sys = *speedup.system;
  OrbitLabeling lab = labeling_at_level(sys, speedup.jump, speedup.jump.level);
  ConjugacyVerdict cv;
  cv.c = lab.c;
  PeriodStructure ps = period_structure(sys, speedup.jump.level + 2);
  Verdict gcd_v = constant_speedup_toeplitz_test(ps, lab.c);
  if (gcd_v.outcome == Outcome::No) {
    cv.outcome = ConjugacyOutcome::TcNotMinimal;
    cv.note = "T^c is not minimal: " + gcd_v.note;
    return cv;
  }
  Verdict suff = sufficient_condition_check(lab);
  if (suff.outcome == Outcome::Yes && gcd_v.outcome == Outcome::Yes) {
    cv.outcome = ConjugacyOutcome::ConjugateToTc;
    cv.note = suff.note;
    return cv;
  }
  cv.note = suff.note;
  return cv;
}

SameOdometerReport same_odometer_report(const PeriodStructure& original,
                                        const PeriodStructure& speedup_ps) {
  PeriodStructure sp = speedup_ps;
  if (sp.tail_ratios.empty() && sp.periods.size() >= 3) {
    size_t n = sp.periods.size();
    int64_t r1 = sp.periods[n - 2] / sp.periods[n - 3];
    int64_t r2 = sp.periods[n - 1] / sp.periods[n - 2];
    if (r1 == r2 && sp.periods[n - 2] % sp.periods[n - 3] == 0 &&
        sp.periods[n - 1] % sp.periods[n - 2] == 0)
      sp.tail_ratios = {r1};
  }
  SameOdometerReport rep;
  if (!sp.tail_ratios.empty() && !original.tail_ratios.empty()) {
    rep.same = same_odometer(original, sp);
    rep.detail = rep.same ? "supernatural numbers agree" : "supernatural numbers differ";
    return rep;
  }
  // Divisibility embedding of the speedup prefix into the extended original.
  std::vector<int64_t> ext = original.periods;
  while (!original.tail_ratios.empty() && ext.back() < sp.periods.back()) {
    size_t i = (ext.size() - original.periods.size()) % original.tail_ratios.size();
    ext.push_back(checked_mul(ext.back(), original.tail_ratios[i]));
  }
  rep.same = true;
  for (int64_t q : sp.periods) {
    bool divides = false;
    for (int64_t p : ext)
      if (p % q == 0) divides = true;
    if (!divides) rep.same = false;
  }
  rep.detail = rep.same ? "every speedup period divides an original period (prefix check)"
                        : "a speedup period divides no original period";
  return rep;
}

}  // namespace toeplitz
