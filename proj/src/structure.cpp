#include "toeplitz/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace toeplitz {

PerPWindow per_p_window(const WindowedSequence& x, int64_t p) {
  if (p < 1) fail("Range", "period must be positive");
  if (x.symbols.empty()) fail("Range", "window must be nonempty");
  PerPWindow out;
  out.window_length = x.symbols.size();
  out.low_confidence = out.window_length < 2 * p;
  for (int64_t r = 0; r < p; ++r) {
    int sym = HOLE;
    bool forced = true, seen = false;
    for (int64_t i = 0; i < x.symbols.size(); ++i) {
      if (((x.base_offset + i) % p + p) % p != r) continue;
      int s = x.symbols[i];
      if (!seen) {
        sym = s;
        seen = true;
      } else if (s != sym) {
        forced = false;
        break;
      }
    }
    if (seen && forced) out.forced.push_back({r, sym});
  }
  return out;
}

SkeletonWindow skeleton(const WindowedSequence& x, int64_t p) {
  PerPWindow per = per_p_window(x, p);
  SkeletonWindow sk;
  sk.period = p;
  sk.window_length = per.window_length;
  sk.alphabet = x.symbols.alphabet;
  sk.entries.assign(static_cast<size_t>(p), HOLE);
  for (const auto& rs : per.forced) sk.entries[static_cast<size_t>(rs.residue)] = rs.symbol;
  return sk;
}

EssentialVerdict essential_period_check(const WindowedSequence& x, int64_t p) {
  if (2 * p > x.symbols.size()) fail("Range", "window must cover at least 2p positions");
  SkeletonWindow sk = skeleton(x, p);
  bool all_holes = true;
  for (int e : sk.entries)
    if (e != HOLE) all_holes = false;
  if (all_holes) return {EssentialOutcome::HoleEverywhere, 0};
  // The p-skeleton, unrolled over the window, compared as a partial word:
  // holes equal only holes.
  auto at = [&](int64_t abs_pos) { return sk.entries[static_cast<size_t>(((abs_pos % p) + p) % p)]; };
  for (int64_t q = 1; q < p; ++q) {
    bool matches = true;
    for (int64_t i = 0; i < x.symbols.size() && matches; ++i) {
      int64_t pos = x.base_offset + i;
      if (pos + q < x.base_offset + x.symbols.size() && at(pos) != at(pos + q)) matches = false;
    }
    if (matches) return {EssentialOutcome::NotEssential, q};
  }
  return {EssentialOutcome::Essential, 0};
}

PeriodStructure period_structure(const SAdicSystem& system, int K) {
  if (K < 1) fail("Range", "depth must be >= 1");
  PeriodStructure ps;
  ps.source = "sadic-lengths";
  for (int k = 1; k <= K; ++k) ps.periods.push_back(system.period_at(k));
  int from = system.tail().from_level, per = system.tail().period;
  for (int j = 0; j < per; ++j) {
    auto len = system.at(from + j).constant_length();
    if (!len) fail("NotConstantLength", "tail is not constant length");
    ps.tail_ratios.push_back(*len);
  }
  // Align the ratio cycle with the stored prefix: the next ratio after level K
  // must be the first entry of tail_ratios.
  if (K + 1 >= from) {
    int rot = (K + 1 - from) % per;
    std::rotate(ps.tail_ratios.begin(), ps.tail_ratios.begin() + rot, ps.tail_ratios.end());
  }
  return ps;
}

OdometerSpec odometer_spec(const PeriodStructure& ps) {
  if (ps.periods.empty()) fail("Range", "empty period structure");
  OdometerSpec o;
  int64_t prev = 1;
  for (int64_t p : ps.periods) {
    if (p % prev != 0 || p <= prev)
      fail("DivisibilityViolation", "periods must strictly increase and divide");
    o.alpha.push_back(p / prev);
    prev = p;
  }
  o.tail_ratios = ps.tail_ratios;
  return o;
}

namespace {

void count_primes(int64_t n, std::map<int64_t, int64_t>& acc, int64_t mult) {
  for (int64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) {
      acc[d] += mult;
      n /= d;
    }
  if (n > 1) acc[n] += mult;
}

// Prime exponents of the supernatural number: finite exponents from the
// prefix once tail primes are removed, infinity marked as -1.
std::map<int64_t, int64_t> supernatural(const PeriodStructure& ps) {
  std::map<int64_t, int64_t> finite, tail;
  count_primes(ps.periods.back(), finite, 1);
  for (int64_t r : ps.tail_ratios) count_primes(r, tail, 1);
  std::map<int64_t, int64_t> out;
  for (auto& [p, e] : tail) {
    (void)e;
    out[p] = -1;
  }
  for (auto& [p, e] : finite)
    if (!out.count(p)) out[p] = e;
  return out;
}

}  // namespace

bool same_odometer(const PeriodStructure& a, const PeriodStructure& b) {
  if (a.periods.empty() || b.periods.empty()) fail("Range", "empty period structure");
  if (a.tail_ratios.empty() || b.tail_ratios.empty())
    fail("Range", "odometer comparison needs ratio tails");
  return supernatural(a) == supernatural(b);
}

}  // namespace toeplitz
