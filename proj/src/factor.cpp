#include "toeplitz/factor.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace toeplitz {

std::vector<int64_t> CoincidenceProfile::fiber_positions() const {
  std::vector<int64_t> out;
  for (int64_t j = 0; j < length; ++j)
    if (!coincident(j)) out.push_back(j);
  return out;
}

CoincidenceProfile coincidence_positions(const Substitution& sigma) {
  auto len = sigma.constant_length();
  if (!len) fail("NotConstantLength", "coincidence analysis needs constant length");
  CoincidenceProfile prof;
  prof.length = *len;
  prof.columns.assign(static_cast<size_t>(*len), {});
  for (int64_t j = 0; j < *len; ++j) {
    std::set<int> col;
    for (int a = 0; a < sigma.domain()->size(); ++a) col.insert(sigma.image(a)[j]);
    prof.columns[static_cast<size_t>(j)].assign(col.begin(), col.end());
  }
  return prof;
}

namespace {

/// Scale both substitutions by powers to one common length, then keep
/// scaling until that length exceeds max_shift so every shift is available.
std::pair<Substitution, Substitution> scale_to_common(const Substitution& big,
                                                      const Substitution& small,
                                                      int64_t max_shift) {
  auto lb = big.constant_length(), ls = small.constant_length();
  if (!lb || !ls) fail("NotConstantLength", "factor search needs constant length");
  int64_t cb = *lb, cs = *ls;
  int eb = 1, es = 1;
  while (cb != cs) {
    if (eb > 24 || es > 24) fail("NoCommonLength", "lengths admit no common power");
    if (cb < cs) {
      cb = checked_mul(cb, *lb);
      ++eb;
    } else {
      cs = checked_mul(cs, *ls);
      ++es;
    }
  }
  int64_t common = cb;
  int scale = 1;
  while (common <= max_shift) {
    common = checked_mul(common, cb);
    ++scale;
  }
  return {power(big, eb * scale), power(small, es * scale)};
}

}  // namespace

std::vector<FactorCandidate> factor_map_search(const Substitution& big, const Substitution& small,
                                               int64_t max_shift, int64_t check_length) {
  if (max_shift < 0) fail("Range", "max_shift must be nonnegative");
  auto [bp, sp] = scale_to_common(big, small, max_shift);
  int64_t L = *bp.constant_length();
  if (check_length <= 0) check_length = 3 * L;
  CoincidenceProfile bcols = coincidence_positions(bp);
  CoincidenceProfile scols = coincidence_positions(sp);
  int nb = big.domain()->size();
  int ns = small.domain()->size();

  LanguageResult small_lang = language_of_length(small, check_length, 64);
  std::set<std::vector<int>> small_set;
  for (const auto& w : small_lang.words) small_set.insert(w.syms);

  std::vector<FactorCandidate> out;
  for (int64_t s = 0; s <= std::min(max_shift, L - 1); ++s) {
    // Column pruning: letters in big column j may only map into the content
    // of the shifted small column.
    std::vector<std::vector<bool>> allowed(static_cast<size_t>(nb),
                                           std::vector<bool>(static_cast<size_t>(ns), true));
    bool feasible = true;
    for (int64_t j = 0; j < L && feasible; ++j) {
      const auto& target = scols.columns[static_cast<size_t>((j + s) % L)];
      std::vector<bool> ok(static_cast<size_t>(ns), false);
      for (int y : target) ok[static_cast<size_t>(y)] = true;
      for (int x : bcols.columns[static_cast<size_t>(j)]) {
        bool any = false;
        for (int y = 0; y < ns; ++y) {
          allowed[static_cast<size_t>(x)][static_cast<size_t>(y)] =
              allowed[static_cast<size_t>(x)][static_cast<size_t>(y)] && ok[static_cast<size_t>(y)];
          any = any || allowed[static_cast<size_t>(x)][static_cast<size_t>(y)];
        }
        if (!any) feasible = false;
      }
    }
    if (!feasible) continue;
    // Candidate count before enumeration; loosely pruned shifts are skipped.
    int64_t count = 1;
    for (int x = 0; x < nb && count <= 20000; ++x) {
      int64_t opts = 0;
      for (int y = 0; y < ns; ++y)
        if (allowed[static_cast<size_t>(x)][static_cast<size_t>(y)]) ++opts;
      count = checked_mul(count, opts);
    }
    if (count > 20000) continue;

    LanguageResult big_lang = language_of_length(big, check_length + s, 64);
    std::vector<int> map(static_cast<size_t>(nb), -1);
    int64_t budget = 1 << 20;
    auto verify = [&](const std::vector<int>& f) {
      for (const auto& u : big_lang.words) {
        std::vector<int> v(static_cast<size_t>(check_length));
        for (int64_t i = 0; i < check_length; ++i)
          v[static_cast<size_t>(i)] = f[static_cast<size_t>(u[i + s])];
        if (!small_set.count(v)) return std::optional<std::string>(u.render());
      }
      return std::optional<std::string>();
    };
    auto record = [&](const std::vector<int>& f) {
      FactorCandidate cand;
      cand.letter_map = f;
      cand.shift = s;
      cand.check_length = check_length;
      auto witness = verify(f);
      if (witness) {
        cand.status = CandidateStatus::Refuted;
        cand.witness = *witness;
        return;  // refuted candidates are dropped, only verified maps matter
      }
      cand.status = CandidateStatus::VerifiedOnLanguage;
      for (int64_t j : bcols.fiber_positions()) {
        std::set<int> image;
        for (int x : bcols.columns[static_cast<size_t>(j)]) image.insert(f[static_cast<size_t>(x)]);
        if (image.size() == 1) cand.collapsed_fibers.push_back(j);
      }
      out.push_back(std::move(cand));
    };
    std::function<void(int)> dfs = [&](int x) {
      if (budget <= 0) return;
      if (x == nb) {
        --budget;
        record(map);
        return;
      }
      for (int y = 0; y < ns; ++y) {
        if (!allowed[static_cast<size_t>(x)][static_cast<size_t>(y)]) continue;
        map[static_cast<size_t>(x)] = y;
        dfs(x + 1);
      }
      map[static_cast<size_t>(x)] = -1;
    };
    dfs(0);
  }
  return out;
}

}  // namespace toeplitz
