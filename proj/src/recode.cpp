#include "toeplitz/recode.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace toeplitz {

namespace {

std::string block_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('A' + i));
  return "B" + std::to_string(i);
}

}  // namespace

ReturnWordSystem return_word_recode(const Substitution& tau, const std::vector<int>& marked,
                                    int64_t horizon) {
  if (!tau.endomorphism()) fail("AlphabetMismatch", "return words need an endomorphism");
  if (marked.empty()) fail("Range", "need at least one marked letter");
  std::set<int> mark(marked.begin(), marked.end());
  for (int m : mark)
    if (!mark.count(tau.image(m).syms.front()))
      fail("NotLeftProper", "images of marked letters must start with marked letters");
  int seed = -1;
  for (int m : mark)
    if (tau.image(m).syms.front() == m) {
      seed = m;
      break;
    }
  if (seed < 0) fail("NotLeftProper", "no marked letter seeds a fixed point");
  Word u = fixed_point_prefix(tau, seed, horizon);

  std::vector<int64_t> marks;
  for (int64_t i = 0; i < u.size(); ++i)
    if (mark.count(u[i])) marks.push_back(i);
  if (marks.size() < 2) fail("HorizonTooSmall", "fewer than two marked occurrences in the horizon");

  std::vector<Word> words;
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i + 1 < marks.size(); ++i) {
    Word w = u.subword(marks[i], marks[i + 1] - marks[i]);
    if (!index.count(w.syms)) {
      index[w.syms] = static_cast<int>(words.size());
      words.push_back(w);
    }
  }

  std::vector<std::string> names;
  for (size_t i = 0; i < words.size(); ++i) names.push_back("w" + std::to_string(i + 1));
  AlphabetPtr ret_alpha = make_alphabet(names);

  std::vector<Word> images;
  for (const auto& w : words) {
    Word tw = tau.apply(w);
    std::vector<int64_t> cuts;
    for (int64_t i = 0; i < tw.size(); ++i)
      if (mark.count(tw[i])) cuts.push_back(i);
    if (cuts.empty() || cuts.front() != 0)
      fail("HorizonTooSmall", "image of a return word does not start at a marked letter");
    cuts.push_back(tw.size());
    Word im{ret_alpha, {}};
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
      Word piece = tw.subword(cuts[i], cuts[i + 1] - cuts[i]);
      auto it = index.find(piece.syms);
      if (it == index.end())
        fail("HorizonTooSmall", "image decomposes into a return word unseen within the horizon");
      im.syms.push_back(it->second);
    }
    images.push_back(std::move(im));
  }
  Substitution phi(ret_alpha, ret_alpha, std::move(images));
  return ReturnWordSystem{ret_alpha, words, {mark.begin(), mark.end()}, std::move(phi)};
}

ReturnWordSystem return_word_recode(const Substitution& tau, const std::string& marked_letter,
                                    int64_t horizon) {
  return return_word_recode(tau, std::vector<int>{tau.domain()->index(marked_letter)}, horizon);
}

namespace {

struct ChainBlocks {
  std::vector<int64_t> floors;
  std::vector<Word> words;
};

/// Per-step consumed T-words of one chain; the top step borrows the common
/// prefix of the successor towers' base words.
ChainBlocks chain_blocks(const SAdicSystem& system, const KRPartition& kr,
                         const JumpFunction& jump, const OrbitLabeling& lab, int tower,
                         int label) {
  ChainBlocks out;
  const Word& base = kr.base_words[static_cast<size_t>(tower)];
  int64_t h = kr.height;
  for (int64_t f = 0; f < h; ++f) {
    if (lab.labels[tower][static_cast<size_t>(f)] != label) continue;
    int64_t p = jump.at(tower, f);
    out.floors.push_back(f);
    if (f + p <= h) {
      out.words.push_back(base.subword(f, p));
    } else {
      Word w = base.subword(f, h - f);
      int64_t need = f + p - h;
      std::vector<int> succ = successor_letters(system, kr.level, tower);
      for (int64_t i = 0; i < need; ++i) {
        int sym = kr.base_words[static_cast<size_t>(succ.front())][i];
        for (int s : succ)
          if (kr.base_words[static_cast<size_t>(s)][i] != sym)
            fail("InconsistentPath", "successor towers disagree on the borrowed prefix");
        w.syms.push_back(sym);
      }
      out.words.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

JumpBlockEncoding jump_block_encode(const SpeedupSystem& speedup, const ReturnWordSystem& rws,
                                    BlockNaming mode) {
  const SAdicSystem& sys = *speedup.system;
  int k = speedup.jump.level;
  KRPartition kr = build_kr(sys, k);
  OrbitLabeling lab = orbit_labeling(sys, kr, speedup.jump);
  AlphabetPtr lifted = lifted_alphabet(kr.letters, lab.c);
  if (rws.return_words.empty() || *rws.return_words.front().alphabet != *lifted)
    fail("AlphabetMismatch", "return words are not over the speedup's lifted alphabet");

  std::vector<ChainBlocks> per_letter(static_cast<size_t>(lifted->size()));
  for (int a = 0; a < kr.letters->size(); ++a)
    for (int l = 1; l <= lab.c; ++l)
      per_letter[static_cast<size_t>(a * lab.c + (l - 1))] =
          chain_blocks(sys, kr, speedup.jump, lab, a, l);

  std::map<std::string, int> key_to_block;
  std::vector<Word> block_words;
  std::vector<std::vector<int>> psi_syms;
  for (const auto& rw : rws.return_words) {
    std::vector<int> im;
    for (int sym : rw.syms) {
      const ChainBlocks& cb = per_letter[static_cast<size_t>(sym)];
      for (size_t t = 0; t < cb.words.size(); ++t) {
        std::string key = cb.words[t].render();
        if (mode == BlockNaming::ByFloor) key += "@" + std::to_string(cb.floors[t]);
        auto it = key_to_block.find(key);
        if (it == key_to_block.end()) {
          it = key_to_block.emplace(key, static_cast<int>(block_words.size())).first;
          block_words.push_back(cb.words[t]);
        }
        im.push_back(it->second);
      }
    }
    psi_syms.push_back(std::move(im));
  }

  std::vector<std::string> names;
  for (size_t i = 0; i < block_words.size(); ++i) names.push_back(block_name(static_cast<int>(i)));
  AlphabetPtr blocks = make_alphabet(names);
  std::vector<Word> images;
  for (auto& syms : psi_syms) images.push_back(Word{blocks, std::move(syms)});
  std::set<std::vector<int>> distinct;
  for (const auto& im : images) distinct.insert(im.syms);
  JumpBlockEncoding enc{BlockEncoding{blocks, std::move(block_words)},
                        Substitution(rws.alphabet, blocks, std::move(images)), mode,
                        distinct.size() == rws.return_words.size()};
  return enc;
}

OrbitEncoding orbit_block_encoding(const SpeedupSystem& speedup, int64_t steps) {
  SpeedupTrajectory tr = simulate_speedup(speedup, 0, steps);
  std::map<std::vector<int>, int> index;
  std::vector<Word> block_words;
  std::vector<int> syms;
  for (const auto& w : tr.jump_words) {
    auto it = index.find(w.syms);
    if (it == index.end()) {
      it = index.emplace(w.syms, static_cast<int>(block_words.size())).first;
      block_words.push_back(w);
    }
    syms.push_back(it->second);
  }
  std::vector<std::string> names;
  for (size_t i = 0; i < block_words.size(); ++i) names.push_back(block_name(static_cast<int>(i)));
  AlphabetPtr blocks = make_alphabet(names);
  return OrbitEncoding{BlockEncoding{blocks, std::move(block_words)}, Word{blocks, std::move(syms)}};
}

ConstantRecoding constant_speedup_recode(const Substitution& theta, int64_t c) {
  if (c < 1) fail("Range", "speedup constant must be positive");
  auto len = theta.constant_length();
  if (!len) fail("NotConstantLength", "constant speedup recoding needs constant length");
  if (std::gcd(*len, c) != 1)
    fail("GcdViolation", "block decomposition requires gcd(|theta|, c) = 1");
  if (c == 1) return ConstantRecoding{theta, {}};

  LanguageResult lang = language_of_length(theta, c, 24);
  if (!lang.stabilized) fail("NonGrowing", "language did not stabilize");
  std::map<std::vector<int>, int> index;
  std::vector<std::string> names;
  for (int i = 0; i < static_cast<int>(lang.words.size()); ++i) {
    index[lang.words[static_cast<size_t>(i)].syms] = i;
    names.push_back(lang.words[static_cast<size_t>(i)].render());
  }
  AlphabetPtr alpha = make_alphabet(names);
  std::vector<Word> images;
  for (const auto& w : lang.words) {
    Word tw = theta.apply(w);
    Word im{alpha, {}};
    for (int64_t j = 0; j < *len; ++j) {
      Word block = tw.subword(j * c, c);
      auto it = index.find(block.syms);
      if (it == index.end()) fail("NonGrowing", "image block missing from the language");
      im.syms.push_back(it->second);
    }
    images.push_back(std::move(im));
  }
  return ConstantRecoding{Substitution(alpha, alpha, std::move(images)), lang.words};
}

std::optional<std::vector<int>> find_letter_isomorphism(const Substitution& a,
                                                        const Substitution& b) {
  if (!a.endomorphism() || !b.endomorphism()) return std::nullopt;
  int n = a.domain()->size();
  if (b.domain()->size() != n) return std::nullopt;
  if (n > 8) fail("Range", "isomorphism search limited to 8 letters");
  std::vector<int> rho(static_cast<size_t>(n));
  std::iota(rho.begin(), rho.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      const Word& ax = a.image(x);
      const Word& bx = b.image(rho[static_cast<size_t>(x)]);
      if (ax.size() != bx.size()) {
        ok = false;
        break;
      }
      for (int64_t i = 0; i < ax.size(); ++i)
        if (rho[static_cast<size_t>(ax[i])] != bx[i]) {
          ok = false;
          break;
        }
    }
    if (ok) return rho;
  } while (std::next_permutation(rho.begin(), rho.end()));
  return std::nullopt;
}

}  // namespace toeplitz
