#include "toeplitz/core.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace toeplitz {

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail("Overflow", "integer multiplication overflow");
  return r;
}

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail("Overflow", "integer addition overflow");
  return r;
}

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
  if (letters_.empty()) fail("EmptyAlphabet", "alphabet must be nonempty");
  for (int i = 0; i < static_cast<int>(letters_.size()); ++i) {
    if (letters_[i].empty()) fail("EmptySymbol", "alphabet symbols must be nonempty");
    if (!index_.emplace(letters_[i], i).second)
      fail("DuplicateSymbol", "duplicate symbol '" + letters_[i] + "'");
  }
}

int Alphabet::index(const std::string& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) fail("UnknownSymbol", "symbol '" + s + "' not in alphabet");
  return it->second;
}

bool Alphabet::single_char() const {
  return std::all_of(letters_.begin(), letters_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

AlphabetPtr make_alphabet(std::vector<std::string> letters) {
  return std::make_shared<const Alphabet>(std::move(letters));
}

Word Word::subword(int64_t from, int64_t len) const {
  if (from < 0 || len < 0 || from + len > size()) fail("Range", "subword out of range");
  Word w{alphabet, {}};
  w.syms.assign(syms.begin() + from, syms.begin() + from + len);
  return w;
}

std::string Word::render() const {
  std::ostringstream os;
  bool compact = alphabet && alphabet->single_char();
  for (size_t i = 0; i < syms.size(); ++i) {
    if (!compact && i) os << '.';
    os << alphabet->letter(syms[i]);
  }
  return os.str();
}

Word make_word(const AlphabetPtr& a, const std::vector<std::string>& letters) {
  Word w{a, {}};
  w.syms.reserve(letters.size());
  for (const auto& s : letters) w.syms.push_back(a->index(s));
  return w;
}

Word parse_word(const AlphabetPtr& a, const std::string& text) {
  if (!a->single_char())
    fail("ParseError", "compact word syntax requires single-character symbols");
  Word w{a, {}};
  w.syms.reserve(text.size());
  for (char c : text) w.syms.push_back(a->index(std::string(1, c)));
  return w;
}

Substitution::Substitution(AlphabetPtr domain, AlphabetPtr codomain, std::vector<Word> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != domain_->size())
    fail("BadImages", "need exactly one image per domain letter");
  for (const auto& im : images_) {
    if (im.empty()) fail("EmptyImage", "substitution images must be nonempty");
    for (int s : im.syms)
      if (s < 0 || s >= codomain_->size()) fail("BadImages", "image symbol outside codomain");
  }
}

Word Substitution::apply(const Word& w) const {
  Word out{codomain_, {}};
  for (int s : w.syms) {
    const Word& im = images_.at(s);
    out.syms.insert(out.syms.end(), im.syms.begin(), im.syms.end());
  }
  return out;
}

std::optional<int64_t> Substitution::constant_length() const {
  int64_t n = images_.front().size();
  for (const auto& im : images_)
    if (im.size() != n) return std::nullopt;
  return n;
}

bool Substitution::left_proper() const {
  int first = images_.front().syms.front();
  for (const auto& im : images_)
    if (im.syms.front() != first) return false;
  return true;
}

bool Substitution::proper() const {
  if (!left_proper()) return false;
  int last = images_.front().syms.back();
  for (const auto& im : images_)
    if (im.syms.back() != last) return false;
  return true;
}

std::vector<int64_t> Substitution::column_counts(int letter) const {
  std::vector<int64_t> counts(codomain_->size(), 0);
  for (int s : images_.at(letter).syms) ++counts[s];
  return counts;
}

Substitution compose(const Substitution& outer, const Substitution& inner) {
  if (*inner.codomain() != *outer.domain())
    fail("AlphabetMismatch", "inner codomain must equal outer domain");
  std::vector<Word> images;
  images.reserve(inner.domain()->size());
  for (int a = 0; a < inner.domain()->size(); ++a) images.push_back(outer.apply(inner.image(a)));
  return Substitution(inner.domain(), outer.codomain(), std::move(images));
}

Substitution power(const Substitution& theta, int n) {
  if (!theta.endomorphism()) fail("AlphabetMismatch", "power requires domain == codomain");
  if (n < 1) fail("BadExponent", "power exponent must be >= 1");
  Substitution r = theta;
  for (int i = 1; i < n; ++i) r = compose(theta, r);
  return r;
}

Substitution identity_substitution(const AlphabetPtr& a) {
  std::vector<Word> images;
  for (int i = 0; i < a->size(); ++i) images.push_back(Word{a, {i}});
  return Substitution(a, a, std::move(images));
}

int default_primitivity_bound(int alphabet_size) {
  return (alphabet_size - 1) * (alphabet_size - 1) + 1;
}

namespace {

// Boolean incidence step: reach[a] = set of letters occurring in theta(a),
// iterated to get occurrence sets of theta^n.
std::vector<std::vector<bool>> occurrence_step(const Substitution& theta,
                                               const std::vector<std::vector<bool>>& prev) {
  int n = theta.domain()->size();
  std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a)
    for (int b : theta.image(a).syms)
      for (int c = 0; c < n; ++c)
        if (prev[b][c]) next[a][c] = true;
  return next;
}

bool all_positive(const std::vector<std::vector<bool>>& m) {
  for (const auto& row : m)
    for (bool v : row)
      if (!v) return false;
  return true;
}

}  // namespace

SubstitutionProfile classify(const Substitution& theta, int max_exponent) {
  if (!theta.endomorphism()) fail("AlphabetMismatch", "classify requires an endomorphism");
  SubstitutionProfile p;
  p.constant_length = theta.constant_length();
  p.left_proper = theta.left_proper();
  p.proper = theta.proper();

  int n = theta.domain()->size();
  if (max_exponent <= 0) max_exponent = default_primitivity_bound(n);
  p.witness_bound = max_exponent;

  std::vector<std::vector<bool>> occ(n, std::vector<bool>(n, false));
  for (int a = 0; a < n; ++a) occ[a][a] = true;
  for (int e = 1; e <= max_exponent; ++e) {
    occ = occurrence_step(theta, occ);
    if (all_positive(occ)) {
      p.primitive_witness = e;
      break;
    }
  }

  // Heuristic: the language grows strictly in n up to a small bound.
  if (p.primitive_witness) {
    bool grows = true;
    size_t prev = 1;
    for (int len = 1; len <= 6; ++len) {
      size_t cur = language_of_length(theta, len).words.size();
      if (len > 1 && cur <= prev) {
        grows = false;
        break;
      }
      prev = cur;
    }
    p.aperiodic_hint = grows;
  }
  return p;
}

Word fixed_point_prefix(const Substitution& theta, int seed, int64_t n) {
  if (!theta.endomorphism()) fail("AlphabetMismatch", "fixed point requires an endomorphism");
  if (n < 0) fail("Range", "negative length");
  const Word& im = theta.image(seed);
  if (im.syms.front() != seed)
    fail("NotSeed", "theta(" + theta.domain()->letter(seed) + ") does not begin with the seed");
  if (im.size() < 2 && n > 1) fail("NonGrowing", "seed image does not grow");
  Word w{theta.domain(), {seed}};
  while (w.size() < n) {
    int64_t before = w.size();
    w = theta.apply(w);
    if (w.size() <= before) fail("NonGrowing", "iteration does not reach requested length");
  }
  w.syms.resize(static_cast<size_t>(n));
  return w;
}

namespace {

void collect_factors(const Word& w, int64_t n, std::set<std::vector<int>>& out) {
  for (int64_t i = 0; i + n <= w.size(); ++i)
    out.emplace(w.syms.begin() + i, w.syms.begin() + i + n);
}

LanguageResult language_from_level_words(
    const AlphabetPtr& base, int64_t n, int depth,
    const std::function<std::vector<Word>(int)>& words_at_depth) {
  LanguageResult res;
  std::set<std::vector<int>> prev, cur;
  for (int k = 1; k <= depth; ++k) {
    prev = cur;
    for (const Word& w : words_at_depth(k)) collect_factors(w, n, cur);
    res.depth_used = k;
    if (k > 1 && !cur.empty() && cur == prev) {
      res.stabilized = true;
      break;
    }
  }
  for (const auto& syms : cur) res.words.push_back(Word{base, syms});
  return res;
}

}  // namespace

LanguageResult language_of_length(const Substitution& theta, int64_t n, int depth) {
  if (n < 1) fail("Range", "language length must be >= 1");
  if (!theta.endomorphism()) fail("AlphabetMismatch", "language requires an endomorphism");
  Substitution cur = identity_substitution(theta.domain());
  return language_from_level_words(theta.domain(), n, depth, [&](int) {
    cur = compose(theta, cur);
    return cur.images();
  });
}

LanguageResult language_of_length(const SAdicSystem& system, int64_t n, int depth) {
  if (n < 1) fail("Range", "language length must be >= 1");
  return language_from_level_words(system.alphabet_at(0), n, depth, [&](int k) {
    return system.composite(k).images();
  });
}

SAdicSystem::SAdicSystem(std::vector<Substitution> rules, Tail tail)
    : rules_(std::move(rules)), tail_(tail) {
  if (rules_.empty()) fail("EmptySystem", "need at least one substitution");
  if (tail_.from_level < 1 || tail_.from_level > static_cast<int>(rules_.size()))
    fail("BadTail", "tail.from_level out of range");
  if (tail_.period < 1 || tail_.from_level + tail_.period - 1 > static_cast<int>(rules_.size()))
    fail("BadTail", "tail cycle must lie within the explicit rules");
  for (size_t i = 1; i < rules_.size(); ++i)
    if (*rules_[i].codomain() != *rules_[i - 1].domain())
      fail("AlphabetMismatch", "substitution chain broken at level " + std::to_string(i + 1));
  // The tail must chain: the rule after the last explicit one is the cycle rule.
  const Substitution& wrap = at(static_cast<int>(rules_.size()) + 1);
  if (*wrap.codomain() != *rules_.back().domain())
    fail("AlphabetMismatch", "tail rule does not chain onto the last explicit level");
}

SAdicSystem SAdicSystem::constant(const Substitution& theta) {
  if (!theta.endomorphism()) fail("AlphabetMismatch", "constant system requires an endomorphism");
  return SAdicSystem({theta}, Tail{1, 1});
}

const Substitution& SAdicSystem::at(int level) const {
  if (level < 1) fail("Range", "levels are 1-based");
  int n = static_cast<int>(rules_.size());
  if (level <= n) return rules_[level - 1];
  int idx = tail_.from_level - 1 + (level - tail_.from_level) % tail_.period;
  return rules_[idx];
}

AlphabetPtr SAdicSystem::alphabet_at(int level) const {
  if (level == 0) return rules_.front().codomain();
  return at(level).domain();
}

bool SAdicSystem::constant_length_everywhere() const {
  for (const auto& r : rules_)
    if (!r.constant_length()) return false;
  return true;
}

int64_t SAdicSystem::period_at(int level) const {
  int64_t p = 1;
  for (int i = 1; i <= level; ++i) {
    auto len = at(i).constant_length();
    if (!len) fail("NotConstantLength", "level " + std::to_string(i) + " is not constant length");
    p = checked_mul(p, *len);
  }
  return p;
}

const Substitution& SAdicSystem::composite(int level) const {
  if (level < 1) fail("Range", "composite level must be >= 1");
  while (static_cast<int>(composites_.size()) < level) {
    int next = static_cast<int>(composites_.size()) + 1;
    if (next == 1)
      composites_.push_back(at(1));
    else
      composites_.push_back(compose(composites_.back(), at(next)));
  }
  return composites_[level - 1];
}

Word SAdicSystem::level_sequence(int level, int64_t n) const {
  // Nested left-proper limit: prefixes of theta_{level+1} o ... o theta_{level+m}(seed)
  // stabilize when every rule involved is left proper.
  AlphabetPtr alpha = alphabet_at(level);
  for (int m = 1;; ++m) {
    const Substitution& seeder = at(level + m + 1);
    if (!seeder.left_proper())
      fail("NotLeftProper", "level sequence requires left proper substitutions");
    int seed = seeder.image(0).syms.front();
    Word w{at(level + m).domain(), {seed}};
    for (int i = m; i >= 1; --i) w = at(level + i).apply(w);
    if (w.size() >= n) {
      w.syms.resize(static_cast<size_t>(n));
      if (*w.alphabet != *alpha) w.alphabet = alpha;
      return w;
    }
    if (m > 64) fail("NonGrowing", "level sequence does not grow");
  }
}

}  // namespace toeplitz
