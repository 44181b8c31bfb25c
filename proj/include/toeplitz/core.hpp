#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace toeplitz {

/// Error with a stable machine-readable code ("AlphabetMismatch", "Overflow", ...).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

/// Multiplication with overflow check; word lengths must never wrap.
int64_t checked_mul(int64_t a, int64_t b);
int64_t checked_add(int64_t a, int64_t b);

/// Ordered finite alphabet of symbols. Symbols are short strings so lifted
/// alphabets like (a,1) are first-class.
class Alphabet {
public:
  explicit Alphabet(std::vector<std::string> letters);

  int size() const { return static_cast<int>(letters_.size()); }
  const std::string& letter(int i) const { return letters_.at(i); }
  const std::vector<std::string>& letters() const { return letters_; }
  int index(const std::string& s) const;
  bool contains(const std::string& s) const { return index_.count(s) != 0; }

  bool operator==(const Alphabet& o) const { return letters_ == o.letters_; }
  bool operator!=(const Alphabet& o) const { return !(*this == o); }

  /// True when every symbol is a single character (enables compact rendering).
  bool single_char() const;

private:
  std::vector<std::string> letters_;
  std::unordered_map<std::string, int> index_;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

AlphabetPtr make_alphabet(std::vector<std::string> letters);

/// Finite word over an alphabet, stored as symbol indices.
struct Word {
  AlphabetPtr alphabet;
  std::vector<int> syms;

  int64_t size() const { return static_cast<int64_t>(syms.size()); }
  bool empty() const { return syms.empty(); }
  int operator[](int64_t i) const { return syms.at(static_cast<size_t>(i)); }

  Word subword(int64_t from, int64_t len) const;
  std::string render() const;  // compact for single-char alphabets, dotted otherwise

  bool operator==(const Word& o) const { return syms == o.syms; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const { return syms < o.syms; }
};

Word make_word(const AlphabetPtr& a, const std::vector<std::string>& letters);
/// Parse from a compact string; valid only for single-char alphabets.
Word parse_word(const AlphabetPtr& a, const std::string& text);

/// Substitution: one nonempty image word per domain letter.
class Substitution {
public:
  Substitution(AlphabetPtr domain, AlphabetPtr codomain, std::vector<Word> images);

  const AlphabetPtr& domain() const { return domain_; }
  const AlphabetPtr& codomain() const { return codomain_; }
  const Word& image(int letter) const { return images_.at(letter); }
  const Word& image(const std::string& letter) const { return images_.at(domain_->index(letter)); }
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;

  bool endomorphism() const { return *domain_ == *codomain_; }
  std::optional<int64_t> constant_length() const;
  bool left_proper() const;
  bool proper() const;

  /// Letter-occurrence counts of image(a), indexed by codomain letter.
  std::vector<int64_t> column_counts(int letter) const;

private:
  AlphabetPtr domain_;
  AlphabetPtr codomain_;
  std::vector<Word> images_;
};

struct SubstitutionProfile {
  std::optional<int64_t> constant_length;
  bool left_proper = false;
  bool proper = false;
  std::optional<int> primitive_witness;  // least n with theta^n(a) full, if found
  int witness_bound = 0;                 // exponent bound actually searched
  bool aperiodic_hint = false;           // heuristic only: language grows strictly
};

Substitution compose(const Substitution& outer, const Substitution& inner);
Substitution power(const Substitution& theta, int n);
Substitution identity_substitution(const AlphabetPtr& a);

/// Default exponent bound for the primitivity search: (|A|-1)^2 + 1.
int default_primitivity_bound(int alphabet_size);

SubstitutionProfile classify(const Substitution& theta, int max_exponent = 0);

/// Length-n prefix of the one-sided fixed point seeded at `seed`.
Word fixed_point_prefix(const Substitution& theta, int seed, int64_t n);

struct LanguageResult {
  std::vector<Word> words;  // canonically (lexicographically) ordered, deduplicated
  bool stabilized = false;  // set agreed between depth-1 and depth
  int depth_used = 0;
};

/// S-adic system: substitutions theta_i : A_i -> A_{i-1}^*, levels i >= 1,
/// with an eventually-periodic tail rule making theta_i defined for all i.
class SAdicSystem {
public:
  struct Tail {
    int from_level = 1;  // 1-based level where the periodic tail starts
    int period = 1;
  };

  SAdicSystem(std::vector<Substitution> rules, Tail tail);

  /// Constant system theta_i = theta for all i.
  static SAdicSystem constant(const Substitution& theta);

  const Substitution& at(int level) const;  // level >= 1
  AlphabetPtr alphabet_at(int level) const; // level >= 0
  int explicit_levels() const { return static_cast<int>(rules_.size()); }
  const Tail& tail() const { return tail_; }
  const std::vector<Substitution>& rules() const { return rules_; }

  bool constant_length_everywhere() const;
  /// p_k = |theta_1 o ... o theta_k|; requires constant length at every level.
  int64_t period_at(int level) const;

  /// theta_1 o ... o theta_k (cached).
  const Substitution& composite(int level) const;

  /// Prefix (length >= n) of the level-k sequence x^(k) with
  /// x = theta_1 o ... o theta_k (x^(k)); level 0 gives x itself.
  /// Requires every level beyond k to be left proper.
  Word level_sequence(int level, int64_t n) const;

private:
  std::vector<Substitution> rules_;
  Tail tail_;
  mutable std::vector<Substitution> composites_;
};

using SAdicPtr = std::shared_ptr<const SAdicSystem>;

LanguageResult language_of_length(const Substitution& theta, int64_t n, int depth = 12);
LanguageResult language_of_length(const SAdicSystem& system, int64_t n, int depth = 12);

}  // namespace toeplitz
