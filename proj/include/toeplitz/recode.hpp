#pragma once

#include "toeplitz/core.hpp"
#include "toeplitz/kr.hpp"

namespace toeplitz {

/// Return words of a set of marked letters in the fixed point of tau, plus
/// the induced substitution phi on the return alphabet.
struct ReturnWordSystem {
  AlphabetPtr alphabet;            // w1, w2, ... in order of first occurrence
  std::vector<Word> return_words;  // over tau's domain
  std::vector<int> marked;
  Substitution phi;
};

ReturnWordSystem return_word_recode(const Substitution& tau, const std::vector<int>& marked,
                                    int64_t horizon);
ReturnWordSystem return_word_recode(const Substitution& tau, const std::string& marked_letter,
                                    int64_t horizon);

enum class BlockNaming { ByWord, ByFloor };

/// Block alphabet: each letter names the base-alphabet word consumed by one
/// speedup step.
struct BlockEncoding {
  AlphabetPtr alphabet;
  std::vector<Word> block_words;  // over A_0, indexed by block letter
};

struct JumpBlockEncoding {
  BlockEncoding blocks;
  Substitution psi;  // return alphabet -> block alphabet
  BlockNaming mode = BlockNaming::ByWord;
  bool psi_injective = true;
};

/// The return words must be over lifted_alphabet(A_k, c) of the speedup's
/// jump level.
JumpBlockEncoding jump_block_encode(const SpeedupSystem& speedup, const ReturnWordSystem& rws,
                                    BlockNaming mode);

/// Block encoding read directly off a simulated orbit segment.
struct OrbitEncoding {
  BlockEncoding blocks;
  Word encoded;  // one block letter per speedup step
};

OrbitEncoding orbit_block_encoding(const SpeedupSystem& speedup, int64_t steps);

struct ConstantRecoding {
  Substitution sub;            // letters named by their c-word content
  std::vector<Word> c_words;   // canonical (lexicographic) order
};

ConstantRecoding constant_speedup_recode(const Substitution& theta, int64_t c);

/// Letter bijection rho with rho(a(x)) == b(rho(x)) for all letters, if any.
std::optional<std::vector<int>> find_letter_isomorphism(const Substitution& a,
                                                        const Substitution& b);

}  // namespace toeplitz
