#pragma once

#include "toeplitz/core.hpp"

namespace toeplitz {

/// Column analysis of a constant-length substitution: per position, the set
/// of symbols across all images. Singleton columns are coincidences.
struct CoincidenceProfile {
  int64_t length = 0;
  std::vector<std::vector<int>> columns;  // sorted symbol sets per position

  bool coincident(int64_t pos) const { return columns.at(static_cast<size_t>(pos)).size() == 1; }
  std::vector<int64_t> fiber_positions() const;
};

CoincidenceProfile coincidence_positions(const Substitution& sigma);

enum class CandidateStatus { VerifiedOnLanguage, Refuted };

struct FactorCandidate {
  std::vector<int> letter_map;  // big letter index -> small letter index
  int64_t shift = 0;
  int64_t check_length = 0;
  CandidateStatus status = CandidateStatus::Refuted;
  std::string witness;  // refuting big-language word, when refuted
  /// Fibered big positions whose letters collapse to one small letter.
  std::vector<int64_t> collapsed_fibers;
};

/// Letter-to-letter factor maps with a global shift, found by aligning the
/// column contents of both substitutions after power-scaling to a common
/// length greater than max_shift. check_length 0 picks 3x the common length.
std::vector<FactorCandidate> factor_map_search(const Substitution& big, const Substitution& small,
                                               int64_t max_shift, int64_t check_length = 0);

}  // namespace toeplitz
