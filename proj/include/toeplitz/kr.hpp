#pragma once

#include "toeplitz/core.hpp"

#include <map>

namespace toeplitz {

/// Level-k Kakutani-Rokhlin partition: one tower per A_k letter, all of
/// height p_k, with base cylinder words over A_0.
struct KRPartition {
  int level = 0;
  int64_t height = 0;
  AlphabetPtr letters;  // A_k
  std::vector<Word> base_words;
};

/// Floor-constant jump data at one level: values[tower][floor].
struct JumpFunction {
  int level = 0;
  std::vector<std::vector<int64_t>> values;

  int64_t max_value() const;
  int64_t at(int tower, int64_t floor) const {
    return values.at(tower).at(static_cast<size_t>(floor));
  }
};

struct JumpViolation {
  std::string code;
  std::string detail;
};

struct JumpValidation {
  bool ok = true;
  std::vector<JumpViolation> violations;
};

struct OrbitLabeling {
  int level = 0;
  int c = 0;
  std::vector<std::vector<int>> labels;       // labels[tower][floor], 1-based
  std::vector<std::vector<int>> perms;        // perms[tower][l-1] = pi_tower(l)
  std::vector<std::vector<int64_t>> heights;  // heights[tower][l-1] = o_tower(l)
};

enum class PermShape { Identity, FullCycle, SmallerCycles };

struct SpeedupSystem {
  SAdicPtr system;
  JumpFunction jump;
};

struct CylinderRule {
  Word word;  // over A_0
  int64_t offset = 0;
  int64_t p = 0;
};

KRPartition build_kr(const SAdicSystem& system, int k);

/// Letters that can follow `tower` at level k, read from one refinement level.
std::vector<int> successor_letters(const SAdicSystem& system, int k, int tower);

/// Uniform jump value p on every floor.
JumpFunction uniform_jump(const SAdicSystem& system, int level, int64_t p);

/// Jump from a default value plus explicit per-floor overrides.
JumpFunction jump_from_floors(const SAdicSystem& system, int level, int64_t default_p,
                              const std::vector<std::tuple<std::string, int64_t, int64_t>>& floors);

/// Jump from cylinder rules resolved against tower base words; floors matched
/// by no rule take the default. Rules whose windows extend past a tower are
/// resolved by refining the partition a bounded number of levels.
JumpFunction jump_from_cylinders(const SAdicSystem& system, int level, int64_t default_p,
                                 const std::vector<CylinderRule>& cylinders);

/// Reinterpret a jump at another level; lower levels require the data to be
/// floor constant there.
JumpFunction jump_at_level(const SAdicSystem& system, const JumpFunction& jump, int level);

/// Least level k with p_k > max_p.
int least_kr_level(const SAdicSystem& system, int64_t max_p);

JumpValidation validate_jump(const SAdicSystem& system, const KRPartition& kr,
                             const JumpFunction& jump);

OrbitLabeling orbit_labeling(const SAdicSystem& system, const KRPartition& kr,
                             const JumpFunction& jump);

/// Convenience: KR + derived jump + labeling at one level.
OrbitLabeling labeling_at_level(const SAdicSystem& system, const JumpFunction& jump, int level);

PermShape perm_shape(const std::vector<int>& perm);

/// Lift inner: A_m -> A_{m-1}* to A_m x C -> (A_{m-1} x C)*, with label flow
/// driven by permutations indexed by A_{m-1} letters.
Substitution lift_substitution(const Substitution& inner,
                               const std::vector<std::vector<int>>& perms, int c);

AlphabetPtr lifted_alphabet(const AlphabetPtr& base, int c);

/// Lift of an endomorphism by its own level's permutations.
Substitution tau_substitution(const Substitution& theta, const OrbitLabeling& labeling);

/// Composite lift A_k x C -> (A_l x C)* using the labelings of levels l..k-1.
Substitution tau_window(const SAdicSystem& system, const JumpFunction& jump, int l, int k);

enum class MinimalityOutcome { Minimal, NotMinimal, Unknown };

struct MinimalityVerdict {
  MinimalityOutcome outcome = MinimalityOutcome::Unknown;
  int depth = 0;
  /// Constant case: the primitivity witness exponent of the lifted map.
  std::optional<int> tau_witness;
  /// S-adic case: for each checked level l, the least k with full coverage.
  std::map<int, int> coverage_witness;
  /// NotMinimal case: labels reachable from 1, a proper subset of {1..c}.
  std::vector<int> trapped_labels;
};

MinimalityVerdict minimality_check(const SpeedupSystem& speedup, int depth);

struct SpeedupTrajectory {
  std::vector<int64_t> positions;  // q_0 .. q_n
  std::vector<Word> jump_words;    // x[q_t, q_{t+1}) over A_0
  std::vector<int> floor_labels;   // label of each visited floor
};

SpeedupTrajectory simulate_speedup(const SpeedupSystem& speedup, int64_t start, int64_t steps);

/// Jump function at level M realizing orbit number c with identical cyclic
/// permutations and per-label heights on every tower.
SpeedupSystem construct_toeplitz_speedup(const SAdicPtr& system, int c, int M);

}  // namespace toeplitz
