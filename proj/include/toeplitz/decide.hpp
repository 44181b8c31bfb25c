#pragma once

#include "toeplitz/core.hpp"
#include "toeplitz/kr.hpp"
#include "toeplitz/recode.hpp"
#include "toeplitz/structure.hpp"

namespace toeplitz {

enum class Outcome { Yes, No, Unknown };

struct Elimination {
  int depth = 0;
  int64_t bound = 0;  // all candidate periods below this were ruled out
};

struct ToeplitzCertificate {
  /// Positive route: verified period-structure prefix with, per entry, the
  /// residue class that carried the period on the window.
  std::vector<int64_t> positive_periods;
  std::vector<int64_t> positive_residues;
  int64_t window_length = 0;
  /// Negative route: nondecreasing elimination bounds per depth.
  std::vector<Elimination> eliminations;
  /// Set when two consecutive bound ratios agree, certifying divergence.
  std::optional<int64_t> divergence_ratio;
  /// Frontier for Unknown outcomes: candidates still alive at the last depth.
  std::vector<int64_t> survivors;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  int depth_used = 0;
  ToeplitzCertificate certificate;
  std::string note;
};

/// gcd(c, p_k) = 1 for all k, decided via the prefix and the ratio tail.
Verdict constant_speedup_toeplitz_test(const PeriodStructure& ps, int64_t c);

/// Identical cyclic permutations and per-label heights across towers; Yes
/// certifies Toeplitz, anything else only reports that the hypothesis fails.
Verdict sufficient_condition_check(const OrbitLabeling& labeling);

/// Candidate periods surviving on a finite window: smallest chain of
/// divisibility-linked periods, each forcing a new residue class.
struct WindowChain {
  std::vector<int64_t> periods;
  std::vector<int64_t> residues;  // one newly forced residue per period
};

WindowChain window_period_structure(const Word& window, int64_t min_period, int depth,
                                    int64_t max_period);

/// Substitutive semidecision on a (phi, psi) presentation.
Verdict toeplitz_semidecision(const Substitution& phi, const Substitution& psi, int depth,
                              int64_t period_bound = 0);

/// S-adic semidecision on the encoded speedup orbit.
Verdict toeplitz_semidecision_sadic(const SpeedupSystem& speedup, int depth,
                                    int64_t steps = 0);

struct CoboundaryReport {
  Outcome outcome = Outcome::Unknown;
  int level = 0;
  int64_t c = 0;
  /// Transfer function values per (tower, floor), normalized to g = 0 at the
  /// first floor of each connected component.
  std::vector<std::vector<int64_t>> g;
  std::string conflict;
};

CoboundaryReport coboundary_check(const SpeedupSystem& speedup, int level);

enum class ConjugacyOutcome { ConjugateToTc, TcNotMinimal, Unknown };

struct ConjugacyVerdict {
  ConjugacyOutcome outcome = ConjugacyOutcome::Unknown;
  int64_t c = 0;
  std::string note;
};

ConjugacyVerdict conjugacy_verdict(const SpeedupSystem& speedup);

struct SameOdometerReport {
  bool same = false;
  std::string detail;
};

SameOdometerReport same_odometer_report(const PeriodStructure& original,
                                        const PeriodStructure& speedup_ps);

}  // namespace toeplitz
