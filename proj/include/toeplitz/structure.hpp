#pragma once

#include "toeplitz/core.hpp"

#include <set>

namespace toeplitz {

/// Finite window of a one- or two-sided sequence, with the absolute index of
/// its first entry and a note on where it came from.
struct WindowedSequence {
  int64_t base_offset = 0;
  Word symbols;
  std::string provenance;
};

constexpr int HOLE = -1;

/// One fundamental domain of the p-periodic part, holes where the window does
/// not force a symbol.
struct SkeletonWindow {
  int64_t period = 0;
  std::vector<int> entries;  // symbol index or HOLE, length == period
  int64_t window_length = 0;
  AlphabetPtr alphabet;
};

struct ResidueSymbol {
  int64_t residue;
  int symbol;
};

struct PerPWindow {
  std::vector<ResidueSymbol> forced;  // sorted by residue
  bool low_confidence = false;        // window shorter than 2p
  int64_t window_length = 0;
};

enum class EssentialOutcome { Essential, NotEssential, HoleEverywhere };

struct EssentialVerdict {
  EssentialOutcome outcome;
  int64_t smaller_period = 0;  // set for NotEssential
};

/// Strictly increasing divisibility chain of periods.
struct PeriodStructure {
  std::vector<int64_t> periods;
  std::string source;
  /// Optional eventually-periodic ratio tail: after the stored prefix the
  /// ratios p_{i+1}/p_i cycle through this list forever.
  std::vector<int64_t> tail_ratios;
};

struct OdometerSpec {
  std::vector<int64_t> alpha;
  std::vector<int64_t> tail_ratios;
};

PerPWindow per_p_window(const WindowedSequence& x, int64_t p);
SkeletonWindow skeleton(const WindowedSequence& x, int64_t p);
EssentialVerdict essential_period_check(const WindowedSequence& x, int64_t p);

PeriodStructure period_structure(const SAdicSystem& system, int K);
OdometerSpec odometer_spec(const PeriodStructure& ps);

/// Supernatural-number comparison of two odometers: multiset of prime powers
/// generated by the prefix plus infinitely repeated tail ratios.
bool same_odometer(const PeriodStructure& a, const PeriodStructure& b);

}  // namespace toeplitz
