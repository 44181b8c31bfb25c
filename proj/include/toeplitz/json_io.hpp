#pragma once

#include "toeplitz/core.hpp"
#include "toeplitz/decide.hpp"
#include "toeplitz/factor.hpp"
#include "toeplitz/kr.hpp"
#include "toeplitz/structure.hpp"

#include "json.hpp"

namespace toeplitz {

/// All documents use insertion-ordered JSON so serialization is deterministic.
using Json = nlohmann::ordered_json;

/// Canonical dump: two-space indent, trailing newline, stable field order.
std::string canonical_dump(const Json& j);

/// Parse text to JSON; malformed input raises ParseError.
Json parse_json(const std::string& text);

// System documents:
//   { "alphabets": [["a","b"], ...], "rules": [{"level":1,"map":{"a":"ab",...}}],
//     "tail": {"from_level": N, "period": M} }
// alphabets[i] is the level-i alphabet; rule i maps alphabets[i] into
// alphabets[i-1] words. Images are compact strings over single-character
// alphabets and dot-separated otherwise.
Json system_to_json(const SAdicSystem& system);
SAdicSystem system_from_json(const Json& doc);

// Jump documents, resolved against a system:
//   { "level": k, "default": p, "floors": [{"tower":"a","floor":0,"p":3}, ...] }
// or
//   { "level": k, "default": p, "cylinders": [{"word":"abaaabab","offset":0,"p":3}, ...] }
Json jump_to_json(const SAdicSystem& system, const JumpFunction& jump);
JumpFunction jump_from_json(const SAdicSystem& system, const Json& doc);

/// Optional knobs carried by a spec file's "analysis" block.
struct AnalysisOptions {
  std::optional<int> depth;
  std::optional<int64_t> period_bound;
  std::optional<std::string> mode;  // "substitutive" or "sadic"
  std::optional<int64_t> steps;
  std::optional<int64_t> c;
  std::optional<int> level;
};

/// A system document plus optional "jump" and "analysis" blocks.
struct SystemSpec {
  SAdicSystem system;
  std::optional<JumpFunction> jump;
  AnalysisOptions analysis;
};

SystemSpec load_system_spec(const std::string& text);
Json spec_to_json(const SystemSpec& spec);

// Report serializers used by the command-line front end. Letter names are
// resolved through the relevant alphabet so output is human-readable.
Json profile_to_json(const SubstitutionProfile& prof);
Json periods_to_json(const PeriodStructure& ps);
Json verdict_to_json(const Verdict& v);
Json minimality_to_json(const MinimalityVerdict& v);
Json labeling_to_json(const OrbitLabeling& lab, const Alphabet& towers);
Json kr_to_json(const KRPartition& kr);
Json validation_to_json(const JumpValidation& val);
Json coboundary_to_json(const CoboundaryReport& rep, const Alphabet& towers);
Json conjugacy_to_json(const ConjugacyVerdict& v);
Json substitution_to_json(const Substitution& s);
Json factor_candidates_to_json(const std::vector<FactorCandidate>& cands, const Alphabet& big,
                               const Alphabet& small);

}  // namespace toeplitz
