#include "toeplitz/json_io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace toeplitz {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& reason) {
  fail("SchemaError", path + ": " + reason);
}

const Json& field(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) schema_fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path + "." + key, "missing field");
  return *it;
}

int64_t int_field(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = field(obj, path, key);
  if (!v.is_number_integer()) schema_fail(path + "." + key, "expected an integer");
  return v.get<int64_t>();
}

std::string string_field(const Json& obj, const std::string& path, const std::string& key) {
  const Json& v = field(obj, path, key);
  if (!v.is_string()) schema_fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

/// Inverse of Word::render: per-character for single-character alphabets,
/// dot-separated otherwise. Unknown letters raise ValidationError by name.
Word word_from_text(const AlphabetPtr& a, const std::string& text, const std::string& path) {
  std::vector<std::string> parts;
  if (a->single_char()) {
    for (char ch : text) parts.emplace_back(1, ch);
  } else {
    std::string cur;
    for (char ch : text) {
      if (ch == '.') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    parts.push_back(cur);
  }
  Word w{a, {}};
  w.syms.reserve(parts.size());
  for (const auto& s : parts) {
    if (!a->contains(s))
      fail("ValidationError", path + ": undeclared letter '" + s + "'");
    w.syms.push_back(a->index(s));
  }
  return w;
}

AlphabetPtr alphabet_from_json(const Json& arr, const std::string& path) {
  if (!arr.is_array() || arr.empty()) schema_fail(path, "expected a nonempty array of letters");
  std::vector<std::string> letters;
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) schema_fail(path + "[" + std::to_string(i) + "]", "expected a string");
    letters.push_back(arr[i].get<std::string>());
  }
  return make_alphabet(std::move(letters));
}

}  // namespace

std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) fail("ParseError", "malformed JSON document");
  return j;
}

Json system_to_json(const SAdicSystem& system) {
  Json doc;
  Json alphabets = Json::array();
  for (int i = 0; i <= system.explicit_levels(); ++i)
    alphabets.push_back(system.alphabet_at(i)->letters());
  doc["alphabets"] = std::move(alphabets);
  Json rules = Json::array();
  for (int i = 1; i <= system.explicit_levels(); ++i) {
    const Substitution& s = system.at(i);
    Json rule;
    rule["level"] = i;
    Json map = Json::object();
    for (int a = 0; a < s.domain()->size(); ++a)
      map[s.domain()->letter(a)] = s.image(a).render();
    rule["map"] = std::move(map);
    rules.push_back(std::move(rule));
  }
  doc["rules"] = std::move(rules);
  doc["tail"] = Json{{"from_level", system.tail().from_level}, {"period", system.tail().period}};
  return doc;
}

SAdicSystem system_from_json(const Json& doc) {
  const Json& alph = field(doc, "$", "alphabets");
  if (!alph.is_array() || alph.size() < 2)
    schema_fail("$.alphabets", "expected at least two alphabets (levels 0 and 1)");
  std::vector<AlphabetPtr> alphabets;
  for (size_t i = 0; i < alph.size(); ++i)
    alphabets.push_back(alphabet_from_json(alph[i], "$.alphabets[" + std::to_string(i) + "]"));

  const Json& rules = field(doc, "$", "rules");
  if (!rules.is_array()) schema_fail("$.rules", "expected an array");
  if (rules.size() != alphabets.size() - 1)
    fail("ValidationError",
         "$.rules: expected " + std::to_string(alphabets.size() - 1) + " rules for " +
             std::to_string(alphabets.size()) + " alphabets, got " + std::to_string(rules.size()));

  std::vector<Substitution> subs;
  std::vector<bool> seen(rules.size(), false);
  std::vector<std::optional<Substitution>> slots(rules.size());
  for (size_t r = 0; r < rules.size(); ++r) {
    std::string path = "$.rules[" + std::to_string(r) + "]";
    int64_t level = int_field(rules[r], path, "level");
    if (level < 1 || level > static_cast<int64_t>(rules.size()))
      fail("ValidationError", path + ".level: level " + std::to_string(level) + " out of range");
    if (seen[static_cast<size_t>(level - 1)])
      fail("ValidationError", path + ".level: duplicate level " + std::to_string(level));
    seen[static_cast<size_t>(level - 1)] = true;
    const AlphabetPtr& dom = alphabets[static_cast<size_t>(level)];
    const AlphabetPtr& cod = alphabets[static_cast<size_t>(level - 1)];
    const Json& map = field(rules[r], path, "map");
    if (!map.is_object()) schema_fail(path + ".map", "expected an object");
    for (auto it = map.begin(); it != map.end(); ++it)
      if (!dom->contains(it.key()))
        fail("ValidationError", path + ".map: undeclared letter '" + it.key() + "'");
    std::vector<Word> images;
    for (int a = 0; a < dom->size(); ++a) {
      const std::string& letter = dom->letter(a);
      auto it = map.find(letter);
      if (it == map.end())
        fail("ValidationError", path + ".map: no image for letter '" + letter + "'");
      if (!it->is_string()) schema_fail(path + ".map." + letter, "expected a string");
      images.push_back(word_from_text(cod, it->get<std::string>(), path + ".map." + letter));
    }
    slots[static_cast<size_t>(level - 1)] = Substitution(dom, cod, std::move(images));
  }
  for (auto& s : slots) subs.push_back(std::move(*s));

  const Json& tail = field(doc, "$", "tail");
  SAdicSystem::Tail t;
  t.from_level = static_cast<int>(int_field(tail, "$.tail", "from_level"));
  t.period = static_cast<int>(int_field(tail, "$.tail", "period"));
  if (t.from_level < 1 || t.period < 1)
    fail("ValidationError", "$.tail: from_level and period must be positive");
  return SAdicSystem(std::move(subs), t);
}

Json jump_to_json(const SAdicSystem& system, const JumpFunction& jump) {
  // Floors form with the most frequent value as the default.
  std::map<int64_t, int64_t> freq;
  for (const auto& tower : jump.values)
    for (int64_t v : tower) ++freq[v];
  int64_t def = jump.values.at(0).at(0), best = 0;
  for (const auto& [v, n] : freq)
    if (n > best) best = n, def = v;

  Json doc;
  doc["level"] = jump.level;
  doc["default"] = def;
  Json floors = Json::array();
  const AlphabetPtr towers = system.alphabet_at(jump.level);
  for (size_t i = 0; i < jump.values.size(); ++i)
    for (size_t f = 0; f < jump.values[i].size(); ++f)
      if (jump.values[i][f] != def)
        floors.push_back(Json{{"tower", towers->letter(static_cast<int>(i))},
                              {"floor", static_cast<int64_t>(f)},
                              {"p", jump.values[i][f]}});
  doc["floors"] = std::move(floors);
  return doc;
}

JumpFunction jump_from_json(const SAdicSystem& system, const Json& doc) {
  int level = static_cast<int>(int_field(doc, "$.jump", "level"));
  int64_t def = int_field(doc, "$.jump", "default");
  bool has_floors = doc.is_object() && doc.contains("floors");
  bool has_cylinders = doc.is_object() && doc.contains("cylinders");
  if (has_floors && has_cylinders)
    fail("ValidationError", "$.jump: give either floors or cylinders, not both");
  if (has_cylinders) {
    const Json& cyl = doc["cylinders"];
    if (!cyl.is_array()) schema_fail("$.jump.cylinders", "expected an array");
    std::vector<CylinderRule> rules;
    for (size_t i = 0; i < cyl.size(); ++i) {
      std::string path = "$.jump.cylinders[" + std::to_string(i) + "]";
      CylinderRule rule;
      rule.word = word_from_text(system.alphabet_at(0), string_field(cyl[i], path, "word"),
                                 path + ".word");
      rule.offset = int_field(cyl[i], path, "offset");
      rule.p = int_field(cyl[i], path, "p");
      rules.push_back(std::move(rule));
    }
    return jump_from_cylinders(system, level, def, rules);
  }
  std::vector<std::tuple<std::string, int64_t, int64_t>> floors;
  if (has_floors) {
    const Json& fl = doc["floors"];
    if (!fl.is_array()) schema_fail("$.jump.floors", "expected an array");
    const AlphabetPtr towers = system.alphabet_at(level);
    for (size_t i = 0; i < fl.size(); ++i) {
      std::string path = "$.jump.floors[" + std::to_string(i) + "]";
      std::string tower = string_field(fl[i], path, "tower");
      if (!towers->contains(tower))
        fail("ValidationError", path + ".tower: undeclared letter '" + tower + "'");
      floors.emplace_back(tower, int_field(fl[i], path, "floor"), int_field(fl[i], path, "p"));
    }
  }
  return jump_from_floors(system, level, def, floors);
}

SystemSpec load_system_spec(const std::string& text) {
  Json doc = parse_json(text);
  if (!doc.is_object()) schema_fail("$", "expected an object");
  SystemSpec spec{system_from_json(doc), std::nullopt, {}};
  if (doc.contains("jump")) spec.jump = jump_from_json(spec.system, doc["jump"]);
  if (doc.contains("analysis")) {
    const Json& an = doc["analysis"];
    if (!an.is_object()) schema_fail("$.analysis", "expected an object");
    auto get_int = [&](const char* key) -> std::optional<int64_t> {
      if (!an.contains(key)) return std::nullopt;
      if (!an[key].is_number_integer()) schema_fail(std::string("$.analysis.") + key,
                                                    "expected an integer");
      return an[key].get<int64_t>();
    };
    if (auto v = get_int("depth")) spec.analysis.depth = static_cast<int>(*v);
    spec.analysis.period_bound = get_int("period_bound");
    spec.analysis.steps = get_int("steps");
    spec.analysis.c = get_int("c");
    if (auto v = get_int("level")) spec.analysis.level = static_cast<int>(*v);
    if (an.contains("mode")) {
      std::string mode = string_field(an, "$.analysis", "mode");
      if (mode != "substitutive" && mode != "sadic")
        fail("ValidationError", "$.analysis.mode: expected 'substitutive' or 'sadic'");
      spec.analysis.mode = mode;
    }
  }
  return spec;
}

Json spec_to_json(const SystemSpec& spec) {
  Json doc = system_to_json(spec.system);
  if (spec.jump) doc["jump"] = jump_to_json(spec.system, *spec.jump);
  Json an = Json::object();
  if (spec.analysis.depth) an["depth"] = *spec.analysis.depth;
  if (spec.analysis.period_bound) an["period_bound"] = *spec.analysis.period_bound;
  if (spec.analysis.mode) an["mode"] = *spec.analysis.mode;
  if (spec.analysis.steps) an["steps"] = *spec.analysis.steps;
  if (spec.analysis.c) an["c"] = *spec.analysis.c;
  if (spec.analysis.level) an["level"] = *spec.analysis.level;
  if (!an.empty()) doc["analysis"] = std::move(an);
  return doc;
}

namespace {

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "Yes";
    case Outcome::No: return "No";
    default: return "Unknown";
  }
}

}  // namespace

Json profile_to_json(const SubstitutionProfile& prof) {
  Json j;
  j["constant_length"] = prof.constant_length ? Json(*prof.constant_length) : Json(nullptr);
  j["left_proper"] = prof.left_proper;
  j["proper"] = prof.proper;
  j["primitive_witness"] = prof.primitive_witness ? Json(*prof.primitive_witness) : Json(nullptr);
  j["witness_bound"] = prof.witness_bound;
  j["aperiodic_hint"] = prof.aperiodic_hint;
  return j;
}

Json periods_to_json(const PeriodStructure& ps) {
  OdometerSpec od = odometer_spec(ps);
  Json j;
  j["periods"] = ps.periods;
  j["alpha"] = od.alpha;
  j["tail_ratios"] = ps.tail_ratios;
  j["source"] = ps.source;
  return j;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["outcome"] = outcome_name(v.outcome);
  j["depth_used"] = v.depth_used;
  j["note"] = v.note;
  Json cert;
  cert["positive_periods"] = v.certificate.positive_periods;
  cert["positive_residues"] = v.certificate.positive_residues;
  cert["window_length"] = v.certificate.window_length;
  Json elims = Json::array();
  for (const auto& e : v.certificate.eliminations)
    elims.push_back(Json{{"depth", e.depth}, {"bound", e.bound}});
  cert["eliminations"] = std::move(elims);
  cert["divergence_ratio"] =
      v.certificate.divergence_ratio ? Json(*v.certificate.divergence_ratio) : Json(nullptr);
  cert["survivors"] = v.certificate.survivors;
  j["certificate"] = std::move(cert);
  return j;
}

Json minimality_to_json(const MinimalityVerdict& v) {
  Json j;
  switch (v.outcome) {
    case MinimalityOutcome::Minimal: j["outcome"] = "Minimal"; break;
    case MinimalityOutcome::NotMinimal: j["outcome"] = "NotMinimal"; break;
    default: j["outcome"] = "Unknown"; break;
  }
  j["depth"] = v.depth;
  j["tau_witness"] = v.tau_witness ? Json(*v.tau_witness) : Json(nullptr);
  Json cov = Json::object();
  for (const auto& [l, k] : v.coverage_witness) cov[std::to_string(l)] = k;
  j["coverage_witness"] = std::move(cov);
  j["trapped_labels"] = v.trapped_labels;
  return j;
}

Json labeling_to_json(const OrbitLabeling& lab, const Alphabet& towers) {
  Json j;
  j["level"] = lab.level;
  j["c"] = lab.c;
  Json per_tower = Json::array();
  for (size_t i = 0; i < lab.labels.size(); ++i) {
    Json t;
    t["tower"] = towers.letter(static_cast<int>(i));
    t["labels"] = lab.labels[i];
    t["perm"] = lab.perms[i];
    t["heights"] = lab.heights[i];
    per_tower.push_back(std::move(t));
  }
  j["towers"] = std::move(per_tower);
  return j;
}

Json kr_to_json(const KRPartition& kr) {
  Json j;
  j["level"] = kr.level;
  j["height"] = kr.height;
  Json t = Json::array();
  for (int i = 0; i < kr.letters->size(); ++i)
    t.push_back(Json{{"tower", kr.letters->letter(i)}, {"base", kr.base_words[i].render()}});
  j["towers"] = std::move(t);
  return j;
}

Json validation_to_json(const JumpValidation& val) {
  Json j;
  j["ok"] = val.ok;
  Json v = Json::array();
  for (const auto& viol : val.violations)
    v.push_back(Json{{"code", viol.code}, {"detail", viol.detail}});
  j["violations"] = std::move(v);
  return j;
}

Json coboundary_to_json(const CoboundaryReport& rep, const Alphabet& towers) {
  Json j;
  j["outcome"] = outcome_name(rep.outcome);
  j["level"] = rep.level;
  j["c"] = rep.c;
  Json g = Json::array();
  for (size_t i = 0; i < rep.g.size(); ++i)
    g.push_back(Json{{"tower", towers.letter(static_cast<int>(i))}, {"g", rep.g[i]}});
  j["g"] = std::move(g);
  j["conflict"] = rep.conflict;
  return j;
}

Json conjugacy_to_json(const ConjugacyVerdict& v) {
  Json j;
  switch (v.outcome) {
    case ConjugacyOutcome::ConjugateToTc: j["outcome"] = "ConjugateToTc"; break;
    case ConjugacyOutcome::TcNotMinimal: j["outcome"] = "TcNotMinimal"; break;
    default: j["outcome"] = "Unknown"; break;
  }
  j["c"] = v.c;
  j["note"] = v.note;
  return j;
}

Json substitution_to_json(const Substitution& s) {
  Json j;
  j["domain"] = s.domain()->letters();
  j["codomain"] = s.codomain()->letters();
  Json map = Json::object();
  for (int a = 0; a < s.domain()->size(); ++a) map[s.domain()->letter(a)] = s.image(a).render();
  j["map"] = std::move(map);
  return j;
}

Json factor_candidates_to_json(const std::vector<FactorCandidate>& cands, const Alphabet& big,
                               const Alphabet& small) {
  Json arr = Json::array();
  for (const auto& c : cands) {
    Json j;
    Json map = Json::object();
    for (size_t x = 0; x < c.letter_map.size(); ++x)
      map[big.letter(static_cast<int>(x))] = small.letter(c.letter_map[x]);
    j["map"] = std::move(map);
    j["shift"] = c.shift;
    j["check_length"] = c.check_length;
    j["status"] =
        c.status == CandidateStatus::VerifiedOnLanguage ? "VerifiedOnLanguage" : "Refuted";
    if (!c.witness.empty()) j["witness"] = c.witness;
    j["collapsed_fibers"] = c.collapsed_fibers;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace toeplitz
