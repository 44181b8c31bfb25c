// Batch front end: read a system/jump specification, run one analysis, and
// print a deterministic JSON report (or an aligned table with --format table).
// Exit codes: 0 = Yes, 1 = No, 2 = Unknown at the requested depth, >2 = error.

#include "toeplitz/json_io.hpp"
#include "toeplitz/recode.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace toeplitz;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int64_t read_seed(const std::string& path) {
  std::istringstream is(read_file(path));
  int64_t seed = 0;
  if (!(is >> seed)) fail("IoError", "seed file must contain one integer: " + path);
  return seed;
}

// ---- table rendering -------------------------------------------------------

bool scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void print_rows(std::ostream& os, const std::vector<std::vector<std::string>>& rows,
                const std::string& indent) {
  std::vector<size_t> width;
  for (const auto& r : rows)
    for (size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    os << indent;
    for (size_t i = 0; i < r.size(); ++i) {
      os << r[i];
      if (i + 1 < r.size()) os << std::string(width[i] - r[i].size() + 2, ' ');
    }
    os << "\n";
  }
}

/// Array of uniform objects -> one aligned table with a header row.
void print_object_table(std::ostream& os, const Json& arr, const std::string& indent) {
  std::vector<std::string> cols;
  for (const auto& item : arr)
    for (auto it = item.begin(); it != item.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  std::vector<std::vector<std::string>> rows{cols};
  for (const auto& item : arr) {
    std::vector<std::string> row;
    for (const auto& c : cols)
      row.push_back(item.contains(c) ? (scalar(item[c]) ? scalar_text(item[c]) : item[c].dump())
                                     : "");
    rows.push_back(std::move(row));
  }
  print_rows(os, rows, indent);
}

void print_table(std::ostream& os, const Json& j, const std::string& indent = "") {
  if (j.is_array()) {
    bool objects = !j.empty();
    for (const auto& item : j) objects = objects && item.is_object();
    if (objects) {
      print_object_table(os, j, indent);
    } else {
      os << indent << j.dump() << "\n";
    }
    return;
  }
  if (!j.is_object()) {
    os << indent << scalar_text(j) << "\n";
    return;
  }
  std::vector<std::vector<std::string>> scalars;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (scalar(*it)) scalars.push_back({it.key(), scalar_text(*it)});
  print_rows(os, scalars, indent);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (scalar(*it)) continue;
    os << indent << it.key() << ":\n";
    if (it->is_object() && std::all_of(it->begin(), it->end(), scalar)) {
      std::vector<std::vector<std::string>> rows;
      for (auto m = it->begin(); m != it->end(); ++m)
        rows.push_back({m.key(), "->", scalar_text(*m)});
      print_rows(os, rows, indent + "  ");
    } else {
      print_table(os, *it, indent + "  ");
    }
  }
}

// ---- shared plumbing -------------------------------------------------------

struct Context {
  std::string format = "json";
  std::string seed_file;
  int depth = 0;  // 0: use the spec's analysis block or the command default
  int exit_code = 0;
  Json report;
};

void emit(Context& ctx) {
  if (ctx.format == "table") {
    print_table(std::cout, ctx.report);
  } else {
    std::cout << canonical_dump(ctx.report);
  }
}

int outcome_exit(Outcome o) {
  return o == Outcome::Yes ? 0 : o == Outcome::No ? 1 : 2;
}

SpeedupSystem require_speedup(const std::shared_ptr<SystemSpec>& spec, const SAdicPtr& sys) {
  if (!spec->jump) fail("MissingJump", "this command needs a \"jump\" block in the spec");
  return SpeedupSystem{sys, *spec->jump};
}

int pick_depth(const Context& ctx, const SystemSpec& spec, int fallback) {
  if (ctx.depth > 0) return ctx.depth;
  if (spec.analysis.depth) return *spec.analysis.depth;
  return fallback;
}

int pick_level(int flag, const SystemSpec& spec) {
  if (flag > 0) return flag;
  if (spec.analysis.level) return *spec.analysis.level;
  if (spec.jump) return spec.jump->level;
  fail("MissingLevel", "give --level or an \"analysis.level\" entry");
}

/// The substitution a constant-system spec denotes: theta_1 itself, or its
/// c-word recoding when the analysis block carries an orbit number.
Substitution effective_substitution(const SystemSpec& spec) {
  const Substitution& base = spec.system.at(1);
  if (spec.analysis.c) return constant_speedup_recode(base, *spec.analysis.c).sub;
  return base;
}

/// (phi, psi) presentation of a speedup: lift theta_1 by the jump labeling,
/// square it, recode by return words of the first lifted letter, then encode
/// the jump blocks.
std::pair<ReturnWordSystem, JumpBlockEncoding> presentation(const SAdicSystem& sys,
                                                            const SpeedupSystem& sp) {
  OrbitLabeling lab = labeling_at_level(sys, sp.jump, sp.jump.level);
  Substitution tau2 = power(tau_substitution(sys.at(1), lab), 2);
  ReturnWordSystem rws = return_word_recode(tau2, tau2.domain()->letter(0), 4000);
  JumpBlockEncoding enc = jump_block_encode(sp, rws, BlockNaming::ByWord);
  return {std::move(rws), std::move(enc)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toeplitz flow and substitution subshift analyzer"};
  app.require_subcommand(1);

  auto ctx = std::make_shared<Context>();
  app.add_option("--format", ctx->format, "Output format")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--seed-file", ctx->seed_file, "File holding one integer seed");
  app.add_option("--depth", ctx->depth, "Analysis depth override");

  auto spec = std::make_shared<SystemSpec>(SystemSpec{
      SAdicSystem::constant(identity_substitution(make_alphabet({"a"}))), std::nullopt, {}});
  auto sys = std::make_shared<SAdicPtr>();
  std::vector<std::function<void()>> actions;

  auto add_spec_command = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->fallthrough();
    auto path = std::make_shared<std::string>();
    cmd->add_option("spec", *path, "System specification JSON file")->required();
    cmd->parse_complete_callback([path, spec, sys]() {
      *spec = load_system_spec(read_file(*path));
      *sys = std::make_shared<const SAdicSystem>(spec->system);
    });
    return cmd;
  };

  // classify: profile every explicit substitution rule.
  {
    CLI::App* cmd = add_spec_command("classify", "Profile each level's substitution");
    cmd->callback([=]() {
      Json arr = Json::array();
      for (int i = 1; i <= spec->system.explicit_levels(); ++i) {
        Json j = profile_to_json(classify(spec->system.at(i)));
        j["level"] = i;
        arr.push_back(std::move(j));
      }
      ctx->report = Json{{"rules", std::move(arr)}};
    });
  }

  // periods: period structure and odometer base.
  {
    CLI::App* cmd = add_spec_command("periods", "Period structure and odometer");
    cmd->callback([=]() {
      int depth = pick_depth(*ctx, *spec, 8);
      ctx->report = periods_to_json(period_structure(spec->system, depth));
    });
  }

  // kr --level k
  {
    CLI::App* cmd = add_spec_command("kr", "Kakutani-Rokhlin partition at one level");
    auto level = std::make_shared<int>(1);
    cmd->add_option("--level", *level, "Partition level")->required();
    cmd->callback([=]() { ctx->report = kr_to_json(build_kr(spec->system, *level)); });
  }

  // speedup: validation, labeling, minimality.
  {
    CLI::App* cmd = add_spec_command("speedup", "Validate and label the speedup");
    cmd->callback([=]() {
      SpeedupSystem sp = require_speedup(spec, *sys);
      KRPartition kr = build_kr(spec->system, sp.jump.level);
      JumpValidation val = validate_jump(spec->system, kr, sp.jump);
      Json j;
      j["validation"] = validation_to_json(val);
      if (val.ok) {
        OrbitLabeling lab = orbit_labeling(spec->system, kr, sp.jump);
        j["labeling"] = labeling_to_json(lab, *spec->system.alphabet_at(sp.jump.level));
        MinimalityVerdict min = minimality_check(sp, pick_depth(*ctx, *spec, 6));
        j["minimality"] = minimality_to_json(min);
        ctx->exit_code = min.outcome == MinimalityOutcome::Minimal      ? 0
                         : min.outcome == MinimalityOutcome::NotMinimal ? 1
                                                                        : 2;
      } else {
        ctx->exit_code = 3;
      }
      ctx->report = std::move(j);
    });
  }

  // recode {return-words | jump-blocks | constant -c N}
  {
    CLI::App* cmd = app.add_subcommand("recode", "Recode a speedup or a constant power");
    cmd->fallthrough();
    auto mode = std::make_shared<std::string>();
    auto c = std::make_shared<int64_t>(0);
    auto path = std::make_shared<std::string>();
    cmd->add_option("mode", *mode, "return-words, jump-blocks, or constant")
        ->required()
        ->check(CLI::IsMember({"return-words", "jump-blocks", "constant"}));
    cmd->add_option("spec", *path, "System specification JSON file")->required();
    cmd->parse_complete_callback([path, spec, sys]() {
      *spec = load_system_spec(read_file(*path));
      *sys = std::make_shared<const SAdicSystem>(spec->system);
    });
    cmd->add_option("-c", *c, "Speedup constant for 'constant' mode");
    cmd->callback([=]() {
      if (*mode == "constant") {
        if (*c <= 0) fail("MissingArgument", "recode constant needs -c N with N >= 1");
        ConstantRecoding rec = constant_speedup_recode(spec->system.at(1), *c);
        Json words = Json::array();
        for (size_t i = 0; i < rec.c_words.size(); ++i)
          words.push_back(Json{{"letter", rec.sub.domain()->letter(static_cast<int>(i))},
                               {"content", rec.c_words[i].render()}});
        ctx->report = Json{{"substitution", substitution_to_json(rec.sub)},
                           {"c_words", std::move(words)}};
        return;
      }
      SpeedupSystem sp = require_speedup(spec, *sys);
      auto [rws, enc] = presentation(spec->system, sp);
      if (*mode == "return-words") {
        Json words = Json::array();
        for (size_t i = 0; i < rws.return_words.size(); ++i)
          words.push_back(Json{{"letter", rws.alphabet->letter(static_cast<int>(i))},
                               {"content", rws.return_words[i].render()}});
        ctx->report = Json{{"phi", substitution_to_json(rws.phi)},
                           {"return_words", std::move(words)}};
      } else {
        Json blocks = Json::array();
        for (size_t i = 0; i < enc.blocks.block_words.size(); ++i)
          blocks.push_back(Json{{"letter", enc.blocks.alphabet->letter(static_cast<int>(i))},
                                {"content", enc.blocks.block_words[i].render()}});
        ctx->report = Json{{"psi", substitution_to_json(enc.psi)},
                           {"blocks", std::move(blocks)},
                           {"psi_injective", enc.psi_injective}};
      }
    });
  }

  // decide [--mode ...] [--period-bound B] [--verify]
  {
    CLI::App* cmd = add_spec_command("decide", "Is the speedup system Toeplitz?");
    auto mode = std::make_shared<std::string>();
    auto bound = std::make_shared<int64_t>(0);
    auto verify = std::make_shared<bool>(false);
    cmd->add_option("--mode", *mode, "substitutive or sadic")
        ->check(CLI::IsMember({"substitutive", "sadic"}));
    cmd->add_option("--period-bound", *bound, "Candidate period cap");
    cmd->add_flag("--verify", *verify, "Recompute and compare the certificate");
    cmd->callback([=]() {
      if (!ctx->seed_file.empty()) read_seed(ctx->seed_file);
      std::string m = !mode->empty()            ? *mode
                      : spec->analysis.mode     ? *spec->analysis.mode
                      : spec->jump              ? "substitutive"
                                                : "constant";
      int64_t pb = *bound > 0 ? *bound
                   : spec->analysis.period_bound ? *spec->analysis.period_bound
                                                 : 0;
      Verdict v;
      auto run = [&]() {
        if (!spec->jump) {
          if (!spec->analysis.c)
            fail("MissingArgument", "decide without a jump needs \"analysis.c\"");
          int depth = pick_depth(*ctx, *spec, 8);
          return constant_speedup_toeplitz_test(period_structure(spec->system, depth),
                                                *spec->analysis.c);
        }
        SpeedupSystem sp = require_speedup(spec, *sys);
        int depth = pick_depth(*ctx, *spec, 3);
        if (m == "sadic") {
          int64_t steps = spec->analysis.steps ? *spec->analysis.steps : 0;
          return toeplitz_semidecision_sadic(sp, depth, steps);
        }
        auto [rws, enc] = presentation(spec->system, sp);
        return toeplitz_semidecision(rws.phi, enc.psi, depth, pb);
      };
      v = run();
      ctx->report = verdict_to_json(v);
      if (*verify) {
        Verdict again = run();
        ctx->report["verified"] = canonical_dump(verdict_to_json(again)) ==
                                  canonical_dump(verdict_to_json(v));
      }
      ctx->exit_code = outcome_exit(v.outcome);
    });
  }

  // coboundary [--level k]
  {
    CLI::App* cmd = add_spec_command("coboundary", "Is p - c an S-coboundary?");
    auto level = std::make_shared<int>(0);
    cmd->add_option("--level", *level, "Analysis level");
    cmd->callback([=]() {
      SpeedupSystem sp = require_speedup(spec, *sys);
      int k = *level > 0 ? *level : pick_level(0, *spec);
      CoboundaryReport rep = coboundary_check(sp, k);
      ctx->report = coboundary_to_json(rep, *spec->system.alphabet_at(k));
      ctx->exit_code = outcome_exit(rep.outcome);
    });
  }

  // conjugacy
  {
    CLI::App* cmd = add_spec_command("conjugacy", "Compare the speedup with T^c");
    cmd->callback([=]() {
      SpeedupSystem sp = require_speedup(spec, *sys);
      ConjugacyVerdict v = conjugacy_verdict(sp);
      ctx->report = conjugacy_to_json(v);
      ctx->exit_code = v.outcome == ConjugacyOutcome::ConjugateToTc   ? 0
                       : v.outcome == ConjugacyOutcome::TcNotMinimal  ? 1
                                                                      : 2;
    });
  }

  // factor BIG SMALL
  {
    CLI::App* cmd = app.add_subcommand("factor", "Letter-to-letter factor maps with a shift");
    cmd->fallthrough();
    auto big_path = std::make_shared<std::string>();
    auto small_path = std::make_shared<std::string>();
    auto max_shift = std::make_shared<int64_t>(0);
    auto check_length = std::make_shared<int64_t>(0);
    cmd->add_option("big", *big_path, "Spec of the candidate extension")->required();
    cmd->add_option("small", *small_path, "Spec of the candidate factor")->required();
    cmd->add_option("--max-shift", *max_shift, "Largest shift to try");
    cmd->add_option("--check-length", *check_length, "Language window for verification");
    cmd->callback([=]() {
      SystemSpec big_spec = load_system_spec(read_file(*big_path));
      SystemSpec small_spec = load_system_spec(read_file(*small_path));
      Substitution big = effective_substitution(big_spec);
      Substitution small = effective_substitution(small_spec);
      auto cands = factor_map_search(big, small, *max_shift, *check_length);
      ctx->report = Json{
          {"candidates", factor_candidates_to_json(cands, *big.domain(), *small.domain())}};
      bool any = std::any_of(cands.begin(), cands.end(), [](const FactorCandidate& c) {
        return c.status == CandidateStatus::VerifiedOnLanguage;
      });
      ctx->exit_code = any ? 0 : 1;
    });
  }

  // construct-speedup -c N [--level M]
  {
    CLI::App* cmd = add_spec_command("construct-speedup", "Build a Toeplitz c-orbit speedup");
    auto c = std::make_shared<int>(0);
    auto level = std::make_shared<int>(0);
    cmd->add_option("-c", *c, "Orbit number")->required();
    cmd->add_option("--level", *level, "Jump level M");
    cmd->callback([=]() {
      int M = *level > 0 ? *level : pick_level(0, *spec);
      SpeedupSystem sp = construct_toeplitz_speedup(*sys, *c, M);
      SystemSpec out{spec->system, sp.jump, spec->analysis};
      ctx->report = spec_to_json(out);
    });
  }

  try {
    CLI11_PARSE(app, argc, argv);
    emit(*ctx);
    return ctx->exit_code;
  } catch (const Error& e) {
    Json err{{"error", Json{{"code", e.code()}, {"message", e.what()}}}};
    std::cerr << canonical_dump(err);
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
