// Python bindings: a thin JSON-in / JSON-out wrapper over the analysis
// pipeline. Every method accepts plain values and returns the canonical JSON
// string the command line tool would print, so results are stable and easy
// to post-process.

#include "toeplitz/json_io.hpp"
#include "toeplitz/recode.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

namespace py = pybind11;
using namespace toeplitz;

namespace {

class Spec {
public:
  explicit Spec(const std::string& text)
      : spec_(load_system_spec(text)),
        sys_(std::make_shared<const SAdicSystem>(spec_.system)) {}

  std::string to_json() const { return canonical_dump(spec_to_json(spec_)); }

  std::string classify_rules() const {
    Json arr = Json::array();
    for (int i = 1; i <= spec_.system.explicit_levels(); ++i) {
      Json j = profile_to_json(classify(spec_.system.at(i)));
      j["level"] = i;
      arr.push_back(std::move(j));
    }
    return canonical_dump(Json{{"rules", std::move(arr)}});
  }

  std::string periods(int depth) const {
    return canonical_dump(periods_to_json(period_structure(spec_.system, depth)));
  }

  std::string kr(int level) const {
    return canonical_dump(kr_to_json(build_kr(spec_.system, level)));
  }

  std::string labeling() const {
    SpeedupSystem sp = speedup();
    OrbitLabeling lab = labeling_at_level(spec_.system, sp.jump, sp.jump.level);
    return canonical_dump(labeling_to_json(lab, *spec_.system.alphabet_at(sp.jump.level)));
  }

  std::string minimality(int depth) const {
    return canonical_dump(minimality_to_json(minimality_check(speedup(), depth)));
  }

  std::string decide(const std::string& mode, int depth, int64_t period_bound) const {
    Verdict v;
    if (!spec_.jump) {
      if (!spec_.analysis.c) fail("MissingArgument", "spec has neither a jump nor analysis.c");
      v = constant_speedup_toeplitz_test(period_structure(spec_.system, depth), *spec_.analysis.c);
    } else if (mode == "sadic") {
      v = toeplitz_semidecision_sadic(speedup(), depth);
    } else {
      SpeedupSystem sp = speedup();
      OrbitLabeling lab = labeling_at_level(spec_.system, sp.jump, sp.jump.level);
      Substitution tau2 = power(tau_substitution(spec_.system.at(1), lab), 2);
      ReturnWordSystem rws = return_word_recode(tau2, tau2.domain()->letter(0), 4000);
      JumpBlockEncoding enc = jump_block_encode(sp, rws, BlockNaming::ByWord);
      v = toeplitz_semidecision(rws.phi, enc.psi, depth, period_bound);
    }
    return canonical_dump(verdict_to_json(v));
  }

  std::string coboundary(int level) const {
    CoboundaryReport rep = coboundary_check(speedup(), level);
    return canonical_dump(coboundary_to_json(rep, *spec_.system.alphabet_at(level)));
  }

  std::string conjugacy() const {
    return canonical_dump(conjugacy_to_json(conjugacy_verdict(speedup())));
  }

  std::string recode_constant(int64_t c) const {
    ConstantRecoding rec = constant_speedup_recode(spec_.system.at(1), c);
    return canonical_dump(substitution_to_json(rec.sub));
  }

  std::string construct_speedup(int c, int level) const {
    SpeedupSystem sp = construct_toeplitz_speedup(sys_, c, level);
    SystemSpec out{spec_.system, sp.jump, spec_.analysis};
    return canonical_dump(spec_to_json(out));
  }

  std::string factor_onto(const Spec& small, int64_t max_shift, int64_t check_length) const {
    Substitution big = effective(*this);
    Substitution sm = effective(small);
    auto cands = factor_map_search(big, sm, max_shift, check_length);
    return canonical_dump(
        Json{{"candidates", factor_candidates_to_json(cands, *big.domain(), *sm.domain())}});
  }

  bool has_jump() const { return spec_.jump.has_value(); }

private:
  SpeedupSystem speedup() const {
    if (!spec_.jump) fail("MissingJump", "this operation needs a \"jump\" block in the spec");
    return SpeedupSystem{sys_, *spec_.jump};
  }

  static Substitution effective(const Spec& s) {
    if (s.spec_.analysis.c) return constant_speedup_recode(s.spec_.system.at(1), *s.spec_.analysis.c).sub;
    return s.spec_.system.at(1);
  }

  SystemSpec spec_;
  SAdicPtr sys_;
};

}  // namespace

PYBIND11_MODULE(_toeplitz, m) {
  m.doc() = "Substitution subshift and Toeplitz speedup analysis";

  py::register_exception<Error>(m, "AnalysisError");

  py::class_<Spec>(m, "Spec")
      .def(py::init<const std::string&>(), py::arg("text"),
           "Parse a system specification JSON document")
      .def("to_json", &Spec::to_json)
      .def("classify", &Spec::classify_rules)
      .def("periods", &Spec::periods, py::arg("depth") = 8)
      .def("kr", &Spec::kr, py::arg("level"))
      .def("labeling", &Spec::labeling)
      .def("minimality", &Spec::minimality, py::arg("depth") = 6)
      .def("decide", &Spec::decide, py::arg("mode") = "substitutive", py::arg("depth") = 3,
           py::arg("period_bound") = 0)
      .def("coboundary", &Spec::coboundary, py::arg("level"))
      .def("conjugacy", &Spec::conjugacy)
      .def("recode_constant", &Spec::recode_constant, py::arg("c"))
      .def("construct_speedup", &Spec::construct_speedup, py::arg("c"), py::arg("level"))
      .def("factor_onto", &Spec::factor_onto, py::arg("small"), py::arg("max_shift"),
           py::arg("check_length") = 0)
      .def_property_readonly("has_jump", &Spec::has_jump);
}
