#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pddl3c/compile.hpp"
#include "pddl3c/errors.hpp"
#include "pddl3c/grounding.hpp"
#include "pddl3c/lifted_regression.hpp"
#include "pddl3c/oracle.hpp"
#include "pddl3c/parser.hpp"
#include "pddl3c/printer.hpp"
#include "pddl3c/semantics.hpp"

namespace py = pybind11;
using namespace pddl3c;

namespace {

CompileMode mode_or_throw(const std::string& mode) {
  auto m = parse_mode(mode);
  if (!m)
    throw std::invalid_argument("unknown mode " + mode +
                                " (expected lifted-tcore, lcc or ground-tcore)");
  return *m;
}

py::dict stats_dict(const CompileStats& s) {
  py::dict d;
  d["mode"] = s.mode;
  d["n_actions_in"] = s.n_actions_in;
  d["n_actions_out"] = s.n_actions_out;
  d["n_effect_items_in"] = s.n_effect_items_in;
  d["n_effect_items_out"] = s.n_effect_items_out;
  d["n_preconds_added"] = s.n_preconds_added;
  d["n_monitoring_atoms"] = s.n_monitoring_atoms;
  d["n_constraints"] = s.n_constraints;
  d["n_predicates"] = s.n_predicates;
  d["n_actions"] = s.n_actions;
  d["max_atom_arity"] = s.max_atom_arity;
  d["max_quantifier_depth"] = s.max_quantifier_depth;
  d["n_operations"] = s.n_operations;
  d["wall_time_seconds"] = s.wall_time_seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lifted compilation of PDDL3 state-trajectory constraints";

  py::register_exception<UnsupportedFeatureError>(m, "UnsupportedFeatureError");
  py::register_exception<ResourceLimitError>(m, "ResourceLimitError");
  py::register_exception<ParseError>(m, "PddlParseError");

  py::class_<DomainDef>(m, "Domain")
      .def_property_readonly("name", [](const DomainDef& d) { return d.name; })
      .def_property_readonly("action_names",
                             [](const DomainDef& d) {
                               std::vector<std::string> names;
                               for (const ActionSchema& a : d.actions)
                                 names.push_back(a.name);
                               return names;
                             })
      .def("__repr__", [](const DomainDef& d) {
        return "<Domain " + d.name + ", " + std::to_string(d.actions.size()) +
               " actions>";
      });

  py::class_<ProblemDef>(m, "Problem")
      .def_property_readonly("name", [](const ProblemDef& p) { return p.name; })
      .def_property_readonly("n_constraints",
                             [](const ProblemDef& p) {
                               return p.constraints.size();
                             })
      .def("__repr__", [](const ProblemDef& p) {
        return "<Problem " + p.name + ", " +
               std::to_string(p.constraints.size()) + " constraints>";
      });

  m.def("parse_domain", &parse_domain, py::arg("text"),
        "Parse a PDDL domain from text.");
  m.def("parse_problem", &parse_problem, py::arg("text"), py::arg("domain"),
        "Parse a PDDL problem from text against a parsed domain.");
  m.def("print_domain", &print_domain, py::arg("domain"));
  m.def("print_problem", &print_problem, py::arg("problem"), py::arg("domain"));

  m.def(
      "compile",
      [](const DomainDef& d, const ProblemDef& p, const std::string& mode,
         std::size_t ground_cap) {
        CompileOptions options;
        options.ground_cap = ground_cap;
        CompileOutput out = compile(d, p, mode_or_throw(mode), options);
        py::dict result;
        result["domain"] = print_domain(out.domain);
        result["problem"] = print_problem(out.problem, out.domain);
        result["stats"] = stats_dict(out.stats);
        result["unsolvable"] = out.unsolvable;
        result["diagnostics"] = out.diagnostics;
        return result;
      },
      py::arg("domain"), py::arg("problem"), py::arg("mode") = "lifted-tcore",
      py::arg("ground_cap") = kDefaultGroundCap,
      "Compile the constraints away; returns the compiled PDDL text pair "
      "and the size statistics.");

  m.def(
      "validate",
      [](const DomainDef& d, const ProblemDef& p, const std::string& plan_text) {
        Plan plan = parse_plan(plan_text);
        Verdict v = validate_plan(d, p, plan);
        py::dict result;
        result["valid"] = v.valid;
        result["message"] = v.message;
        result["action_index"] = v.action_index;
        result["constraint_index"] = v.constraint_index;
        result["witness"] = v.witness;
        return result;
      },
      py::arg("domain"), py::arg("problem"), py::arg("plan"),
      "Validate a plan (one `(name args...)` step per line) under full "
      "trajectory semantics.");

  m.def(
      "regress",
      [](const DomainDef& d, const std::string& action,
         const std::string& formula) {
        const ActionSchema* a = d.find_action(action);
        if (!a) throw std::invalid_argument("unknown action " + action);
        FormulaPtr phi = parse_formula(formula, d, a->params);
        return print_formula(lifted_regression(phi, *a, d.types));
      },
      py::arg("domain"), py::arg("action"), py::arg("formula"),
      "Lifted regression of a formula through a named action schema.");

  m.def(
      "enumerate_valid_plans",
      [](const DomainDef& d, const ProblemDef& p, int k, std::size_t cap) {
        PlanSet set = enumerate_valid_plans(d, p, k, cap);
        std::vector<std::vector<std::string>> plans(set.plans.begin(),
                                                    set.plans.end());
        return plans;
      },
      py::arg("domain"), py::arg("problem"), py::arg("k"),
      py::arg("ground_cap") = kDefaultGroundCap);

  m.def(
      "check_equivalence",
      [](const DomainDef& d, const ProblemDef& p, const std::string& mode,
         int k, std::size_t cap) {
        EquivalenceReport r =
            check_compiler_equivalence(d, p, mode_or_throw(mode), k, cap);
        py::dict result;
        result["ok"] = r.ok;
        result["mode"] = r.mode;
        result["original_plans"] = r.original_plans;
        result["compiled_plans"] = r.compiled_plans;
        result["mismatches"] = r.mismatches;
        return result;
      },
      py::arg("domain"), py::arg("problem"), py::arg("mode"), py::arg("k") = 4,
      py::arg("ground_cap") = kDefaultGroundCap);

  m.attr("__version__") = "0.1.0";
}
