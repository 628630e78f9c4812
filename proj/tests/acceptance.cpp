// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 2 and 3 are the heavyweight exhaustive checks; their
// runtime budgets are asserted, not just observed.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "pddl3c/compile.hpp"
#include "pddl3c/grounding.hpp"
#include "pddl3c/lifted_regression.hpp"
#include "pddl3c/oracle.hpp"
#include "pddl3c/parser.hpp"
#include "pddl3c/printer.hpp"
#include "pddl3c/semantics.hpp"
#include "support.hpp"

using namespace pddl3c;
using namespace pddl3c::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Fixture {
  std::string domain_file;
  std::string problem_file;
};

const std::vector<Fixture> kFixtures = {
    {"bw2-domain.pddl", "bw2-p2.pddl"},
    {"bw2-domain.pddl", "bw2-p2c.pddl"},
    {"bw2-domain.pddl", "bw2-ex6-p5.pddl"},
    {"corridor-domain.pddl", "corridor-p1.pddl"},
    {"corridor-domain.pddl", "corridor-p2.pddl"},
};

#define REQUIRE_OR_FAIL(cond, message)         \
  do {                                         \
    if (!(cond)) {                             \
      detail = message;                        \
      return false;                            \
    }                                          \
  } while (0)

std::string bw2_sized_problem(int n) {
  std::ostringstream os;
  os << "(define (problem bw2-n" << n << ") (:domain blocksworld2) (:objects";
  for (int i = 1; i <= n; ++i) os << " b" << i;
  os << " - block) (:init (handempty) (on b4 b5) (ontable b5)";
  for (int i = 1; i <= n; ++i)
    if (i != 4 && i != 5) os << " (ontable b" << i << ")";
  for (int i = 1; i <= n; ++i)
    if (i != 5) os << " (clear b" << i << ")";
  os << ") (:goal (on b4 b3))"
     << " (:constraints (and (sometime (clear b5))"
     << " (at-most-once (ontable b1))"
     << " (sometime-before (clear b5) (exists (?topb - block) (on ?topb b3))))))";
  return os.str();
}

// --------------------------------------------------------------------------
// Criterion 1: worked-example reproduction, structural equality after
// simplification.
// --------------------------------------------------------------------------
bool criterion1(std::string& detail) {
  auto start = Clock::now();
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const ActionSchema& putdown2 = *d.find_action("putdown2");

  const Term b = Term::variable("?b", "block");
  const Term b1 = Term::constant("b1", "block");
  const Term b5 = Term::constant("b5", "block");
  const Term topb = Term::variable("?topb", "block");

  // Weakest conditions for the plain effects.
  ConditionalEffect table{{}, f_true(), Literal{true, Atom{"ontable", {b}}}};
  REQUIRE_OR_FAIL(
      formula_eq(weakest_condition(Literal{true, Atom{"ontable", {b1}}}, table,
                                   d.types),
                 f_equals(b, b1)),
      "weakest condition for the unconditional table effect");

  ConditionalEffect cond_clear{{}, f_not(f_atom(Atom{"towerbase", {b}})),
                               Literal{true, Atom{"clear", {b}}}};
  REQUIRE_OR_FAIL(
      formula_eq(weakest_condition(Literal{true, Atom{"clear", {b5}}},
                                   cond_clear, d.types),
                 f_and({f_not(f_atom(Atom{"towerbase", {b}})), f_equals(b, b5)})),
      "weakest condition for the conditional clear effect");

  // Weakest condition through the universally quantified effect.
  ConditionalEffect quant{{topb}, f_atom(Atom{"on", {topb, b}}),
                          Literal{true, Atom{"clear", {topb}}}};
  REQUIRE_OR_FAIL(
      formula_eq(weakest_condition(Literal{true, Atom{"clear", {b5}}}, quant,
                                   d.types),
                 f_atom(Atom{"on", {b5, b}})),
      "weakest condition through the quantified effect");

  // Gamma values.
  REQUIRE_OR_FAIL(
      formula_eq(lifted_gamma(Literal{true, Atom{"ontable", {b1}}}, putdown2,
                              d.types),
                 f_equals(b, b1)),
      "gamma of ontable(b1)");
  FormulaPtr gamma_clear =
      f_or({f_and({f_not(f_atom(Atom{"towerbase", {b}})), f_equals(b, b5)}),
            f_atom(Atom{"on", {b5, b}})});
  REQUIRE_OR_FAIL(
      formula_eq(lifted_gamma(Literal{true, Atom{"clear", {b5}}}, putdown2,
                              d.types),
                 gamma_clear),
      "gamma of clear(b5)");
  REQUIRE_OR_FAIL(
      is_false(lifted_gamma(Literal{false, Atom{"ontable", {b1}}}, putdown2,
                            d.types)) &&
          is_false(lifted_gamma(Literal{false, Atom{"clear", {b5}}}, putdown2,
                                d.types)),
      "negative gammas are false");

  // Regression values.
  REQUIRE_OR_FAIL(
      formula_eq(lifted_regression(f_atom(Atom{"ontable", {b1}}), putdown2,
                                   d.types),
                 f_or({f_equals(b, b1), f_atom(Atom{"ontable", {b1}})})),
      "regression of ontable(b1)");
  REQUIRE_OR_FAIL(
      formula_eq(lifted_regression(f_atom(Atom{"clear", {b5}}), putdown2,
                                   d.types),
                 f_or({f_atom(Atom{"on", {b5, b}}), f_atom(Atom{"clear", {b5}}),
                       f_and({f_not(f_atom(Atom{"towerbase", {b}})),
                              f_equals(b, b5)})})),
      "regression of clear(b5)");

  // Regression-based compiled items for putdown2, with the omission of the
  // sometime-before observation effect.
  ProblemDef p = fixture_problem("bw2-ex6-p5.pddl", d);
  CompileOutput tcore = compile_lifted_tcore(d, p);
  const ActionSchema& compiled = *tcore.domain.find_action("putdown2");
  REQUIRE_OR_FAIL(!tcore.unsolvable, "fixture compiles");
  REQUIRE_OR_FAIL(
      is_regression_trivial(p.constraints[2].arg2, putdown2, d.types),
      "the observation formula regresses trivially through putdown2");

  FormulaPtr r_clear = lifted_regression(p.constraints[0].arg1, putdown2, d.types);
  FormulaPtr r_ontable =
      lifted_regression(p.constraints[1].arg1, putdown2, d.types);
  std::string hold = tcore.hold_atoms.at(0);
  std::string seen_ao = tcore.seen_atoms.at(canonical_key(p.constraints[1].arg1));
  std::string seen_sb = tcore.seen_atoms.at(canonical_key(p.constraints[2].arg2));

  FormulaPtr expected_pre = f_and(
      {putdown2.precondition,
       f_not(f_and({f_atom(Atom{seen_ao, {}}), f_not(p.constraints[1].arg1),
                    r_ontable})),
       f_implies(r_clear, f_atom(Atom{seen_sb, {}}))});
  REQUIRE_OR_FAIL(formula_eq(compiled.precondition, expected_pre),
                  "regression-mode preconditions of putdown2");

  REQUIRE_OR_FAIL(compiled.effects.size() == putdown2.effects.size() + 2,
                  "regression mode adds exactly two effects to putdown2");
  const ConditionalEffect& e_hold = compiled.effects[putdown2.effects.size()];
  const ConditionalEffect& e_seen = compiled.effects[putdown2.effects.size() + 1];
  REQUIRE_OR_FAIL((e_hold.literal == Literal{true, Atom{hold, {}}} &&
                   formula_eq(e_hold.condition, r_clear)),
                  "hold observer of putdown2");
  REQUIRE_OR_FAIL((e_seen.literal == Literal{true, Atom{seen_ao, {}}} &&
                   formula_eq(e_seen.condition, r_ontable)),
                  "seen observer of putdown2");
  for (const ConditionalEffect& e : compiled.effects)
    REQUIRE_OR_FAIL(e.literal.atom.predicate != seen_sb,
                    "the trivial observation effect is omitted");

  // Regression-free compiled items.
  CompileOutput lcc = compile_lcc(d, p);
  std::string l_hold = lcc.hold_atoms.at(0);
  std::string l_seen_ao = lcc.seen_atoms.at(canonical_key(p.constraints[1].arg1));
  std::string l_seen_sb = lcc.seen_atoms.at(canonical_key(p.constraints[2].arg2));
  std::string l_prevent =
      lcc.prevent_atoms.at(canonical_key(p.constraints[1].arg1));

  const FormulaPtr phi_st = p.constraints[0].arg1;
  const FormulaPtr phi_ao = p.constraints[1].arg1;
  const FormulaPtr psi_sb = p.constraints[2].arg2;
  std::vector<ConditionalEffect> expected_items = {
      {{}, simplify(phi_st), Literal{true, Atom{l_hold, {}}}},
      {{}, simplify(phi_ao), Literal{true, Atom{l_seen_ao, {}}}},
      {{}, simplify(f_and({f_not(phi_ao), f_atom(Atom{l_seen_ao, {}})})),
       Literal{true, Atom{l_prevent, {}}}},
      {{}, simplify(psi_sb), Literal{true, Atom{l_seen_sb, {}}}},
  };
  for (const ActionSchema& original : d.actions) {
    const ActionSchema& c = *lcc.domain.find_action(original.name);
    REQUIRE_OR_FAIL(c.effects.size() ==
                        original.effects.size() + expected_items.size(),
                    "regression-free mode shares all items with " + original.name);
    for (std::size_t i = 0; i < expected_items.size(); ++i) {
      const ConditionalEffect& got = c.effects[original.effects.size() + i];
      REQUIRE_OR_FAIL(got.literal == expected_items[i].literal &&
                          formula_eq(got.condition, expected_items[i].condition),
                      "shared item " + std::to_string(i) + " on " + original.name);
    }
    FormulaPtr expected = f_and(
        {original.precondition,
         f_not(f_and({phi_ao, f_atom(Atom{l_prevent, {}})})),
         f_implies(phi_st, f_atom(Atom{l_seen_sb, {}})),
         f_not(f_atom(Atom{lcc.end_atom, {}}))});
    REQUIRE_OR_FAIL(formula_eq(c.precondition, expected),
                    "regression-free preconditions of " + original.name);
  }
  const ActionSchema* fin = lcc.domain.find_action("fin");
  REQUIRE_OR_FAIL(fin != nullptr && fin->effects.size() == expected_items.size() + 1,
                  "fin carries the shared items plus end");

  double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "examples reproduced in " << elapsed << "s";
  detail = os.str();
  return elapsed < 1.0;
}

// --------------------------------------------------------------------------
// Criterion 2: exhaustive regression correctness.
// --------------------------------------------------------------------------
bool criterion2(std::string& detail) {
  auto start = Clock::now();
  long long checks = 0;

  DomainDef d = fixture_domain("bw2-domain.pddl");
  ProblemDef p = fixture_problem("bw2-p2.pddl", d);
  Lemma1Report fixture_report = check_lemma1(d, p.objects, 12, 1);
  checks += fixture_report.checks;
  if (!fixture_report.ok) {
    detail = "two-block fixture: " + fixture_report.counterexamples.front();
    return false;
  }

  for (unsigned seed = 0; seed < 200; ++seed) {
    FuzzTask task = fuzz_task(seed);
    Lemma1Report report = check_lemma1(task.domain, task.problem.objects, 6, seed);
    checks += report.checks;
    if (!report.ok) {
      detail = "seed " + std::to_string(seed) + ": " +
               report.counterexamples.front();
      return false;
    }
  }

  double elapsed = seconds_since(start);
  std::ostringstream os;
  os << checks << " checks, zero counterexamples, " << elapsed << "s";
  detail = os.str();
  return elapsed < 300.0;
}

// --------------------------------------------------------------------------
// Criterion 3: plan-set equivalence for every mode.
// --------------------------------------------------------------------------
bool criterion3(std::string& detail) {
  auto start = Clock::now();
  const std::vector<CompileMode> modes = {
      CompileMode::LiftedTcore, CompileMode::Lcc, CompileMode::GroundTcore};

  for (const Fixture& f : kFixtures) {
    DomainDef d = fixture_domain(f.domain_file);
    ProblemDef p = fixture_problem(f.problem_file, d);
    for (CompileMode mode : modes) {
      EquivalenceReport report = check_compiler_equivalence(d, p, mode, 4);
      if (!report.ok) {
        detail = f.problem_file + " mode " + to_string(mode) + ": " +
                 report.mismatches.front();
        return false;
      }
    }
  }

  for (unsigned seed = 0; seed < 200; ++seed) {
    FuzzTask task = fuzz_task(seed);
    for (CompileMode mode : modes) {
      EquivalenceReport report =
          check_compiler_equivalence(task.domain, task.problem, mode, 4);
      if (!report.ok) {
        detail = "seed " + std::to_string(seed) + " mode " + to_string(mode) +
                 ": " + report.mismatches.front();
        return false;
      }
    }
  }

  double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "5 fixtures + 200 fuzzed problems x 3 modes, zero discrepancies, "
     << elapsed << "s";
  detail = os.str();
  return elapsed < 600.0;
}

// --------------------------------------------------------------------------
// Criterion 4: compiled sizes as the object count grows.
// --------------------------------------------------------------------------
bool criterion4(std::string& detail) {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const int base_actions = static_cast<int>(d.actions.size());

  for (int n : {5, 10, 20}) {
    ProblemDef p = parse_problem(bw2_sized_problem(n), d);

    CompileOutput lifted = compile_lifted_tcore(d, p);
    REQUIRE_OR_FAIL(lifted.stats.n_actions_out == base_actions,
                    "regression mode action count is not constant at n=" +
                        std::to_string(n));

    CompileOutput lcc = compile_lcc(d, p);
    REQUIRE_OR_FAIL(lcc.stats.n_actions_out == base_actions + 1,
                    "regression-free action count is not constant at n=" +
                        std::to_string(n));

    CompileOutput ground = compile_tcore_ground(d, p);
    int pickup2_instances = 0;
    for (const ActionSchema& a : ground.domain.actions)
      if (a.name.rfind("pickup2_", 0) == 0) ++pickup2_instances;
    REQUIRE_OR_FAIL(pickup2_instances == n * (n - 1),
                    "pickup2 must ground to exactly n(n-1) = " +
                        std::to_string(n * (n - 1)) + " instances, got " +
                        std::to_string(pickup2_instances));
    REQUIRE_OR_FAIL(ground.stats.n_actions_out > base_actions,
                    "ground baseline must multiply actions");
  }
  detail = "action counts 5/6 constant; pickup2 grounds to 20/90/380";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 5: linear instrumented cost of the regression-free compiler.
// --------------------------------------------------------------------------
bool criterion5(std::string& detail) {
  auto build = [](int n_actions, int n_constraints) {
    DomainDef d;
    d.name = "scale";
    for (int i = 0; i < n_constraints; ++i)
      d.predicates.push_back(PredicateDef{"q" + std::to_string(i), {}});
    d.predicates.push_back(PredicateDef{"p", {}});
    for (int i = 0; i < n_actions; ++i) {
      ActionSchema a;
      a.name = "a" + std::to_string(i);
      a.precondition = f_true();
      a.effects.push_back(
          ConditionalEffect{{}, f_true(), Literal{true, Atom{"p", {}}}});
      d.actions.push_back(std::move(a));
    }
    ProblemDef p;
    p.name = "scale";
    p.domain_name = "scale";
    p.goal = f_atom(Atom{"p", {}});
    for (int i = 0; i < n_constraints; ++i) {
      Constraint c;
      c.kind = Constraint::Kind::Sometime;
      c.index = i;
      c.arg1 = f_atom(Atom{"q" + std::to_string(i), {}});
      p.constraints.push_back(std::move(c));
    }
    return std::pair{d, p};
  };
  auto ops = [&](int n_actions, int n_constraints) {
    auto [d, p] = build(n_actions, n_constraints);
    return compile_lcc(d, p).stats.n_operations;
  };

  for (int n = 2; n <= 32; n *= 2) {
    long long base_c = ops(4, n), doubled_c = ops(4, 2 * n);
    REQUIRE_OR_FAIL(doubled_c <= 2.0 * 1.25 * base_c,
                    "constraint doubling at n=" + std::to_string(n) + ": " +
                        std::to_string(base_c) + " -> " +
                        std::to_string(doubled_c));
    long long base_a = ops(n, 4), doubled_a = ops(2 * n, 4);
    REQUIRE_OR_FAIL(doubled_a <= 2.0 * 1.25 * base_a,
                    "action doubling at n=" + std::to_string(n) + ": " +
                        std::to_string(base_a) + " -> " +
                        std::to_string(doubled_a));
  }
  detail = "operation counts stay within 2x (1.25 slack) over 5 doublings";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 6: structural properties of both compilations on every fixture.
// --------------------------------------------------------------------------
bool criterion6(std::string& detail) {
  for (const Fixture& f : kFixtures) {
    DomainDef d = fixture_domain(f.domain_file);
    ProblemDef p = fixture_problem(f.problem_file, d);
    Universe u(d.types, p.objects);
    State init;
    init.atoms.insert(p.init.begin(), p.init.end());

    CompileOutput lifted = compile_lifted_tcore(d, p);
    REQUIRE_OR_FAIL(lifted.domain.actions.size() == d.actions.size(),
                    f.problem_file + ": regression mode added actions");

    // The initial state grows by exactly the satisfied monitoring atoms.
    std::set<Atom> added;
    for (const Atom& a : lifted.problem.init) added.insert(a);
    for (const Atom& a : p.init) added.erase(a);
    for (const Atom& a : added)
      REQUIRE_OR_FAIL(lifted.monitor_predicates.count(a.predicate),
                      f.problem_file + ": foreign atom added to init");
    for (const Constraint& c : p.constraints) {
      switch (c.kind) {
        case Constraint::Kind::Sometime:
          REQUIRE_OR_FAIL(
              added.count(Atom{lifted.hold_atoms.at(c.index), {}}) ==
                  static_cast<std::size_t>(holds(init, c.arg1, u) ? 1 : 0),
              f.problem_file + ": wrong initial hold atom");
          break;
        case Constraint::Kind::SometimeAfter:
          REQUIRE_OR_FAIL(
              added.count(Atom{lifted.hold_atoms.at(c.index), {}}) ==
                  static_cast<std::size_t>(
                      (holds(init, c.arg2, u) || !holds(init, c.arg1, u)) ? 1
                                                                          : 0),
              f.problem_file + ": wrong initial hold atom (after)");
          break;
        case Constraint::Kind::SometimeBefore:
        case Constraint::Kind::AtMostOnce: {
          const FormulaPtr& obs = c.kind == Constraint::Kind::SometimeBefore
                                      ? c.arg2
                                      : c.arg1;
          REQUIRE_OR_FAIL(
              added.count(Atom{lifted.seen_atoms.at(canonical_key(obs)), {}}) ==
                  static_cast<std::size_t>(holds(init, obs, u) ? 1 : 0),
              f.problem_file + ": wrong initial seen atom");
          break;
        }
        case Constraint::Kind::Always:
          break;
      }
    }

    CompileOutput lcc = compile_lcc(d, p);
    REQUIRE_OR_FAIL(lcc.domain.actions.size() == d.actions.size() + 1,
                    f.problem_file + ": regression-free mode must add one action");
    REQUIRE_OR_FAIL(lcc.domain.find_action("fin") != nullptr,
                    f.problem_file + ": fin missing");
    REQUIRE_OR_FAIL(lcc.domain.find_predicate("__end") != nullptr,
                    f.problem_file + ": end atom missing");

    std::size_t ao_keys = 0;
    {
      std::set<std::string> keys;
      for (const Constraint& c : p.constraints)
        if (c.kind == Constraint::Kind::AtMostOnce)
          keys.insert(canonical_key(c.arg1));
      ao_keys = keys.size();
    }
    REQUIRE_OR_FAIL(lcc.prevent_atoms.size() == ao_keys,
                    f.problem_file + ": one prevent atom per at-most-once formula");

    std::set<Atom> lcc_added;
    for (const Atom& a : lcc.problem.init) lcc_added.insert(a);
    for (const Atom& a : p.init) lcc_added.erase(a);
    std::set<Atom> expected_init;
    for (const Constraint& c : p.constraints)
      if (c.kind == Constraint::Kind::SometimeAfter)
        expected_init.insert(Atom{lcc.hold_atoms.at(c.index), {}});
    REQUIRE_OR_FAIL(lcc_added == expected_init,
                    f.problem_file +
                        ": regression-free init must add exactly the "
                        "sometime-after hold atoms");
  }
  detail = "asserted on all 5 fixtures";
  return true;
}

// --------------------------------------------------------------------------
// Criterion 7: out-of-scope planner benchmarks, substituted by the property
// suites plus mutation detection.
// --------------------------------------------------------------------------
bool criterion7(std::string& detail) {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  ProblemDef p = fixture_problem("bw2-p2.pddl", d);
  Lemma1Report mutated = check_lemma1(
      d, p.objects, 12, 1,
      [&](const FormulaPtr& phi, const ActionSchema& a) {
        return mutated_lifted_regression_drop_persistence(phi, a, d.types);
      });
  REQUIRE_OR_FAIL(!mutated.ok && !mutated.counterexamples.empty(),
                  "the broken regression variant must be detected");
  detail =
      "planner-scale coverage/runtime tables are out of scope by design; "
      "substitute property suites ran (criteria 2-3) and the persistence "
      "mutation is detected by the exhaustive check";
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string description;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "worked-example reproduction (weakest conditions, gammas, "
          "regressions, compiled items)", criterion1},
      {2, "exhaustive regression correctness on the fixture and 200 fuzzed "
          "domains", criterion2},
      {3, "plan-set equivalence across all compilation modes", criterion3},
      {4, "compiled-size scaling in the object count", criterion4},
      {5, "linear instrumented cost of the regression-free compiler", criterion5},
      {6, "structural compilation invariants on every fixture", criterion6},
      {7, "out-of-scope planner benchmarks substituted by property suites "
          "and mutation detection", criterion7},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": "
              << c.description;
    if (!detail.empty()) std::cout << " [" << detail << "]";
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
