#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pddl3c/compile.hpp"
#include "pddl3c/errors.hpp"
#include "pddl3c/model.hpp"
#include "pddl3c/parser.hpp"
#include "pddl3c/printer.hpp"
#include "support.hpp"

using namespace pddl3c;
using namespace pddl3c::test;

namespace {

// The putdown2 description before the two-block tower extension: four
// normalized effects, one carrying a non-trivial condition.
const char* kPutdown2Only = R"((define (domain bw2-mini)
  (:requirements :adl :typing)
  (:types block - object)
  (:predicates (handempty) (ontable ?b - block) (holding ?b - block)
               (clear ?b - block) (towerbase ?b - block))
  (:action putdown2
    :parameters (?b - block)
    :precondition (holding ?b)
    :effect (and (handempty)
                 (ontable ?b)
                 (not (holding ?b))
                 (when (not (towerbase ?b)) (clear ?b)))))
)";

}  // namespace

TEST_CASE("parse_domain splits compound effects into conditional literals") {
  DomainDef d = parse_domain(kPutdown2Only);
  REQUIRE(d.actions.size() == 1);
  const ActionSchema& a = d.actions[0];
  CHECK(a.name == "putdown2");
  REQUIRE(a.params.size() == 1);
  CHECK(a.params[0].name == "?b");
  CHECK(a.params[0].type == "block");
  REQUIRE(a.effects.size() == 4);

  int conditional = 0;
  for (const ConditionalEffect& e : a.effects) {
    CHECK(e.z_vars.empty());
    if (!is_true(e.condition)) ++conditional;
  }
  CHECK(conditional == 1);
  CHECK(a.effects[0].literal.positive);
  CHECK(a.effects[0].literal.atom.predicate == "handempty");
  CHECK_FALSE(a.effects[2].literal.positive);
  CHECK(a.effects[2].literal.atom.predicate == "holding");
}

TEST_CASE("parse_domain captures forall effects as z variables") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const ActionSchema* putdown2 = d.find_action("putdown2");
  REQUIRE(putdown2 != nullptr);
  REQUIRE(putdown2->effects.size() == 5);
  const ConditionalEffect& quantified = putdown2->effects[4];
  REQUIRE(quantified.z_vars.size() == 1);
  CHECK(quantified.z_vars[0].name == "?topb");
  CHECK(quantified.literal.atom.predicate == "clear");
  CHECK(quantified.literal.atom.args[0].name == "?topb");
}

TEST_CASE("parse_domain accepts a domain with zero actions") {
  DomainDef d = parse_domain(
      "(define (domain empty) (:predicates (p)))");
  CHECK(d.actions.empty());
  CHECK(d.predicates.size() == 1);
}

TEST_CASE("parse_domain rejects numeric fluents by name") {
  const char* text = R"((define (domain num)
    (:predicates (p))
    (:action a :parameters ()
      :precondition (p)
      :effect (and (p) (increase (cost) 1)))))";
  CHECK_THROWS_AS(parse_domain(text), UnsupportedFeatureError);
}

TEST_CASE("parse_domain rejects the other out-of-fragment sections") {
  for (const char* block :
       {"(:functions (cost))",
        "(:durative-action walk :parameters () :duration 3)",
        "(:derived (p) (and))"}) {
    std::string text =
        std::string("(define (domain x) (:predicates (p)) ") + block + ")";
    CHECK_THROWS_AS(parse_domain(text), UnsupportedFeatureError);
  }
  CHECK_THROWS_AS(
      parse_domain("(define (domain x) (:requirements :fluents))"),
      UnsupportedFeatureError);
  CHECK_THROWS_AS(
      parse_domain("(define (domain x) (:requirements :durative-actions))"),
      UnsupportedFeatureError);
}

TEST_CASE("reserved monitoring names are accepted in input but minting "
          "collisions are an error") {
  // Compiled artifacts re-parse, so the reserved prefix itself is legal.
  DomainDef d = parse_domain(R"((define (domain r)
    (:predicates (p) (__hold_0))
    (:action a :parameters () :precondition (p) :effect (p))))");
  CHECK(d.find_predicate("__hold_0") != nullptr);
  // A compilation that would mint the same name refuses to proceed.
  ProblemDef p = parse_problem(R"((define (problem rp) (:domain r)
    (:init (p)) (:goal (p))
    (:constraints (and (sometime (p))))))", d);
  CHECK_THROWS_AS(compile_lifted_tcore(d, p), ParseError);
}

TEST_CASE("parse_problem keeps constraint arguments in order") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  ProblemDef p = fixture_problem("bw2-ex6-p5.pddl", d);
  REQUIRE(p.constraints.size() == 3);

  CHECK(p.constraints[0].kind == Constraint::Kind::Sometime);
  CHECK(p.constraints[1].kind == Constraint::Kind::AtMostOnce);
  CHECK(p.constraints[2].kind == Constraint::Kind::SometimeBefore);

  // (sometime-before f g): f triggers, g must appear strictly earlier.
  const Constraint& sb = p.constraints[2];
  CHECK(formula_eq(sb.arg1, parse_formula("(clear b5)", d)));
  CHECK(sb.arg2->kind == Formula::Kind::Exists);
  CHECK(free_variables(sb.arg2).empty());
}

TEST_CASE("parse_problem accepts an empty constraints block") {
  DomainDef d = fixture_domain("corridor-domain.pddl");
  ProblemDef p = parse_problem(R"((define (problem c)
    (:domain corridor)
    (:objects r - robot a b - cell)
    (:init (at r a) (adj a b))
    (:goal (at r b))
    (:constraints (and))))",
                               d);
  CHECK(p.constraints.empty());
}

TEST_CASE("parse_problem rejects undeclared objects") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const char* text = R"((define (problem bad)
    (:domain blocksworld2)
    (:objects b1 - block)
    (:init (ontable b9))
    (:goal (ontable b1))))";
  CHECK_THROWS_AS(parse_problem(text, d), ParseError);
}

TEST_CASE("parse_problem rejects non-closed constraint formulas") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const char* text = R"((define (problem bad)
    (:domain blocksworld2)
    (:objects b1 - block)
    (:init (ontable b1))
    (:goal (ontable b1))
    (:constraints (and (always (ontable ?x))))))";
  CHECK_THROWS_AS(parse_problem(text, d), ParseError);
}

TEST_CASE("parse_problem rejects quantifiers wrapping a non-always constraint") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const char* text = R"((define (problem bad)
    (:domain blocksworld2)
    (:objects b1 - block)
    (:init (ontable b1))
    (:goal (ontable b1))
    (:constraints (forall (?b - block) (sometime (clear ?b))))))";
  CHECK_THROWS_AS(parse_problem(text, d), ParseError);
}

TEST_CASE("a quantified always constraint is rewritten inward") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  ProblemDef p = parse_problem(R"((define (problem ok)
    (:domain blocksworld2)
    (:objects b1 - block)
    (:init (ontable b1) (clear b1))
    (:goal (ontable b1))
    (:constraints (forall (?b - block) (always (not (holding ?b)))))))",
                               d);
  REQUIRE(p.constraints.size() == 1);
  CHECK(p.constraints[0].kind == Constraint::Kind::Always);
  CHECK(formula_eq(
      p.constraints[0].arg1,
      parse_formula("(forall (?b - block) (not (holding ?b)))", d)));
}

TEST_CASE("parse_problem rejects metric-time modalities and preferences") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  const char* base = R"((define (problem bad)
    (:domain blocksworld2)
    (:objects b1 - block)
    (:init (ontable b1))
    (:goal (ontable b1))
    (:constraints %s)))";
  for (const char* block :
       {"(within 3 (ontable b1))", "(hold-after 2 (ontable b1))",
        "(preference pref1 (always (ontable b1)))",
        "(sometime (sometime (ontable b1)))"}) {
    std::string text = base;
    text.replace(text.find("%s"), 2, block);
    CHECK_THROWS_AS(parse_problem(text, d), UnsupportedFeatureError);
  }
}

TEST_CASE("round-trip: parse of print equals the original parse") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  DomainDef d2 = parse_domain(print_domain(d));
  CHECK(domain_equal(d, d2));

  for (const char* name : {"bw2-p2.pddl", "bw2-p2c.pddl", "bw2-ex6-p5.pddl"}) {
    ProblemDef p = fixture_problem(name, d);
    ProblemDef p2 = parse_problem(print_problem(p, d), d);
    CHECK(problem_equal(p, p2));
  }

  DomainDef c = fixture_domain("corridor-domain.pddl");
  CHECK(domain_equal(c, parse_domain(print_domain(c))));
  for (const char* name : {"corridor-p1.pddl", "corridor-p2.pddl"}) {
    ProblemDef p = fixture_problem(name, c);
    CHECK(problem_equal(p, parse_problem(print_problem(p, c), c)));
  }
}

TEST_CASE("printing a constraint-free problem emits no constraints block") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  ProblemDef p = fixture_problem("bw2-p2.pddl", d);
  std::string text = print_problem(p, d);
  CHECK(text.find(":constraints") == std::string::npos);
}

TEST_CASE("equality atoms print with the :equality requirement") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  std::string text = print_domain(d);
  CHECK(text.find("(= ?t ?b)") != std::string::npos);
  CHECK(text.find(":equality") != std::string::npos);
  CHECK(domain_equal(d, parse_domain(text)));
}

TEST_CASE("apply_substitution replaces free occurrences only") {
  DomainDef d = fixture_domain("bw2-domain.pddl");

  Substitution theta;
  theta.bind(Term::variable("?b", "block"), Term::constant("b1", "block"));
  FormulaPtr f = parse_formula("(ontable ?b)", d,
                               {Term::variable("?b", "block")});
  CHECK(formula_eq(substitute(f, theta), parse_formula("(ontable b1)", d)));

  // Identity substitution.
  FormulaPtr g = parse_formula("(exists (?topb - block) (on ?topb b3))", d);
  CHECK(equal(substitute(g, Substitution{}), g));

  // Bound occurrences stay untouched.
  Substitution both;
  both.bind(Term::variable("?topb", "block"), Term::constant("b9", "block"));
  both.bind(Term::variable("?b", "block"), Term::constant("b3", "block"));
  FormulaPtr h = parse_formula("(exists (?topb - block) (on ?topb ?b))", d,
                               {Term::variable("?b", "block")});
  FormulaPtr applied = substitute(h, both);
  CHECK(formula_eq(applied, parse_formula("(exists (?topb - block) (on ?topb b3))", d)));
  CHECK(free_variables(h) == std::set<std::string>{"?b"});
  CHECK(free_variables(applied).empty());
}

TEST_CASE("simplify reproduces the expected reduced forms") {
  Term b = Term::variable("?b", "block");
  Term b1 = Term::constant("b1", "block");
  FormulaPtr ontable_b1 = f_atom(Atom{"ontable", {b1}});

  // ((?b = b1) or (ontable(b1) and not false))
  FormulaPtr messy = f_or({f_equals(b, b1), f_and({ontable_b1, f_not(f_false())})});
  CHECK(formula_eq(messy, f_or({f_equals(b, b1), ontable_b1})));
  CHECK(simplify(messy)->children.size() == 2);

  // false or phi -> phi
  CHECK(formula_eq(f_or({f_false(), ontable_b1}), ontable_b1));

  // seen and not phi and phi -> false
  FormulaPtr seen = f_atom(Atom{"seen", {}});
  CHECK(is_false(simplify(f_and({seen, f_not(ontable_b1), ontable_b1}))));
}

TEST_CASE("simplify folds ground equalities") {
  Term b1 = Term::constant("b1", "block");
  Term b2 = Term::constant("b2", "block");
  CHECK(is_true(simplify(f_equals(b1, b1))));
  CHECK(is_false(simplify(f_equals(b1, b2))));
  Term x = Term::variable("?x", "block");
  CHECK(is_true(simplify(f_equals(x, x))));
  CHECK(simplify(f_equals(b1, x))->lhs.is_variable);
}

TEST_CASE("free_variables is exact") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  CHECK(free_variables(parse_formula("(exists (?topb - block) (on ?topb b3))", d))
            .empty());
  CHECK(free_variables(parse_formula("(on ?x b3)", d,
                                     {Term::variable("?x", "block")})) ==
        std::set<std::string>{"?x"});
  CHECK(free_variables(parse_formula("(forall (?x - block) (on ?x ?y))", d,
                                     {Term::variable("?y", "block")})) ==
        std::set<std::string>{"?y"});
}

TEST_CASE("simplify is idempotent on random formulas") {
  GroundFormulaGen gen(7);
  for (int i = 0; i < 300; ++i) {
    FormulaPtr f = gen();
    FormulaPtr once = simplify(f);
    CHECK(equal(once, simplify(once)));
  }
}

TEST_CASE("simplify preserves truth tables on random ground formulas") {
  GroundFormulaGen gen(11);
  for (int i = 0; i < 120; ++i) {
    FormulaPtr f = gen();
    FormulaPtr s = simplify(f);
    for (unsigned mask = 0; mask < 256u; ++mask)
      REQUIRE(truth_under(f, mask, gen) == truth_under(s, mask, gen));
  }
}

TEST_CASE("substitution distributes over every connective") {
  DomainDef d = fixture_domain("bw2-domain.pddl");
  Term x = Term::variable("?x", "block");
  Term y = Term::variable("?y", "block");
  Substitution theta;
  theta.bind(x, Term::constant("b1", "block"));
  theta.bind(y, Term::constant("b2", "block"));

  FormulaPtr phi = parse_formula("(on ?x ?y)", d, {x, y});
  FormulaPtr psi = parse_formula("(not (clear ?x))", d, {x, y});

  CHECK(equal(substitute(f_and({phi, psi}), theta),
              f_and({substitute(phi, theta), substitute(psi, theta)})));
  CHECK(equal(substitute(f_or({phi, psi}), theta),
              f_or({substitute(phi, theta), substitute(psi, theta)})));
  CHECK(equal(substitute(f_not(phi), theta), f_not(substitute(phi, theta))));
  CHECK(equal(substitute(f_implies(phi, psi), theta),
              f_implies(substitute(phi, theta), substitute(psi, theta))));
  Term z = Term::variable("?z", "block");
  FormulaPtr body = parse_formula("(on ?z ?y)", d, {z, y});
  CHECK(equal(substitute(f_forall({z}, body), theta),
              f_forall({z}, substitute(body, theta))));
  CHECK(equal(substitute(f_exists({z}, body), theta),
              f_exists({z}, substitute(body, theta))));
}

TEST_CASE("substitutions stay idempotent under chained binds") {
  Term x = Term::variable("?x");
  Term y = Term::variable("?y");
  Substitution s;
  s.bind(x, y);
  s.bind(y, Term::constant("o1"));
  // Applying twice equals applying once.
  Term r1 = substitute(x, s);
  CHECK(substitute(r1, s) == r1);
  CHECK(r1.name == "o1");
}
