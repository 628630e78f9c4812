#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pddl3c/model.hpp"
#include "pddl3c/parser.hpp"

namespace pddl3c {

/// A set of ground atoms.
struct State {
  std::set<Atom> atoms;

  bool contains(const Atom& a) const { return atoms.count(a) > 0; }
};

bool operator==(const State& a, const State& b);

/// A schema instance with no variables anywhere: the precondition is fully
/// instantiated and every universally quantified effect is expanded over
/// all type-compatible object tuples.
struct GroundAction {
  std::string schema;
  std::vector<Term> args;  // constants

  struct Effect {
    FormulaPtr condition;  // ground
    Literal literal;       // ground
  };

  FormulaPtr precondition;  // ground
  std::vector<Effect> effects;

  std::string render() const;
};

struct Trajectory {
  std::vector<State> states;  // plan length + 1
};

/// Outcome of plan validation; valid iff no failure.
struct Verdict {
  enum class Failure {
    None,
    InapplicableAction,
    GoalUnsatisfied,
    ConstraintViolated,
  };

  bool valid = true;
  Failure failure = Failure::None;
  int action_index = -1;      // InapplicableAction
  int constraint_index = -1;  // ConstraintViolated
  std::vector<int> witness;   // state indices for the violation
  std::string message;
};

/// Tarskian evaluation of a closed formula; quantifiers range over
/// type-compatible objects, equality is identity of constants.
bool holds(const State& s, const FormulaPtr& f, const Universe& u);

bool applicable(const State& s, const GroundAction& a, const Universe& u);

/// Successor state per the single-step equation: effect conditions are
/// evaluated against the pre-state, deletes are applied before adds.
/// Throws InapplicableActionError when the precondition fails.
State apply(const State& s, const GroundAction& a, const Universe& u,
            int step_index = -1);

/// Looks up each plan step's schema and instantiates it. Throws ParseError
/// on unknown actions/objects or type-incorrect arguments.
GroundAction instantiate_step(const DomainDef& d, const ProblemDef& p,
                              const PlanStep& step);

/// The state sequence induced by a plan from the initial state. Throws
/// InapplicableActionError naming the first failing step.
Trajectory trajectory(const DomainDef& d, const ProblemDef& p, const Plan& plan);

/// Direct evaluation of one trajectory constraint; on failure, fills
/// `witness` with the state indices demonstrating the violation.
bool satisfies_constraint(const Trajectory& t, const Constraint& c,
                          const Universe& u,
                          std::vector<int>* witness = nullptr);

/// Full validity: applicability of every step, goal satisfaction, and all
/// trajectory constraints.
Verdict validate_plan(const DomainDef& d, const ProblemDef& p, const Plan& plan);

}  // namespace pddl3c
