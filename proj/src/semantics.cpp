#include "pddl3c/semantics.hpp"

#include <algorithm>

#include "pddl3c/errors.hpp"
#include "pddl3c/grounding.hpp"

namespace pddl3c {

bool operator==(const State& a, const State& b) { return a.atoms == b.atoms; }

std::string GroundAction::render() const {
  std::string out = "(" + schema;
  for (const Term& t : args) out += " " + t.name;
  return out + ")";
}

// ---------------------------------------------------------------------------
// Model checking
// ---------------------------------------------------------------------------

namespace {

bool holds_rec(const State& s, const FormulaPtr& f, const Universe& u,
               Substitution& env) {
  switch (f->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom:
      return s.contains(substitute(f->atom, env));
    case Formula::Kind::Equals: {
      Term a = substitute(f->lhs, env);
      Term b = substitute(f->rhs, env);
      if (a.is_variable || b.is_variable)
        throw Error("evaluated formula is not closed: " +
                    (a.is_variable ? a.name : b.name));
      return a.name == b.name;
    }
    case Formula::Kind::Not:
      return !holds_rec(s, f->children[0], u, env);
    case Formula::Kind::And:
      for (const FormulaPtr& c : f->children)
        if (!holds_rec(s, c, u, env)) return false;
      return true;
    case Formula::Kind::Or:
      for (const FormulaPtr& c : f->children)
        if (holds_rec(s, c, u, env)) return true;
      return false;
    case Formula::Kind::Implies:
      return !holds_rec(s, f->children[0], u, env) ||
             holds_rec(s, f->children[1], u, env);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool universal = f->kind == Formula::Kind::Forall;
      // Expand one binder at a time over its type's objects.
      std::vector<Substitution> envs{env};
      for (const Term& v : f->vars) {
        std::vector<Substitution> next;
        for (const Substitution& e : envs) {
          for (const Term& obj : u.objects_of(v.type)) {
            Substitution extended = e;
            extended.bind(v, obj);
            next.push_back(std::move(extended));
          }
        }
        envs = std::move(next);
      }
      for (Substitution& e : envs) {
        bool value = holds_rec(s, f->children[0], u, e);
        if (universal && !value) return false;
        if (!universal && value) return true;
      }
      return universal;
    }
  }
  return false;
}

}  // namespace

bool holds(const State& s, const FormulaPtr& f, const Universe& u) {
  Substitution env;
  return holds_rec(s, f, u, env);
}

// ---------------------------------------------------------------------------
// Action application
// ---------------------------------------------------------------------------

bool applicable(const State& s, const GroundAction& a, const Universe& u) {
  return holds(s, a.precondition, u);
}

State apply(const State& s, const GroundAction& a, const Universe& u,
            int step_index) {
  if (!applicable(s, a, u))
    throw InapplicableActionError(a.render(), step_index);
  std::vector<const Atom*> adds, dels;
  for (const GroundAction::Effect& e : a.effects) {
    if (!holds(s, e.condition, u)) continue;
    (e.literal.positive ? adds : dels).push_back(&e.literal.atom);
  }
  State out = s;
  for (const Atom* d : dels) out.atoms.erase(*d);
  for (const Atom* add : adds) out.atoms.insert(*add);
  return out;
}

GroundAction instantiate_step(const DomainDef& d, const ProblemDef& p,
                              const PlanStep& step) {
  const ActionSchema* schema = d.find_action(step.action);
  if (!schema) throw ParseError("unknown action " + step.action);
  if (schema->params.size() != step.args.size())
    throw ParseError("action " + step.action + " expects " +
                     std::to_string(schema->params.size()) + " arguments, got " +
                     std::to_string(step.args.size()));
  std::vector<Term> args;
  for (std::size_t i = 0; i < step.args.size(); ++i) {
    auto it = p.objects.find(step.args[i]);
    if (it == p.objects.end())
      throw ParseError("unknown object " + step.args[i] + " in plan step " +
                       step.render());
    Term obj = Term::constant(it->first, it->second);
    if (!d.types.is_subtype(obj.type, schema->params[i].type))
      throw ParseError("object " + obj.name + " of type " + obj.type +
                       " is not a " + schema->params[i].type + " in " +
                       step.render());
    args.push_back(std::move(obj));
  }
  Universe u(d.types, p.objects);
  return instantiate(*schema, args, u);
}

Trajectory trajectory(const DomainDef& d, const ProblemDef& p, const Plan& plan) {
  Universe u(d.types, p.objects);
  Trajectory t;
  State s;
  s.atoms.insert(p.init.begin(), p.init.end());
  t.states.push_back(s);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    GroundAction g = instantiate_step(d, p, plan[i]);
    s = apply(s, g, u, static_cast<int>(i));
    t.states.push_back(s);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Trajectory constraints
// ---------------------------------------------------------------------------

bool satisfies_constraint(const Trajectory& t, const Constraint& c,
                          const Universe& u, std::vector<int>* witness) {
  const auto n = static_cast<int>(t.states.size());
  auto truth = [&](const FormulaPtr& f, int i) {
    return holds(t.states[i], f, u);
  };

  switch (c.kind) {
    case Constraint::Kind::Always:
      for (int i = 0; i < n; ++i) {
        if (!truth(c.arg1, i)) {
          if (witness) *witness = {i};
          return false;
        }
      }
      return true;

    case Constraint::Kind::Sometime:
      for (int i = 0; i < n; ++i)
        if (truth(c.arg1, i)) return true;
      if (witness) witness->clear();
      return false;

    case Constraint::Kind::AtMostOnce: {
      // Violated iff the formula holds in two maximal intervals, i.e.
      // there are i < k < m with phi, not phi, phi.
      int first_true = -1, gap = -1;
      for (int i = 0; i < n; ++i) {
        bool v = truth(c.arg1, i);
        if (v && gap >= 0) {
          if (witness) *witness = {first_true, gap, i};
          return false;
        }
        if (v && first_true < 0) first_true = i;
        if (!v && first_true >= 0 && gap < 0) gap = i;
      }
      return true;
    }

    case Constraint::Kind::SometimeBefore:
      for (int i = 0; i < n; ++i) {
        if (!truth(c.arg1, i)) continue;
        bool earlier = false;
        for (int j = 0; j < i; ++j)
          if (truth(c.arg2, j)) {
            earlier = true;
            break;
          }
        if (!earlier) {
          if (witness) *witness = {i};
          return false;
        }
      }
      return true;

    case Constraint::Kind::SometimeAfter:
      for (int i = 0; i < n; ++i) {
        if (!truth(c.arg1, i)) continue;
        bool later = false;
        for (int j = i; j < n; ++j)
          if (truth(c.arg2, j)) {
            later = true;
            break;
          }
        if (!later) {
          if (witness) *witness = {i};
          return false;
        }
      }
      return true;
  }
  return true;
}

Verdict validate_plan(const DomainDef& d, const ProblemDef& p, const Plan& plan) {
  Universe u(d.types, p.objects);
  Verdict v;
  Trajectory t;
  try {
    t = trajectory(d, p, plan);
  } catch (const InapplicableActionError& e) {
    v.valid = false;
    v.failure = Verdict::Failure::InapplicableAction;
    v.action_index = e.index();
    v.message = e.what();
    return v;
  }

  if (!holds(t.states.back(), p.goal, u)) {
    v.valid = false;
    v.failure = Verdict::Failure::GoalUnsatisfied;
    v.message = "goal does not hold in the final state";
    return v;
  }

  for (const Constraint& c : p.constraints) {
    std::vector<int> witness;
    if (!satisfies_constraint(t, c, u, &witness)) {
      v.valid = false;
      v.failure = Verdict::Failure::ConstraintViolated;
      v.constraint_index = c.index;
      v.witness = witness;
      v.message = "constraint " + std::to_string(c.index) + " (" +
                  to_string(c.kind) + ") violated";
      return v;
    }
  }
  return v;
}

}  // namespace pddl3c
