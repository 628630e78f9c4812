#include "pddl3c/grounding.hpp"

#include <algorithm>

#include "pddl3c/errors.hpp"

namespace pddl3c {

std::vector<std::vector<Term>> object_tuples(const std::vector<Term>& vars,
                                             const Universe& u) {
  std::vector<std::vector<Term>> tuples{{}};
  for (const Term& v : vars) {
    const std::vector<Term>& objs = u.objects_of(v.type);
    std::vector<std::vector<Term>> next;
    next.reserve(tuples.size() * objs.size());
    for (const std::vector<Term>& t : tuples) {
      for (const Term& o : objs) {
        std::vector<Term> extended = t;
        extended.push_back(o);
        next.push_back(std::move(extended));
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

GroundAction instantiate(const ActionSchema& schema,
                         const std::vector<Term>& args, const Universe& u) {
  Substitution inst;
  for (std::size_t i = 0; i < schema.params.size(); ++i)
    inst.bind(schema.params[i], args[i]);

  GroundAction g;
  g.schema = schema.name;
  g.args = args;
  g.precondition = simplify(expand_quantifiers(substitute(schema.precondition, inst), u));

  for (const ConditionalEffect& e : schema.effects) {
    for (const std::vector<Term>& tuple : object_tuples(e.z_vars, u)) {
      Substitution full = inst;
      for (std::size_t i = 0; i < e.z_vars.size(); ++i)
        full.bind(e.z_vars[i], tuple[i]);
      FormulaPtr cond =
          simplify(expand_quantifiers(substitute(e.condition, full), u));
      if (is_false(cond)) continue;  // can never trigger
      g.effects.push_back({cond, substitute(e.literal, full)});
    }
  }
  return g;
}

FormulaPtr expand_quantifiers(const FormulaPtr& f, const Universe& u) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Equals:
      return f;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::vector<FormulaPtr> parts;
      for (const std::vector<Term>& tuple : object_tuples(f->vars, u)) {
        Substitution s;
        for (std::size_t i = 0; i < f->vars.size(); ++i)
          s.bind(f->vars[i], tuple[i]);
        parts.push_back(expand_quantifiers(substitute(f->children[0], s), u));
      }
      return f->kind == Formula::Kind::Forall ? f_and(std::move(parts))
                                              : f_or(std::move(parts));
    }
    default: {
      std::vector<FormulaPtr> children;
      children.reserve(f->children.size());
      for (const FormulaPtr& c : f->children)
        children.push_back(expand_quantifiers(c, u));
      Formula out;
      out.kind = f->kind;
      out.children = std::move(children);
      return std::make_shared<const Formula>(std::move(out));
    }
  }
}

GroundedProblem ground(const DomainDef& d, const ProblemDef& p,
                       std::size_t cap) {
  Universe u(d.types, p.objects);
  GroundedProblem g;

  for (const PredicateDef& pred : d.predicates) {
    for (const std::vector<Term>& tuple : object_tuples(pred.params, u))
      g.universe.push_back(Atom{pred.name, tuple});
  }

  for (const ActionSchema& a : d.actions) {
    for (const std::vector<Term>& tuple : object_tuples(a.params, u)) {
      GroundAction inst = instantiate(a, tuple, u);
      if (is_false(inst.precondition)) continue;  // statically inapplicable
      g.actions.push_back(std::move(inst));
      if (g.actions.size() > cap)
        throw ResourceLimitError(
            "ground action count exceeds the cap of " + std::to_string(cap) +
            "; raise it with --ground-cap");
    }
  }

  // The universe must be closed under action effects; variables typed
  // wider than their predicate position can otherwise produce atoms
  // outside the declared tuples.
  for (const GroundAction& a : g.actions)
    for (const GroundAction::Effect& e : a.effects)
      g.universe.push_back(e.literal.atom);
  std::sort(g.universe.begin(), g.universe.end());
  g.universe.erase(std::unique(g.universe.begin(), g.universe.end()),
                   g.universe.end());

  g.init.atoms.insert(p.init.begin(), p.init.end());
  g.goal = simplify(expand_quantifiers(p.goal, u));
  for (const Constraint& c : p.constraints) {
    Constraint gc = c;
    gc.arg1 = simplify(expand_quantifiers(c.arg1, u));
    if (c.binary()) gc.arg2 = simplify(expand_quantifiers(c.arg2, u));
    g.constraints.push_back(std::move(gc));
  }
  return g;
}

namespace {

// Disjunction of the conditions of the effects that produce `l`.
FormulaPtr ground_gamma(const Literal& l, const GroundAction& g) {
  std::vector<FormulaPtr> parts;
  for (const GroundAction::Effect& e : g.effects)
    if (e.literal == l) parts.push_back(e.condition);
  return simplify(f_or(std::move(parts)));
}

FormulaPtr ground_regression_rec(const FormulaPtr& phi, const GroundAction& g) {
  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Equals:
      return phi;
    case Formula::Kind::Atom: {
      FormulaPtr gamma_pos = ground_gamma(Literal{true, phi->atom}, g);
      FormulaPtr gamma_neg = ground_gamma(Literal{false, phi->atom}, g);
      return simplify(
          f_or({gamma_pos, f_and({phi, f_not(gamma_neg)})}));
    }
    default: {
      std::vector<FormulaPtr> children;
      children.reserve(phi->children.size());
      for (const FormulaPtr& c : phi->children)
        children.push_back(ground_regression_rec(c, g));
      Formula out;
      out.kind = phi->kind;
      out.vars = phi->vars;
      out.children = std::move(children);
      return std::make_shared<const Formula>(std::move(out));
    }
  }
}

}  // namespace

FormulaPtr ground_regression(const FormulaPtr& phi, const GroundAction& g) {
  return simplify(ground_regression_rec(phi, g));
}

bool is_ground_regression_trivial(const FormulaPtr& phi, const GroundAction& g) {
  if (phi->kind == Formula::Kind::Atom) {
    return is_false(ground_gamma(Literal{true, phi->atom}, g)) &&
           is_false(ground_gamma(Literal{false, phi->atom}, g));
  }
  for (const FormulaPtr& c : phi->children)
    if (!is_ground_regression_trivial(c, g)) return false;
  return true;
}

}  // namespace pddl3c
