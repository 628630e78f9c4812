#include "pddl3c/lifted_regression.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pddl3c {

namespace {

// Whether a value of `from`'s range may be assigned where `to`'s range is
// expected, i.e. from is a subtype of to.
bool fits(const Term& from, const std::string& to_type,
          const TypeHierarchy& types) {
  return types.is_subtype(from.type, to_type);
}

}  // namespace

std::optional<Unifier> mgu(const Literal& l, const Literal& e,
                           const TypeHierarchy& types) {
  if (l.positive != e.positive) return std::nullopt;
  if (l.atom.predicate != e.atom.predicate) return std::nullopt;
  if (l.atom.args.size() != e.atom.args.size()) return std::nullopt;

  Unifier u;
  for (std::size_t i = 0; i < l.atom.args.size(); ++i)
    u.equations.emplace_back(l.atom.args[i], e.atom.args[i]);

  for (const auto& [lt, et] : u.equations) {
    Term a = substitute(lt, u.subst);
    Term b = substitute(et, u.subst);
    if (!a.is_variable && !b.is_variable) {
      if (a.name != b.name) return std::nullopt;
      continue;
    }
    if (a.is_variable && b.is_variable) {
      if (a.name == b.name) continue;
      // Bind towards the more specific type so the common range survives;
      // on equal footing the effect-side variable is substituted away.
      if (fits(a, b.type, types) && a.type != b.type) {
        u.subst.bind(b, a);
      } else if (fits(b, a.type, types)) {
        u.subst.bind(a, b);
      } else if (fits(a, b.type, types)) {
        u.subst.bind(b, a);
      } else {
        return std::nullopt;  // incomparable types, disjoint ranges
      }
      continue;
    }
    // Variable against constant: ground only when the constant lies in the
    // variable's range.
    const Term& var = a.is_variable ? a : b;
    const Term& con = a.is_variable ? b : a;
    if (!fits(con, var.type, types)) return std::nullopt;
    u.subst.bind(var, con);
  }
  return u;
}

FormulaPtr weakest_condition(const Literal& l, const ConditionalEffect& eff,
                             const TypeHierarchy& types) {
  std::optional<Unifier> unifier = mgu(l, eff.literal, types);
  if (!unifier) return f_false();

  std::set<std::string> z_names;
  for (const Term& z : eff.z_vars) z_names.insert(z.name);

  // Positional partners of each z variable, and the equality constraints
  // contributed by the non-z pairs.
  std::map<std::string, std::vector<Term>> partners;
  std::vector<FormulaPtr> equalities;
  for (const auto& [lt, et] : unifier->equations) {
    if (et.is_variable && z_names.count(et.name)) {
      partners[et.name].push_back(lt);
    } else {
      equalities.push_back(f_equals(lt, et));
    }
  }

  // The z-substitution maps each unified z variable to the literal-side
  // term it was matched against. A z variable matched several times pins
  // its partners equal to each other; a z variable whose only partners
  // range over a strictly wider type stays quantified, constrained by an
  // equality guard inside its own scope.
  Substitution theta_z;
  std::vector<FormulaPtr> guards;
  for (const Term& z : eff.z_vars) {
    auto it = partners.find(z.name);
    if (it == partners.end()) continue;
    const std::vector<Term>& ps = it->second;
    const Term* binder = nullptr;
    for (const Term& p : ps) {
      if (!p.is_variable || fits(p, z.type, types)) {
        binder = &p;
        break;
      }
    }
    if (binder) {
      theta_z.bind(z, *binder);
      for (const Term& p : ps)
        if (&p != binder) equalities.push_back(f_equals(p, *binder));
    } else {
      for (const Term& p : ps) guards.push_back(f_equals(p, z));
    }
  }

  // Unbound z variables (those not fixed by the z-substitution) are the
  // ones appearing in the condition but not the effect literal; they are
  // existentially quantified.
  std::vector<Term> z_free;
  for (const Term& z : eff.z_vars)
    if (!theta_z.lookup(z.name)) z_free.push_back(z);

  // Quantifiers inside the effect condition must not capture the terms the
  // z-substitution introduces.
  std::set<std::string> incoming;
  for (const auto& [name, term] : theta_z.bindings())
    if (term.is_variable) incoming.insert(term.name);
  for (const FormulaPtr& g : guards) {
    if (g->lhs.is_variable) incoming.insert(g->lhs.name);
    if (g->rhs.is_variable) incoming.insert(g->rhs.name);
  }
  FormulaPtr condition = incoming.empty()
                             ? eff.condition
                             : rename_bound_vars_avoiding(eff.condition, incoming);
  FormulaPtr body = substitute(condition, theta_z);
  if (!guards.empty()) {
    guards.insert(guards.begin(), body);
    body = f_and(std::move(guards));
  }
  FormulaPtr scoped = z_free.empty() ? body : f_exists(z_free, body);
  equalities.insert(equalities.begin(), scoped);
  return simplify(f_and(std::move(equalities)));
}

FormulaPtr lifted_gamma(const Literal& l, const ActionSchema& a,
                        const TypeHierarchy& types) {
  std::vector<FormulaPtr> parts;
  for (const ConditionalEffect& eff : a.effects) {
    if (eff.literal.positive != l.positive) continue;
    parts.push_back(weakest_condition(l, eff, types));
  }
  return simplify(f_or(std::move(parts)));
}

namespace {

FormulaPtr regress_rec(const FormulaPtr& phi, const ActionSchema& a,
                       const TypeHierarchy& types) {
  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Equals:
      return phi;
    case Formula::Kind::Atom: {
      FormulaPtr gamma_pos = lifted_gamma(Literal{true, phi->atom}, a, types);
      FormulaPtr gamma_neg = lifted_gamma(Literal{false, phi->atom}, a, types);
      return simplify(
          f_or({gamma_pos, f_and({phi, f_not(gamma_neg)})}));
    }
    default: {
      std::vector<FormulaPtr> children;
      children.reserve(phi->children.size());
      for (const FormulaPtr& c : phi->children)
        children.push_back(regress_rec(c, a, types));
      Formula out;
      out.kind = phi->kind;
      out.vars = phi->vars;
      out.children = std::move(children);
      return std::make_shared<const Formula>(std::move(out));
    }
  }
}

std::set<std::string> schema_names(const ActionSchema& a) {
  std::set<std::string> taken;
  for (const Term& p : a.params) taken.insert(p.name);
  for (const ConditionalEffect& e : a.effects)
    for (const Term& z : e.z_vars) taken.insert(z.name);
  return taken;
}

bool mentions_predicate(const FormulaPtr& f, const std::set<std::string>& preds) {
  if (f->kind == Formula::Kind::Atom) return preds.count(f->atom.predicate) > 0;
  for (const FormulaPtr& c : f->children)
    if (mentions_predicate(c, preds)) return true;
  return false;
}

// Renames quantifier binders clashing with the schema's parameter or z
// variable names, but only where regression can introduce those names:
// a subtree that mentions no effect predicate regresses to itself, so its
// binders can keep their names.
FormulaPtr rename_apart_from(const FormulaPtr& phi, const ActionSchema& a) {
  std::set<std::string> taken = schema_names(a);
  if (taken.empty()) return phi;
  std::set<std::string> effect_preds;
  for (const ConditionalEffect& e : a.effects)
    effect_preds.insert(e.literal.atom.predicate);

  struct Walker {
    const std::set<std::string>& taken;
    const std::set<std::string>& effect_preds;

    FormulaPtr walk(const FormulaPtr& f) {
      switch (f->kind) {
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
          bool clash = false;
          for (const Term& v : f->vars) clash = clash || taken.count(v.name);
          if (clash && mentions_predicate(f->children[0], effect_preds))
            return rename_bound_vars_avoiding(f, taken);
          FormulaPtr body = walk(f->children[0]);
          return f->kind == Formula::Kind::Forall ? f_forall(f->vars, body)
                                                  : f_exists(f->vars, body);
        }
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
        case Formula::Kind::Equals:
          return f;
        default: {
          std::vector<FormulaPtr> children;
          children.reserve(f->children.size());
          for (const FormulaPtr& c : f->children) children.push_back(walk(c));
          Formula out;
          out.kind = f->kind;
          out.children = std::move(children);
          return std::make_shared<const Formula>(std::move(out));
        }
      }
    }
  };
  return Walker{taken, effect_preds}.walk(phi);
}

}  // namespace

FormulaPtr lifted_regression(const FormulaPtr& phi, const ActionSchema& a,
                             const TypeHierarchy& types) {
  return simplify(regress_rec(rename_apart_from(phi, a), a, types));
}

namespace {

bool atoms_unaffected(const FormulaPtr& phi, const ActionSchema& a,
                      const TypeHierarchy& types) {
  if (phi->kind == Formula::Kind::Atom) {
    return is_false(lifted_gamma(Literal{true, phi->atom}, a, types)) &&
           is_false(lifted_gamma(Literal{false, phi->atom}, a, types));
  }
  for (const FormulaPtr& c : phi->children)
    if (!atoms_unaffected(c, a, types)) return false;
  return true;
}

}  // namespace

bool is_regression_trivial(const FormulaPtr& phi, const ActionSchema& a,
                           const TypeHierarchy& types) {
  return atoms_unaffected(rename_apart_from(phi, a), a, types);
}

}  // namespace pddl3c
