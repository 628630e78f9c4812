#include "pddl3c/model.hpp"

#include <algorithm>
#include <cassert>

#include "pddl3c/errors.hpp"
#include "pddl3c/printer.hpp"

namespace pddl3c {

// ---------------------------------------------------------------------------
// Terms, atoms, literals
// ---------------------------------------------------------------------------

int compare(const Term& a, const Term& b) {
  if (a.is_variable != b.is_variable) return a.is_variable ? 1 : -1;
  if (int c = a.name.compare(b.name)) return c;
  return a.type.compare(b.type);
}

bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
bool operator!=(const Term& a, const Term& b) { return compare(a, b) != 0; }
bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

int compare(const Atom& a, const Atom& b) {
  if (int c = a.predicate.compare(b.predicate)) return c;
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i])) return c;
  return 0;
}

bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
bool operator!=(const Atom& a, const Atom& b) { return compare(a, b) != 0; }
bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

int compare(const Literal& a, const Literal& b) {
  if (a.positive != b.positive) return a.positive ? -1 : 1;
  return compare(a.atom, b.atom);
}

bool operator==(const Literal& a, const Literal& b) {
  return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Formula construction
// ---------------------------------------------------------------------------

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

const FormulaPtr kTrue = [] {
  Formula f;
  f.kind = Formula::Kind::True;
  return make(std::move(f));
}();

const FormulaPtr kFalse = [] {
  Formula f;
  f.kind = Formula::Kind::False;
  return make(std::move(f));
}();

}  // namespace

FormulaPtr f_true() { return kTrue; }
FormulaPtr f_false() { return kFalse; }

FormulaPtr f_atom(Atom a) {
  Formula f;
  f.kind = Formula::Kind::Atom;
  f.atom = std::move(a);
  return make(std::move(f));
}

FormulaPtr f_equals(Term lhs, Term rhs) {
  Formula f;
  f.kind = Formula::Kind::Equals;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return make(std::move(f));
}

FormulaPtr f_not(FormulaPtr child) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.children.push_back(std::move(child));
  return make(std::move(f));
}

FormulaPtr f_and(std::vector<FormulaPtr> children) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.children = std::move(children);
  return make(std::move(f));
}

FormulaPtr f_or(std::vector<FormulaPtr> children) {
  Formula f;
  f.kind = Formula::Kind::Or;
  f.children = std::move(children);
  return make(std::move(f));
}

FormulaPtr f_implies(FormulaPtr antecedent, FormulaPtr consequent) {
  Formula f;
  f.kind = Formula::Kind::Implies;
  f.children.push_back(std::move(antecedent));
  f.children.push_back(std::move(consequent));
  return make(std::move(f));
}

FormulaPtr f_forall(std::vector<Term> vars, FormulaPtr body) {
  Formula f;
  f.kind = Formula::Kind::Forall;
  f.vars = std::move(vars);
  f.children.push_back(std::move(body));
  return make(std::move(f));
}

FormulaPtr f_exists(std::vector<Term> vars, FormulaPtr body) {
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.vars = std::move(vars);
  f.children.push_back(std::move(body));
  return make(std::move(f));
}

FormulaPtr f_literal(const Literal& l) {
  FormulaPtr a = f_atom(l.atom);
  return l.positive ? a : f_not(a);
}

bool is_true(const FormulaPtr& f) { return f->kind == Formula::Kind::True; }
bool is_false(const FormulaPtr& f) { return f->kind == Formula::Kind::False; }

// ---------------------------------------------------------------------------
// Structural comparison
// ---------------------------------------------------------------------------

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  switch (a->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return 0;
    case Formula::Kind::Atom:
      return compare(a->atom, b->atom);
    case Formula::Kind::Equals:
      if (int c = compare(a->lhs, b->lhs)) return c;
      return compare(a->rhs, b->rhs);
    default:
      break;
  }
  if (a->vars.size() != b->vars.size())
    return a->vars.size() < b->vars.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->vars.size(); ++i)
    if (int c = compare(a->vars[i], b->vars[i])) return c;
  if (a->children.size() != b->children.size())
    return a->children.size() < b->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (int c = compare(a->children[i], b->children[i])) return c;
  return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Free variables and other walks
// ---------------------------------------------------------------------------

namespace {

void free_variables_rec(const FormulaPtr& f, std::set<std::string>& bound,
                        std::set<std::string>& out) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
      for (const Term& t : f->atom.args)
        if (t.is_variable && !bound.count(t.name)) out.insert(t.name);
      return;
    case Formula::Kind::Equals:
      for (const Term* t : {&f->lhs, &f->rhs})
        if (t->is_variable && !bound.count(t->name)) out.insert(t->name);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::vector<std::string> added;
      for (const Term& v : f->vars)
        if (bound.insert(v.name).second) added.push_back(v.name);
      free_variables_rec(f->children[0], bound, out);
      for (const std::string& name : added) bound.erase(name);
      return;
    }
    default:
      for (const FormulaPtr& c : f->children) free_variables_rec(c, bound, out);
      return;
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  free_variables_rec(f, bound, out);
  return out;
}

void collect_predicates(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Formula::Kind::Atom) out.insert(f->atom.predicate);
  for (const FormulaPtr& c : f->children) collect_predicates(c, out);
}

int quantifier_depth(const FormulaPtr& f) {
  int inner = 0;
  for (const FormulaPtr& c : f->children)
    inner = std::max(inner, quantifier_depth(c));
  bool quantifier = f->kind == Formula::Kind::Forall ||
                    f->kind == Formula::Kind::Exists;
  return inner + (quantifier ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

void Substitution::bind(const Term& var, const Term& value) {
  assert(var.is_variable);
  if (value.is_variable && value.name == var.name) return;
  // Rewrite existing ranges first so the closure stays idempotent.
  for (auto& [name, term] : bindings_) {
    if (term.is_variable && term.name == var.name) term = value;
  }
  bindings_[var.name] = value;
}

std::optional<Term> Substitution::lookup(const std::string& var_name) const {
  auto it = bindings_.find(var_name);
  if (it == bindings_.end()) return std::nullopt;
  return it->second;
}

Term substitute(const Term& t, const Substitution& s) {
  if (!t.is_variable) return t;
  if (auto bound = s.lookup(t.name)) return *bound;
  return t;
}

Atom substitute(const Atom& a, const Substitution& s) {
  Atom out = a;
  for (Term& t : out.args) t = substitute(t, s);
  return out;
}

Literal substitute(const Literal& l, const Substitution& s) {
  return Literal{l.positive, substitute(l.atom, s)};
}

namespace {

Substitution without(const Substitution& s, const std::vector<Term>& vars) {
  Substitution out;
  for (const auto& [name, term] : s.bindings()) {
    bool shadowed = false;
    for (const Term& v : vars) {
      if (v.name == name) {
        shadowed = true;
        break;
      }
    }
    if (!shadowed) out.bind(Term::variable(name), term);
  }
  return out;
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const Substitution& s) {
  if (s.empty()) return f;
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom:
      return f_atom(substitute(f->atom, s));
    case Formula::Kind::Equals:
      return f_equals(substitute(f->lhs, s), substitute(f->rhs, s));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Substitution scoped = without(s, f->vars);
      FormulaPtr body = substitute(f->children[0], scoped);
      return f->kind == Formula::Kind::Forall ? f_forall(f->vars, body)
                                              : f_exists(f->vars, body);
    }
    default: {
      std::vector<FormulaPtr> children;
      children.reserve(f->children.size());
      for (const FormulaPtr& c : f->children) children.push_back(substitute(c, s));
      Formula out;
      out.kind = f->kind;
      out.children = std::move(children);
      return std::make_shared<const Formula>(std::move(out));
    }
  }
}

ConditionalEffect substitute(const ConditionalEffect& e, const Substitution& s) {
  Substitution scoped = without(s, e.z_vars);
  return ConditionalEffect{e.z_vars, substitute(e.condition, scoped),
                           substitute(e.literal, scoped)};
}

bool operator==(const ConditionalEffect& a, const ConditionalEffect& b) {
  if (!(a.literal == b.literal)) return false;
  if (a.z_vars.size() != b.z_vars.size()) return false;
  for (std::size_t i = 0; i < a.z_vars.size(); ++i)
    if (a.z_vars[i] != b.z_vars[i]) return false;
  return equal(a.condition, b.condition);
}

namespace {

void collect_names(const FormulaPtr& f, std::set<std::string>& out) {
  for (const Term& v : f->vars) out.insert(v.name);
  if (f->kind == Formula::Kind::Atom)
    for (const Term& t : f->atom.args) out.insert(t.name);
  if (f->kind == Formula::Kind::Equals) {
    out.insert(f->lhs.name);
    out.insert(f->rhs.name);
  }
  for (const FormulaPtr& c : f->children) collect_names(c, out);
}

FormulaPtr rename_rec(const FormulaPtr& f, const std::set<std::string>& taken,
                      std::set<std::string>& used) {
  switch (f->kind) {
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Substitution renaming;
      std::vector<Term> vars = f->vars;
      for (Term& v : vars) {
        if (!taken.count(v.name)) continue;
        std::string fresh;
        int i = 1;
        do {
          fresh = v.name + "_" + std::to_string(i++);
        } while (taken.count(fresh) || used.count(fresh));
        used.insert(fresh);
        renaming.bind(v, Term::variable(fresh, v.type));
        v.name = fresh;
      }
      FormulaPtr body = f->children[0];
      if (!renaming.empty()) body = substitute(body, renaming);
      body = rename_rec(body, taken, used);
      return f->kind == Formula::Kind::Forall ? f_forall(vars, body)
                                              : f_exists(vars, body);
    }
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Equals:
      return f;
    default: {
      std::vector<FormulaPtr> children;
      children.reserve(f->children.size());
      for (const FormulaPtr& c : f->children)
        children.push_back(rename_rec(c, taken, used));
      Formula out;
      out.kind = f->kind;
      out.children = std::move(children);
      return std::make_shared<const Formula>(std::move(out));
    }
  }
}

}  // namespace

FormulaPtr rename_bound_vars_avoiding(const FormulaPtr& f,
                                      const std::set<std::string>& taken) {
  std::set<std::string> used;
  collect_names(f, used);
  return rename_rec(f, taken, used);
}

// ---------------------------------------------------------------------------
// Simplifier
// ---------------------------------------------------------------------------

namespace {

// Flattens nested connectives of the same kind into `out`.
void flatten_into(Formula::Kind kind, const FormulaPtr& f,
                  std::vector<FormulaPtr>& out) {
  if (f->kind == kind) {
    for (const FormulaPtr& c : f->children) flatten_into(kind, c, out);
  } else {
    out.push_back(f);
  }
}

// True when `children` contains both x and (not x) for a syntactically
// identical x. Assumes `children` is sorted.
bool has_complementary_pair(const std::vector<FormulaPtr>& children) {
  for (const FormulaPtr& c : children) {
    if (c->kind != Formula::Kind::Not) continue;
    const FormulaPtr& inner = c->children[0];
    if (std::binary_search(
            children.begin(), children.end(), inner,
            [](const FormulaPtr& a, const FormulaPtr& b) {
              return compare(a, b) < 0;
            }))
      return true;
  }
  return false;
}

FormulaPtr simplify_junction(Formula::Kind kind, std::vector<FormulaPtr> parts) {
  const bool conj = kind == Formula::Kind::And;
  const FormulaPtr unit = conj ? f_true() : f_false();
  const FormulaPtr zero = conj ? f_false() : f_true();

  std::vector<FormulaPtr> flat;
  for (const FormulaPtr& p : parts) flatten_into(kind, p, flat);

  std::vector<FormulaPtr> kept;
  for (const FormulaPtr& c : flat) {
    if (equal(c, zero)) return zero;
    if (equal(c, unit)) continue;
    kept.push_back(c);
  }
  std::sort(kept.begin(), kept.end(), [](const FormulaPtr& a, const FormulaPtr& b) {
    return compare(a, b) < 0;
  });
  kept.erase(std::unique(kept.begin(), kept.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) {
                           return equal(a, b);
                         }),
             kept.end());
  if (has_complementary_pair(kept)) return zero;
  if (kept.empty()) return unit;
  if (kept.size() == 1) return kept[0];
  return conj ? f_and(std::move(kept)) : f_or(std::move(kept));
}

Term orient_first(const Term& a, const Term& b) {
  // Variable-first orientation for mixed equalities, structural order
  // otherwise.
  if (a.is_variable != b.is_variable) return a.is_variable ? a : b;
  return compare(a, b) <= 0 ? a : b;
}

}  // namespace

FormulaPtr simplify(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Equals: {
      const Term& a = f->lhs;
      const Term& b = f->rhs;
      if (!a.is_variable && !b.is_variable)
        return a.name == b.name ? f_true() : f_false();
      if (a.is_variable && b.is_variable && a.name == b.name) return f_true();
      Term first = orient_first(a, b);
      Term second = first == a ? b : a;
      return f_equals(first, second);
    }
    case Formula::Kind::Not: {
      FormulaPtr c = simplify(f->children[0]);
      if (is_true(c)) return f_false();
      if (is_false(c)) return f_true();
      if (c->kind == Formula::Kind::Not) return c->children[0];
      return f_not(c);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->children.size());
      for (const FormulaPtr& c : f->children) parts.push_back(simplify(c));
      return simplify_junction(f->kind, std::move(parts));
    }
    case Formula::Kind::Implies: {
      FormulaPtr a = simplify(f->children[0]);
      FormulaPtr b = simplify(f->children[1]);
      if (is_true(a)) return b;
      if (is_false(a)) return f_true();
      if (is_true(b)) return f_true();
      if (is_false(b)) return simplify(f_not(a));
      if (equal(a, b)) return f_true();
      return f_implies(a, b);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      FormulaPtr body = simplify(f->children[0]);
      // Merge directly nested quantifiers of the same kind when the
      // binder names stay distinct.
      std::vector<Term> vars = f->vars;
      if (body->kind == f->kind) {
        bool disjoint = true;
        for (const Term& inner : body->vars)
          for (const Term& outer : vars)
            if (inner.name == outer.name) disjoint = false;
        if (disjoint) {
          vars.insert(vars.end(), body->vars.begin(), body->vars.end());
          body = body->children[0];
        }
      }
      std::set<std::string> free = free_variables(body);
      std::vector<Term> kept;
      for (const Term& v : vars)
        if (free.count(v.name)) kept.push_back(v);
      if (kept.empty()) return body;
      return f->kind == Formula::Kind::Forall ? f_forall(kept, body)
                                              : f_exists(kept, body);
    }
  }
  return f;
}

std::string canonical_key(const FormulaPtr& f) {
  return print_formula(simplify(f));
}

// ---------------------------------------------------------------------------
// Constraints, type hierarchy, domain lookup
// ---------------------------------------------------------------------------

std::string to_string(Constraint::Kind kind) {
  switch (kind) {
    case Constraint::Kind::Always: return "always";
    case Constraint::Kind::Sometime: return "sometime";
    case Constraint::Kind::AtMostOnce: return "at-most-once";
    case Constraint::Kind::SometimeBefore: return "sometime-before";
    case Constraint::Kind::SometimeAfter: return "sometime-after";
  }
  return "?";
}

void TypeHierarchy::add(const std::string& type, const std::string& parent) {
  if (type == "object") return;
  parents_[type] = parent;
}

bool TypeHierarchy::known(const std::string& type) const {
  return type == "object" || parents_.count(type) > 0;
}

bool TypeHierarchy::is_subtype(const std::string& type,
                               const std::string& ancestor) const {
  std::string cur = type;
  while (true) {
    if (cur == ancestor) return true;
    if (cur == "object") return false;
    auto it = parents_.find(cur);
    cur = it == parents_.end() ? "object" : it->second;
  }
}

const PredicateDef* DomainDef::find_predicate(const std::string& name) const {
  for (const PredicateDef& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const ActionSchema* DomainDef::find_action(const std::string& name) const {
  for (const ActionSchema& a : actions)
    if (a.name == name) return &a;
  return nullptr;
}

Universe::Universe(const TypeHierarchy& types,
                   const std::map<std::string, std::string>& objects)
    : types_(types), object_types_(objects) {}

const std::vector<Term>& Universe::objects_of(const std::string& type) const {
  auto it = by_type_.find(type);
  if (it != by_type_.end()) return it->second;
  std::vector<Term> objs;
  for (const auto& [name, obj_type] : object_types_)
    if (types_.is_subtype(obj_type, type))
      objs.push_back(Term::constant(name, obj_type));
  return by_type_.emplace(type, std::move(objs)).first->second;
}

}  // namespace pddl3c
