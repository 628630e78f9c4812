#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pddl3c {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

/// A typed first-order term: either a variable (name starts with '?') or a
/// constant. Every term carries the name of its declared type; untyped input
/// defaults to "object".
struct Term {
  bool is_variable = false;
  std::string name;
  std::string type = "object";

  static Term variable(std::string name, std::string type = "object") {
    return Term{true, std::move(name), std::move(type)};
  }
  static Term constant(std::string name, std::string type = "object") {
    return Term{false, std::move(name), std::move(type)};
  }
};

int compare(const Term& a, const Term& b);
bool operator==(const Term& a, const Term& b);
bool operator!=(const Term& a, const Term& b);
bool operator<(const Term& a, const Term& b);

struct Atom {
  std::string predicate;
  std::vector<Term> args;
};

int compare(const Atom& a, const Atom& b);
bool operator==(const Atom& a, const Atom& b);
bool operator!=(const Atom& a, const Atom& b);
bool operator<(const Atom& a, const Atom& b);

/// An atom with a polarity.
struct Literal {
  bool positive = true;
  Atom atom;
};

int compare(const Literal& a, const Literal& b);
bool operator==(const Literal& a, const Literal& b);

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable first-order condition tree over typed terms. Nodes are shared
/// freely; all operations build new trees instead of mutating.
class Formula {
 public:
  enum class Kind {
    True,
    False,
    Equals,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Exists,
    Forall,
  };

  Kind kind = Kind::True;
  pddl3c::Atom atom;               // Kind::Atom
  Term lhs, rhs;                   // Kind::Equals
  std::vector<FormulaPtr> children;  // Not: 1, Implies: 2, quantifiers: 1
  std::vector<Term> vars;          // quantifier-bound variables
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(Atom a);
FormulaPtr f_equals(Term lhs, Term rhs);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> children);
FormulaPtr f_or(std::vector<FormulaPtr> children);
FormulaPtr f_implies(FormulaPtr antecedent, FormulaPtr consequent);
FormulaPtr f_forall(std::vector<Term> vars, FormulaPtr body);
FormulaPtr f_exists(std::vector<Term> vars, FormulaPtr body);
FormulaPtr f_literal(const Literal& l);

bool is_true(const FormulaPtr& f);
bool is_false(const FormulaPtr& f);

/// Total structural order; the basis for canonical child ordering.
int compare(const FormulaPtr& a, const FormulaPtr& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Exact set of free variable names.
std::set<std::string> free_variables(const FormulaPtr& f);

/// All predicate names occurring in the formula.
void collect_predicates(const FormulaPtr& f, std::set<std::string>& out);

/// Maximum nesting depth of quantifiers.
int quantifier_depth(const FormulaPtr& f);

/// Logically equivalent formula in canonical form. Folds constants
/// (including ground equalities), flattens and sorts associative
/// connectives, cancels syntactic contradictions and removes vacuous
/// quantifiers.
FormulaPtr simplify(const FormulaPtr& f);

/// Printed form of simplify(f); structural identity key used to
/// deduplicate monitoring atoms.
std::string canonical_key(const FormulaPtr& f);

// ---------------------------------------------------------------------------
// Substitutions
// ---------------------------------------------------------------------------

/// A finite, idempotent map from variable names to terms.
class Substitution {
 public:
  Substitution() = default;

  /// Adds var -> value and rewrites existing ranges so that the closure
  /// stays idempotent. Binding a variable to itself is a no-op.
  void bind(const Term& var, const Term& value);

  std::optional<Term> lookup(const std::string& var_name) const;
  const std::map<std::string, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

 private:
  std::map<std::string, Term> bindings_;
};

Term substitute(const Term& t, const Substitution& s);
Atom substitute(const Atom& a, const Substitution& s);
Literal substitute(const Literal& l, const Substitution& s);

/// Replaces every free occurrence of a bound variable; quantifier-bound
/// occurrences are left untouched.
FormulaPtr substitute(const FormulaPtr& f, const Substitution& s);

/// Alpha-renames quantifier binders whose names clash with `taken`.
FormulaPtr rename_bound_vars_avoiding(const FormulaPtr& f,
                                      const std::set<std::string>& taken);

// ---------------------------------------------------------------------------
// Actions and constraints
// ---------------------------------------------------------------------------

/// One normalized conditional effect: for every substitution of the z
/// variables with objects, if the condition holds in the pre-state the
/// literal is produced. Unconditional effects have condition True and no
/// z variables.
struct ConditionalEffect {
  std::vector<Term> z_vars;
  FormulaPtr condition;
  Literal literal;
};

ConditionalEffect substitute(const ConditionalEffect& e, const Substitution& s);
bool operator==(const ConditionalEffect& a, const ConditionalEffect& b);

struct ActionSchema {
  std::string name;
  std::vector<Term> params;
  FormulaPtr precondition;
  std::vector<ConditionalEffect> effects;
};

struct Constraint {
  enum class Kind { Always, Sometime, AtMostOnce, SometimeBefore, SometimeAfter };

  Kind kind = Kind::Always;
  FormulaPtr arg1;
  FormulaPtr arg2;  // SometimeBefore / SometimeAfter only
  int index = 0;    // stable position in the problem's constraint list

  bool binary() const {
    return kind == Kind::SometimeBefore || kind == Kind::SometimeAfter;
  }
};

std::string to_string(Constraint::Kind kind);

// ---------------------------------------------------------------------------
// Domains and problems
// ---------------------------------------------------------------------------

/// Single-inheritance type tree rooted at "object".
class TypeHierarchy {
 public:
  void add(const std::string& type, const std::string& parent);
  bool known(const std::string& type) const;
  bool is_subtype(const std::string& type, const std::string& ancestor) const;
  const std::map<std::string, std::string>& parents() const { return parents_; }

 private:
  std::map<std::string, std::string> parents_;
};

struct PredicateDef {
  std::string name;
  std::vector<Term> params;  // typed variables
};

struct DomainDef {
  std::string name;
  TypeHierarchy types;
  std::map<std::string, std::string> constants;  // :constants name -> type
  std::vector<PredicateDef> predicates;
  std::vector<ActionSchema> actions;

  const PredicateDef* find_predicate(const std::string& name) const;
  const ActionSchema* find_action(const std::string& name) const;
};

struct ProblemDef {
  std::string name;
  std::string domain_name;
  /// All known objects (problem :objects merged with domain :constants).
  std::map<std::string, std::string> objects;
  std::vector<Atom> init;  // ground, sorted, deduplicated
  FormulaPtr goal;
  std::vector<Constraint> constraints;
};

/// Object universe indexed by type, with the hierarchy used to resolve
/// quantifier ranges during evaluation and grounding.
class Universe {
 public:
  Universe(const TypeHierarchy& types,
           const std::map<std::string, std::string>& objects);

  const std::vector<Term>& objects_of(const std::string& type) const;
  const TypeHierarchy& types() const { return types_; }

 private:
  TypeHierarchy types_;
  std::map<std::string, std::string> object_types_;
  mutable std::map<std::string, std::vector<Term>> by_type_;
};

}  // namespace pddl3c
