#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "pddl3c/model.hpp"

namespace pddl3c {

/// A successful unification of two literals: the positional argument pairs
/// together with the induced most-general substitution. Variables are bound
/// to constants only when matched against a constant; variable-variable
/// pairs bind variable to variable.
struct Unifier {
  std::vector<std::pair<Term, Term>> equations;  // (literal arg, effect arg)
  Substitution subst;
};

/// Robinson unification over function-free typed literals. Polarity and
/// predicate must match; a binding is only admitted when the bound term's
/// range stays inside the variable's declared type. Absence is a value,
/// not an error.
std::optional<Unifier> mgu(const Literal& l, const Literal& e,
                           const TypeHierarchy& types);

/// Weakest condition under which the conditional effect brings about `l`:
/// the effect condition specialized by the z-substitution, existentially
/// closed over the unbound z variables, conjoined with the equality
/// constraints between the literal's arguments and the effect's non-z
/// arguments. False when the literals do not unify. With no z variables
/// this degenerates to `condition and equalities`.
FormulaPtr weakest_condition(const Literal& l, const ConditionalEffect& eff,
                             const TypeHierarchy& types);

/// Disjunction of the weakest conditions over all effects of the schema
/// whose literal polarity matches `l`.
FormulaPtr lifted_gamma(const Literal& l, const ActionSchema& a,
                        const TypeHierarchy& types);

/// The lifted regression of a formula through a non-ground schema: every
/// atom f is replaced by lifted_gamma(f) or (f and not lifted_gamma(not f)).
/// Constraint-bound variables are renamed apart from the schema's
/// parameters and z variables first.
FormulaPtr lifted_regression(const FormulaPtr& phi, const ActionSchema& a,
                             const TypeHierarchy& types);

/// Sufficient syntactic criterion for `lifted_regression(phi, a) == phi`:
/// both gammas of every atom of phi simplify to false.
bool is_regression_trivial(const FormulaPtr& phi, const ActionSchema& a,
                           const TypeHierarchy& types);

}  // namespace pddl3c
