#pragma once

#include <cstddef>
#include <vector>

#include "pddl3c/model.hpp"
#include "pddl3c/semantics.hpp"

namespace pddl3c {

inline constexpr std::size_t kDefaultGroundCap = 200000;

/// Fully grounded view of a problem: one ground action per type-compatible
/// parameter tuple (tuples whose instantiated precondition is statically
/// false are dropped), quantifiers in the goal and constraint formulas
/// expanded over the object universe.
struct GroundedProblem {
  std::vector<Atom> universe;  // every well-typed ground atom
  std::vector<GroundAction> actions;
  State init;
  FormulaPtr goal;
  std::vector<Constraint> constraints;
};

/// Enumerates all tuples of objects matching `vars` types.
std::vector<std::vector<Term>> object_tuples(const std::vector<Term>& vars,
                                             const Universe& u);

/// Instantiates a schema with constant arguments, expanding each
/// universally quantified effect over all type-compatible object tuples.
GroundAction instantiate(const ActionSchema& schema,
                         const std::vector<Term>& args, const Universe& u);

/// Replaces quantifiers with finite conjunctions/disjunctions over the
/// universe; the result is simplified.
FormulaPtr expand_quantifiers(const FormulaPtr& f, const Universe& u);

/// Throws ResourceLimitError when the number of ground actions exceeds
/// `cap`.
GroundedProblem ground(const DomainDef& d, const ProblemDef& p,
                       std::size_t cap = kDefaultGroundCap);

/// Weakest condition on the pre-state guaranteeing that the ground formula
/// holds after the ground action: every atom f is replaced by
/// gamma(f) or (f and not gamma(not f)), where gamma(l) collects the
/// conditions of the effects producing l.
FormulaPtr ground_regression(const FormulaPtr& phi, const GroundAction& g);

/// Sufficient syntactic criterion for ground_regression(phi, g) == phi:
/// no effect of g mentions an atom of phi in either polarity.
bool is_ground_regression_trivial(const FormulaPtr& phi, const GroundAction& g);

}  // namespace pddl3c
