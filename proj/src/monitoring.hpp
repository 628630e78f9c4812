#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pddl3c/model.hpp"
#include "pddl3c/semantics.hpp"
#include "pddl3c/stats.hpp"

namespace pddl3c::detail {

/// Fresh 0-ary monitoring predicates for a constraint list. hold atoms are
/// minted per Sometime/SometimeAfter constraint; seen atoms for
/// SometimeBefore's second argument and AtMostOnce's argument, shared
/// between constraints whose formulas have the same canonical key; prevent
/// atoms (regression-free mode only) mirror the seen scheme for
/// AtMostOnce.
struct MonitoringAtoms {
  std::map<int, std::string> hold;          // constraint index -> __hold_<i>
  std::map<int, std::string> seen;          // constraint index -> __seen_<k>
  std::map<std::string, std::string> seen_by_key;
  std::map<int, std::string> prevent;       // constraint index -> __prevent_<k>
  std::map<std::string, std::string> prevent_by_key;
  std::vector<std::string> minted;          // declaration order

  /// The formula whose observation a seen atom records: arg2 for
  /// SometimeBefore, arg1 for AtMostOnce.
  static const FormulaPtr& seen_formula(const Constraint& c);
};

MonitoringAtoms mint_monitoring(const std::vector<Constraint>& constraints,
                                bool with_prevent);

/// First Always constraint whose formula fails in the initial state, or
/// SometimeBefore constraint whose trigger already holds there.
std::optional<Constraint> check_initially_violated(
    const std::vector<Constraint>& constraints, const State& init,
    const Universe& u);

/// Per-constraint preconditions and effects of the regression scheme:
///   Always:         P += R(phi)
///   Sometime:       E += (R(phi) -> +hold)
///   AtMostOnce:     E += (R(phi) -> +seen), P += not(seen and not phi and R(phi))
///   SometimeBefore: E += (R(psi) -> +seen), P += R(phi) implies seen
///   SometimeAfter:  E += (R(psi) -> +hold), (R(phi) and not R(psi) -> -hold)
/// Items whose governing regression is trivial are omitted: the Always
/// precondition, the monotone seen/hold effects, the AtMostOnce
/// precondition (it folds to true), and both SometimeAfter items when the
/// regressions of both arguments are trivial.
struct ConstraintItems {
  std::vector<FormulaPtr> preconditions;
  std::vector<ConditionalEffect> effects;
  long long operations = 0;
};

using RegressFn = std::function<FormulaPtr(const FormulaPtr&)>;
using TrivialFn = std::function<bool(const FormulaPtr&)>;

ConstraintItems compile_c_regression(const std::vector<Constraint>& constraints,
                                     const MonitoringAtoms& atoms,
                                     const RegressFn& regress,
                                     const TrivialFn& trivial);

/// Monitoring atoms satisfied in the initial state (regression scheme):
/// hold for Sometime when I |= phi, hold for SometimeAfter when
/// I |= psi or not phi, seen when I satisfies the observed formula.
std::vector<Atom> initial_monitoring_atoms(
    const std::vector<Constraint>& constraints, const MonitoringAtoms& atoms,
    const State& init, const Universe& u);

/// Declares the minted predicates on a copy of the domain; throws when a
/// user predicate collides with a reserved name.
void declare_monitoring(DomainDef& domain, const MonitoringAtoms& atoms,
                        const std::vector<std::string>& extra = {});

Literal monitor_literal(const std::string& name, bool positive);

/// Set-semantics insertion (structural identity).
void push_unique(std::vector<FormulaPtr>& out, const FormulaPtr& f);
void push_unique(std::vector<ConditionalEffect>& out, ConditionalEffect e);

/// Input-side counters shared by every compilation mode.
void fill_input_stats(CompileStats& stats, const DomainDef& d,
                      const ProblemDef& p);

int count_effect_items(const DomainDef& d);

/// Compiled items may move constraint constants into action bodies;
/// declaring them as domain constants keeps the emitted domain
/// self-contained.
void declare_body_constants(DomainDef& domain);

}  // namespace pddl3c::detail
