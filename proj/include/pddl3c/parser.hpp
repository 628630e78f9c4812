#pragma once

#include <string>
#include <vector>

#include "pddl3c/model.hpp"

namespace pddl3c {

/// Parses a PDDL domain in the supported fragment
/// (:strips :typing :equality :negative-preconditions
///  :disjunctive-preconditions :existential-preconditions
///  :universal-preconditions :conditional-effects :constraints).
/// Compound and quantified effects are normalized into one
/// ConditionalEffect per literal. Throws ParseError or
/// UnsupportedFeatureError.
DomainDef parse_domain(const std::string& text);

/// Parses a PDDL problem against its domain. Constraint arguments must be
/// closed; `(sometime-before f g)` parses with f as the trigger and g as
/// the required earlier condition.
ProblemDef parse_problem(const std::string& text, const DomainDef& domain);

/// Parses a standalone formula (the `regress` CLI input). Free variables
/// may reference `params`; undeclared constants take the declared type of
/// the predicate position they appear in.
FormulaPtr parse_formula(const std::string& text, const DomainDef& domain,
                         const std::vector<Term>& params = {});

struct PlanStep {
  std::string action;
  std::vector<std::string> args;

  std::string render() const;
};

using Plan = std::vector<PlanStep>;

/// One ground action per line: `(name arg1 arg2 ...)`; `;` starts a
/// comment; symbols are case-insensitive.
Plan parse_plan(const std::string& text);

}  // namespace pddl3c
