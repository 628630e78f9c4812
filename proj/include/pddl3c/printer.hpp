#pragma once

#include <string>

#include "pddl3c/model.hpp"

namespace pddl3c {

/// Single-line PDDL rendering of a formula. True prints as (and),
/// False as (or).
std::string print_formula(const FormulaPtr& f);

std::string print_literal(const Literal& l);
std::string print_term(const Term& t);
std::string print_effect(const ConditionalEffect& e);

/// Full PDDL text. parse(print(x)) is structurally equal to x.
std::string print_domain(const DomainDef& d);
std::string print_problem(const ProblemDef& p, const DomainDef& d);

}  // namespace pddl3c
