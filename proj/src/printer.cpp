#include "pddl3c/printer.hpp"

#include <map>
#include <sstream>
#include <vector>

namespace pddl3c {

namespace {

void print_typed_vars(std::ostringstream& os, const std::vector<Term>& vars) {
  bool first = true;
  for (const Term& v : vars) {
    if (!first) os << " ";
    first = false;
    os << v.name << " - " << v.type;
  }
}

void print_formula_rec(std::ostringstream& os, const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
      os << "(and)";
      return;
    case Formula::Kind::False:
      os << "(or)";
      return;
    case Formula::Kind::Atom: {
      os << "(" << f->atom.predicate;
      for (const Term& t : f->atom.args) os << " " << t.name;
      os << ")";
      return;
    }
    case Formula::Kind::Equals:
      os << "(= " << f->lhs.name << " " << f->rhs.name << ")";
      return;
    case Formula::Kind::Not:
      os << "(not ";
      print_formula_rec(os, f->children[0]);
      os << ")";
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      os << (f->kind == Formula::Kind::And ? "(and" : "(or");
      for (const FormulaPtr& c : f->children) {
        os << " ";
        print_formula_rec(os, c);
      }
      os << ")";
      return;
    }
    case Formula::Kind::Implies:
      os << "(imply ";
      print_formula_rec(os, f->children[0]);
      os << " ";
      print_formula_rec(os, f->children[1]);
      os << ")";
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      os << (f->kind == Formula::Kind::Forall ? "(forall (" : "(exists (");
      print_typed_vars(os, f->vars);
      os << ") ";
      print_formula_rec(os, f->children[0]);
      os << ")";
      return;
    }
  }
}

// Whether any negated atom occurs in a precondition-like position.
bool has_negated_atom(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Not &&
      f->children[0]->kind == Formula::Kind::Atom)
    return true;
  for (const FormulaPtr& c : f->children)
    if (has_negated_atom(c)) return true;
  return false;
}

}  // namespace

std::string print_term(const Term& t) { return t.name; }

std::string print_formula(const FormulaPtr& f) {
  std::ostringstream os;
  print_formula_rec(os, f);
  return os.str();
}

std::string print_literal(const Literal& l) {
  return print_formula(f_literal(l));
}

std::string print_effect(const ConditionalEffect& e) {
  std::ostringstream os;
  std::string body = print_literal(e.literal);
  if (!is_true(e.condition))
    body = "(when " + print_formula(e.condition) + " " + body + ")";
  if (!e.z_vars.empty()) {
    os << "(forall (";
    print_typed_vars(os, e.z_vars);
    os << ") " << body << ")";
  } else {
    os << body;
  }
  return os.str();
}

std::string print_domain(const DomainDef& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";

  bool negative = false;
  for (const ActionSchema& a : d.actions) {
    negative = negative || has_negated_atom(a.precondition);
    for (const ConditionalEffect& e : a.effects)
      negative = negative || has_negated_atom(e.condition);
  }
  os << "  (:requirements :adl :typing :equality :conditional-effects";
  if (negative) os << " :negative-preconditions";
  os << ")\n";

  if (!d.types.parents().empty()) {
    // Group type declarations by parent for compact output.
    std::map<std::string, std::vector<std::string>> by_parent;
    for (const auto& [type, parent] : d.types.parents())
      by_parent[parent].push_back(type);
    os << "  (:types";
    for (const auto& [parent, types] : by_parent) {
      for (const std::string& t : types) os << " " << t;
      os << " - " << parent;
    }
    os << ")\n";
  }

  if (!d.constants.empty()) {
    os << "  (:constants";
    for (const auto& [name, type] : d.constants)
      os << " " << name << " - " << type;
    os << ")\n";
  }

  os << "  (:predicates";
  for (const PredicateDef& p : d.predicates) {
    os << "\n    (" << p.name;
    for (const Term& v : p.params) os << " " << v.name << " - " << v.type;
    os << ")";
  }
  os << ")\n";

  for (const ActionSchema& a : d.actions) {
    os << "  (:action " << a.name << "\n";
    os << "    :parameters (";
    std::ostringstream params;
    print_typed_vars(params, a.params);
    os << params.str() << ")\n";
    os << "    :precondition " << print_formula(a.precondition) << "\n";
    os << "    :effect (and";
    for (const ConditionalEffect& e : a.effects) os << " " << print_effect(e);
    os << "))\n";
  }

  os << ")\n";
  return os.str();
}

std::string print_problem(const ProblemDef& p, const DomainDef& d) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  os << "  (:domain " << p.domain_name << ")\n";

  std::vector<std::pair<std::string, std::string>> own_objects;
  for (const auto& [name, type] : p.objects)
    if (!d.constants.count(name)) own_objects.emplace_back(name, type);
  if (!own_objects.empty()) {
    os << "  (:objects";
    for (const auto& [name, type] : own_objects)
      os << " " << name << " - " << type;
    os << ")\n";
  }

  os << "  (:init";
  for (const Atom& a : p.init) os << " " << print_formula(f_atom(a));
  os << ")\n";

  os << "  (:goal " << print_formula(p.goal) << ")\n";

  if (!p.constraints.empty()) {
    os << "  (:constraints (and";
    for (const Constraint& c : p.constraints) {
      os << "\n    (" << to_string(c.kind) << " " << print_formula(c.arg1);
      if (c.binary()) os << " " << print_formula(c.arg2);
      os << ")";
    }
    os << "))\n";
  }

  os << ")\n";
  return os.str();
}

}  // namespace pddl3c
