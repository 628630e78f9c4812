#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pddl3c/model.hpp"
#include "pddl3c/parser.hpp"
#include "pddl3c/printer.hpp"
#include "pddl3c/semantics.hpp"

#ifndef PDDL3C_FIXTURE_DIR
#define PDDL3C_FIXTURE_DIR "tests/fixtures"
#endif

namespace pddl3c::test {

inline std::string read_fixture(const std::string& name) {
  std::string path = std::string(PDDL3C_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline DomainDef fixture_domain(const std::string& name) {
  return parse_domain(read_fixture(name));
}

inline ProblemDef fixture_problem(const std::string& name, const DomainDef& d) {
  return parse_problem(read_fixture(name), d);
}

// Canonical structural equality used across suites.
inline bool formula_eq(const FormulaPtr& a, const FormulaPtr& b) {
  return equal(simplify(a), simplify(b));
}

inline bool effects_equal(const std::vector<ConditionalEffect>& a,
                          const std::vector<ConditionalEffect>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i].literal == b[i].literal)) return false;
    if (a[i].z_vars.size() != b[i].z_vars.size()) return false;
    for (std::size_t j = 0; j < a[i].z_vars.size(); ++j)
      if (a[i].z_vars[j] != b[i].z_vars[j]) return false;
    if (!formula_eq(a[i].condition, b[i].condition)) return false;
  }
  return true;
}

inline bool schema_equal(const ActionSchema& a, const ActionSchema& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i)
    if (a.params[i] != b.params[i]) return false;
  return formula_eq(a.precondition, b.precondition) &&
         effects_equal(a.effects, b.effects);
}

inline bool domain_equal(const DomainDef& a, const DomainDef& b) {
  if (a.name != b.name || a.types.parents() != b.types.parents() ||
      a.constants != b.constants)
    return false;
  if (a.predicates.size() != b.predicates.size()) return false;
  for (std::size_t i = 0; i < a.predicates.size(); ++i) {
    if (a.predicates[i].name != b.predicates[i].name) return false;
    if (a.predicates[i].params.size() != b.predicates[i].params.size())
      return false;
    for (std::size_t j = 0; j < a.predicates[i].params.size(); ++j)
      if (a.predicates[i].params[j] != b.predicates[i].params[j]) return false;
  }
  if (a.actions.size() != b.actions.size()) return false;
  for (std::size_t i = 0; i < a.actions.size(); ++i)
    if (!schema_equal(a.actions[i], b.actions[i])) return false;
  return true;
}

inline bool problem_equal(const ProblemDef& a, const ProblemDef& b) {
  if (a.name != b.name || a.domain_name != b.domain_name ||
      a.objects != b.objects)
    return false;
  if (a.init.size() != b.init.size()) return false;
  for (std::size_t i = 0; i < a.init.size(); ++i)
    if (a.init[i] != b.init[i]) return false;
  if (!formula_eq(a.goal, b.goal)) return false;
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const Constraint& x = a.constraints[i];
    const Constraint& y = b.constraints[i];
    if (x.kind != y.kind || !formula_eq(x.arg1, y.arg1)) return false;
    if (x.binary() && !formula_eq(x.arg2, y.arg2)) return false;
  }
  return true;
}

// Random ground formulas over a fixed pool of 0-ary propositions; used by
// the truth-table and distribution properties.
class GroundFormulaGen {
 public:
  GroundFormulaGen(unsigned seed, int n_atoms = 8)
      : rng_(seed), n_atoms_(n_atoms) {}

  FormulaPtr operator()(int depth = 3) { return gen(depth); }

  Atom atom(int i) const { return Atom{"g" + std::to_string(i), {}}; }
  int n_atoms() const { return n_atoms_; }

 private:
  FormulaPtr gen(int depth) {
    if (depth == 0 || pick(4) == 0)
      return f_atom(atom(pick(n_atoms_)));
    switch (pick(5)) {
      case 0:
        return f_not(gen(depth - 1));
      case 1:
        return f_and({gen(depth - 1), gen(depth - 1)});
      case 2:
        return f_or({gen(depth - 1), gen(depth - 1)});
      case 3:
        return f_implies(gen(depth - 1), gen(depth - 1));
      default:
        return pick(2) ? f_true() : f_false();
    }
  }

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937 rng_;
  int n_atoms_;
};

// Truth of a ground, quantifier-free formula under a bitmask assignment of
// the generator's propositions. Independent of holds().
inline bool truth_under(const FormulaPtr& f, unsigned mask,
                        const GroundFormulaGen& gen) {
  switch (f->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom: {
      for (int i = 0; i < gen.n_atoms(); ++i)
        if (f->atom == gen.atom(i)) return mask & (1u << i);
      throw std::runtime_error("unknown proposition " + f->atom.predicate);
    }
    case Formula::Kind::Equals:
      return f->lhs.name == f->rhs.name;
    case Formula::Kind::Not:
      return !truth_under(f->children[0], mask, gen);
    case Formula::Kind::And:
      for (const FormulaPtr& c : f->children)
        if (!truth_under(c, mask, gen)) return false;
      return true;
    case Formula::Kind::Or:
      for (const FormulaPtr& c : f->children)
        if (truth_under(c, mask, gen)) return true;
      return false;
    case Formula::Kind::Implies:
      return !truth_under(f->children[0], mask, gen) ||
             truth_under(f->children[1], mask, gen);
    default:
      throw std::runtime_error("quantifier in ground formula");
  }
}

}  // namespace pddl3c::test
