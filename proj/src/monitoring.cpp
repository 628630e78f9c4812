#include "monitoring.hpp"

#include <algorithm>

#include "pddl3c/errors.hpp"

namespace pddl3c::detail {

const FormulaPtr& MonitoringAtoms::seen_formula(const Constraint& c) {
  return c.kind == Constraint::Kind::SometimeBefore ? c.arg2 : c.arg1;
}

MonitoringAtoms mint_monitoring(const std::vector<Constraint>& constraints,
                                bool with_prevent) {
  MonitoringAtoms atoms;
  for (const Constraint& c : constraints) {
    switch (c.kind) {
      case Constraint::Kind::Sometime:
      case Constraint::Kind::SometimeAfter: {
        std::string name = "__hold_" + std::to_string(c.index);
        atoms.hold[c.index] = name;
        atoms.minted.push_back(name);
        break;
      }
      case Constraint::Kind::SometimeBefore:
      case Constraint::Kind::AtMostOnce: {
        std::string key = canonical_key(MonitoringAtoms::seen_formula(c));
        auto it = atoms.seen_by_key.find(key);
        if (it == atoms.seen_by_key.end()) {
          std::string name = "__seen_" + std::to_string(atoms.seen_by_key.size());
          it = atoms.seen_by_key.emplace(key, name).first;
          atoms.minted.push_back(name);
        }
        atoms.seen[c.index] = it->second;
        if (with_prevent && c.kind == Constraint::Kind::AtMostOnce) {
          auto pit = atoms.prevent_by_key.find(key);
          if (pit == atoms.prevent_by_key.end()) {
            std::string name =
                "__prevent_" + std::to_string(atoms.prevent_by_key.size());
            pit = atoms.prevent_by_key.emplace(key, name).first;
            atoms.minted.push_back(name);
          }
          atoms.prevent[c.index] = pit->second;
        }
        break;
      }
      case Constraint::Kind::Always:
        break;  // no monitoring needed
    }
  }
  return atoms;
}

std::optional<Constraint> check_initially_violated(
    const std::vector<Constraint>& constraints, const State& init,
    const Universe& u) {
  for (const Constraint& c : constraints) {
    if (c.kind == Constraint::Kind::Always && !holds(init, c.arg1, u)) return c;
    if (c.kind == Constraint::Kind::SometimeBefore && holds(init, c.arg1, u))
      return c;
  }
  return std::nullopt;
}

Literal monitor_literal(const std::string& name, bool positive) {
  return Literal{positive, Atom{name, {}}};
}

namespace {

ConditionalEffect monitor_effect(FormulaPtr condition, const std::string& atom,
                                 bool positive) {
  return ConditionalEffect{{}, std::move(condition),
                           monitor_literal(atom, positive)};
}

}  // namespace

void push_unique(std::vector<FormulaPtr>& out, const FormulaPtr& f) {
  for (const FormulaPtr& existing : out)
    if (equal(existing, f)) return;
  out.push_back(f);
}

void push_unique(std::vector<ConditionalEffect>& out, ConditionalEffect e) {
  for (const ConditionalEffect& existing : out)
    if (existing == e) return;
  out.push_back(std::move(e));
}

int count_effect_items(const DomainDef& d) {
  int n = 0;
  for (const ActionSchema& a : d.actions) n += static_cast<int>(a.effects.size());
  return n;
}

void fill_input_stats(CompileStats& stats, const DomainDef& d,
                      const ProblemDef& p) {
  stats.n_actions_in = static_cast<int>(d.actions.size());
  stats.n_actions = stats.n_actions_in;
  stats.n_effect_items_in = count_effect_items(d);
  stats.n_constraints = static_cast<int>(p.constraints.size());
  stats.n_predicates = static_cast<int>(d.predicates.size());
  for (const PredicateDef& pred : d.predicates)
    stats.max_atom_arity =
        std::max(stats.max_atom_arity, static_cast<int>(pred.params.size()));
  for (const Constraint& c : p.constraints) {
    stats.max_quantifier_depth =
        std::max(stats.max_quantifier_depth, quantifier_depth(c.arg1));
    if (c.binary())
      stats.max_quantifier_depth =
          std::max(stats.max_quantifier_depth, quantifier_depth(c.arg2));
  }
}

ConstraintItems compile_c_regression(const std::vector<Constraint>& constraints,
                                     const MonitoringAtoms& atoms,
                                     const RegressFn& regress,
                                     const TrivialFn& trivial) {
  ConstraintItems items;
  for (const Constraint& c : constraints) {
    ++items.operations;
    switch (c.kind) {
      case Constraint::Kind::Always: {
        if (trivial(c.arg1)) break;
        ++items.operations;
        push_unique(items.preconditions, regress(c.arg1));
        break;
      }
      case Constraint::Kind::Sometime: {
        if (trivial(c.arg1)) break;
        ++items.operations;
        push_unique(items.effects,
                    monitor_effect(regress(c.arg1), atoms.hold.at(c.index), true));
        break;
      }
      case Constraint::Kind::AtMostOnce: {
        if (trivial(c.arg1)) break;  // the precondition folds to true
        items.operations += 2;
        FormulaPtr r = regress(c.arg1);
        push_unique(items.effects,
                    monitor_effect(r, atoms.seen.at(c.index), true));
        FormulaPtr seen = f_atom(Atom{atoms.seen.at(c.index), {}});
        push_unique(items.preconditions,
                    simplify(f_not(f_and({seen, f_not(c.arg1), r}))));
        break;
      }
      case Constraint::Kind::SometimeBefore: {
        if (!trivial(c.arg2)) {
          ++items.operations;
          push_unique(items.effects,
                      monitor_effect(regress(c.arg2), atoms.seen.at(c.index), true));
        }
        ++items.operations;
        FormulaPtr seen = f_atom(Atom{atoms.seen.at(c.index), {}});
        push_unique(items.preconditions,
                    simplify(f_implies(regress(c.arg1), seen)));
        break;
      }
      case Constraint::Kind::SometimeAfter: {
        if (trivial(c.arg1) && trivial(c.arg2)) break;
        items.operations += 2;
        FormulaPtr r_phi = regress(c.arg1);
        FormulaPtr r_psi = regress(c.arg2);
        const std::string& hold = atoms.hold.at(c.index);
        push_unique(items.effects, monitor_effect(r_psi, hold, true));
        push_unique(items.effects,
                    monitor_effect(simplify(f_and({r_phi, f_not(r_psi)})), hold,
                                   false));
        break;
      }
    }
  }
  // Preconditions that simplified to true carry no information.
  items.preconditions.erase(
      std::remove_if(items.preconditions.begin(), items.preconditions.end(),
                     [](const FormulaPtr& f) { return is_true(f); }),
      items.preconditions.end());
  // Effects whose condition simplified to false can never fire.
  items.effects.erase(
      std::remove_if(items.effects.begin(), items.effects.end(),
                     [](const ConditionalEffect& e) {
                       return is_false(e.condition);
                     }),
      items.effects.end());
  return items;
}

std::vector<Atom> initial_monitoring_atoms(
    const std::vector<Constraint>& constraints, const MonitoringAtoms& atoms,
    const State& init, const Universe& u) {
  std::vector<Atom> out;
  for (const Constraint& c : constraints) {
    switch (c.kind) {
      case Constraint::Kind::Sometime:
        if (holds(init, c.arg1, u)) out.push_back(Atom{atoms.hold.at(c.index), {}});
        break;
      case Constraint::Kind::SometimeAfter:
        if (holds(init, c.arg2, u) || !holds(init, c.arg1, u))
          out.push_back(Atom{atoms.hold.at(c.index), {}});
        break;
      case Constraint::Kind::SometimeBefore:
      case Constraint::Kind::AtMostOnce:
        if (holds(init, MonitoringAtoms::seen_formula(c), u))
          out.push_back(Atom{atoms.seen.at(c.index), {}});
        break;
      case Constraint::Kind::Always:
        break;
    }
  }
  return out;
}

namespace {

void collect_constants(const FormulaPtr& f,
                       std::map<std::string, std::string>& out) {
  if (f->kind == Formula::Kind::Atom) {
    for (const Term& t : f->atom.args)
      if (!t.is_variable) out.emplace(t.name, t.type);
  } else if (f->kind == Formula::Kind::Equals) {
    for (const Term* t : {&f->lhs, &f->rhs})
      if (!t->is_variable) out.emplace(t->name, t->type);
  }
  for (const FormulaPtr& c : f->children) collect_constants(c, out);
}

}  // namespace

void declare_body_constants(DomainDef& domain) {
  std::map<std::string, std::string> found;
  for (const ActionSchema& a : domain.actions) {
    collect_constants(a.precondition, found);
    for (const ConditionalEffect& e : a.effects) {
      collect_constants(e.condition, found);
      for (const Term& t : e.literal.atom.args)
        if (!t.is_variable) found.emplace(t.name, t.type);
    }
  }
  for (const auto& [name, type] : found) domain.constants.emplace(name, type);
}

void declare_monitoring(DomainDef& domain, const MonitoringAtoms& atoms,
                        const std::vector<std::string>& extra) {
  std::vector<std::string> names = atoms.minted;
  names.insert(names.end(), extra.begin(), extra.end());
  for (const std::string& name : names) {
    if (domain.find_predicate(name))
      throw ParseError("predicate " + name +
                       " collides with a reserved monitoring atom");
    domain.predicates.push_back(PredicateDef{name, {}});
  }
}

}  // namespace pddl3c::detail
