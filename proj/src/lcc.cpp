#include <algorithm>
#include <chrono>

#include "monitoring.hpp"
#include "pddl3c/compile.hpp"
#include "pddl3c/errors.hpp"

namespace pddl3c {

namespace {

constexpr const char* kEndAtom = "__end";
constexpr const char* kFinAction = "fin";

// Action-independent preconditions and delayed monitoring effects, one
// pass over the constraints:
//   Always:         P += phi
//   Sometime:       E += (phi -> +hold)
//   AtMostOnce:     E += (phi -> +seen), (not phi and seen -> +prevent),
//                   P += not(phi and prevent)
//   SometimeBefore: E += (psi -> +seen), P += phi implies seen
//   SometimeAfter:  E += (phi and not psi -> -hold), (psi -> +hold)
detail::ConstraintItems compile_c(const std::vector<Constraint>& constraints,
                                  const detail::MonitoringAtoms& atoms) {
  detail::ConstraintItems items;
  for (const Constraint& c : constraints) {
    ++items.operations;
    switch (c.kind) {
      case Constraint::Kind::Always: {
        ++items.operations;
        detail::push_unique(items.preconditions, simplify(c.arg1));
        break;
      }
      case Constraint::Kind::Sometime: {
        ++items.operations;
        detail::push_unique(
            items.effects,
            ConditionalEffect{{}, simplify(c.arg1),
                              detail::monitor_literal(atoms.hold.at(c.index), true)});
        break;
      }
      case Constraint::Kind::AtMostOnce: {
        items.operations += 3;
        const std::string& seen = atoms.seen.at(c.index);
        const std::string& prevent = atoms.prevent.at(c.index);
        FormulaPtr seen_atom = f_atom(Atom{seen, {}});
        FormulaPtr prevent_atom = f_atom(Atom{prevent, {}});
        detail::push_unique(
            items.effects,
            ConditionalEffect{{}, simplify(c.arg1),
                              detail::monitor_literal(seen, true)});
        detail::push_unique(
            items.effects,
            ConditionalEffect{{}, simplify(f_and({f_not(c.arg1), seen_atom})),
                              detail::monitor_literal(prevent, true)});
        detail::push_unique(items.preconditions,
                            simplify(f_not(f_and({c.arg1, prevent_atom}))));
        break;
      }
      case Constraint::Kind::SometimeBefore: {
        items.operations += 2;
        const std::string& seen = atoms.seen.at(c.index);
        detail::push_unique(
            items.effects,
            ConditionalEffect{{}, simplify(c.arg2),
                              detail::monitor_literal(seen, true)});
        detail::push_unique(
            items.preconditions,
            simplify(f_implies(c.arg1, f_atom(Atom{seen, {}}))));
        break;
      }
      case Constraint::Kind::SometimeAfter: {
        items.operations += 2;
        const std::string& hold = atoms.hold.at(c.index);
        detail::push_unique(
            items.effects,
            ConditionalEffect{{}, simplify(f_and({c.arg1, f_not(c.arg2)})),
                              detail::monitor_literal(hold, false)});
        detail::push_unique(
            items.effects,
            ConditionalEffect{{}, simplify(c.arg2),
                              detail::monitor_literal(hold, true)});
        break;
      }
    }
  }
  items.preconditions.erase(
      std::remove_if(items.preconditions.begin(), items.preconditions.end(),
                     [](const FormulaPtr& f) { return is_true(f); }),
      items.preconditions.end());
  items.effects.erase(
      std::remove_if(items.effects.begin(), items.effects.end(),
                     [](const ConditionalEffect& e) {
                       return is_false(e.condition);
                     }),
      items.effects.end());
  return items;
}

}  // namespace

CompileOutput compile_lcc(const DomainDef& d, const ProblemDef& p) {
  auto start = std::chrono::steady_clock::now();
  Universe u(d.types, p.objects);
  State init;
  init.atoms.insert(p.init.begin(), p.init.end());

  CompileOutput out;
  out.domain = d;
  detail::fill_input_stats(out.stats, d, p);
  out.stats.mode = "lcc";

  // No unsolvability shortcut: an initially violated constraint leaves
  // every action (including fin) inapplicable, which is already the right
  // semantics. Surface it as a diagnostic only.
  if (auto violated = detail::check_initially_violated(p.constraints, init, u)) {
    out.diagnostics.push_back(
        "warning: constraint " + std::to_string(violated->index) + " (" +
        to_string(violated->kind) +
        ") is violated in the initial state; the compiled problem has no "
        "valid plans");
  }

  detail::MonitoringAtoms atoms =
      detail::mint_monitoring(p.constraints, /*with_prevent=*/true);
  out.hold_atoms = atoms.hold;
  out.seen_atoms = atoms.seen_by_key;
  out.prevent_atoms = atoms.prevent_by_key;
  out.end_atom = kEndAtom;
  for (const std::string& name : atoms.minted) out.monitor_predicates.insert(name);
  out.monitor_predicates.insert(kEndAtom);
  out.stats.n_monitoring_atoms = static_cast<int>(atoms.minted.size()) + 1;
  detail::declare_monitoring(out.domain, atoms, {kEndAtom});

  if (d.find_action(kFinAction))
    throw ParseError(std::string("action name ") + kFinAction +
                     " is reserved by the regression-free compilation");

  detail::ConstraintItems items = compile_c(p.constraints, atoms);
  out.stats.n_operations += items.operations;

  FormulaPtr not_end = f_not(f_atom(Atom{kEndAtom, {}}));
  std::vector<FormulaPtr> shared_pre = items.preconditions;
  shared_pre.push_back(not_end);

  for (ActionSchema& a : out.domain.actions) {
    ++out.stats.n_operations;
    std::vector<FormulaPtr> parts{a.precondition};
    parts.insert(parts.end(), shared_pre.begin(), shared_pre.end());
    a.precondition = simplify(f_and(std::move(parts)));
    a.effects.insert(a.effects.end(), items.effects.begin(), items.effects.end());
    out.stats.n_preconds_added += static_cast<int>(shared_pre.size());
  }

  ActionSchema fin;
  fin.name = kFinAction;
  fin.precondition = simplify(f_and(shared_pre));
  fin.effects = items.effects;
  fin.effects.push_back(
      ConditionalEffect{{}, f_true(), detail::monitor_literal(kEndAtom, true)});
  out.domain.actions.push_back(std::move(fin));
  ++out.stats.n_operations;

  detail::declare_body_constants(out.domain);

  out.problem = p;
  out.problem.constraints.clear();
  std::vector<Atom> init_atoms = p.init;
  for (const Constraint& c : p.constraints)
    if (c.kind == Constraint::Kind::SometimeAfter)
      init_atoms.push_back(Atom{atoms.hold.at(c.index), {}});
  std::sort(init_atoms.begin(), init_atoms.end());
  init_atoms.erase(std::unique(init_atoms.begin(), init_atoms.end()),
                   init_atoms.end());
  out.problem.init = std::move(init_atoms);

  std::vector<FormulaPtr> goal_parts{p.goal};
  for (const auto& [index, name] : atoms.hold)
    goal_parts.push_back(f_atom(Atom{name, {}}));
  goal_parts.push_back(f_atom(Atom{kEndAtom, {}}));
  out.problem.goal = simplify(f_and(std::move(goal_parts)));

  out.stats.n_actions_out = static_cast<int>(out.domain.actions.size());
  out.stats.n_effect_items_out = detail::count_effect_items(out.domain);
  out.stats.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace pddl3c
