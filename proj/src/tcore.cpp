#include <algorithm>
#include <chrono>

#include "monitoring.hpp"
#include "pddl3c/compile.hpp"
#include "pddl3c/errors.hpp"
#include "pddl3c/lifted_regression.hpp"

namespace pddl3c {

std::string to_string(CompileMode mode) {
  switch (mode) {
    case CompileMode::LiftedTcore: return "lifted-tcore";
    case CompileMode::Lcc: return "lcc";
    case CompileMode::GroundTcore: return "ground-tcore";
  }
  return "?";
}

std::optional<CompileMode> parse_mode(const std::string& text) {
  if (text == "lifted-tcore") return CompileMode::LiftedTcore;
  if (text == "lcc") return CompileMode::Lcc;
  if (text == "ground-tcore") return CompileMode::GroundTcore;
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<Atom> sorted_init(std::vector<Atom> atoms) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  return atoms;
}

FormulaPtr goal_with_holds(const FormulaPtr& goal,
                           const detail::MonitoringAtoms& atoms,
                           std::vector<FormulaPtr> extra = {}) {
  std::vector<FormulaPtr> parts{goal};
  for (const auto& [index, name] : atoms.hold)
    parts.push_back(f_atom(Atom{name, {}}));
  for (FormulaPtr& f : extra) parts.push_back(std::move(f));
  return simplify(f_and(std::move(parts)));
}

// Shared unsolvable path: the constraint is irrevocably violated at the
// initial state, so a canonical trivially-unsolvable problem is emitted.
CompileOutput unsolvable_output(const DomainDef& d, const ProblemDef& p,
                                const Constraint& violated,
                                const std::string& mode) {
  CompileOutput out;
  out.unsolvable = true;
  out.violated = violated;
  out.domain = d;
  out.problem = p;
  out.problem.goal = f_false();
  out.problem.constraints.clear();
  detail::fill_input_stats(out.stats, d, p);
  out.stats.mode = mode;
  out.stats.n_actions_out = static_cast<int>(d.actions.size());
  out.stats.n_effect_items_out = detail::count_effect_items(d);
  out.diagnostics.push_back(
      "constraint " + std::to_string(violated.index) + " (" +
      to_string(violated.kind) +
      ") is violated in the initial state; the problem is unsolvable");
  return out;
}

void record_monitoring(CompileOutput& out, const detail::MonitoringAtoms& atoms) {
  out.hold_atoms = atoms.hold;
  out.seen_atoms = atoms.seen_by_key;
  out.prevent_atoms = atoms.prevent_by_key;
  for (const std::string& name : atoms.minted) out.monitor_predicates.insert(name);
  out.stats.n_monitoring_atoms = static_cast<int>(atoms.minted.size());
}

}  // namespace

CompileOutput compile_lifted_tcore(const DomainDef& d, const ProblemDef& p,
                                   const CompileOptions& options) {
  (void)options;
  auto start = Clock::now();
  Universe u(d.types, p.objects);
  State init;
  init.atoms.insert(p.init.begin(), p.init.end());

  if (auto violated = detail::check_initially_violated(p.constraints, init, u)) {
    CompileOutput out = unsolvable_output(d, p, *violated, "lifted-tcore");
    out.stats.wall_time_seconds = seconds_since(start);
    return out;
  }

  detail::MonitoringAtoms atoms =
      detail::mint_monitoring(p.constraints, /*with_prevent=*/false);

  CompileOutput out;
  out.domain = d;
  detail::fill_input_stats(out.stats, d, p);
  out.stats.mode = "lifted-tcore";
  record_monitoring(out, atoms);
  detail::declare_monitoring(out.domain, atoms);

  for (ActionSchema& a : out.domain.actions) {
    detail::ConstraintItems items = detail::compile_c_regression(
        p.constraints, atoms,
        [&](const FormulaPtr& f) { return lifted_regression(f, a, d.types); },
        [&](const FormulaPtr& f) {
          return is_regression_trivial(f, a, d.types);
        });
    out.stats.n_operations += items.operations;
    out.stats.n_preconds_added += static_cast<int>(items.preconditions.size());
    if (!items.preconditions.empty()) {
      std::vector<FormulaPtr> parts{a.precondition};
      parts.insert(parts.end(), items.preconditions.begin(),
                   items.preconditions.end());
      a.precondition = simplify(f_and(std::move(parts)));
    }
    for (ConditionalEffect& e : items.effects) a.effects.push_back(std::move(e));
  }

  detail::declare_body_constants(out.domain);

  out.problem = p;
  out.problem.constraints.clear();
  std::vector<Atom> init_atoms = p.init;
  for (Atom& a : detail::initial_monitoring_atoms(p.constraints, atoms, init, u))
    init_atoms.push_back(std::move(a));
  out.problem.init = sorted_init(std::move(init_atoms));
  out.problem.goal = goal_with_holds(p.goal, atoms);

  out.stats.n_actions_out = static_cast<int>(out.domain.actions.size());
  out.stats.n_effect_items_out = detail::count_effect_items(out.domain);
  out.stats.wall_time_seconds = seconds_since(start);
  return out;
}

CompileOutput compile_tcore_ground(const DomainDef& d, const ProblemDef& p,
                                   const CompileOptions& options) {
  auto start = Clock::now();
  GroundedProblem gp = ground(d, p, options.ground_cap);
  Universe u(d.types, p.objects);

  if (auto violated =
          detail::check_initially_violated(gp.constraints, gp.init, u)) {
    CompileOutput out = unsolvable_output(d, p, *violated, "ground-tcore");
    out.stats.wall_time_seconds = seconds_since(start);
    return out;
  }

  detail::MonitoringAtoms atoms =
      detail::mint_monitoring(gp.constraints, /*with_prevent=*/false);

  CompileOutput out;
  out.domain.name = d.name;
  out.domain.types = d.types;
  // Ground action bodies mention objects directly; declaring them as
  // domain constants keeps the emitted pair parseable.
  out.domain.constants = p.objects;
  out.domain.predicates = d.predicates;
  detail::fill_input_stats(out.stats, d, p);
  out.stats.mode = "ground-tcore";
  record_monitoring(out, atoms);
  detail::declare_monitoring(out.domain, atoms);

  for (const GroundAction& g : gp.actions) {
    detail::ConstraintItems items = detail::compile_c_regression(
        gp.constraints, atoms,
        [&](const FormulaPtr& f) { return ground_regression(f, g); },
        [&](const FormulaPtr& f) { return is_ground_regression_trivial(f, g); });
    out.stats.n_operations += items.operations;
    out.stats.n_preconds_added += static_cast<int>(items.preconditions.size());

    ActionSchema schema;
    std::string name = g.schema;
    for (const Term& arg : g.args) name += "_" + arg.name;
    while (out.domain.find_action(name)) name += "_";
    schema.name = name;
    std::vector<FormulaPtr> parts{g.precondition};
    parts.insert(parts.end(), items.preconditions.begin(),
                 items.preconditions.end());
    schema.precondition = simplify(f_and(std::move(parts)));
    for (const GroundAction::Effect& e : g.effects)
      schema.effects.push_back(ConditionalEffect{{}, e.condition, e.literal});
    for (ConditionalEffect& e : items.effects)
      schema.effects.push_back(std::move(e));
    out.domain.actions.push_back(std::move(schema));

    PlanStep step;
    step.action = g.schema;
    for (const Term& arg : g.args) step.args.push_back(arg.name);
    out.ground_name_map[name] = std::move(step);
  }

  out.problem = p;
  out.problem.constraints.clear();
  std::vector<Atom> init_atoms = p.init;
  for (Atom& a :
       detail::initial_monitoring_atoms(gp.constraints, atoms, gp.init, u))
    init_atoms.push_back(std::move(a));
  out.problem.init = sorted_init(std::move(init_atoms));
  out.problem.goal = goal_with_holds(gp.goal, atoms);

  out.stats.n_actions_out = static_cast<int>(out.domain.actions.size());
  out.stats.n_effect_items_out = detail::count_effect_items(out.domain);
  out.stats.wall_time_seconds = seconds_since(start);
  return out;
}

CompileOutput compile(const DomainDef& d, const ProblemDef& p, CompileMode mode,
                      const CompileOptions& options) {
  switch (mode) {
    case CompileMode::LiftedTcore: return compile_lifted_tcore(d, p, options);
    case CompileMode::Lcc: return compile_lcc(d, p);
    case CompileMode::GroundTcore: return compile_tcore_ground(d, p, options);
  }
  throw Error("unknown compile mode");
}

}  // namespace pddl3c
