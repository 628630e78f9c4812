#include "pddl3c/oracle.hpp"

#include <algorithm>
#include <random>

#include "pddl3c/errors.hpp"
#include "pddl3c/grounding.hpp"
#include "pddl3c/lifted_regression.hpp"
#include "pddl3c/printer.hpp"
#include "pddl3c/semantics.hpp"

namespace pddl3c {

// ---------------------------------------------------------------------------
// Plan enumeration
// ---------------------------------------------------------------------------

namespace {

// Incremental constraint status along a trajectory prefix. Always,
// AtMostOnce and SometimeBefore violations are permanent, so the search
// prunes on them; Sometime and SometimeAfter are checked at the leaves.
struct ConstraintTracker {
  const Constraint* constraint;
  bool violated = false;       // permanent violation seen
  bool sometime_ok = false;    // Sometime: phi observed
  bool seen_second = false;    // SometimeBefore: psi observed strictly earlier
  bool sa_pending = false;     // SometimeAfter: phi seen, no psi at or after
  int ao_phase = 0;            // AtMostOnce: 0 never, 1 in block, 2 after block

  void observe(const State& s, const Universe& u) {
    if (violated) return;
    const Constraint& c = *constraint;
    switch (c.kind) {
      case Constraint::Kind::Always:
        violated = !holds(s, c.arg1, u);
        break;
      case Constraint::Kind::Sometime:
        sometime_ok = sometime_ok || holds(s, c.arg1, u);
        break;
      case Constraint::Kind::AtMostOnce: {
        bool v = holds(s, c.arg1, u);
        if (v && ao_phase == 2) violated = true;
        else if (v) ao_phase = 1;
        else if (ao_phase == 1) ao_phase = 2;
        break;
      }
      case Constraint::Kind::SometimeBefore: {
        if (holds(s, c.arg1, u) && !seen_second) violated = true;
        // psi observed in this state licenses triggers in later states only.
        if (holds(s, c.arg2, u)) seen_second = true;
        break;
      }
      case Constraint::Kind::SometimeAfter: {
        if (holds(s, c.arg2, u)) sa_pending = false;
        else if (holds(s, c.arg1, u)) sa_pending = true;
        break;
      }
    }
  }

  bool prunes() const { return violated; }

  bool satisfied_at_leaf() const {
    if (violated) return false;
    switch (constraint->kind) {
      case Constraint::Kind::Sometime: return sometime_ok;
      case Constraint::Kind::SometimeAfter: return !sa_pending;
      default: return true;
    }
  }
};

struct Enumerator {
  const Universe& u;
  const GroundedProblem& gp;
  int max_len;
  PlanSet out;
  std::vector<std::string> prefix;

  void dfs(const State& s, std::vector<ConstraintTracker>& trackers, int depth) {
    bool all_ok = holds(s, gp.goal, u);
    for (const ConstraintTracker& t : trackers)
      all_ok = all_ok && t.satisfied_at_leaf();
    if (all_ok) out.plans.insert(prefix);
    if (depth == max_len) return;

    for (const GroundAction& g : gp.actions) {
      if (!applicable(s, g, u)) continue;
      State next = apply(s, g, u, depth);
      std::vector<ConstraintTracker> next_trackers = trackers;
      bool prune = false;
      for (ConstraintTracker& t : next_trackers) {
        t.observe(next, u);
        prune = prune || t.prunes();
      }
      if (prune) continue;
      prefix.push_back(g.render());
      dfs(next, next_trackers, depth + 1);
      prefix.pop_back();
    }
  }
};

}  // namespace

PlanSet enumerate_valid_plans(const DomainDef& d, const ProblemDef& p, int k,
                              std::size_t ground_cap) {
  GroundedProblem gp = ground(d, p, ground_cap);
  Universe u(d.types, p.objects);

  Enumerator e{u, gp, k, PlanSet{k, {}}, {}};
  std::vector<ConstraintTracker> trackers;
  for (const Constraint& c : gp.constraints) {
    trackers.push_back(ConstraintTracker{&c});
    trackers.back().observe(gp.init, u);
    if (trackers.back().prunes()) return e.out;  // no valid plans at all
  }
  e.dfs(gp.init, trackers, 0);
  return e.out;
}

// ---------------------------------------------------------------------------
// Regression correctness checking
// ---------------------------------------------------------------------------

FormulaPtr mutated_lifted_regression_drop_persistence(const FormulaPtr& phi,
                                                      const ActionSchema& a,
                                                      const TypeHierarchy& types) {
  // Replaces every atom f by gamma(f) alone, losing persistence.
  struct Walker {
    const ActionSchema& a;
    const TypeHierarchy& types;

    FormulaPtr walk(const FormulaPtr& f) {
      switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Equals:
          return f;
        case Formula::Kind::Atom:
          return lifted_gamma(Literal{true, f->atom}, a, types);
        default: {
          std::vector<FormulaPtr> children;
          for (const FormulaPtr& c : f->children) children.push_back(walk(c));
          Formula out;
          out.kind = f->kind;
          out.vars = f->vars;
          out.children = std::move(children);
          return std::make_shared<const Formula>(std::move(out));
        }
      }
    }
  };
  std::set<std::string> taken;
  for (const Term& p : a.params) taken.insert(p.name);
  for (const ConditionalEffect& e : a.effects)
    for (const Term& z : e.z_vars) taken.insert(z.name);
  Walker w{a, types};
  return simplify(w.walk(rename_bound_vars_avoiding(phi, taken)));
}

nlohmann::json Lemma1Report::to_json() const {
  return nlohmann::json{{"ok", ok},
                        {"checks", checks},
                        {"counterexamples", counterexamples}};
}

namespace {

// Random closed formula over the declared predicates and objects.
struct FormulaSampler {
  const DomainDef& d;
  const Universe& u;
  std::mt19937& rng;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

  Atom ground_atom() {
    const PredicateDef& p = d.predicates[pick(static_cast<int>(d.predicates.size()))];
    Atom a;
    a.predicate = p.name;
    for (const Term& param : p.params) {
      const std::vector<Term>& objs = u.objects_of(param.type);
      a.args.push_back(objs[pick(static_cast<int>(objs.size()))]);
    }
    return a;
  }

  // A predicate position quantified over, remaining positions ground.
  FormulaPtr quantified(bool universal) {
    const PredicateDef& p = d.predicates[pick(static_cast<int>(d.predicates.size()))];
    if (p.params.empty()) return f_atom(ground_atom());
    int var_pos = pick(static_cast<int>(p.params.size()));
    Term var = Term::variable("?q", p.params[var_pos].type);
    Atom a;
    a.predicate = p.name;
    for (std::size_t i = 0; i < p.params.size(); ++i) {
      if (static_cast<int>(i) == var_pos) {
        a.args.push_back(var);
      } else {
        const std::vector<Term>& objs = u.objects_of(p.params[i].type);
        a.args.push_back(objs[pick(static_cast<int>(objs.size()))]);
      }
    }
    FormulaPtr body = pick(2) ? f_atom(a) : f_not(f_atom(a));
    return universal ? f_forall({var}, body) : f_exists({var}, body);
  }

  FormulaPtr closed_formula() {
    switch (pick(6)) {
      case 0:
        return f_atom(ground_atom());
      case 1:
        return f_not(f_atom(ground_atom()));
      case 2:
        return f_and({f_literal(Literal{pick(2) == 0, ground_atom()}),
                      f_literal(Literal{pick(2) == 0, ground_atom()})});
      case 3:
        return f_or({f_literal(Literal{pick(2) == 0, ground_atom()}),
                     f_literal(Literal{pick(2) == 0, ground_atom()})});
      case 4:
        return quantified(true);
      default:
        return quantified(false);
    }
  }
};

}  // namespace

Lemma1Report check_lemma1(const DomainDef& d,
                          const std::map<std::string, std::string>& objects,
                          int samples, unsigned seed,
                          const SchemaRegressFn& regress) {
  Lemma1Report report;
  Universe u(d.types, objects);

  std::vector<Atom> universe;
  for (const PredicateDef& p : d.predicates)
    for (const std::vector<Term>& tuple : object_tuples(p.params, u))
      universe.push_back(Atom{p.name, tuple});
  std::sort(universe.begin(), universe.end());
  if (universe.size() > 16)
    throw ResourceLimitError("universe of " + std::to_string(universe.size()) +
                             " ground atoms is too large for the exhaustive "
                             "regression check (max 16)");

  SchemaRegressFn regress_fn = regress;
  if (!regress_fn)
    regress_fn = [&](const FormulaPtr& f, const ActionSchema& a) {
      return lifted_regression(f, a, d.types);
    };

  std::mt19937 rng(seed);
  FormulaSampler sampler{d, u, rng};
  std::vector<FormulaPtr> formulas;
  for (const Atom& a : universe) formulas.push_back(f_atom(a));
  for (int i = 0; i < samples && !d.predicates.empty(); ++i)
    formulas.push_back(sampler.closed_formula());

  for (const ActionSchema& schema : d.actions) {
    std::vector<FormulaPtr> regressions;
    regressions.reserve(formulas.size());
    for (const FormulaPtr& phi : formulas)
      regressions.push_back(regress_fn(phi, schema));

    for (const std::vector<Term>& args : object_tuples(schema.params, u)) {
      GroundAction g = instantiate(schema, args, u);
      if (is_false(g.precondition)) continue;
      Substitution inst;
      for (std::size_t i = 0; i < schema.params.size(); ++i)
        inst.bind(schema.params[i], args[i]);
      std::vector<FormulaPtr> instantiated;
      instantiated.reserve(regressions.size());
      for (const FormulaPtr& r : regressions)
        instantiated.push_back(substitute(r, inst));

      const std::size_t n = universe.size();
      for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        State s;
        for (std::size_t bit = 0; bit < n; ++bit)
          if (mask & (std::size_t{1} << bit)) s.atoms.insert(universe[bit]);
        if (!applicable(s, g, u)) continue;
        State next = apply(s, g, u);
        for (std::size_t fi = 0; fi < formulas.size(); ++fi) {
          ++report.checks;
          bool lhs = holds(s, instantiated[fi], u);
          bool rhs = holds(next, formulas[fi], u);
          if (lhs != rhs) {
            report.ok = false;
            if (report.counterexamples.size() < 5) {
              std::string state_str;
              for (const Atom& a : s.atoms)
                state_str += print_formula(f_atom(a)) + " ";
              report.counterexamples.push_back(
                  "action " + g.render() + " state {" + state_str + "} formula " +
                  print_formula(formulas[fi]) + " regression " +
                  print_formula(instantiated[fi]) + " pre-state says " +
                  (lhs ? "true" : "false") + " but successor says " +
                  (rhs ? "true" : "false"));
            }
          }
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Compiler equivalence
// ---------------------------------------------------------------------------

nlohmann::json EquivalenceReport::to_json() const {
  return nlohmann::json{{"ok", ok},
                        {"mode", mode},
                        {"max_length", max_length},
                        {"original_plans", original_plans},
                        {"compiled_plans", compiled_plans},
                        {"mismatches", mismatches}};
}

namespace {

void record_mismatch(EquivalenceReport& report, const std::string& kind,
                     const std::vector<std::string>& plan) {
  report.ok = false;
  if (report.mismatches.size() >= 10) return;
  std::string rendered = kind + ":";
  for (const std::string& s : plan) rendered += " " + s;
  report.mismatches.push_back(rendered);
}

}  // namespace

EquivalenceReport check_compiler_equivalence(const DomainDef& d,
                                             const ProblemDef& p,
                                             CompileMode mode, int k,
                                             std::size_t ground_cap) {
  EquivalenceReport report;
  report.mode = to_string(mode);
  report.max_length = k;

  CompileOptions options;
  options.ground_cap = ground_cap;
  PlanSet original = enumerate_valid_plans(d, p, k, ground_cap);
  report.original_plans = original.plans.size();

  CompileOutput compiled = compile(d, p, mode, options);
  if (compiled.unsolvable) {
    // The compiler proved the problem unsolvable; the original must have
    // no valid plans at all.
    report.compiled_plans = 0;
    for (const auto& plan : original.plans)
      record_mismatch(report, "missing-from-compiled", plan);
    return report;
  }

  const int compiled_k = mode == CompileMode::Lcc ? k + 1 : k;
  PlanSet compiled_set = enumerate_valid_plans(compiled.domain, compiled.problem,
                                               compiled_k, ground_cap);
  report.compiled_plans = compiled_set.plans.size();

  std::set<std::vector<std::string>> projected;
  for (const std::vector<std::string>& plan : compiled_set.plans) {
    if (mode == CompileMode::Lcc) {
      if (plan.empty() || plan.back() != "(fin)") {
        record_mismatch(report, "compiled-plan-does-not-end-with-fin", plan);
        continue;
      }
      projected.insert({plan.begin(), plan.end() - 1});
    } else if (mode == CompileMode::GroundTcore) {
      std::vector<std::string> demangled;
      for (const std::string& step : plan) {
        std::string name = step.substr(1, step.size() - 2);
        auto it = compiled.ground_name_map.find(name);
        demangled.push_back(it == compiled.ground_name_map.end()
                                ? step
                                : it->second.render());
      }
      projected.insert(std::move(demangled));
    } else {
      projected.insert(plan);
    }
  }

  for (const auto& plan : original.plans)
    if (!projected.count(plan))
      record_mismatch(report, "missing-from-compiled", plan);
  for (const auto& plan : projected)
    if (!original.plans.count(plan))
      record_mismatch(report, "extra-in-compiled", plan);
  return report;
}

// ---------------------------------------------------------------------------
// Random task generator
// ---------------------------------------------------------------------------

namespace {

struct Fuzzer {
  std::mt19937 rng;
  const FuzzOptions& options;

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  bool chance(double prob) {
    return std::uniform_real_distribution<double>(0, 1)(rng) < prob;
  }

  // A random declared type for a parameter or quantifier position.
  std::string random_type() {
    if (!options.typed) return "object";
    switch (pick(3)) {
      case 0: return "object";
      case 1: return "t0";
      default: return "t1";
    }
  }

  int objects_in(const std::string& type) const {
    if (type == "object") return static_cast<int>(object_types_.size());
    int n = 0;
    for (const std::string& t : object_types_)
      if (t == type) ++n;
    return n;
  }

  Term object_of(const std::string& type) {
    std::vector<int> candidates;
    for (int i = 0; i < static_cast<int>(object_types_.size()); ++i)
      if (type == "object" || object_types_[i] == type) candidates.push_back(i);
    int idx = candidates[pick(static_cast<int>(candidates.size()))];
    return Term::constant("o" + std::to_string(idx), object_types_[idx]);
  }

  DomainDef domain() {
    DomainDef d;
    d.name = "fuzz";
    if (options.typed) {
      d.types.add("t0", "object");
      d.types.add("t1", "object");
    }

    int n_objects = 2 + pick(3);
    for (int i = 0; i < n_objects; ++i) {
      if (!options.typed)
        object_types_.push_back("object");
      else
        // At least one object of each subtype.
        object_types_.push_back(i == 0 ? "t0" : i == 1 ? "t1"
                                               : (pick(2) ? "t0" : "t1"));
    }

    // Predicate arities sized so that the ground-atom universe stays small.
    std::size_t universe = 0;
    int n_preds = 1 + pick(3);
    for (int i = 0; i < n_preds; ++i) {
      for (int attempt = 0; attempt < 8; ++attempt) {
        int arity = pick(3);
        std::vector<std::string> types;
        std::size_t atoms = 1;
        for (int j = 0; j < arity; ++j) {
          types.push_back(random_type());
          atoms *= objects_in(types.back());
        }
        if (atoms == 0 || universe + atoms > options.max_ground_atoms) continue;
        universe += atoms;
        PredicateDef p;
        p.name = "p" + std::to_string(i);
        for (int j = 0; j < arity; ++j)
          p.params.push_back(Term::variable("?x" + std::to_string(j), types[j]));
        d.predicates.push_back(std::move(p));
        break;
      }
    }
    if (d.predicates.empty())
      d.predicates.push_back(PredicateDef{"p0", {}});
    return d;
  }

  // A term for a predicate position of the given type: an in-scope
  // variable whose range fits, or a matching object.
  Term term_for(const DomainDef& d, const std::string& position_type,
                const std::vector<Term>& pool) {
    std::vector<const Term*> fitting;
    for (const Term& v : pool)
      if (d.types.is_subtype(v.type, position_type)) fitting.push_back(&v);
    if (!fitting.empty() && chance(0.7))
      return *fitting[pick(static_cast<int>(fitting.size()))];
    return object_of(position_type);
  }

  Atom atom_over(const DomainDef& d, const std::vector<Term>& pool) {
    const PredicateDef& p =
        d.predicates[pick(static_cast<int>(d.predicates.size()))];
    Atom a;
    a.predicate = p.name;
    for (std::size_t i = 0; i < p.params.size(); ++i)
      a.args.push_back(term_for(d, p.params[i].type, pool));
    return a;
  }

  FormulaPtr condition_over(const DomainDef& d, const std::vector<Term>& pool) {
    if (chance(0.5)) return f_true();
    std::vector<FormulaPtr> lits;
    int n = 1 + pick(2);
    for (int i = 0; i < n; ++i)
      lits.push_back(f_literal(Literal{chance(0.7), atom_over(d, pool)}));
    return simplify(n == 1 ? lits[0] : f_and(std::move(lits)));
  }

  std::size_t instance_count(const std::vector<std::string>& param_types) const {
    std::size_t count = 1;
    for (const std::string& t : param_types) count *= objects_in(t);
    return count;
  }

  void actions(DomainDef& d) {
    int n_actions = 1 + pick(3);
    for (int i = 0; i < n_actions; ++i) {
      ActionSchema a;
      a.name = "a" + std::to_string(i);
      // Keep the total number of ground instances within the budget.
      int arity = pick(3);
      std::vector<std::string> types;
      for (int j = 0; j < arity; ++j) types.push_back(random_type());
      while (!types.empty() &&
             ground_actions_ + instance_count(types) > options.max_ground_actions)
        types.pop_back();
      if (ground_actions_ + instance_count(types) > options.max_ground_actions)
        break;
      ground_actions_ += instance_count(types);

      for (std::size_t j = 0; j < types.size(); ++j)
        a.params.push_back(Term::variable("?v" + std::to_string(j), types[j]));

      std::vector<Term> pool = a.params;
      a.precondition = condition_over(d, pool);

      int n_effects = 1 + pick(3);
      bool made_forall = false;
      for (int e = 0; e < n_effects; ++e) {
        ConditionalEffect eff;
        std::vector<Term> eff_pool = pool;
        if (!made_forall && chance(0.5)) {
          made_forall = true;
          Term z = Term::variable("?z", random_type());
          eff.z_vars.push_back(z);
          eff_pool.push_back(z);
        }
        eff.condition = condition_over(d, eff_pool);
        eff.literal = Literal{chance(0.6), atom_over(d, eff_pool)};
        // The literal must only use parameters and z variables.
        a.effects.push_back(std::move(eff));
      }
      d.actions.push_back(std::move(a));
    }
    if (d.actions.empty()) {
      ActionSchema a;
      a.name = "a0";
      a.precondition = f_true();
      a.effects.push_back(
          ConditionalEffect{{}, f_true(), Literal{true, atom_over(d, {})}});
      d.actions.push_back(std::move(a));
    }
  }

  FormulaPtr closed_formula(const DomainDef& d, const Universe& u) {
    std::mt19937& shared = rng;
    FormulaSampler sampler{d, u, shared};
    return simplify(sampler.closed_formula());
  }

  std::vector<std::string> object_types_;
  std::size_t ground_actions_ = 0;
};

}  // namespace

FuzzTask fuzz_task(unsigned seed, const FuzzOptions& options) {
  Fuzzer fuzz{std::mt19937(seed), options};

  FuzzTask task;
  task.domain = fuzz.domain();
  fuzz.actions(task.domain);

  task.problem.name = "fuzz-" + std::to_string(seed);
  task.problem.domain_name = task.domain.name;
  for (int i = 0; i < static_cast<int>(fuzz.object_types_.size()); ++i)
    task.problem.objects["o" + std::to_string(i)] = fuzz.object_types_[i];

  Universe u(task.domain.types, task.problem.objects);
  std::vector<Atom> universe;
  for (const PredicateDef& p : task.domain.predicates)
    for (const std::vector<Term>& tuple : object_tuples(p.params, u))
      universe.push_back(Atom{p.name, tuple});

  for (const Atom& a : universe)
    if (fuzz.chance(0.4)) task.problem.init.push_back(a);
  std::sort(task.problem.init.begin(), task.problem.init.end());

  // Goals are short conjunctions of ground literals, biased positive.
  std::vector<FormulaPtr> goal_lits;
  int n_goal = 1 + fuzz.pick(2);
  for (int i = 0; i < n_goal; ++i) {
    const Atom& a = universe[fuzz.pick(static_cast<int>(universe.size()))];
    goal_lits.push_back(f_literal(Literal{fuzz.chance(0.8), a}));
  }
  task.problem.goal = simplify(f_and(std::move(goal_lits)));

  State init;
  init.atoms.insert(task.problem.init.begin(), task.problem.init.end());

  int n_constraints = fuzz.pick(options.max_constraints + 1);
  for (int i = 0; i < n_constraints; ++i) {
    for (int attempt = 0; attempt < 12; ++attempt) {
      Constraint c;
      c.index = static_cast<int>(task.problem.constraints.size());
      c.kind = static_cast<Constraint::Kind>(fuzz.pick(5));
      c.arg1 = fuzz.closed_formula(task.domain, u);
      if (c.binary()) c.arg2 = fuzz.closed_formula(task.domain, u);
      if (options.initially_consistent) {
        if (c.kind == Constraint::Kind::Always && !holds(init, c.arg1, u))
          continue;
        if (c.kind == Constraint::Kind::SometimeBefore && holds(init, c.arg1, u))
          continue;
      }
      task.problem.constraints.push_back(std::move(c));
      break;
    }
  }
  return task;
}

}  // namespace pddl3c
