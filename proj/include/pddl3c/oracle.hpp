#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "pddl3c/compile.hpp"
#include "pddl3c/model.hpp"

namespace pddl3c {

/// Exactly the valid plans of length <= max_length, keyed by the canonical
/// rendering of their ground action sequence.
struct PlanSet {
  int max_length = 0;
  std::set<std::vector<std::string>> plans;
};

/// Depth-first enumeration over ground actions, pruning inapplicable
/// prefixes and prefixes with an irrevocably violated constraint; every
/// surviving candidate is validated in full (goal plus all constraints).
PlanSet enumerate_valid_plans(const DomainDef& d, const ProblemDef& p, int k,
                              std::size_t ground_cap = kDefaultGroundCap);

/// A regression operator under test: formula x schema -> formula over the
/// schema's parameters.
using SchemaRegressFn =
    std::function<FormulaPtr(const FormulaPtr&, const ActionSchema&)>;

/// The deliberately broken operator that keeps only the gamma branch and
/// drops persistence (mutation testing: the exhaustive check must catch it).
FormulaPtr mutated_lifted_regression_drop_persistence(const FormulaPtr& phi,
                                                      const ActionSchema& a,
                                                      const TypeHierarchy& types);

struct Lemma1Report {
  bool ok = true;
  long long checks = 0;
  /// Human-readable traces, one per counterexample (capped).
  std::vector<std::string> counterexamples;

  nlohmann::json to_json() const;
};

/// Exhaustive check of the regression correctness property on a small
/// universe: for every state s of the ground-atom universe, every
/// applicable ground incarnation of every schema, and every sampled closed
/// formula phi, s satisfies the instantiated regression of phi iff the
/// successor state satisfies phi. The formula pool contains every ground
/// universe atom plus `samples` random closed formulas.
Lemma1Report check_lemma1(const DomainDef& d,
                          const std::map<std::string, std::string>& objects,
                          int samples, unsigned seed,
                          const SchemaRegressFn& regress = {});

struct EquivalenceReport {
  bool ok = true;
  std::string mode;
  int max_length = 0;
  std::size_t original_plans = 0;
  std::size_t compiled_plans = 0;
  std::vector<std::string> mismatches;  // capped

  nlohmann::json to_json() const;
};

/// Plan-set equivalence between a problem and its compilation: identical
/// valid-plan sets for the regression modes; for the regression-free mode,
/// a bijection between plans of the original and compiled plans extended
/// by the terminal fin step, with every valid compiled plan ending in fin.
EquivalenceReport check_compiler_equivalence(
    const DomainDef& d, const ProblemDef& p, CompileMode mode, int k,
    std::size_t ground_cap = kDefaultGroundCap);

struct FuzzTask {
  DomainDef domain;
  ProblemDef problem;
};

struct FuzzOptions {
  int max_constraints = 3;
  /// Resample constraints that are violated at the initial state (the
  /// compilers' unsolvable path is exercised by dedicated tests instead).
  bool initially_consistent = true;
  /// Upper bound on ground actions, keeps enumeration at desk scale.
  std::size_t max_ground_actions = 12;
  /// Upper bound on the ground-atom universe.
  std::size_t max_ground_atoms = 12;
  /// Generate a two-type hierarchy with typed parameters and quantifiers;
  /// exercises the typed-unification paths.
  bool typed = false;
};

/// Deterministic generator of small random planning tasks with
/// conditional and universally quantified effects and random trajectory
/// constraints.
FuzzTask fuzz_task(unsigned seed, const FuzzOptions& options = {});

}  // namespace pddl3c
