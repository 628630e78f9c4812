#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pddl3c/grounding.hpp"
#include "pddl3c/model.hpp"
#include "pddl3c/parser.hpp"
#include "pddl3c/stats.hpp"

namespace pddl3c {

enum class CompileMode { LiftedTcore, Lcc, GroundTcore };

std::string to_string(CompileMode mode);
std::optional<CompileMode> parse_mode(const std::string& text);

struct CompileOptions {
  std::size_t ground_cap = kDefaultGroundCap;
};

/// A compiled, constraint-free domain/problem pair plus the monitoring
/// bookkeeping needed to interpret it.
struct CompileOutput {
  DomainDef domain;
  ProblemDef problem;
  CompileStats stats;

  /// Initial violation of an Always/SometimeBefore constraint detected
  /// before compilation; the emitted problem is trivially unsolvable.
  bool unsolvable = false;
  std::optional<Constraint> violated;

  std::map<int, std::string> hold_atoms;             // constraint index -> name
  std::map<std::string, std::string> seen_atoms;     // canonical key -> name
  std::map<std::string, std::string> prevent_atoms;  // canonical key -> name
  std::string end_atom;                              // regression-free mode only
  std::set<std::string> monitor_predicates;          // every minted predicate

  /// Ground mode only: compiled action name -> original ground step.
  std::map<std::string, PlanStep> ground_name_map;

  std::vector<std::string> diagnostics;
};

/// Regression-based compilation: constraints become action-specific
/// preconditions and monitoring effects computed by lifted regression, the
/// action count is preserved, and satisfied monitoring atoms are added to
/// the initial state. Detects initially violated Always/SometimeBefore
/// constraints and returns an unsolvable problem for them.
CompileOutput compile_lifted_tcore(const DomainDef& d, const ProblemDef& p,
                                   const CompileOptions& options = {});

/// Regression-free compilation: one action-independent set of
/// preconditions and delayed monitoring effects is added to every action,
/// plus a terminal `fin` action that re-checks the constraints in the goal
/// state and sets the `end` atom.
CompileOutput compile_lcc(const DomainDef& d, const ProblemDef& p);

/// Ground baseline: the problem is fully grounded first, then compiled
/// with the same monitoring scheme as the lifted regression mode, using
/// ground regression per ground action. Ground actions become 0-ary
/// schemas with mangled names; `ground_name_map` recovers the original
/// steps.
CompileOutput compile_tcore_ground(const DomainDef& d, const ProblemDef& p,
                                   const CompileOptions& options = {});

CompileOutput compile(const DomainDef& d, const ProblemDef& p, CompileMode mode,
                      const CompileOptions& options = {});

}  // namespace pddl3c
