#pragma once

#include <string>

#include <json.hpp>

namespace pddl3c {

/// Size and instrumentation counters for one compilation run. Serialized
/// into stats.json (schema version 1).
struct CompileStats {
  std::string mode;
  int n_actions_in = 0;
  int n_actions_out = 0;
  int n_effect_items_in = 0;
  int n_effect_items_out = 0;
  int n_preconds_added = 0;
  int n_monitoring_atoms = 0;
  int n_constraints = 0;        // n_c
  int n_predicates = 0;         // n_f
  int n_actions = 0;            // n_a
  int max_atom_arity = 0;       // n_k
  int max_quantifier_depth = 0; // b, over constraint formulas
  long long n_operations = 0;   // instrumented work counter
  double wall_time_seconds = 0.0;
};

nlohmann::json to_json(const CompileStats& s);

}  // namespace pddl3c
