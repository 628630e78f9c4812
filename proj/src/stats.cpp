#include "pddl3c/stats.hpp"

namespace pddl3c {

nlohmann::json to_json(const CompileStats& s) {
  return nlohmann::json{
      {"schema", 1},
      {"mode", s.mode},
      {"n_actions_in", s.n_actions_in},
      {"n_actions_out", s.n_actions_out},
      {"n_effect_items_in", s.n_effect_items_in},
      {"n_effect_items_out", s.n_effect_items_out},
      {"n_preconds_added", s.n_preconds_added},
      {"n_monitoring_atoms", s.n_monitoring_atoms},
      {"n_constraints", s.n_constraints},
      {"n_predicates", s.n_predicates},
      {"n_actions", s.n_actions},
      {"max_atom_arity", s.max_atom_arity},
      {"max_quantifier_depth", s.max_quantifier_depth},
      {"n_operations", s.n_operations},
      {"wall_time_seconds", s.wall_time_seconds},
  };
}

}  // namespace pddl3c
