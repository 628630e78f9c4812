#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pddl3c/compile.hpp"
#include "pddl3c/errors.hpp"
#include "pddl3c/grounding.hpp"
#include "pddl3c/lifted_regression.hpp"
#include "pddl3c/oracle.hpp"
#include "pddl3c/parser.hpp"
#include "pddl3c/printer.hpp"
#include "pddl3c/semantics.hpp"

namespace {

namespace fs = std::filesystem;
using namespace pddl3c;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;  // invalid plan, unsolvable, counterexample
constexpr int kExitParse = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitResource = 4;
constexpr int kExitInternal = 70;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path.string());
  out << content;
}

CompileMode mode_from_flag(const std::string& flag) {
  auto mode = parse_mode(flag);
  if (!mode)
    throw ParseError("unknown mode " + flag +
                     " (expected lifted-tcore, lcc or ground-tcore)");
  return *mode;
}

struct CompileArgs {
  std::string domain_path;
  std::string problem_path;
  std::string mode = "lifted-tcore";
  std::string out_dir = ".";
  std::size_t ground_cap = kDefaultGroundCap;
};

int run_compile(const CompileArgs& args) {
  DomainDef d = parse_domain(read_file(args.domain_path));
  ProblemDef p = parse_problem(read_file(args.problem_path), d);

  CompileOptions options;
  options.ground_cap = args.ground_cap;
  CompileOutput out = compile(d, p, mode_from_flag(args.mode), options);

  fs::path dir(args.out_dir);
  fs::create_directories(dir);
  write_file(dir / (p.name + "-compiled-domain.pddl"), print_domain(out.domain));
  write_file(dir / (p.name + "-compiled-problem.pddl"),
             print_problem(out.problem, out.domain));
  write_file(dir / "stats.json", to_json(out.stats).dump(2) + "\n");

  for (const std::string& diag : out.diagnostics) std::cerr << diag << "\n";
  std::cout << "mode " << out.stats.mode << ": " << out.stats.n_actions_in
            << " -> " << out.stats.n_actions_out << " actions, "
            << out.stats.n_effect_items_in << " -> "
            << out.stats.n_effect_items_out << " effect items\n";
  return out.unsolvable ? kExitInvalid : kExitOk;
}

int run_validate(const std::string& domain_path, const std::string& problem_path,
                 const std::string& plan_path) {
  DomainDef d = parse_domain(read_file(domain_path));
  ProblemDef p = parse_problem(read_file(problem_path), d);
  Plan plan = parse_plan(read_file(plan_path));

  Verdict v = validate_plan(d, p, plan);
  if (v.valid) {
    std::cout << "valid plan (" << plan.size() << " steps)\n";
    return kExitOk;
  }
  std::cout << "invalid plan: " << v.message;
  if (!v.witness.empty()) {
    std::cout << " (witness state indices:";
    for (int i : v.witness) std::cout << " " << i;
    std::cout << ")";
  }
  std::cout << "\n";
  return kExitInvalid;
}

struct CheckArgs {
  std::string domain_path;
  std::string problem_path;
  std::string mode = "lifted-tcore";
  int max_len = 4;
  unsigned seed = 0;
  int samples = 10;
  std::size_t ground_cap = kDefaultGroundCap;
  std::string json_path;
  std::string mutate;
};

int run_check(const CheckArgs& args) {
  DomainDef d = parse_domain(read_file(args.domain_path));
  ProblemDef p = parse_problem(read_file(args.problem_path), d);
  CompileMode mode = mode_from_flag(args.mode);

  nlohmann::json report;
  report["schema"] = 1;
  report["seed"] = args.seed;
  bool ok = true;

  SchemaRegressFn regress;
  if (args.mutate == "drop-persistence") {
    regress = [&d](const FormulaPtr& f, const ActionSchema& a) {
      return mutated_lifted_regression_drop_persistence(f, a, d.types);
    };
  } else if (!args.mutate.empty()) {
    throw ParseError("unknown mutation " + args.mutate +
                     " (expected drop-persistence)");
  }

  if (mode != CompileMode::Lcc) {
    Lemma1Report lemma = check_lemma1(d, p.objects, args.samples, args.seed, regress);
    ok = ok && lemma.ok;
    report["regression_check"] = lemma.to_json();
    std::cout << (lemma.ok ? "PASS" : "FAIL") << " regression correctness ("
              << lemma.checks << " checks)\n";
    for (const std::string& ce : lemma.counterexamples)
      std::cout << "  counterexample: " << ce << "\n";
  }

  EquivalenceReport eq =
      check_compiler_equivalence(d, p, mode, args.max_len, args.ground_cap);
  ok = ok && eq.ok;
  report["equivalence_check"] = eq.to_json();
  std::cout << (eq.ok ? "PASS" : "FAIL") << " plan-set equivalence, mode "
            << eq.mode << ", k=" << eq.max_length << " ("
            << eq.original_plans << " original plans, " << eq.compiled_plans
            << " compiled plans)\n";
  for (const std::string& m : eq.mismatches)
    std::cout << "  mismatch: " << m << "\n";

  report["ok"] = ok;
  if (!args.json_path.empty())
    write_file(args.json_path, report.dump(2) + "\n");
  return ok ? kExitOk : kExitInvalid;
}

int run_regress(const std::string& domain_path, const std::string& action,
                const std::string& formula_text) {
  DomainDef d = parse_domain(read_file(domain_path));
  const ActionSchema* a = d.find_action(action);
  if (!a) throw ParseError("unknown action " + action);
  FormulaPtr phi = parse_formula(formula_text, d, a->params);
  std::cout << print_formula(lifted_regression(phi, *a, d.types)) << "\n";
  return kExitOk;
}

int run_ground(const std::string& domain_path, const std::string& problem_path,
               const std::string& out_dir, std::size_t ground_cap) {
  DomainDef d = parse_domain(read_file(domain_path));
  ProblemDef p = parse_problem(read_file(problem_path), d);

  GroundedProblem gp = ground(d, p, ground_cap);

  DomainDef gd;
  gd.name = d.name;
  gd.types = d.types;
  gd.constants = p.objects;  // ground bodies mention objects directly
  gd.predicates = d.predicates;
  for (const GroundAction& g : gp.actions) {
    ActionSchema schema;
    std::string name = g.schema;
    for (const Term& arg : g.args) name += "_" + arg.name;
    while (gd.find_action(name)) name += "_";
    schema.name = name;
    schema.precondition = g.precondition;
    for (const GroundAction::Effect& e : g.effects)
      schema.effects.push_back(ConditionalEffect{{}, e.condition, e.literal});
    gd.actions.push_back(std::move(schema));
  }

  ProblemDef gpd = p;
  gpd.goal = gp.goal;
  gpd.constraints = gp.constraints;

  fs::path dir(out_dir);
  fs::create_directories(dir);
  write_file(dir / (p.name + "-ground-domain.pddl"), print_domain(gd));
  write_file(dir / (p.name + "-ground-problem.pddl"), print_problem(gpd, gd));
  std::cout << gp.actions.size() << " ground actions, " << gp.universe.size()
            << " ground atoms\n";
  return kExitOk;
}

int run_stats(const std::string& domain_path, const std::string& problem_path,
              const std::string& mode_flag, std::size_t ground_cap) {
  DomainDef d = parse_domain(read_file(domain_path));
  ProblemDef p = parse_problem(read_file(problem_path), d);

  CompileOptions options;
  options.ground_cap = ground_cap;
  nlohmann::json out;
  out["schema"] = 1;
  std::vector<CompileMode> modes;
  if (mode_flag.empty()) {
    modes = {CompileMode::LiftedTcore, CompileMode::Lcc, CompileMode::GroundTcore};
  } else {
    modes = {mode_from_flag(mode_flag)};
  }
  for (CompileMode mode : modes) {
    CompileOutput result = compile(d, p, mode, options);
    out["modes"][to_string(mode)] = to_json(result.stats);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PDDL3 state-trajectory constraint compiler toolkit"};
  app.require_subcommand(1);

  CompileArgs compile_args;
  CLI::App* cmd_compile =
      app.add_subcommand("compile", "Compile constraints away");
  cmd_compile->add_option("domain", compile_args.domain_path)->required();
  cmd_compile->add_option("problem", compile_args.problem_path)->required();
  cmd_compile->add_option("--mode", compile_args.mode,
                          "lifted-tcore | lcc | ground-tcore");
  cmd_compile->add_option("--out-dir", compile_args.out_dir);
  cmd_compile->add_option("--ground-cap", compile_args.ground_cap);

  std::string v_domain, v_problem, v_plan;
  CLI::App* cmd_validate = app.add_subcommand(
      "validate", "Validate a plan against trajectory semantics");
  cmd_validate->add_option("domain", v_domain)->required();
  cmd_validate->add_option("problem", v_problem)->required();
  cmd_validate->add_option("plan", v_plan)->required();

  CheckArgs check_args;
  CLI::App* cmd_check = app.add_subcommand(
      "check", "Brute-force correctness checks for a compilation mode");
  cmd_check->add_option("domain", check_args.domain_path)->required();
  cmd_check->add_option("problem", check_args.problem_path)->required();
  cmd_check->add_option("--mode", check_args.mode);
  cmd_check->add_option("--max-len", check_args.max_len);
  cmd_check->add_option("--seed", check_args.seed);
  cmd_check->add_option("--samples", check_args.samples);
  cmd_check->add_option("--ground-cap", check_args.ground_cap);
  cmd_check->add_option("--json", check_args.json_path);
  cmd_check->add_option("--mutate", check_args.mutate,
                        "Inject a known-broken regression (testing)");

  std::string r_domain, r_action, r_formula;
  CLI::App* cmd_regress =
      app.add_subcommand("regress", "Print the lifted regression of a formula");
  cmd_regress->add_option("domain", r_domain)->required();
  cmd_regress->add_option("action", r_action)->required();
  cmd_regress->add_option("formula", r_formula)->required();

  std::string g_domain, g_problem, g_out = ".";
  std::size_t g_cap = kDefaultGroundCap;
  CLI::App* cmd_ground = app.add_subcommand("ground", "Emit the grounded problem");
  cmd_ground->add_option("domain", g_domain)->required();
  cmd_ground->add_option("problem", g_problem)->required();
  cmd_ground->add_option("--out-dir", g_out);
  cmd_ground->add_option("--ground-cap", g_cap);

  std::string s_domain, s_problem, s_mode;
  std::size_t s_cap = kDefaultGroundCap;
  CLI::App* cmd_stats =
      app.add_subcommand("stats", "Compiled-size statistics as JSON");
  cmd_stats->add_option("domain", s_domain)->required();
  cmd_stats->add_option("problem", s_problem)->required();
  cmd_stats->add_option("--mode", s_mode);
  cmd_stats->add_option("--ground-cap", s_cap);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_compile->parsed()) return run_compile(compile_args);
    if (cmd_validate->parsed()) return run_validate(v_domain, v_problem, v_plan);
    if (cmd_check->parsed()) return run_check(check_args);
    if (cmd_regress->parsed()) return run_regress(r_domain, r_action, r_formula);
    if (cmd_ground->parsed()) return run_ground(g_domain, g_problem, g_out, g_cap);
    if (cmd_stats->parsed()) return run_stats(s_domain, s_problem, s_mode, s_cap);
  } catch (const UnsupportedFeatureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
