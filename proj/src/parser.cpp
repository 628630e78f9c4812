#include "pddl3c/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "pddl3c/errors.hpp"

namespace pddl3c {

namespace {

// ---------------------------------------------------------------------------
// S-expression reader
// ---------------------------------------------------------------------------

struct Sexp {
  bool is_list = false;
  std::string sym;           // when !is_list; lowercased
  std::vector<Sexp> items;   // when is_list
  int line = -1;
  int col = -1;

  bool head_is(const std::string& s) const {
    return is_list && !items.empty() && !items[0].is_list && items[0].sym == s;
  }
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  struct Token {
    enum class Kind { LParen, RParen, Symbol, End };
    Kind kind;
    std::string text;
    int line;
    int col;
  };

  Token next() {
    skip_ws();
    int line = line_, col = col_;
    if (pos_ >= text_.size()) return {Token::Kind::End, "", line, col};
    char c = text_[pos_];
    if (c == '(') {
      advance();
      return {Token::Kind::LParen, "(", line, col};
    }
    if (c == ')') {
      advance();
      return {Token::Kind::RParen, ")", line, col};
    }
    std::string sym;
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c)))
        break;
      sym.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
      advance();
    }
    return {Token::Kind::Symbol, sym, line, col};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Sexp read_sexp(Lexer& lex, const Lexer::Token& tok) {
  if (tok.kind == Lexer::Token::Kind::Symbol) {
    Sexp s;
    s.sym = tok.text;
    s.line = tok.line;
    s.col = tok.col;
    return s;
  }
  if (tok.kind != Lexer::Token::Kind::LParen)
    throw ParseError("expected '(' or symbol", tok.line, tok.col);
  Sexp list;
  list.is_list = true;
  list.line = tok.line;
  list.col = tok.col;
  while (true) {
    Lexer::Token t = lex.next();
    if (t.kind == Lexer::Token::Kind::End)
      throw ParseError("unexpected end of input, unbalanced '('", tok.line, tok.col);
    if (t.kind == Lexer::Token::Kind::RParen) return list;
    list.items.push_back(read_sexp(lex, t));
  }
}

Sexp read_single(const std::string& text) {
  Lexer lex(text);
  Lexer::Token t = lex.next();
  if (t.kind == Lexer::Token::Kind::End)
    throw ParseError("empty input", t.line, t.col);
  Sexp s = read_sexp(lex, t);
  Lexer::Token rest = lex.next();
  if (rest.kind != Lexer::Token::Kind::End)
    throw ParseError("trailing content after expression", rest.line, rest.col);
  return s;
}

[[noreturn]] void fail(const Sexp& at, const std::string& msg) {
  throw ParseError(msg, at.line, at.col);
}

const std::string& symbol(const Sexp& s, const std::string& what) {
  if (s.is_list) fail(s, "expected " + what + ", got a list");
  return s.sym;
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

const std::set<std::string> kSupportedRequirements = {
    ":strips",
    ":typing",
    ":equality",
    ":negative-preconditions",
    ":disjunctive-preconditions",
    ":existential-preconditions",
    ":universal-preconditions",
    ":quantified-preconditions",
    ":conditional-effects",
    ":adl",
    ":constraints",
};

const std::set<std::string> kMetricTimeModalities = {
    "within", "hold-after", "hold-during", "always-within", "at-end",
};

const std::set<std::string> kQualitativeModalities = {
    "always", "sometime", "at-most-once", "sometime-before", "sometime-after",
};

void check_requirements(const Sexp& block) {
  for (std::size_t i = 1; i < block.items.size(); ++i) {
    const std::string& req = symbol(block.items[i], "requirement flag");
    if (!kSupportedRequirements.count(req))
      throw UnsupportedFeatureError(req, block.items[i].line, block.items[i].col);
  }
}

// Parses `n1 n2 - t n3 ...`; names without a trailing type get
// `default_type`.
std::vector<std::pair<std::string, std::string>> parse_typed_list(
    const Sexp& list, std::size_t begin, const std::string& default_type) {
  std::vector<std::pair<std::string, std::string>> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < list.items.size(); ++i) {
    const std::string& s = symbol(list.items[i], "name");
    if (s == "-") {
      if (i + 1 >= list.items.size())
        fail(list.items[i], "missing type after '-'");
      const Sexp& type_item = list.items[++i];
      if (type_item.is_list && type_item.head_is("either"))
        throw UnsupportedFeatureError("either types", type_item.line, type_item.col);
      const std::string& type = symbol(type_item, "type name");
      for (const std::string& name : pending) out.emplace_back(name, type);
      pending.clear();
    } else {
      pending.push_back(s);
    }
  }
  for (const std::string& name : pending) out.emplace_back(name, default_type);
  return out;
}

// Scope for resolving terms inside formulas and effects.
struct Scope {
  const DomainDef* domain = nullptr;
  // In-scope variables by source name. Effects push uniquified entries
  // here so that shadowed z variables stay distinct in the flat normal
  // form.
  std::vector<Term> vars;
  // Known constants (objects, :constants).
  const std::map<std::string, std::string>* constants = nullptr;
  // When set, undeclared constants are typed from the predicate position
  // they appear in (used by the standalone formula parser).
  bool infer_constants = false;
  std::map<std::string, std::string>* inferred = nullptr;

  const Term* find_var(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      if (it->name == name) return &*it;
    return nullptr;
  }
};

Term resolve_term(const Sexp& s, const Scope& scope,
                  const std::string& position_type) {
  const std::string& name = symbol(s, "term");
  if (!name.empty() && name[0] == '?') {
    const Term* v = scope.find_var(name);
    if (!v) fail(s, "unbound variable " + name);
    return *v;
  }
  if (scope.constants) {
    auto it = scope.constants->find(name);
    if (it != scope.constants->end()) return Term::constant(name, it->second);
  }
  if (scope.infer_constants) {
    // Record the most specific position type seen for the constant; a
    // second pass re-resolves every occurrence against the final map.
    auto it = scope.inferred->find(name);
    if (it == scope.inferred->end()) {
      (*scope.inferred)[name] = position_type;
    } else if (scope.domain->types.is_subtype(position_type, it->second)) {
      it->second = position_type;
    } else if (!scope.domain->types.is_subtype(it->second, position_type)) {
      fail(s, "constant " + name + " used at incompatible types " +
                  it->second + " and " + position_type);
    }
    return Term::constant(name, (*scope.inferred)[name]);
  }
  fail(s, "undeclared object or constant " + name);
}

FormulaPtr parse_gd(const Sexp& s, Scope& scope);

FormulaPtr parse_atom_gd(const Sexp& s, Scope& scope) {
  const std::string& pred = symbol(s.items[0], "predicate name");
  const PredicateDef* def = scope.domain->find_predicate(pred);
  if (!def) fail(s, "undeclared predicate " + pred);
  if (s.items.size() - 1 != def->params.size())
    fail(s, "predicate " + pred + " expects " +
                std::to_string(def->params.size()) + " arguments, got " +
                std::to_string(s.items.size() - 1));
  Atom atom;
  atom.predicate = pred;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    Term t = resolve_term(s.items[i], scope, def->params[i - 1].type);
    if (!t.is_variable && !scope.infer_constants &&
        !scope.domain->types.is_subtype(t.type, def->params[i - 1].type))
      fail(s.items[i], "constant " + t.name + " of type " + t.type +
                           " is not a " + def->params[i - 1].type);
    atom.args.push_back(std::move(t));
  }
  return f_atom(std::move(atom));
}

std::vector<Term> parse_quantified_vars(const Sexp& var_list, Scope& scope) {
  if (!var_list.is_list) fail(var_list, "expected a variable list");
  auto typed = parse_typed_list(var_list, 0, "object");
  std::vector<Term> vars;
  for (const auto& [name, type] : typed) {
    if (name.empty() || name[0] != '?')
      fail(var_list, "expected a variable, got " + name);
    if (!scope.domain->types.known(type))
      fail(var_list, "unknown type " + type);
    vars.push_back(Term::variable(name, type));
  }
  return vars;
}

FormulaPtr parse_gd(const Sexp& s, Scope& scope) {
  if (!s.is_list) fail(s, "expected a condition");
  if (s.items.empty()) fail(s, "empty condition");
  if (s.items[0].is_list) fail(s.items[0], "expected an operator or predicate");
  const std::string& head = s.items[0].sym;

  if (head == "and" || head == "or") {
    std::vector<FormulaPtr> children;
    for (std::size_t i = 1; i < s.items.size(); ++i)
      children.push_back(parse_gd(s.items[i], scope));
    if (children.empty()) return head == "and" ? f_true() : f_false();
    return head == "and" ? f_and(std::move(children)) : f_or(std::move(children));
  }
  if (head == "not") {
    if (s.items.size() != 2) fail(s, "not takes one argument");
    return f_not(parse_gd(s.items[1], scope));
  }
  if (head == "imply") {
    if (s.items.size() != 3) fail(s, "imply takes two arguments");
    FormulaPtr a = parse_gd(s.items[1], scope);
    FormulaPtr b = parse_gd(s.items[2], scope);
    return f_implies(a, b);
  }
  if (head == "forall" || head == "exists") {
    if (s.items.size() != 3) fail(s, head + " takes a variable list and a body");
    std::vector<Term> vars = parse_quantified_vars(s.items[1], scope);
    std::size_t mark = scope.vars.size();
    for (const Term& v : vars) scope.vars.push_back(v);
    FormulaPtr body = parse_gd(s.items[2], scope);
    scope.vars.resize(mark);
    return head == "forall" ? f_forall(vars, body) : f_exists(vars, body);
  }
  if (head == "=") {
    if (s.items.size() != 3) fail(s, "= takes two arguments");
    Term a = resolve_term(s.items[1], scope, "object");
    Term b = resolve_term(s.items[2], scope, "object");
    return f_equals(a, b);
  }
  if (head == "preference")
    throw UnsupportedFeatureError(":preferences", s.line, s.col);
  if (head == "<" || head == ">" || head == "<=" || head == ">=")
    throw UnsupportedFeatureError(":fluents (numeric comparison " + head + ")",
                                  s.line, s.col);
  return parse_atom_gd(s, scope);
}

// Effect normalization: compound `and`, nested `forall` and `when` flatten
// into per-literal conditional effects.
void parse_effect_rec(const Sexp& s, Scope& scope, std::vector<Term> z_vars,
                      std::vector<FormulaPtr> conditions,
                      std::vector<ConditionalEffect>& out, int& fresh_counter) {
  if (!s.is_list || s.items.empty()) fail(s, "expected an effect");
  if (s.items[0].is_list) fail(s.items[0], "expected an effect operator");
  const std::string& head = s.items[0].sym;

  if (head == "increase" || head == "decrease" || head == "assign" ||
      head == "scale-up" || head == "scale-down")
    throw UnsupportedFeatureError(":fluents (effect " + head + ")", s.line, s.col);

  if (head == "and") {
    for (std::size_t i = 1; i < s.items.size(); ++i)
      parse_effect_rec(s.items[i], scope, z_vars, conditions, out, fresh_counter);
    return;
  }
  if (head == "forall") {
    if (s.items.size() != 3) fail(s, "forall takes a variable list and a body");
    std::vector<Term> vars = parse_quantified_vars(s.items[1], scope);
    std::size_t mark = scope.vars.size();
    for (Term v : vars) {
      // Uniquify shadowed names so the flat z list stays unambiguous.
      if (scope.find_var(v.name) != nullptr) {
        v.name = v.name + "_z" + std::to_string(fresh_counter++);
      }
      scope.vars.push_back(v);
      z_vars.push_back(v);
    }
    parse_effect_rec(s.items[2], scope, z_vars, conditions, out, fresh_counter);
    scope.vars.resize(mark);
    return;
  }
  if (head == "when") {
    if (s.items.size() != 3) fail(s, "when takes a condition and an effect");
    conditions.push_back(parse_gd(s.items[1], scope));
    parse_effect_rec(s.items[2], scope, z_vars, conditions, out, fresh_counter);
    return;
  }

  // A plain literal.
  Literal lit;
  const Sexp* atom_sexp = &s;
  if (head == "not") {
    if (s.items.size() != 2 || !s.items[1].is_list)
      fail(s, "not takes one atom in effects");
    lit.positive = false;
    atom_sexp = &s.items[1];
  }
  FormulaPtr atom = parse_atom_gd(*atom_sexp, scope);
  lit.atom = atom->atom;
  FormulaPtr condition =
      conditions.empty() ? f_true() : simplify(f_and(conditions));
  // Keep only the z variables actually used by this literal's condition
  // or atom; sibling branches of the same forall do not share them.
  std::set<std::string> used = free_variables(condition);
  for (const Term& t : lit.atom.args)
    if (t.is_variable) used.insert(t.name);
  std::vector<Term> kept;
  for (const Term& z : z_vars)
    if (used.count(z.name)) kept.push_back(z);
  out.push_back(ConditionalEffect{std::move(kept), condition, std::move(lit)});
}

ActionSchema parse_action(const Sexp& s, const DomainDef& domain) {
  ActionSchema action;
  if (s.items.size() < 2) fail(s, ":action requires a name");
  action.name = symbol(s.items[1], "action name");

  Scope scope;
  scope.domain = &domain;
  scope.constants = &domain.constants;

  std::size_t i = 2;
  bool saw_effect = false;
  action.precondition = f_true();
  while (i < s.items.size()) {
    const std::string& key = symbol(s.items[i], "action section keyword");
    if (i + 1 >= s.items.size()) fail(s.items[i], "missing value after " + key);
    const Sexp& value = s.items[i + 1];
    if (key == ":parameters") {
      auto typed = parse_typed_list(value, 0, "object");
      std::set<std::string> names;
      for (const auto& [name, type] : typed) {
        if (name.empty() || name[0] != '?')
          fail(value, "parameter " + name + " is not a variable");
        if (!domain.types.known(type)) fail(value, "unknown type " + type);
        if (!names.insert(name).second)
          fail(value, "duplicate parameter " + name);
        action.params.push_back(Term::variable(name, type));
        scope.vars.push_back(action.params.back());
      }
    } else if (key == ":precondition") {
      if (value.is_list && value.items.empty()) {
        action.precondition = f_true();
      } else {
        action.precondition = parse_gd(value, scope);
      }
    } else if (key == ":effect") {
      int fresh = 0;
      parse_effect_rec(value, scope, {}, {}, action.effects, fresh);
      saw_effect = true;
    } else if (key == ":duration") {
      throw UnsupportedFeatureError(":durative-actions", s.items[i].line,
                                    s.items[i].col);
    } else {
      fail(s.items[i], "unknown action section " + key);
    }
    i += 2;
  }
  if (!saw_effect) fail(s, "action " + action.name + " has no :effect");
  return action;
}

Constraint::Kind constraint_kind(const std::string& head) {
  if (head == "always") return Constraint::Kind::Always;
  if (head == "sometime") return Constraint::Kind::Sometime;
  if (head == "at-most-once") return Constraint::Kind::AtMostOnce;
  if (head == "sometime-before") return Constraint::Kind::SometimeBefore;
  return Constraint::Kind::SometimeAfter;
}

// Rejects a qualitative modality nested inside a constraint argument,
// unless the name happens to be a declared predicate.
void check_no_nested_modality(const Sexp& s, const DomainDef& domain) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list) return;
  const std::string& head = s.items[0].sym;
  if ((kQualitativeModalities.count(head) || kMetricTimeModalities.count(head)) &&
      domain.find_predicate(head) == nullptr)
    throw UnsupportedFeatureError("nested modality " + head, s.line, s.col);
  for (std::size_t i = 1; i < s.items.size(); ++i)
    check_no_nested_modality(s.items[i], domain);
}

FormulaPtr parse_constraint_argument(const Sexp& s, Scope& scope) {
  check_no_nested_modality(s, *scope.domain);
  FormulaPtr f = parse_gd(s, scope);
  std::set<std::string> free = free_variables(f);
  if (!free.empty())
    fail(s, "constraint formula is not closed: " + *free.begin() + " is free");
  return f;
}

void parse_constraints_block(const Sexp& s, Scope& scope,
                             std::vector<Constraint>& out) {
  if (!s.is_list || s.items.empty()) fail(s, "expected a constraint");
  if (s.items[0].is_list) fail(s.items[0], "expected a constraint operator");
  const std::string& head = s.items[0].sym;

  if (head == "and") {
    for (std::size_t i = 1; i < s.items.size(); ++i)
      parse_constraints_block(s.items[i], scope, out);
    return;
  }
  if (head == "forall") {
    // (forall (vars) (always F)) is equivalent to (always (forall vars F))
    // and is rewritten; no such rewrite exists for the other constraint
    // types.
    if (s.items.size() == 3 && s.items[2].is_list &&
        s.items[2].head_is("always") && s.items[2].items.size() == 2) {
      std::vector<Term> vars = parse_quantified_vars(s.items[1], scope);
      std::size_t mark = scope.vars.size();
      for (const Term& v : vars) scope.vars.push_back(v);
      check_no_nested_modality(s.items[2].items[1], *scope.domain);
      FormulaPtr body = parse_gd(s.items[2].items[1], scope);
      scope.vars.resize(mark);
      Constraint c;
      c.kind = Constraint::Kind::Always;
      c.index = static_cast<int>(out.size());
      c.arg1 = f_forall(vars, body);
      std::set<std::string> free = free_variables(c.arg1);
      if (!free.empty())
        fail(s, "constraint formula is not closed: " + *free.begin() +
                    " is free");
      out.push_back(std::move(c));
      return;
    }
    fail(s, "quantifiers over constraints are only supported for always "
            "(rewritten to (always (forall ...))); quantify inside the "
            "constraint formula instead");
  }
  if (head == "exists")
    fail(s, "quantifiers over constraints are not supported; quantify inside "
            "the constraint formula instead (e.g. (sometime (exists ...)))");
  if (head == "preference")
    throw UnsupportedFeatureError(":preferences", s.line, s.col);
  if (kMetricTimeModalities.count(head))
    throw UnsupportedFeatureError("metric-time constraint " + head, s.line, s.col);
  if (!kQualitativeModalities.count(head))
    fail(s, "unknown constraint type " + head);

  Constraint c;
  c.kind = constraint_kind(head);
  c.index = static_cast<int>(out.size());
  std::size_t expected = c.binary() ? 3 : 2;
  if (s.items.size() != expected)
    fail(s, head + " takes " + std::to_string(expected - 1) + " formula(s)");
  c.arg1 = parse_constraint_argument(s.items[1], scope);
  if (c.binary()) c.arg2 = parse_constraint_argument(s.items[2], scope);
  out.push_back(std::move(c));
}

}  // namespace

// ---------------------------------------------------------------------------
// Entry points
// ---------------------------------------------------------------------------

DomainDef parse_domain(const std::string& text) {
  Sexp root = read_single(text);
  if (!root.head_is("define")) fail(root, "expected (define (domain ...))");
  if (root.items.size() < 2 || !root.items[1].is_list ||
      !root.items[1].head_is("domain") || root.items[1].items.size() != 2)
    fail(root, "expected (domain <name>) after define");

  DomainDef domain;
  domain.name = symbol(root.items[1].items[1], "domain name");

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const Sexp& block = root.items[i];
    if (!block.is_list || block.items.empty() || block.items[0].is_list)
      fail(block, "expected a domain section");
    const std::string& head = block.items[0].sym;

    if (head == ":requirements") {
      check_requirements(block);
    } else if (head == ":types") {
      for (const auto& [type, parent] : parse_typed_list(block, 1, "object")) {
        if (type == "object" && parent != "object")
          fail(block, "object must be the type hierarchy root");
        domain.types.add(type, parent);
      }
      // Parents appearing only on the right-hand side become types too.
      for (const auto& [type, parent] : domain.types.parents())
        if (!domain.types.known(parent)) domain.types.add(parent, "object");
      for (const auto& [type, parent] : domain.types.parents()) {
        (void)parent;
        if (!domain.types.is_subtype(type, "object"))
          fail(block, "type cycle involving " + type);
      }
    } else if (head == ":constants") {
      for (const auto& [name, type] : parse_typed_list(block, 1, "object")) {
        if (!domain.types.known(type)) fail(block, "unknown type " + type);
        domain.constants[name] = type;
      }
    } else if (head == ":predicates") {
      for (std::size_t j = 1; j < block.items.size(); ++j) {
        const Sexp& p = block.items[j];
        if (!p.is_list || p.items.empty())
          fail(p, "expected a predicate declaration");
        PredicateDef pred;
        pred.name = symbol(p.items[0], "predicate name");
        if (domain.find_predicate(pred.name))
          fail(p, "duplicate predicate " + pred.name);
        for (const auto& [name, type] : parse_typed_list(p, 1, "object")) {
          if (name.empty() || name[0] != '?')
            fail(p, "predicate parameter " + name + " is not a variable");
          if (!domain.types.known(type)) fail(p, "unknown type " + type);
          pred.params.push_back(Term::variable(name, type));
        }
        domain.predicates.push_back(std::move(pred));
      }
    } else if (head == ":action") {
      ActionSchema a = parse_action(block, domain);
      if (domain.find_action(a.name)) fail(block, "duplicate action " + a.name);
      domain.actions.push_back(std::move(a));
    } else if (head == ":functions") {
      throw UnsupportedFeatureError(":fluents (:functions)", block.line, block.col);
    } else if (head == ":durative-action") {
      throw UnsupportedFeatureError(":durative-actions", block.line, block.col);
    } else if (head == ":derived") {
      throw UnsupportedFeatureError("derived predicates", block.line, block.col);
    } else if (head == ":constraints") {
      throw UnsupportedFeatureError(
          "domain-level :constraints (declare them in the problem)", block.line,
          block.col);
    } else {
      fail(block, "unknown domain section " + head);
    }
  }
  return domain;
}

ProblemDef parse_problem(const std::string& text, const DomainDef& domain) {
  Sexp root = read_single(text);
  if (!root.head_is("define")) fail(root, "expected (define (problem ...))");
  if (root.items.size() < 2 || !root.items[1].is_list ||
      !root.items[1].head_is("problem") || root.items[1].items.size() != 2)
    fail(root, "expected (problem <name>) after define");

  ProblemDef problem;
  problem.name = symbol(root.items[1].items[1], "problem name");
  problem.objects = domain.constants;
  problem.goal = f_true();

  Scope scope;
  scope.domain = &domain;
  scope.constants = &problem.objects;

  bool saw_goal = false;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const Sexp& block = root.items[i];
    if (!block.is_list || block.items.empty() || block.items[0].is_list)
      fail(block, "expected a problem section");
    const std::string& head = block.items[0].sym;

    if (head == ":domain") {
      if (block.items.size() != 2) fail(block, ":domain takes one name");
      problem.domain_name = symbol(block.items[1], "domain name");
      if (problem.domain_name != domain.name)
        fail(block, "problem requires domain " + problem.domain_name +
                        " but was parsed against " + domain.name);
    } else if (head == ":requirements") {
      check_requirements(block);
    } else if (head == ":objects") {
      for (const auto& [name, type] : parse_typed_list(block, 1, "object")) {
        if (!domain.types.known(type)) fail(block, "unknown type " + type);
        if (problem.objects.count(name) && domain.constants.count(name))
          fail(block, "object " + name + " collides with a domain constant");
        problem.objects[name] = type;
      }
    } else if (head == ":init") {
      for (std::size_t j = 1; j < block.items.size(); ++j) {
        const Sexp& lit = block.items[j];
        if (!lit.is_list || lit.items.empty())
          fail(lit, "expected a ground atom in :init");
        if (lit.head_is("not"))
          fail(lit, "negative :init literals are not supported (closed world)");
        if (lit.head_is("="))
          throw UnsupportedFeatureError(":fluents (function assignment in :init)",
                                        lit.line, lit.col);
        FormulaPtr atom = parse_atom_gd(lit, scope);
        for (const Term& t : atom->atom.args)
          if (t.is_variable) fail(lit, ":init atoms must be ground");
        problem.init.push_back(atom->atom);
      }
    } else if (head == ":goal") {
      if (block.items.size() != 2) fail(block, ":goal takes one formula");
      problem.goal = parse_gd(block.items[1], scope);
      if (!free_variables(problem.goal).empty())
        fail(block, "goal formula is not closed");
      saw_goal = true;
    } else if (head == ":constraints") {
      if (block.items.size() != 2) fail(block, ":constraints takes one body");
      parse_constraints_block(block.items[1], scope, problem.constraints);
    } else if (head == ":metric") {
      throw UnsupportedFeatureError(":fluents (:metric)", block.line, block.col);
    } else {
      fail(block, "unknown problem section " + head);
    }
  }
  if (problem.domain_name.empty()) fail(root, "problem has no :domain section");
  if (!saw_goal) fail(root, "problem has no :goal section");

  std::sort(problem.init.begin(), problem.init.end());
  problem.init.erase(std::unique(problem.init.begin(), problem.init.end()),
                     problem.init.end());
  return problem;
}

FormulaPtr parse_formula(const std::string& text, const DomainDef& domain,
                         const std::vector<Term>& params) {
  Sexp root = read_single(text);

  // First pass infers each undeclared constant's most specific type; the
  // second pass resolves every occurrence against the final map and
  // applies the usual checks.
  Scope infer;
  infer.domain = &domain;
  infer.constants = &domain.constants;
  infer.infer_constants = true;
  std::map<std::string, std::string> inferred;
  infer.inferred = &inferred;
  for (const Term& p : params) infer.vars.push_back(p);
  parse_gd(root, infer);

  std::map<std::string, std::string> known = domain.constants;
  known.insert(inferred.begin(), inferred.end());
  Scope scope;
  scope.domain = &domain;
  scope.constants = &known;
  for (const Term& p : params) scope.vars.push_back(p);
  return parse_gd(root, scope);
}

std::string PlanStep::render() const {
  std::string out = "(" + action;
  for (const std::string& a : args) out += " " + a;
  return out + ")";
}

Plan parse_plan(const std::string& text) {
  Plan plan;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto semi = line.find(';'); semi != std::string::npos)
      line = line.substr(0, semi);
    bool blank = std::all_of(line.begin(), line.end(), [](char c) {
      return std::isspace(static_cast<unsigned char>(c));
    });
    if (blank) continue;

    Lexer lex(line);
    Lexer::Token t = lex.next();
    Sexp s = read_sexp(lex, t);
    if (lex.next().kind != Lexer::Token::Kind::End)
      throw ParseError("trailing content after plan step", line_no, 1);
    if (!s.is_list || s.items.empty() || s.items[0].is_list)
      throw ParseError("plan step must be (name arg ...)", line_no, 1);
    PlanStep step;
    step.action = s.items[0].sym;
    for (std::size_t i = 1; i < s.items.size(); ++i)
      step.args.push_back(symbol(s.items[i], "plan argument"));
    plan.push_back(std::move(step));
  }
  return plan;
}

}  // namespace pddl3c
