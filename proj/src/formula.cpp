#include "fbp/formula.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fbp/lexer.hpp"

namespace fbp {

struct Term::Node {
  Kind kind;
  std::string name;           // Var
  std::int64_t exponent = 0;  // Pow
  std::vector<Term> children;
};

Term Term::var(std::string name) {
  if (name.empty()) throw EvalError("variable name must be nonempty");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::one() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::One;
  return Term(std::move(n));
}

Term Term::tau() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tau;
  return Term(std::move(n));
}

Term Term::mul(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Mul;
  n->children = {std::move(lhs), std::move(rhs)};
  return Term(std::move(n));
}

Term Term::inv(Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Inv;
  n->children = {std::move(arg)};
  return Term(std::move(n));
}

Term Term::pow(Term base, std::int64_t exponent) {
  if (exponent == 0) return one();
  if (exponent == 1) return base;
  if (exponent == -1) return inv(std::move(base));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->exponent = exponent;
  n->children = {std::move(base)};
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::var_name() const { return node_->name; }
const Term& Term::lhs() const { return node_->children[0]; }
const Term& Term::rhs() const { return node_->children[1]; }
const Term& Term::arg() const { return node_->children[0]; }
std::int64_t Term::exponent() const { return node_->exponent; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::Var: return node_->name == other.node_->name;
    case Kind::One:
    case Kind::Tau: return true;
    case Kind::Mul: return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Inv: return arg() == other.arg();
    case Kind::Pow: return node_->exponent == other.node_->exponent && arg() == other.arg();
  }
  return false;
}

struct Formula::Node {
  Kind kind;
  std::vector<Term> terms;       // atom payload
  std::int64_t pn = 0;           // Pn
  std::vector<Formula> children;
  std::string var;               // quantifiers
};

Formula Formula::truth() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::True;
  return Formula(std::move(n));
}

Formula Formula::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::False;
  return Formula(std::move(n));
}

Formula Formula::eq(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eq;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::leq(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leq;
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::pn(std::int64_t n_index, Term arg) {
  if (n_index < 2) throw EvalError("P_n index must be >= 2");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pn;
  n->pn = n_index;
  n->terms = {std::move(arg)};
  return Formula(std::move(n));
}

Formula Formula::negation(Formula arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children = {std::move(arg)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::disj(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::exists(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->var = std::move(var);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->var = std::move(var);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Term& Formula::lhs_term() const { return node_->terms[0]; }
const Term& Formula::rhs_term() const { return node_->terms[1]; }
std::int64_t Formula::pn_index() const { return node_->pn; }
const Term& Formula::pn_arg() const { return node_->terms[0]; }
const Formula& Formula::arg() const { return node_->children[0]; }
const Formula& Formula::lhs() const { return node_->children[0]; }
const Formula& Formula::rhs() const { return node_->children[1]; }
const std::string& Formula::quant_var() const { return node_->var; }
const Formula& Formula::body() const { return node_->children[0]; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Eq:
    case Kind::Leq:
      return lhs_term() == other.lhs_term() && rhs_term() == other.rhs_term();
    case Kind::Pn:
      return pn_index() == other.pn_index() && pn_arg() == other.pn_arg();
    case Kind::Not:
      return arg() == other.arg();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
      return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Exists:
    case Kind::Forall:
      return quant_var() == other.quant_var() && body() == other.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

bool is_reserved(const std::string& word) {
  return word == "E" || word == "A" || word == "t" || word == "P" || word == "true" ||
         word == "false" || word == "div";
}

class FormulaParser {
public:
  explicit FormulaParser(const std::string& text) : toks_(lex(text)) {}

  Formula parse_formula_all() {
    Formula f = parse_implies();
    expect_end();
    return f;
  }

  Term parse_term_all() {
    Term t = parse_mul();
    expect_end();
    return t;
  }

private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

  void expect_end() {
    if (peek().type != Token::Type::End) throw ParseError("trailing input", peek().pos);
  }

  bool eat_sym(const char* s) {
    if (peek().type == Token::Type::Sym && peek().text == s) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect_sym(const char* s) {
    if (!eat_sym(s)) throw ParseError(std::string("expected '") + s + "'", peek().pos);
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (eat_sym("->")) return Formula::implies(std::move(lhs), parse_implies());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (eat_sym("|")) f = Formula::disj(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (eat_sym("&")) f = Formula::conj(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.type == Token::Type::Sym && t.text == "!") {
      ++i_;
      return Formula::negation(parse_unary());
    }
    if (t.type == Token::Type::Ident && (t.text == "E" || t.text == "A")) {
      bool is_exists = t.text == "E";
      ++i_;
      Token v = next();
      if (v.type != Token::Type::Ident || is_reserved(v.text))
        throw ParseError("expected variable after quantifier", v.pos);
      expect_sym(".");
      Formula body = parse_implies();  // body extends as far right as possible
      return is_exists ? Formula::exists(v.text, std::move(body))
                       : Formula::forall(v.text, std::move(body));
    }
    return parse_atom();
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.type == Token::Type::Ident) {
      if (t.text == "true") {
        ++i_;
        return Formula::truth();
      }
      if (t.text == "false") {
        ++i_;
        return Formula::falsity();
      }
      if (t.text == "P") {
        ++i_;
        expect_sym("[");
        Token n = next();
        if (n.type != Token::Type::Int) throw ParseError("expected power index", n.pos);
        if (n.value < 2) throw ParseError("P_n index must be >= 2", n.pos);
        expect_sym("]");
        expect_sym("(");
        Term arg = parse_mul();
        expect_sym(")");
        return Formula::pn(n.value, std::move(arg));
      }
    }
    if (t.type == Token::Type::Sym && t.text == "(") {
      // Either a parenthesized formula or a parenthesized term opening a
      // relational atom; try the formula reading and backtrack.
      std::size_t mark = i_;
      ++i_;
      try {
        Formula f = parse_implies();
        expect_sym(")");
        return f;
      } catch (const ParseError&) {
        i_ = mark;
      }
      return parse_relation();
    }
    return parse_relation();
  }

  Formula parse_relation() {
    Term lhs = parse_mul();
    if (eat_sym("=")) return Formula::eq(std::move(lhs), parse_mul());
    if (eat_sym("<=")) return Formula::leq(std::move(lhs), parse_mul());
    throw ParseError("expected '=' or '<='", peek().pos);
  }

  Term parse_mul() {
    Term t = parse_powterm();
    while (eat_sym("*")) t = Term::mul(std::move(t), parse_powterm());
    return t;
  }

  Term parse_powterm() {
    Term base = parse_primary();
    if (eat_sym("^")) {
      bool negative = eat_sym("-");
      Token n = next();
      if (n.type != Token::Type::Int) throw ParseError("expected integer exponent", n.pos);
      return Term::pow(std::move(base), negative ? -n.value : n.value);
    }
    return base;
  }

  Term parse_primary() {
    Token t = next();
    if (t.type == Token::Type::Int) {
      if (t.value == 1) return Term::one();
      throw ParseError("the only term literal is 1", t.pos);
    }
    if (t.type == Token::Type::Ident) {
      if (t.text == "t") return Term::tau();
      if (is_reserved(t.text)) throw ParseError("reserved word '" + t.text + "' in term", t.pos);
      return Term::var(t.text);
    }
    if (t.type == Token::Type::Sym && t.text == "(") {
      Term inner = parse_mul();
      expect_sym(")");
      return inner;
    }
    throw ParseError("expected a term", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

Formula parse_formula(const std::string& text) { return FormulaParser(text).parse_formula_all(); }
Term parse_term(const std::string& text) { return FormulaParser(text).parse_term_all(); }

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

namespace {

// Term contexts: 0 = anywhere, 1 = operand of * (right side), 2 = base of ^.
void render_term_prec(const Term& t, std::string& out, int parent_prec) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.var_name();
      return;
    case Term::Kind::One:
      out += "1";
      return;
    case Term::Kind::Tau:
      out += "t";
      return;
    case Term::Kind::Mul: {
      bool parens = parent_prec > 0;
      if (parens) out += "(";
      render_term_prec(t.lhs(), out, 0);
      out += " * ";
      render_term_prec(t.rhs(), out, 1);
      if (parens) out += ")";
      return;
    }
    case Term::Kind::Inv:
    case Term::Kind::Pow: {
      const Term& base = t.arg();
      bool parens = base.kind() == Term::Kind::Mul || base.kind() == Term::Kind::Inv ||
                    base.kind() == Term::Kind::Pow;
      if (parens) {
        out += "(";
        render_term_prec(base, out, 0);
        out += ")";
      } else {
        render_term_prec(base, out, 2);
      }
      out += "^";
      out += t.kind() == Term::Kind::Inv ? "-1" : std::to_string(t.exponent());
      return;
    }
  }
}

// Formula contexts: 0 = top, 1 = operand of |, 2 = operand of &, 3 = unary.
void render_formula_prec(const Formula& f, std::string& out, int parent_prec) {
  switch (f.kind()) {
    case Formula::Kind::True:
      out += "true";
      return;
    case Formula::Kind::False:
      out += "false";
      return;
    case Formula::Kind::Eq:
    case Formula::Kind::Leq:
      render_term_prec(f.lhs_term(), out, 0);
      out += f.kind() == Formula::Kind::Eq ? " = " : " <= ";
      render_term_prec(f.rhs_term(), out, 0);
      return;
    case Formula::Kind::Pn:
      out += "P[";
      out += std::to_string(f.pn_index());
      out += "](";
      render_term_prec(f.pn_arg(), out, 0);
      out += ")";
      return;
    case Formula::Kind::Not:
      out += "!(";
      render_formula_prec(f.arg(), out, 0);
      out += ")";
      return;
    case Formula::Kind::And: {
      bool parens = parent_prec > 2;
      if (parens) out += "(";
      render_formula_prec(f.lhs(), out, 2);
      out += " & ";
      render_formula_prec(f.rhs(), out, 3);
      if (parens) out += ")";
      return;
    }
    case Formula::Kind::Or: {
      bool parens = parent_prec > 1;
      if (parens) out += "(";
      render_formula_prec(f.lhs(), out, 1);
      out += " | ";
      render_formula_prec(f.rhs(), out, 2);
      if (parens) out += ")";
      return;
    }
    case Formula::Kind::Implies: {
      bool parens = parent_prec > 0;
      if (parens) out += "(";
      render_formula_prec(f.lhs(), out, 1);  // right associative
      out += " -> ";
      render_formula_prec(f.rhs(), out, 0);
      if (parens) out += ")";
      return;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool parens = parent_prec > 0;
      if (parens) out += "(";
      out += f.kind() == Formula::Kind::Exists ? "E " : "A ";
      out += f.quant_var();
      out += ". ";
      render_formula_prec(f.body(), out, 0);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string render(const Formula& f) {
  std::string out;
  render_formula_prec(f, out, 0);
  return out;
}

std::string render(const Term& t) {
  std::string out;
  render_term_prec(t, out, 0);
  return out;
}

// ---------------------------------------------------------------------------
// Variables and substitution
// ---------------------------------------------------------------------------

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  switch (t.kind()) {
    case Term::Kind::Var:
      out.insert(t.var_name());
      break;
    case Term::Kind::One:
    case Term::Kind::Tau:
      break;
    case Term::Kind::Mul: {
      out = term_vars(t.lhs());
      auto r = term_vars(t.rhs());
      out.insert(r.begin(), r.end());
      break;
    }
    case Term::Kind::Inv:
    case Term::Kind::Pow:
      out = term_vars(t.arg());
      break;
  }
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return {};
    case Formula::Kind::Eq:
    case Formula::Kind::Leq: {
      auto out = term_vars(f.lhs_term());
      auto r = term_vars(f.rhs_term());
      out.insert(r.begin(), r.end());
      return out;
    }
    case Formula::Kind::Pn:
      return term_vars(f.pn_arg());
    case Formula::Kind::Not:
      return free_vars(f.arg());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      auto out = free_vars(f.lhs());
      auto r = free_vars(f.rhs());
      out.insert(r.begin(), r.end());
      return out;
    }
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      auto out = free_vars(f.body());
      out.erase(f.quant_var());
      return out;
    }
  }
  return {};
}

Term substitute(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.var_name() == var ? replacement : t;
    case Term::Kind::One:
    case Term::Kind::Tau:
      return t;
    case Term::Kind::Mul:
      return Term::mul(substitute(t.lhs(), var, replacement),
                       substitute(t.rhs(), var, replacement));
    case Term::Kind::Inv:
      return Term::inv(substitute(t.arg(), var, replacement));
    case Term::Kind::Pow: {
      // Rebuild through the raw exponent; the base swap cannot reintroduce
      // a normalizable exponent (it is != -1, 0, 1 already).
      return Term::pow(substitute(t.arg(), var, replacement), t.exponent());
    }
  }
  return t;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const Term& replacement) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Eq:
      return Formula::eq(substitute(f.lhs_term(), var, replacement),
                         substitute(f.rhs_term(), var, replacement));
    case Formula::Kind::Leq:
      return Formula::leq(substitute(f.lhs_term(), var, replacement),
                          substitute(f.rhs_term(), var, replacement));
    case Formula::Kind::Pn:
      return Formula::pn(f.pn_index(), substitute(f.pn_arg(), var, replacement));
    case Formula::Kind::Not:
      return Formula::negation(substitute(f.arg(), var, replacement));
    case Formula::Kind::And:
      return Formula::conj(substitute(f.lhs(), var, replacement),
                           substitute(f.rhs(), var, replacement));
    case Formula::Kind::Or:
      return Formula::disj(substitute(f.lhs(), var, replacement),
                           substitute(f.rhs(), var, replacement));
    case Formula::Kind::Implies:
      return Formula::implies(substitute(f.lhs(), var, replacement),
                              substitute(f.rhs(), var, replacement));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool is_exists = f.kind() == Formula::Kind::Exists;
      const std::string& bound = f.quant_var();
      if (bound == var) return f;  // occurrence is shadowed
      auto repl_vars = term_vars(replacement);
      auto body_free = free_vars(f.body());
      if (repl_vars.count(bound) && body_free.count(var)) {
        std::set<std::string> avoid = repl_vars;
        avoid.insert(body_free.begin(), body_free.end());
        avoid.insert(var);
        std::string renamed = fresh_name(bound, avoid);
        Formula body = substitute(f.body(), bound, Term::var(renamed));
        body = substitute(body, var, replacement);
        return is_exists ? Formula::exists(renamed, std::move(body))
                         : Formula::forall(renamed, std::move(body));
      }
      Formula body = substitute(f.body(), var, replacement);
      return is_exists ? Formula::exists(bound, std::move(body))
                       : Formula::forall(bound, std::move(body));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::json to_json(const Term& t) {
  using nlohmann::json;
  switch (t.kind()) {
    case Term::Kind::Var:
      return json{{"node", "var"}, {"name", t.var_name()}};
    case Term::Kind::One:
      return json{{"node", "one"}};
    case Term::Kind::Tau:
      return json{{"node", "tau"}};
    case Term::Kind::Mul:
      return json{{"node", "mul"}, {"lhs", to_json(t.lhs())}, {"rhs", to_json(t.rhs())}};
    case Term::Kind::Inv:
      return json{{"node", "inv"}, {"arg", to_json(t.arg())}};
    case Term::Kind::Pow:
      return json{{"node", "pow"}, {"base", to_json(t.arg())}, {"exp", t.exponent()}};
  }
  return nullptr;
}

nlohmann::json to_json(const Formula& f) {
  using nlohmann::json;
  switch (f.kind()) {
    case Formula::Kind::True:
      return json{{"node", "true"}};
    case Formula::Kind::False:
      return json{{"node", "false"}};
    case Formula::Kind::Eq:
      return json{{"node", "eq"}, {"lhs", to_json(f.lhs_term())}, {"rhs", to_json(f.rhs_term())}};
    case Formula::Kind::Leq:
      return json{{"node", "leq"}, {"lhs", to_json(f.lhs_term())}, {"rhs", to_json(f.rhs_term())}};
    case Formula::Kind::Pn:
      return json{{"node", "pn"}, {"n", f.pn_index()}, {"arg", to_json(f.pn_arg())}};
    case Formula::Kind::Not:
      return json{{"node", "not"}, {"arg", to_json(f.arg())}};
    case Formula::Kind::And:
      return json{{"node", "and"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case Formula::Kind::Or:
      return json{{"node", "or"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case Formula::Kind::Implies:
      return json{{"node", "implies"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case Formula::Kind::Exists:
      return json{{"node", "exists"}, {"var", f.quant_var()}, {"body", to_json(f.body())}};
    case Formula::Kind::Forall:
      return json{{"node", "forall"}, {"var", f.quant_var()}, {"body", to_json(f.body())}};
  }
  return nullptr;
}

}  // namespace fbp
