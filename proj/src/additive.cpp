#include "fbp/additive.hpp"

#include <algorithm>
#include <utility>

#include <nlohmann/json.hpp>

#include "fbp/lexer.hpp"

namespace fbp {

LinearTerm LinearTerm::variable(const std::string& name) {
  LinearTerm t;
  t.coeffs_[name] = 1;
  return t;
}

Int LinearTerm::coefficient(const std::string& var) const {
  auto it = coeffs_.find(var);
  return it == coeffs_.end() ? Int(0) : it->second;
}

LinearTerm LinearTerm::operator+(const LinearTerm& other) const {
  LinearTerm out = *this;
  out.constant_ += other.constant_;
  for (const auto& [v, c] : other.coeffs_) {
    Int& slot = out.coeffs_[v];
    slot += c;
    if (slot == 0) out.coeffs_.erase(v);
  }
  return out;
}

LinearTerm LinearTerm::operator-(const LinearTerm& other) const { return *this + (-other); }

LinearTerm LinearTerm::operator-() const {
  LinearTerm out;
  out.constant_ = -constant_;
  for (const auto& [v, c] : coeffs_) out.coeffs_[v] = -c;
  return out;
}

LinearTerm LinearTerm::scaled(const Int& factor) const {
  LinearTerm out;
  if (factor == 0) return out;
  out.constant_ = constant_ * factor;
  for (const auto& [v, c] : coeffs_) out.coeffs_[v] = c * factor;
  return out;
}

LinearTerm LinearTerm::plus_const(const Int& delta) const {
  LinearTerm out = *this;
  out.constant_ += delta;
  return out;
}

LinearTerm LinearTerm::substituted(const std::string& var, const LinearTerm& replacement) const {
  auto it = coeffs_.find(var);
  if (it == coeffs_.end()) return *this;
  Int c = it->second;
  LinearTerm out = *this;
  out.coeffs_.erase(var);
  return out + replacement.scaled(c);
}

Int LinearTerm::eval(const std::map<std::string, Int>& assignment) const {
  Int acc = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw EvalError("no value for variable '" + v + "'");
    acc += c * it->second;
  }
  return acc;
}

struct AdditiveFormula::Node {
  Kind kind;
  LinearTerm t1, t2;  // Eq/Leq sides; Div argument in t1
  Int modulus;
  std::vector<AdditiveFormula> children;
  std::string var;
};

namespace {

using AF = AdditiveFormula;

}  // namespace

AdditiveFormula AdditiveFormula::truth() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::True;
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::falsity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::False;
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::eq(LinearTerm lhs, LinearTerm rhs) {
  // Fold only when both sides are ground; folding a non-ground atom whose
  // difference happens to be constant would drop free variables.
  if (lhs.is_constant() && rhs.is_constant())
    return lhs.constant_part() == rhs.constant_part() ? truth() : falsity();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eq;
  n->t1 = std::move(lhs);
  n->t2 = std::move(rhs);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::leq(LinearTerm lhs, LinearTerm rhs) {
  if (lhs.is_constant() && rhs.is_constant())
    return lhs.constant_part() <= rhs.constant_part() ? truth() : falsity();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leq;
  n->t1 = std::move(lhs);
  n->t2 = std::move(rhs);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::divides(Int d, LinearTerm arg) {
  if (d < 0) d = -d;
  if (d == 0) throw EvalError("divisibility modulus must be nonzero");
  if (d == 1) return truth();
  if (arg.is_constant())
    return mpz_divisible_p(arg.constant_part().get_mpz_t(), d.get_mpz_t()) ? truth() : falsity();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Div;
  n->modulus = std::move(d);
  n->t1 = std::move(arg);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::negation(AdditiveFormula arg) {
  if (arg.kind() == Kind::True) return falsity();
  if (arg.kind() == Kind::False) return truth();
  if (arg.kind() == Kind::Not) return arg.arg();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children = {std::move(arg)};
  return AdditiveFormula(std::move(n));
}

namespace {

// Flatten same-kind children, drop the identity, absorb the zero,
// deduplicate structurally (quadratic, bounded).
std::vector<AF>* normalize_nary(AF::Kind kind, std::vector<AF>& children, std::vector<AF>& flat,
                                bool& absorbed) {
  const bool is_and = kind == AF::Kind::And;
  absorbed = false;
  for (AF& c : children) {
    if (c.kind() == kind) {
      for (const AF& g : c.children()) flat.push_back(g);
    } else if (c.kind() == (is_and ? AF::Kind::True : AF::Kind::False)) {
      // identity element, drop
    } else if (c.kind() == (is_and ? AF::Kind::False : AF::Kind::True)) {
      absorbed = true;
      return &flat;
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.size() >= 2 && flat.size() <= 64) {
    std::vector<AF> unique;
    for (AF& c : flat) {
      bool seen = false;
      for (const AF& u : unique)
        if (u == c) {
          seen = true;
          break;
        }
      if (!seen) unique.push_back(std::move(c));
    }
    flat = std::move(unique);
  }
  return &flat;
}

}  // namespace

AdditiveFormula AdditiveFormula::conj(std::vector<AdditiveFormula> children) {
  std::vector<AdditiveFormula> flat;
  bool absorbed = false;
  normalize_nary(Kind::And, children, flat, absorbed);
  if (absorbed) return falsity();
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = std::move(flat);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::disj(std::vector<AdditiveFormula> children) {
  std::vector<AdditiveFormula> flat;
  bool absorbed = false;
  normalize_nary(Kind::Or, children, flat, absorbed);
  if (absorbed) return truth();
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat[0];
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = std::move(flat);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::conj(AdditiveFormula a, AdditiveFormula b) {
  std::vector<AdditiveFormula> v;
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return conj(std::move(v));
}

AdditiveFormula AdditiveFormula::disj(AdditiveFormula a, AdditiveFormula b) {
  std::vector<AdditiveFormula> v;
  v.push_back(std::move(a));
  v.push_back(std::move(b));
  return disj(std::move(v));
}

AdditiveFormula AdditiveFormula::implies(AdditiveFormula lhs, AdditiveFormula rhs) {
  if (lhs.kind() == Kind::True) return rhs;
  if (lhs.kind() == Kind::False) return truth();
  if (rhs.kind() == Kind::True) return truth();
  if (rhs.kind() == Kind::False) return negation(std::move(lhs));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->children = {std::move(lhs), std::move(rhs)};
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::exists(std::string var, AdditiveFormula body) {
  if (body.kind() == Kind::True || body.kind() == Kind::False) return body;
  if (!free_vars(body).count(var)) return body;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->var = std::move(var);
  n->children = {std::move(body)};
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::forall(std::string var, AdditiveFormula body) {
  if (body.kind() == Kind::True || body.kind() == Kind::False) return body;
  if (!free_vars(body).count(var)) return body;
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->var = std::move(var);
  n->children = {std::move(body)};
  return AdditiveFormula(std::move(n));
}

AdditiveFormula::Kind AdditiveFormula::kind() const { return node_->kind; }
const LinearTerm& AdditiveFormula::lhs() const { return node_->t1; }
const LinearTerm& AdditiveFormula::rhs() const { return node_->t2; }
const Int& AdditiveFormula::modulus() const { return node_->modulus; }
const LinearTerm& AdditiveFormula::div_arg() const { return node_->t1; }
const std::vector<AdditiveFormula>& AdditiveFormula::children() const { return node_->children; }
const AdditiveFormula& AdditiveFormula::arg() const { return node_->children[0]; }
const AdditiveFormula& AdditiveFormula::impl_lhs() const { return node_->children[0]; }
const AdditiveFormula& AdditiveFormula::impl_rhs() const { return node_->children[1]; }
const std::string& AdditiveFormula::quant_var() const { return node_->var; }
const AdditiveFormula& AdditiveFormula::body() const { return node_->children[0]; }

bool AdditiveFormula::is_quantifier_free() const {
  switch (kind()) {
    case Kind::Exists:
    case Kind::Forall:
      return false;
    default:
      for (const auto& c : node_->children)
        if (!c.is_quantifier_free()) return false;
      return true;
  }
}

std::size_t AdditiveFormula::node_count() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.node_count();
  return n;
}

bool AdditiveFormula::operator==(const AdditiveFormula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Eq:
    case Kind::Leq:
      return node_->t1 == other.node_->t1 && node_->t2 == other.node_->t2;
    case Kind::Div:
      return node_->modulus == other.node_->modulus && node_->t1 == other.node_->t1;
    case Kind::Exists:
    case Kind::Forall:
      if (node_->var != other.node_->var) return false;
      [[fallthrough]];
    default: {
      if (node_->children.size() != other.node_->children.size()) return false;
      for (std::size_t i = 0; i < node_->children.size(); ++i)
        if (!(node_->children[i] == other.node_->children[i])) return false;
      return true;
    }
  }
}

// ---------------------------------------------------------------------------
// Translation from the multiplicative language
// ---------------------------------------------------------------------------

AdditiveFormula AdditiveFormula::raw_atom(Kind kind, LinearTerm lhs, LinearTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->t1 = std::move(lhs);
  n->t2 = std::move(rhs);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::raw_div(Int d, LinearTerm arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Div;
  n->modulus = std::move(d);
  n->t1 = std::move(arg);
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::raw_unary(Kind kind, AdditiveFormula a) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(a)};
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::raw_binary(Kind kind, AdditiveFormula a, AdditiveFormula b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->children = {std::move(a), std::move(b)};
  return AdditiveFormula(std::move(n));
}

AdditiveFormula AdditiveFormula::raw_quant(Kind kind, std::string var, AdditiveFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->var = std::move(var);
  n->children = {std::move(body)};
  return AdditiveFormula(std::move(n));
}

LinearTerm to_additive_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return LinearTerm::variable(t.var_name());
    case Term::Kind::One:
      return LinearTerm::constant(0);
    case Term::Kind::Tau:
      return LinearTerm::constant(1);
    case Term::Kind::Mul:
      return to_additive_term(t.lhs()) + to_additive_term(t.rhs());
    case Term::Kind::Inv:
      return -to_additive_term(t.arg());
    case Term::Kind::Pow:
      return to_additive_term(t.arg()).scaled(Int(t.exponent()));
  }
  return LinearTerm();
}

AdditiveFormula to_additive(const Formula& f) {
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case Formula::Kind::True:
      return AdditiveFormula::truth();
    case Formula::Kind::False:
      return AdditiveFormula::falsity();
    case Formula::Kind::Eq:
      return AdditiveFormula::raw_atom(K::Eq, to_additive_term(f.lhs_term()),
                                       to_additive_term(f.rhs_term()));
    case Formula::Kind::Leq:
      return AdditiveFormula::raw_atom(K::Leq, to_additive_term(f.lhs_term()),
                                       to_additive_term(f.rhs_term()));
    case Formula::Kind::Pn:
      return AdditiveFormula::raw_div(Int(f.pn_index()), to_additive_term(f.pn_arg()));
    case Formula::Kind::Not:
      return AdditiveFormula::raw_unary(K::Not, to_additive(f.arg()));
    case Formula::Kind::And:
      return AdditiveFormula::raw_binary(K::And, to_additive(f.lhs()), to_additive(f.rhs()));
    case Formula::Kind::Or:
      return AdditiveFormula::raw_binary(K::Or, to_additive(f.lhs()), to_additive(f.rhs()));
    case Formula::Kind::Implies:
      return AdditiveFormula::raw_binary(K::Implies, to_additive(f.lhs()), to_additive(f.rhs()));
    case Formula::Kind::Exists:
      return AdditiveFormula::raw_quant(K::Exists, f.quant_var(), to_additive(f.body()));
    case Formula::Kind::Forall:
      return AdditiveFormula::raw_quant(K::Forall, f.quant_var(), to_additive(f.body()));
  }
  return AdditiveFormula::truth();
}

std::set<std::string> free_vars(const AdditiveFormula& f) {
  switch (f.kind()) {
    case AdditiveFormula::Kind::True:
    case AdditiveFormula::Kind::False:
      return {};
    case AdditiveFormula::Kind::Eq:
    case AdditiveFormula::Kind::Leq: {
      std::set<std::string> out;
      for (const auto& [v, c] : f.lhs().coefficients()) out.insert(v);
      for (const auto& [v, c] : f.rhs().coefficients()) out.insert(v);
      return out;
    }
    case AdditiveFormula::Kind::Div: {
      std::set<std::string> out;
      for (const auto& [v, c] : f.div_arg().coefficients()) out.insert(v);
      return out;
    }
    case AdditiveFormula::Kind::Exists:
    case AdditiveFormula::Kind::Forall: {
      auto out = free_vars(f.body());
      out.erase(f.quant_var());
      return out;
    }
    default: {
      std::set<std::string> out;
      for (const auto& c : f.children()) {
        auto r = free_vars(c);
        out.insert(r.begin(), r.end());
      }
      return out;
    }
  }
}

namespace {

std::string fresh_additive_name(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 0;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

}  // namespace

AdditiveFormula substitute(const AdditiveFormula& f, const std::string& var,
                           const LinearTerm& replacement) {
  // Rebuilds structurally (no simplification), so substitution commutes
  // with the translation from the multiplicative language node-for-node.
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False:
      return f;
    case K::Eq:
    case K::Leq:
      return AdditiveFormula::raw_atom(f.kind(), f.lhs().substituted(var, replacement),
                                       f.rhs().substituted(var, replacement));
    case K::Div:
      return AdditiveFormula::raw_div(f.modulus(), f.div_arg().substituted(var, replacement));
    case K::Not:
      return AdditiveFormula::raw_unary(K::Not, substitute(f.arg(), var, replacement));
    case K::And:
    case K::Or: {
      std::vector<AdditiveFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(substitute(c, var, replacement));
      auto n = std::make_shared<AdditiveFormula::Node>();
      n->kind = f.kind();
      n->children = std::move(kids);
      return AdditiveFormula(std::move(n));
    }
    case K::Implies:
      return AdditiveFormula::raw_binary(K::Implies, substitute(f.impl_lhs(), var, replacement),
                                         substitute(f.impl_rhs(), var, replacement));
    case K::Exists:
    case K::Forall: {
      const std::string& bound = f.quant_var();
      if (bound == var) return f;
      std::set<std::string> repl_vars;
      for (const auto& [v, c] : replacement.coefficients()) repl_vars.insert(v);
      auto body_free = free_vars(f.body());
      if (repl_vars.count(bound) && body_free.count(var)) {
        std::set<std::string> avoid = repl_vars;
        avoid.insert(body_free.begin(), body_free.end());
        avoid.insert(var);
        std::string renamed = fresh_additive_name(bound, avoid);
        AdditiveFormula body = substitute(f.body(), bound, LinearTerm::variable(renamed));
        body = substitute(body, var, replacement);
        return AdditiveFormula::raw_quant(f.kind(), renamed, std::move(body));
      }
      return AdditiveFormula::raw_quant(f.kind(), bound, substitute(f.body(), var, replacement));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Additive surface syntax
// ---------------------------------------------------------------------------

namespace {

bool is_reserved_additive(const std::string& word) {
  return word == "E" || word == "A" || word == "div" || word == "true" || word == "false" ||
         word == "t" || word == "P";
}

class AdditiveParser {
public:
  explicit AdditiveParser(const std::string& text) : toks_(lex(text)) {}

  AdditiveFormula parse_all() {
    AdditiveFormula f = parse_implies();
    if (peek().type != Token::Type::End) throw ParseError("trailing input", peek().pos);
    return f;
  }

private:
  const Token& peek() const { return toks_[i_]; }
  Token next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }

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

  AdditiveFormula parse_implies() {
    AdditiveFormula lhs = parse_or();
    if (eat_sym("->")) return AdditiveFormula::implies(std::move(lhs), parse_implies());
    return lhs;
  }

  AdditiveFormula parse_or() {
    AdditiveFormula f = parse_and();
    while (eat_sym("|")) f = AdditiveFormula::disj(std::move(f), parse_and());
    return f;
  }

  AdditiveFormula parse_and() {
    AdditiveFormula f = parse_unary();
    while (eat_sym("&")) f = AdditiveFormula::conj(std::move(f), parse_unary());
    return f;
  }

  AdditiveFormula parse_unary() {
    const Token& t = peek();
    if (t.type == Token::Type::Sym && t.text == "!") {
      ++i_;
      return AdditiveFormula::negation(parse_unary());
    }
    if (t.type == Token::Type::Ident && (t.text == "E" || t.text == "A")) {
      bool is_exists = t.text == "E";
      ++i_;
      Token v = next();
      if (v.type != Token::Type::Ident || is_reserved_additive(v.text))
        throw ParseError("expected variable after quantifier", v.pos);
      expect_sym(".");
      AdditiveFormula body = parse_implies();
      return is_exists ? AdditiveFormula::exists(v.text, std::move(body))
                       : AdditiveFormula::forall(v.text, std::move(body));
    }
    return parse_atom();
  }

  AdditiveFormula parse_atom() {
    const Token& t = peek();
    if (t.type == Token::Type::Ident) {
      if (t.text == "true") {
        ++i_;
        return AdditiveFormula::truth();
      }
      if (t.text == "false") {
        ++i_;
        return AdditiveFormula::falsity();
      }
      if (t.text == "div") {
        ++i_;
        expect_sym("[");
        Token d = next();
        if (d.type != Token::Type::Int) throw ParseError("expected modulus", d.pos);
        if (d.value < 2) throw ParseError("modulus must be >= 2", d.pos);
        expect_sym("]");
        expect_sym("(");
        LinearTerm arg = parse_linear();
        expect_sym(")");
        return AdditiveFormula::divides(Int(d.value), std::move(arg));
      }
    }
    if (t.type == Token::Type::Sym && t.text == "(") {
      ++i_;
      AdditiveFormula f = parse_implies();
      expect_sym(")");
      return f;
    }
    LinearTerm lhs = parse_linear();
    if (eat_sym("=")) return AdditiveFormula::eq(std::move(lhs), parse_linear());
    if (eat_sym("<=")) return AdditiveFormula::leq(std::move(lhs), parse_linear());
    throw ParseError("expected '=' or '<='", peek().pos);
  }

  LinearTerm parse_linear() {
    LinearTerm acc;
    bool negate = eat_sym("-");
    acc = parse_addend();
    if (negate) acc = -acc;
    while (true) {
      if (eat_sym("+")) {
        acc = acc + parse_addend();
      } else if (eat_sym("-")) {
        acc = acc - parse_addend();
      } else {
        break;
      }
    }
    return acc;
  }

  LinearTerm parse_addend() {
    Token t = next();
    if (t.type == Token::Type::Int) {
      if (eat_sym("*")) {
        Token v = next();
        if (v.type != Token::Type::Ident || is_reserved_additive(v.text))
          throw ParseError("expected variable after coefficient", v.pos);
        return LinearTerm::variable(v.text).scaled(Int(t.value));
      }
      return LinearTerm::constant(Int(t.value));
    }
    if (t.type == Token::Type::Ident) {
      if (is_reserved_additive(t.text))
        throw ParseError("reserved word '" + t.text + "' in term", t.pos);
      return LinearTerm::variable(t.text);
    }
    throw ParseError("expected a term", t.pos);
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

AdditiveFormula parse_additive(const std::string& text) {
  return AdditiveParser(text).parse_all();
}

// ---------------------------------------------------------------------------
// Rendering and JSON
// ---------------------------------------------------------------------------

std::string render(const LinearTerm& t) {
  std::string out;
  auto append = [&out](const Int& coeff, const std::string& var) {
    bool first = out.empty();
    Int a = coeff;
    if (!first) {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    } else if (a < 0 && !var.empty()) {
      out += "-";
      a = -a;
    }
    if (var.empty()) {
      out += a.get_str();
    } else {
      if (a != 1) {
        out += a.get_str();
        out += "*";
      }
      out += var;
    }
  };
  for (const auto& [v, c] : t.coefficients()) append(c, v);
  if (t.constant_part() != 0 || t.coefficients().empty()) {
    if (out.empty()) {
      out += t.constant_part().get_str();
    } else {
      append(t.constant_part(), "");
    }
  }
  return out;
}

namespace {

// 0 = top, 1 = operand of |, 2 = operand of &.
void render_additive(const AdditiveFormula& f, std::string& out, int parent_prec) {
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case K::True:
      out += "true";
      return;
    case K::False:
      out += "false";
      return;
    case K::Eq:
    case K::Leq:
      out += render(f.lhs());
      out += f.kind() == K::Eq ? " = " : " <= ";
      out += render(f.rhs());
      return;
    case K::Div:
      out += "div[";
      out += f.modulus().get_str();
      out += "](";
      out += render(f.div_arg());
      out += ")";
      return;
    case K::Not:
      out += "!(";
      render_additive(f.arg(), out, 0);
      out += ")";
      return;
    case K::And: {
      bool parens = parent_prec > 2;
      if (parens) out += "(";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += " & ";
        render_additive(c, out, first ? 2 : 3);
        first = false;
      }
      if (parens) out += ")";
      return;
    }
    case K::Or: {
      bool parens = parent_prec > 1;
      if (parens) out += "(";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += " | ";
        render_additive(c, out, first ? 1 : 2);
        first = false;
      }
      if (parens) out += ")";
      return;
    }
    case K::Implies: {
      bool parens = parent_prec > 0;
      if (parens) out += "(";
      render_additive(f.impl_lhs(), out, 1);
      out += " -> ";
      render_additive(f.impl_rhs(), out, 0);
      if (parens) out += ")";
      return;
    }
    case K::Exists:
    case K::Forall: {
      bool parens = parent_prec > 0;
      if (parens) out += "(";
      out += f.kind() == K::Exists ? "E " : "A ";
      out += f.quant_var();
      out += ". ";
      render_additive(f.body(), out, 0);
      if (parens) out += ")";
      return;
    }
  }
}

nlohmann::json int_to_json(const Int& v) {
  if (v.fits_slong_p()) return nlohmann::json(v.get_si());
  return nlohmann::json(v.get_str());
}

}  // namespace

std::string render(const AdditiveFormula& f) {
  std::string out;
  render_additive(f, out, 0);
  return out;
}

nlohmann::json to_json(const LinearTerm& t) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [v, c] : t.coefficients()) coeffs[v] = int_to_json(c);
  return nlohmann::json{{"coeffs", coeffs}, {"const", int_to_json(t.constant_part())}};
}

nlohmann::json to_json(const AdditiveFormula& f) {
  using nlohmann::json;
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case K::True:
      return json{{"node", "true"}};
    case K::False:
      return json{{"node", "false"}};
    case K::Eq:
      return json{{"node", "eq"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case K::Leq:
      return json{{"node", "leq"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case K::Div:
      return json{{"node", "div"}, {"d", int_to_json(f.modulus())}, {"arg", to_json(f.div_arg())}};
    case K::Not:
      return json{{"node", "not"}, {"arg", to_json(f.arg())}};
    case K::And:
    case K::Or: {
      json args = json::array();
      for (const auto& c : f.children()) args.push_back(to_json(c));
      return json{{"node", f.kind() == K::And ? "and" : "or"}, {"args", args}};
    }
    case K::Implies:
      return json{{"node", "implies"},
                  {"lhs", to_json(f.impl_lhs())},
                  {"rhs", to_json(f.impl_rhs())}};
    case K::Exists:
      return json{{"node", "exists"}, {"var", f.quant_var()}, {"body", to_json(f.body())}};
    case K::Forall:
      return json{{"node", "forall"}, {"var", f.quant_var()}, {"body", to_json(f.body())}};
  }
  return nullptr;
}

}  // namespace fbp
