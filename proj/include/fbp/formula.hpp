#ifndef FBP_FORMULA_HPP
#define FBP_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fbp/errors.hpp"

namespace fbp {

/// A term of the multiplicative group language {., 1, ^-1, tau}.
///
/// Terms are immutable trees behind shared handles; copying is cheap and
/// thread-safe for concurrent readers. The factory functions normalize
/// integer powers: t^0 = 1, t^1 = t, t^-1 = Inv(t), so rendered text
/// re-parses to a structurally equal term.
class Term {
public:
  enum class Kind { Var, One, Tau, Mul, Inv, Pow };

  static Term var(std::string name);
  static Term one();
  static Term tau();
  static Term mul(Term lhs, Term rhs);
  static Term inv(Term arg);
  static Term pow(Term base, std::int64_t exponent);

  Kind kind() const;
  const std::string& var_name() const;  // Var
  const Term& lhs() const;              // Mul
  const Term& rhs() const;              // Mul
  const Term& arg() const;              // Inv / Pow
  std::int64_t exponent() const;        // Pow

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A first-order formula over the pre-ordered group language
/// {., 1, ^-1, tau, P_n, <=} plus equality, Boolean connectives and
/// quantifiers. Immutable, cheap to copy.
class Formula {
public:
  enum class Kind {
    True,
    False,
    Eq,
    Leq,
    Pn,
    Not,
    And,
    Or,
    Implies,
    Exists,
    Forall,
  };

  static Formula truth();
  static Formula falsity();
  static Formula eq(Term lhs, Term rhs);
  static Formula leq(Term lhs, Term rhs);
  static Formula pn(std::int64_t n, Term arg);  // requires n >= 2
  static Formula negation(Formula arg);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula exists(std::string var, Formula body);
  static Formula forall(std::string var, Formula body);

  Kind kind() const;
  const Term& lhs_term() const;   // Eq / Leq
  const Term& rhs_term() const;   // Eq / Leq
  std::int64_t pn_index() const;  // Pn
  const Term& pn_arg() const;     // Pn
  const Formula& arg() const;     // Not
  const Formula& lhs() const;     // And / Or / Implies
  const Formula& rhs() const;     // And / Or / Implies
  const std::string& quant_var() const;  // Exists / Forall
  const Formula& body() const;           // Exists / Forall

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax:
///   quantifiers `E x.` / `A x.`, connectives `&`, `|`, `!`, `->`,
///   atoms `s = t`, `s <= t`, `P[n](t)`, literals `true` / `false`,
///   terms built from variables, `1`, `t` (the tau constant), `*`,
///   integer powers `^k` (so `^-1` is inversion), and parentheses.
/// Throws ParseError with a position on malformed input.
Formula parse_formula(const std::string& text);
Term parse_term(const std::string& text);

/// Renders with minimal parentheses; parse_formula(render(f)) == f for
/// every normalized AST.
std::string render(const Formula& f);
std::string render(const Term& t);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> term_vars(const Term& t);

/// Capture-avoiding substitution of `replacement` for free occurrences of
/// `var`; bound variables are renamed when they would capture.
Formula substitute(const Formula& f, const std::string& var, const Term& replacement);
Term substitute(const Term& t, const std::string& var, const Term& replacement);

/// Canonical JSON encoding (node tag + children), used by the CLI.
nlohmann::json to_json(const Formula& f);
nlohmann::json to_json(const Term& t);

}  // namespace fbp

#endif  // FBP_FORMULA_HPP
