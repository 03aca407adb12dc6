#ifndef FBP_ADDITIVE_HPP
#define FBP_ADDITIVE_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

#include "fbp/errors.hpp"
#include "fbp/formula.hpp"

namespace fbp {

/// Coefficients and constants are arbitrary precision: quantifier
/// elimination multiplies them and fixed width would overflow silently.
using Int = mpz_class;

/// A linear integer expression: coefficient map over variables plus a
/// constant. Zero coefficients are never stored.
class LinearTerm {
public:
  LinearTerm() = default;
  explicit LinearTerm(Int constant) : constant_(std::move(constant)) {}
  static LinearTerm variable(const std::string& name);
  static LinearTerm constant(Int value) { return LinearTerm(std::move(value)); }

  const std::map<std::string, Int>& coefficients() const { return coeffs_; }
  const Int& constant_part() const { return constant_; }
  Int coefficient(const std::string& var) const;

  LinearTerm operator+(const LinearTerm& other) const;
  LinearTerm operator-(const LinearTerm& other) const;
  LinearTerm operator-() const;
  LinearTerm scaled(const Int& factor) const;
  LinearTerm plus_const(const Int& delta) const;

  /// Replaces `var` with `replacement` (coefficient distributes).
  LinearTerm substituted(const std::string& var, const LinearTerm& replacement) const;

  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }
  bool operator==(const LinearTerm& other) const {
    return constant_ == other.constant_ && coeffs_ == other.coeffs_;
  }

  Int eval(const std::map<std::string, Int>& assignment) const;

private:
  std::map<std::string, Int> coeffs_;
  Int constant_ = 0;
};

/// First-order formulas of (additive) Presburger arithmetic. Atoms are
/// Eq(s, t), Leq(s, t) and Div(d, t) with d >= 2; And/Or are n-ary.
/// Immutable, cheap to copy.
class AdditiveFormula {
public:
  enum class Kind { True, False, Eq, Leq, Div, Not, And, Or, Implies, Exists, Forall };

  static AdditiveFormula truth();
  static AdditiveFormula falsity();
  /// Constant-folds ground atoms.
  static AdditiveFormula eq(LinearTerm lhs, LinearTerm rhs);
  static AdditiveFormula leq(LinearTerm lhs, LinearTerm rhs);
  /// d == 1 collapses to truth; d <= 0 is rejected. Ground arguments fold.
  static AdditiveFormula divides(Int d, LinearTerm arg);
  static AdditiveFormula negation(AdditiveFormula arg);
  static AdditiveFormula conj(std::vector<AdditiveFormula> children);
  static AdditiveFormula disj(std::vector<AdditiveFormula> children);
  static AdditiveFormula conj(AdditiveFormula a, AdditiveFormula b);
  static AdditiveFormula disj(AdditiveFormula a, AdditiveFormula b);
  static AdditiveFormula implies(AdditiveFormula lhs, AdditiveFormula rhs);
  static AdditiveFormula exists(std::string var, AdditiveFormula body);
  static AdditiveFormula forall(std::string var, AdditiveFormula body);

  Kind kind() const;
  const LinearTerm& lhs() const;          // Eq / Leq
  const LinearTerm& rhs() const;          // Eq / Leq
  const Int& modulus() const;             // Div
  const LinearTerm& div_arg() const;      // Div
  const std::vector<AdditiveFormula>& children() const;  // And / Or
  const AdditiveFormula& arg() const;     // Not
  const AdditiveFormula& impl_lhs() const;
  const AdditiveFormula& impl_rhs() const;
  const std::string& quant_var() const;
  const AdditiveFormula& body() const;

  bool is_quantifier_free() const;
  std::size_t node_count() const;

  bool operator==(const AdditiveFormula& other) const;
  bool operator!=(const AdditiveFormula& other) const { return !(*this == other); }

private:
  struct Node;
  explicit AdditiveFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  // Structural builders bypassing simplification; the translation from the
  // multiplicative language uses them so that free variables are preserved
  // node-for-node.
  friend AdditiveFormula to_additive(const Formula& f);
  friend AdditiveFormula substitute(const AdditiveFormula& f, const std::string& var,
                                    const LinearTerm& replacement);
  static AdditiveFormula raw_atom(Kind kind, LinearTerm lhs, LinearTerm rhs);
  static AdditiveFormula raw_div(Int d, LinearTerm arg);
  static AdditiveFormula raw_unary(Kind kind, AdditiveFormula a);
  static AdditiveFormula raw_binary(Kind kind, AdditiveFormula a, AdditiveFormula b);
  static AdditiveFormula raw_quant(Kind kind, std::string var, AdditiveFormula body);
};

/// Translation along the multiplicative/additive dictionary:
/// `.` -> +, 1 -> 0, tau -> 1, inverse -> negation, P_n(t) -> Div(n, t),
/// with <= and = carried atom-by-atom.
AdditiveFormula to_additive(const Formula& f);
LinearTerm to_additive_term(const Term& t);

std::set<std::string> free_vars(const AdditiveFormula& f);

/// Capture-avoiding substitution of a linear term for a free variable.
AdditiveFormula substitute(const AdditiveFormula& f, const std::string& var,
                           const LinearTerm& replacement);

/// Additive surface syntax: terms `x + y`, `-x`, `k*x`, integer constants;
/// atoms `s = t`, `s <= t`, `div[d](t)`; connectives and quantifiers as in
/// the group language.
AdditiveFormula parse_additive(const std::string& text);
std::string render(const AdditiveFormula& f);
std::string render(const LinearTerm& t);
nlohmann::json to_json(const AdditiveFormula& f);
nlohmann::json to_json(const LinearTerm& t);

}  // namespace fbp

#endif  // FBP_ADDITIVE_HPP
