// Cooper's quantifier elimination for Presburger arithmetic.
//
// Elimination of one existential quantifier works on a literal normal form:
//
//   Lt(t)      meaning  t < 0
//   Dvd(d, t)  meaning  d | t
//   NDvd(d, t) meaning  d does not divide t
//
// closed under conjunction and disjunction. For ∃x φ:
//
//   1. m := lcm of |coefficients of x|; every literal is scaled so the
//      coefficient of x becomes ±m, then m·x is renamed to a unit-coefficient
//      variable and the constraint m | x is added.
//   2. δ := lcm of the divisibility moduli attached to x.
//   3. With B the set of lower-bound terms (from literals t < x) and A the
//      upper-bound terms, whichever is smaller drives the expansion:
//        ⋁_{j=1..δ} φ_{-∞}[x := j]  ∨  ⋁_{b∈B} ⋁_{j=1..δ} φ[x := b + j]
//      (dually with φ_{+∞}[x := -j] and a - j over A). φ_{-∞} replaces
//      upper-bound literals by true and lower bounds by false; φ_{+∞} is the
//      mirror image.
//
// ∀ is handled as ¬∃¬, and quantifiers are eliminated innermost first.
// Ground literals fold at construction, so eliminating a sentence yields a
// plain truth constant.

#include "fbp/presburger.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace fbp::presburger {

namespace {

struct QF {
  enum class K { True, False, Lt, Dvd, NDvd, And, Or };
  K k = K::True;
  LinearTerm t;  // Lt / Dvd / NDvd payload
  Int d;         // Dvd / NDvd modulus
  std::vector<QF> kids;

  bool operator==(const QF& o) const {
    if (k != o.k) return false;
    switch (k) {
      case K::True:
      case K::False:
        return true;
      case K::Lt:
        return t == o.t;
      case K::Dvd:
      case K::NDvd:
        return d == o.d && t == o.t;
      case K::And:
      case K::Or: {
        if (kids.size() != o.kids.size()) return false;
        for (std::size_t i = 0; i < kids.size(); ++i)
          if (!(kids[i] == o.kids[i])) return false;
        return true;
      }
    }
    return false;
  }
};

QF qf_true() { return QF{QF::K::True}; }
QF qf_false() { return QF{QF::K::False}; }

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int symmetric_mod(const Int& a, const Int& d) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  if (2 * r > d) r -= d;
  return r;
}

// t < 0, with ground folding and division by the coefficient gcd:
// g·s + c < 0  <=>  s <= floor((-c-1)/g)  <=>  s - floor((-c-1)/g) - 1 < 0.
QF qf_lt(LinearTerm t) {
  if (t.is_constant()) return t.constant_part() < 0 ? qf_true() : qf_false();
  Int g = 0;
  for (const auto& [v, c] : t.coefficients()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    LinearTerm reduced;
    for (const auto& [v, c] : t.coefficients())
      reduced = reduced + LinearTerm::variable(v).scaled(c / g);
    Int bound = floor_div(-t.constant_part() - 1, g);
    t = reduced.plus_const(-bound - 1);
  }
  QF q;
  q.k = QF::K::Lt;
  q.t = std::move(t);
  return q;
}

QF qf_dvd(Int d, LinearTerm t, bool negated) {
  if (d < 0) d = -d;
  if (d == 1) return negated ? qf_false() : qf_true();
  LinearTerm reduced;
  for (const auto& [v, c] : t.coefficients()) {
    Int r = symmetric_mod(c, d);
    if (r != 0) reduced = reduced + LinearTerm::variable(v).scaled(r);
  }
  reduced = reduced.plus_const(symmetric_mod(t.constant_part(), d));
  if (reduced.is_constant()) {
    bool divides = reduced.constant_part() == 0;
    return divides != negated ? qf_true() : qf_false();
  }
  QF q;
  q.k = negated ? QF::K::NDvd : QF::K::Dvd;
  q.d = std::move(d);
  q.t = std::move(reduced);
  return q;
}

QF qf_nary(QF::K kind, std::vector<QF> kids) {
  const bool is_and = kind == QF::K::And;
  std::vector<QF> flat;
  for (QF& c : kids) {
    if (c.k == kind) {
      for (QF& g : c.kids) flat.push_back(std::move(g));
    } else if (c.k == (is_and ? QF::K::True : QF::K::False)) {
      // identity, drop
    } else if (c.k == (is_and ? QF::K::False : QF::K::True)) {
      return is_and ? qf_false() : qf_true();
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.size() >= 2 && flat.size() <= 64) {
    std::vector<QF> unique;
    for (QF& c : flat) {
      bool seen = false;
      for (const QF& u : unique)
        if (u == c) {
          seen = true;
          break;
        }
      if (!seen) unique.push_back(std::move(c));
    }
    flat = std::move(unique);
  }
  if (flat.empty()) return is_and ? qf_true() : qf_false();
  if (flat.size() == 1) return std::move(flat[0]);
  QF q;
  q.k = kind;
  q.kids = std::move(flat);
  return q;
}

QF qf_and(std::vector<QF> kids) { return qf_nary(QF::K::And, std::move(kids)); }
QF qf_or(std::vector<QF> kids) { return qf_nary(QF::K::Or, std::move(kids)); }

// Negation normal form over literals. `positive` is the polarity.
QF to_qf(const AdditiveFormula& f, bool positive) {
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case K::True:
      return positive ? qf_true() : qf_false();
    case K::False:
      return positive ? qf_false() : qf_true();
    case K::Eq: {
      LinearTerm diff = f.lhs() - f.rhs();
      if (positive) {
        std::vector<QF> kids;
        kids.push_back(qf_lt(diff.plus_const(-1)));   // lhs <= rhs
        kids.push_back(qf_lt((-diff).plus_const(-1)));  // rhs <= lhs
        return qf_and(std::move(kids));
      }
      std::vector<QF> kids;
      kids.push_back(qf_lt(diff));   // lhs < rhs
      kids.push_back(qf_lt(-diff));  // rhs < lhs
      return qf_or(std::move(kids));
    }
    case K::Leq: {
      LinearTerm diff = f.lhs() - f.rhs();
      if (positive) return qf_lt(diff.plus_const(-1));
      return qf_lt(-diff);  // rhs < lhs
    }
    case K::Div:
      return qf_dvd(f.modulus(), f.div_arg(), !positive);
    case K::Not:
      return to_qf(f.arg(), !positive);
    case K::And:
    case K::Or: {
      bool as_and = (f.kind() == K::And) == positive;
      std::vector<QF> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(to_qf(c, positive));
      return as_and ? qf_and(std::move(kids)) : qf_or(std::move(kids));
    }
    case K::Implies: {
      std::vector<QF> kids;
      kids.push_back(to_qf(f.impl_lhs(), !positive));
      kids.push_back(to_qf(f.impl_rhs(), positive));
      return positive ? qf_or(std::move(kids)) : qf_and(std::move(kids));
    }
    case K::Exists:
    case K::Forall:
      throw EvalError("internal: quantifier reached literal normalization");
  }
  return qf_true();
}

AdditiveFormula from_qf(const QF& q) {
  switch (q.k) {
    case QF::K::True:
      return AdditiveFormula::truth();
    case QF::K::False:
      return AdditiveFormula::falsity();
    case QF::K::Lt: {
      // t < 0  <=>  vars(t) <= -const(t) - 1
      LinearTerm vars = q.t.plus_const(-q.t.constant_part());
      return AdditiveFormula::leq(vars, LinearTerm::constant(-q.t.constant_part() - 1));
    }
    case QF::K::Dvd:
      return AdditiveFormula::divides(q.d, q.t);
    case QF::K::NDvd:
      return AdditiveFormula::negation(AdditiveFormula::divides(q.d, q.t));
    case QF::K::And:
    case QF::K::Or: {
      std::vector<AdditiveFormula> kids;
      kids.reserve(q.kids.size());
      for (const QF& c : q.kids) kids.push_back(from_qf(c));
      return q.k == QF::K::And ? AdditiveFormula::conj(std::move(kids))
                               : AdditiveFormula::disj(std::move(kids));
    }
  }
  return AdditiveFormula::truth();
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

void collect_coefficients(const QF& q, const std::string& x, Int& m) {
  switch (q.k) {
    case QF::K::Lt:
    case QF::K::Dvd:
    case QF::K::NDvd: {
      Int c = q.t.coefficient(x);
      if (c != 0) m = lcm(m, c < 0 ? Int(-c) : c);
      return;
    }
    case QF::K::And:
    case QF::K::Or:
      for (const QF& c : q.kids) collect_coefficients(c, x, m);
      return;
    default:
      return;
  }
}

// Scales every literal so the coefficient of x is ±1 (reading x as m·x_old).
QF unify_coefficient(const QF& q, const std::string& x, const Int& m) {
  switch (q.k) {
    case QF::K::Lt: {
      Int a = q.t.coefficient(x);
      if (a == 0) return q;
      Int s = m / (a < 0 ? -a : a);
      LinearTerm rest = q.t - LinearTerm::variable(x).scaled(a);
      LinearTerm scaled_rest = rest.scaled(s);
      QF out;
      out.k = QF::K::Lt;
      out.t = (a > 0 ? LinearTerm::variable(x) : -LinearTerm::variable(x)) + scaled_rest;
      return out;
    }
    case QF::K::Dvd:
    case QF::K::NDvd: {
      Int a = q.t.coefficient(x);
      if (a == 0) return q;
      Int s = m / (a < 0 ? -a : a);
      LinearTerm rest = q.t - LinearTerm::variable(x).scaled(a);
      // For a < 0 use d | t <=> d | -t to keep the x coefficient at +1.
      LinearTerm scaled_rest = (a > 0 ? rest : -rest).scaled(s);
      QF out;
      out.k = q.k;
      out.d = q.d * s;
      out.t = LinearTerm::variable(x) + scaled_rest;
      return out;
    }
    case QF::K::And:
    case QF::K::Or: {
      std::vector<QF> kids;
      kids.reserve(q.kids.size());
      for (const QF& c : q.kids) kids.push_back(unify_coefficient(c, x, m));
      return qf_nary(q.k, std::move(kids));
    }
    default:
      return q;
  }
}

void collect_divisors_and_bounds(const QF& q, const std::string& x, Int& delta,
                                 std::vector<LinearTerm>& lower,
                                 std::vector<LinearTerm>& upper) {
  switch (q.k) {
    case QF::K::Lt: {
      Int a = q.t.coefficient(x);
      if (a == 0) return;
      LinearTerm rest = q.t - LinearTerm::variable(x).scaled(a);
      if (a > 0) {
        upper.push_back(-rest);  // x < -rest
      } else {
        lower.push_back(rest);  // rest < x
      }
      return;
    }
    case QF::K::Dvd:
    case QF::K::NDvd:
      if (q.t.coefficient(x) != 0) delta = lcm(delta, q.d);
      return;
    case QF::K::And:
    case QF::K::Or:
      for (const QF& c : q.kids) collect_divisors_and_bounds(c, x, delta, lower, upper);
      return;
    default:
      return;
  }
}

// mode: 0 = substitute, -1 = minus-infinity projection, +1 = plus-infinity.
QF substitute_x(const QF& q, const std::string& x, const LinearTerm& value, int mode) {
  switch (q.k) {
    case QF::K::Lt: {
      Int a = q.t.coefficient(x);
      if (a == 0) return q;
      if (mode == -1) return a > 0 ? qf_true() : qf_false();
      if (mode == +1) return a > 0 ? qf_false() : qf_true();
      return qf_lt(q.t.substituted(x, value));
    }
    case QF::K::Dvd:
    case QF::K::NDvd: {
      if (q.t.coefficient(x) == 0) return q;
      // The ±infinity projections only resolve order literals; divisibility
      // literals survive for the later substitution of j.
      if (mode != 0) return q;
      return qf_dvd(q.d, q.t.substituted(x, value), q.k == QF::K::NDvd);
    }
    case QF::K::And:
    case QF::K::Or: {
      std::vector<QF> kids;
      kids.reserve(q.kids.size());
      for (const QF& c : q.kids) kids.push_back(substitute_x(c, x, value, mode));
      return qf_nary(q.k, std::move(kids));
    }
    default:
      return q;
  }
}

bool occurs(const QF& q, const std::string& x) {
  switch (q.k) {
    case QF::K::Lt:
    case QF::K::Dvd:
    case QF::K::NDvd:
      return q.t.coefficient(x) != 0;
    case QF::K::And:
    case QF::K::Or:
      for (const QF& c : q.kids)
        if (occurs(c, x)) return true;
      return false;
    default:
      return false;
  }
}

QF cooper_exists(const std::string& x, const QF& phi) {
  if (!occurs(phi, x)) return phi;
  Int m = 1;
  collect_coefficients(phi, x, m);

  QF unified = unify_coefficient(phi, x, m);
  // The renaming x_hat = m·x adds the divisibility constraint m | x_hat.
  if (m > 1) {
    std::vector<QF> kids;
    kids.push_back(std::move(unified));
    kids.push_back(qf_dvd(m, LinearTerm::variable(x), false));
    unified = qf_and(std::move(kids));
  }

  Int delta = m;
  std::vector<LinearTerm> lower, upper;
  collect_divisors_and_bounds(unified, x, delta, lower, upper);

  std::vector<QF> disjuncts;
  if (lower.size() <= upper.size()) {
    for (Int j = 1; j <= delta; ++j) {
      disjuncts.push_back(substitute_x(substitute_x(unified, x, LinearTerm(), -1), x,
                                       LinearTerm::constant(j), 0));
      for (const LinearTerm& b : lower)
        disjuncts.push_back(substitute_x(unified, x, b.plus_const(j), 0));
    }
  } else {
    for (Int j = 1; j <= delta; ++j) {
      disjuncts.push_back(substitute_x(substitute_x(unified, x, LinearTerm(), +1), x,
                                       LinearTerm::constant(-j), 0));
      for (const LinearTerm& a : upper)
        disjuncts.push_back(substitute_x(unified, x, a.plus_const(-j), 0));
    }
  }
  return qf_or(std::move(disjuncts));
}

}  // namespace

AdditiveFormula qe(const AdditiveFormula& f) {
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False:
    case K::Eq:
    case K::Leq:
    case K::Div:
      return f;
    case K::Not:
      return AdditiveFormula::negation(qe(f.arg()));
    case K::And:
    case K::Or: {
      std::vector<AdditiveFormula> kids;
      kids.reserve(f.children().size());
      for (const auto& c : f.children()) kids.push_back(qe(c));
      return f.kind() == K::And ? AdditiveFormula::conj(std::move(kids))
                                : AdditiveFormula::disj(std::move(kids));
    }
    case K::Implies:
      return AdditiveFormula::implies(qe(f.impl_lhs()), qe(f.impl_rhs()));
    case K::Exists: {
      AdditiveFormula body = qe(f.body());
      return from_qf(cooper_exists(f.quant_var(), to_qf(body, true)));
    }
    case K::Forall: {
      // ∀x φ  =  ¬∃x ¬φ
      AdditiveFormula body = qe(f.body());
      return AdditiveFormula::negation(from_qf(cooper_exists(f.quant_var(), to_qf(body, false))));
    }
  }
  return f;
}

bool decide(const AdditiveFormula& f) {
  if (!free_vars(f).empty()) throw EvalError("decide requires a sentence (no free variables)");
  return eval(qe(f), {});
}

bool eval(const AdditiveFormula& f, const Assignment& assignment) {
  using K = AdditiveFormula::Kind;
  switch (f.kind()) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Eq:
      return f.lhs().eval(assignment) == f.rhs().eval(assignment);
    case K::Leq:
      return f.lhs().eval(assignment) <= f.rhs().eval(assignment);
    case K::Div: {
      Int v = f.div_arg().eval(assignment);
      return mpz_divisible_p(v.get_mpz_t(), f.modulus().get_mpz_t()) != 0;
    }
    case K::Not:
      return !eval(f.arg(), assignment);
    case K::And: {
      for (const auto& c : f.children())
        if (!eval(c, assignment)) return false;
      return true;
    }
    case K::Or: {
      for (const auto& c : f.children())
        if (eval(c, assignment)) return true;
      return false;
    }
    case K::Implies:
      return !eval(f.impl_lhs(), assignment) || eval(f.impl_rhs(), assignment);
    case K::Exists:
    case K::Forall:
      throw EvalError("eval requires a quantifier-free formula");
  }
  return false;
}

}  // namespace fbp::presburger
