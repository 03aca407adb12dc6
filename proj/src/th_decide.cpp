#include "fbp/th_decide.hpp"

#include <map>
#include <optional>
#include <utility>

#include "fbp/presburger.hpp"

namespace fbp {

namespace {

struct VarParts {
  GroupElem h;       // concrete H-component fixed by the enclosing expansion
  std::string zvar;  // Presburger variable carrying the Z-component
};

using Env = std::map<std::string, VarParts>;

struct TermParts {
  GroupElem h;
  LinearTerm z;
};

struct Translator {
  const FbPModel& model;
  DecideStats& stats;
  std::int64_t work_cap;

  TermParts term(const Term& t, const Env& env) const {
    switch (t.kind()) {
      case Term::Kind::Var: {
        auto it = env.find(t.var_name());
        if (it == env.end()) throw EvalError("unbound variable '" + t.var_name() + "'");
        return {it->second.h, LinearTerm::variable(it->second.zvar)};
      }
      case Term::Kind::One:
        return {model.H.identity(), LinearTerm::constant(0)};
      case Term::Kind::Tau:
        return {model.tau_h, LinearTerm::constant(model.tau_z)};
      case Term::Kind::Mul: {
        TermParts a = term(t.lhs(), env);
        TermParts b = term(t.rhs(), env);
        return {model.H.add(a.h, b.h), a.z + b.z};
      }
      case Term::Kind::Inv: {
        TermParts a = term(t.arg(), env);
        return {model.H.neg(a.h), -a.z};
      }
      case Term::Kind::Pow: {
        TermParts a = term(t.arg(), env);
        return {model.H.scale(a.h, t.exponent()), a.z.scaled(Int(t.exponent()))};
      }
    }
    return {model.H.identity(), LinearTerm()};
  }

  AdditiveFormula translate(const Formula& f, Env& env) {
    switch (f.kind()) {
      case Formula::Kind::True:
        return AdditiveFormula::truth();
      case Formula::Kind::False:
        return AdditiveFormula::falsity();
      case Formula::Kind::Eq: {
        TermParts a = term(f.lhs_term(), env);
        TermParts b = term(f.rhs_term(), env);
        if (!(a.h == b.h)) return AdditiveFormula::falsity();
        return AdditiveFormula::eq(std::move(a.z), std::move(b.z));
      }
      case Formula::Kind::Leq: {
        // The preorder compares Z-components only (trivial on H).
        TermParts a = term(f.lhs_term(), env);
        TermParts b = term(f.rhs_term(), env);
        return AdditiveFormula::leq(std::move(a.z), std::move(b.z));
      }
      case Formula::Kind::Pn: {
        TermParts a = term(f.pn_arg(), env);
        if (!is_nth_power(model.H, a.h, f.pn_index())) return AdditiveFormula::falsity();
        return AdditiveFormula::divides(Int(f.pn_index()), std::move(a.z));
      }
      case Formula::Kind::Not:
        return AdditiveFormula::negation(translate(f.arg(), env));
      case Formula::Kind::And:
        return AdditiveFormula::conj(translate(f.lhs(), env), translate(f.rhs(), env));
      case Formula::Kind::Or:
        return AdditiveFormula::disj(translate(f.lhs(), env), translate(f.rhs(), env));
      case Formula::Kind::Implies:
        return AdditiveFormula::implies(translate(f.lhs(), env), translate(f.rhs(), env));
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        bool is_exists = f.kind() == Formula::Kind::Exists;
        const std::string& x = f.quant_var();
        std::vector<AdditiveFormula> parts;
        parts.reserve(static_cast<std::size_t>(model.H.order()));
        auto saved = env.find(x) != env.end() ? std::optional<VarParts>(env[x]) : std::nullopt;
        for (std::int64_t i = 0; i < model.H.order(); ++i) {
          if (++stats.h_assignments > static_cast<std::uint64_t>(work_cap))
            throw CapError("H-assignment enumeration exceeds the work cap");
          env[x] = VarParts{model.H.element_at(i), x};
          AdditiveFormula body = translate(f.body(), env);
          parts.push_back(is_exists ? AdditiveFormula::exists(x, std::move(body))
                                    : AdditiveFormula::forall(x, std::move(body)));
        }
        if (saved) {
          env[x] = *saved;
        } else {
          env.erase(x);
        }
        return is_exists ? AdditiveFormula::disj(std::move(parts))
                         : AdditiveFormula::conj(std::move(parts));
      }
    }
    return AdditiveFormula::truth();
  }
};

}  // namespace

AdditiveFormula translate_TH(const FbPModel& model, const Formula& f, DecideStats* stats,
                             std::int64_t work_cap) {
  if (!free_vars(f).empty()) throw EvalError("decide_TH requires a sentence (no free variables)");
  DecideStats local;
  DecideStats& s = stats ? *stats : local;
  Translator tr{model, s, work_cap};
  Env env;
  AdditiveFormula out = tr.translate(f, env);
  s.additive_nodes = out.node_count();
  return out;
}

bool decide_TH(const FbPModel& model, const Formula& f, DecideStats* stats,
               std::int64_t work_cap) {
  return presburger::decide(translate_TH(model, f, stats, work_cap));
}

// ---------------------------------------------------------------------------
// Axiom checks on the standard model
// ---------------------------------------------------------------------------

namespace {

std::string product_str(const FbPModel& m, const GroupElem& h, std::int64_t z) {
  return "(" + m.H.to_string(h) + ", " + std::to_string(z) + ")";
}

}  // namespace

std::vector<AxiomCheck> check_axioms(const FbPModel& model, std::int64_t window) {
  std::vector<AxiomCheck> out;
  const FinAbGroup& H = model.H;
  const std::int64_t W = window;

  // (i) tau is the minimal strictly positive element: strictly positive
  // means 1 <= g and not g <= 1, i.e. z >= 1 on the Z-component.
  {
    AxiomCheck c{"i", "tau is the minimal positive element", true, {}};
    if (model.tau_z < 1) {
      c.pass = false;
      c.witnesses.push_back("tau = " + product_str(model, model.tau_h, model.tau_z) +
                            " is not strictly positive");
    }
    for (std::int64_t z = 1; z <= W && c.pass; ++z) {
      if (!(model.tau_z <= z)) {
        c.pass = false;
        c.witnesses.push_back("z=" + std::to_string(z) +
                              " is strictly positive but not above tau_z=" +
                              std::to_string(model.tau_z));
      }
    }
    out.push_back(std::move(c));
  }

  // (ii) every torsion order divides the exponent m of H.
  {
    AxiomCheck c{"ii", "orders of torsion elements divide the exponent", true, {}};
    for (std::int64_t i = 0; i < H.order(); ++i) {
      GroupElem h = H.element_at(i);
      std::int64_t ord = order_of(H, h);
      if (H.exponent() % ord != 0) {
        c.pass = false;
        c.witnesses.push_back("order " + std::to_string(ord) + " of " + H.to_string(h) +
                              " does not divide " + std::to_string(H.exponent()));
        if (c.witnesses.size() >= 3) break;
      }
    }
    out.push_back(std::move(c));
  }

  // (iii) the torsion subgroup realizes the isomorphism type of H: recompute
  // invariant factors from the multiplication closure of H x {0}.
  {
    AxiomCheck c{"iii", "torsion subgroup is isomorphic to H", true, {}};
    auto op = [&H](std::int64_t a, std::int64_t b) {
      return H.index_of(H.add(H.element_at(a), H.element_at(b)));
    };
    FinAbGroup computed = abelian_structure(H.order(), op, H.index_of(H.identity())).group;
    if (!iso_check(computed, H)) {
      c.pass = false;
      c.witnesses.push_back("computed " + group_to_string(computed) + ", declared " +
                            group_to_string(H));
    }
    out.push_back(std::move(c));
  }

  // (iv) g ~ 1 implies g is torsion: on the window, (h, z) ~ (0, 0) forces
  // z = 0, and every (h, 0) has finite order.
  {
    AxiomCheck c{"iv", "the ~-class of 1 consists of torsion elements", true, {}};
    for (std::int64_t z = -W; z <= W; ++z) {
      bool sim_one = z <= 0 && 0 <= z;
      if (!sim_one) continue;
      for (std::int64_t i = 0; i < H.order(); ++i) {
        GroupElem h = H.element_at(i);
        // (h, z) with z = 0: order in the product equals order in H.
        if (z != 0) {
          c.pass = false;
          c.witnesses.push_back(product_str(model, h, z) + " is ~ 1 but has infinite order");
        } else {
          (void)order_of(H, h);  // finite by construction
        }
      }
    }
    out.push_back(std::move(c));
  }

  // (v) G modulo torsion is ordered Presburger with the class of tau
  // minimal positive: the quotient map is (h, z) -> z onto Z, so the class
  // of tau is tau_z and must equal 1.
  {
    AxiomCheck c{"v", "G/Tor(G) is a Presburger model with tau·H minimal positive", true, {}};
    if (model.tau_z != 1) {
      c.pass = false;
      c.witnesses.push_back("class of tau in G/Tor(G) is " + std::to_string(model.tau_z) +
                            ", expected 1");
    }
    out.push_back(std::move(c));
  }

  // (vi) the preorder restricted to the torsion part is trivial.
  {
    AxiomCheck c{"vi", "the preorder on H is trivial", true, {}};
    if (H.order() * H.order() <= 10'000'000) {
      for (std::int64_t i = 0; i < H.order() && c.pass; ++i)
        for (std::int64_t j = 0; j < H.order() && c.pass; ++j) {
          // Product preorder compares Z-components, both 0 here.
          constexpr std::int64_t zi = 0, zj = 0;
          if (!(zi <= zj && zj <= zi)) {
            c.pass = false;
            c.witnesses.push_back("pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
          }
        }
    }
    // Above the pair cap the check is structural: the relation only reads
    // Z-components and every torsion element carries z = 0.
    out.push_back(std::move(c));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Bounded evaluation (testing oracle)
// ---------------------------------------------------------------------------

namespace {

using ProductEnv = std::map<std::string, ProductElem>;

ProductElem eval_product_term(const FbPModel& m, const Term& t, const ProductEnv& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end()) throw EvalError("no value for variable '" + t.var_name() + "'");
      return it->second;
    }
    case Term::Kind::One:
      return {m.H.identity(), 0};
    case Term::Kind::Tau:
      return m.tau();
    case Term::Kind::Mul: {
      ProductElem a = eval_product_term(m, t.lhs(), env);
      ProductElem b = eval_product_term(m, t.rhs(), env);
      return {m.H.add(a.h, b.h), a.z + b.z};
    }
    case Term::Kind::Inv: {
      ProductElem a = eval_product_term(m, t.arg(), env);
      return {m.H.neg(a.h), -a.z};
    }
    case Term::Kind::Pow: {
      ProductElem a = eval_product_term(m, t.arg(), env);
      return {m.H.scale(a.h, t.exponent()), a.z * t.exponent()};
    }
  }
  return {m.H.identity(), 0};
}

bool eval_bounded_rec(const FbPModel& m, const Formula& f, ProductEnv& env, std::int64_t B) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Eq:
      return eval_product_term(m, f.lhs_term(), env) == eval_product_term(m, f.rhs_term(), env);
    case Formula::Kind::Leq:
      return eval_product_term(m, f.lhs_term(), env).z <= eval_product_term(m, f.rhs_term(), env).z;
    case Formula::Kind::Pn: {
      ProductElem a = eval_product_term(m, f.pn_arg(), env);
      return is_nth_power(m.H, a.h, f.pn_index()) && a.z % f.pn_index() == 0;
    }
    case Formula::Kind::Not:
      return !eval_bounded_rec(m, f.arg(), env, B);
    case Formula::Kind::And:
      return eval_bounded_rec(m, f.lhs(), env, B) && eval_bounded_rec(m, f.rhs(), env, B);
    case Formula::Kind::Or:
      return eval_bounded_rec(m, f.lhs(), env, B) || eval_bounded_rec(m, f.rhs(), env, B);
    case Formula::Kind::Implies:
      return !eval_bounded_rec(m, f.lhs(), env, B) || eval_bounded_rec(m, f.rhs(), env, B);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool is_exists = f.kind() == Formula::Kind::Exists;
      auto saved = env.find(f.quant_var()) != env.end()
                       ? std::optional<ProductElem>(env[f.quant_var()])
                       : std::nullopt;
      bool result = !is_exists;
      for (std::int64_t i = 0; i < m.H.order() && result != is_exists; ++i)
        for (std::int64_t z = -B; z <= B && result != is_exists; ++z) {
          env[f.quant_var()] = ProductElem{m.H.element_at(i), z};
          bool v = eval_bounded_rec(m, f.body(), env, B);
          if (is_exists && v) result = true;
          if (!is_exists && !v) result = false;
        }
      if (saved) {
        env[f.quant_var()] = *saved;
      } else {
        env.erase(f.quant_var());
      }
      return result;
    }
  }
  return false;
}

}  // namespace

bool eval_bounded(const FbPModel& model, const Formula& f, std::int64_t bound) {
  if (bound < 1) throw EvalError("bound must be >= 1");
  ProductEnv env;
  return eval_bounded_rec(model, f, env, bound);
}

}  // namespace fbp
