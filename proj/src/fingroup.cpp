#include "fbp/fingroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace fbp {

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

std::map<std::int64_t, int> factorize(std::int64_t n) {
  std::map<std::int64_t, int> out;
  for (std::int64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  if (n > 1) ++out[n];
  return out;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

}  // namespace

FinAbGroup::FinAbGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw EvalError("invariant factors must be >= 2");
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
      throw EvalError("invariant factors must form a divisibility chain");
    order_ *= factors_[i];
  }
}

FinAbGroup FinAbGroup::cyclic(std::int64_t d) {
  if (d < 1) throw EvalError("cyclic order must be >= 1");
  if (d == 1) return trivial();
  return FinAbGroup({d});
}

FinAbGroup FinAbGroup::from_factors(std::vector<std::int64_t> factors) {
  // Primary decomposition, then reassembly into the divisibility chain.
  std::map<std::int64_t, std::vector<int>> primary;  // prime -> exponents, desc
  for (std::int64_t d : factors) {
    if (d < 1) throw EvalError("cyclic factors must be >= 1");
    for (const auto& [p, e] : factorize(d)) primary[p].push_back(e);
  }
  std::size_t rank = 0;
  for (auto& [p, exps] : primary) {
    std::sort(exps.begin(), exps.end(), std::greater<int>());
    rank = std::max(rank, exps.size());
  }
  std::vector<std::int64_t> chain;  // built descending, then reversed
  for (std::size_t slot = 0; slot < rank; ++slot) {
    std::int64_t d = 1;
    for (const auto& [p, exps] : primary)
      if (slot < exps.size()) d *= ipow(p, exps[slot]);
    chain.push_back(d);
  }
  std::reverse(chain.begin(), chain.end());
  return FinAbGroup(std::move(chain));
}

GroupElem FinAbGroup::add(const GroupElem& a, const GroupElem& b) const {
  GroupElem out = a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out.r[i] += b.r[i];
    if (out.r[i] >= factors_[i]) out.r[i] -= factors_[i];
  }
  return out;
}

GroupElem FinAbGroup::neg(const GroupElem& a) const {
  GroupElem out = a;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    out.r[i] = a.r[i] == 0 ? 0 : factors_[i] - a.r[i];
  return out;
}

GroupElem FinAbGroup::scale(const GroupElem& a, std::int64_t n) const {
  GroupElem out = identity();
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    std::int64_t m = n % factors_[i];
    if (m < 0) m += factors_[i];
    out.r[i] = (a.r[i] * m) % factors_[i];
  }
  return out;
}

bool FinAbGroup::is_valid(const GroupElem& a) const {
  if (a.r.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (a.r[i] < 0 || a.r[i] >= factors_[i]) return false;
  return true;
}

std::int64_t FinAbGroup::index_of(const GroupElem& a) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) idx = idx * factors_[i] + a.r[i];
  return idx;
}

GroupElem FinAbGroup::element_at(std::int64_t index) const {
  GroupElem out = identity();
  for (std::size_t i = factors_.size(); i-- > 0;) {
    out.r[i] = index % factors_[i];
    index /= factors_[i];
  }
  return out;
}

std::string FinAbGroup::to_string(const GroupElem& a) const {
  std::string out = "(";
  for (std::size_t i = 0; i < a.r.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(a.r[i]);
  }
  out += ")";
  return out;
}

FinAbGroup parse_group(const std::string& text) {
  std::vector<std::int64_t> factors;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  while (true) {
    skip_ws();
    if (i >= text.size() || text[i] != 'Z') throw ParseError("expected 'Z'", i);
    ++i;
    if (i >= text.size() || text[i] != '/') throw ParseError("expected '/'", i);
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected a cyclic order", i);
    std::int64_t d = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      d = d * 10 + (text[i] - '0');
      if (d > kDefaultElementCap) throw ParseError("cyclic order too large", i);
      ++i;
    }
    factors.push_back(d);
    skip_ws();
    if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
      ++i;
      continue;
    }
    break;
  }
  if (i != text.size()) throw ParseError("trailing input in group literal", i);
  return FinAbGroup::from_factors(std::move(factors));
}

std::string group_to_string(const FinAbGroup& g) {
  if (g.factors().empty()) return "Z/1";
  std::string out;
  for (std::size_t i = 0; i < g.factors().size(); ++i) {
    if (i) out += "x";
    out += "Z/" + std::to_string(g.factors()[i]);
  }
  return out;
}

std::vector<GroupElem> enumerate(const FinAbGroup& g, std::int64_t cap) {
  if (g.order() > cap)
    throw CapError("group order " + std::to_string(g.order()) + " exceeds element cap " +
                   std::to_string(cap));
  std::vector<GroupElem> out;
  out.reserve(static_cast<std::size_t>(g.order()));
  for (std::int64_t i = 0; i < g.order(); ++i) out.push_back(g.element_at(i));
  return out;
}

std::int64_t order_of(const FinAbGroup& g, const GroupElem& a) {
  std::int64_t n = 1;
  for (std::size_t i = 0; i < g.factors().size(); ++i)
    n = lcm64(n, g.factors()[i] / gcd64(g.factors()[i], a.r[i]));
  return n;
}

bool is_nth_power(const FinAbGroup& g, const GroupElem& a, std::int64_t n) {
  if (n < 1) throw EvalError("power index must be >= 1");
  for (std::size_t i = 0; i < g.factors().size(); ++i)
    if (a.r[i] % gcd64(n, g.factors()[i]) != 0) return false;
  return true;
}

namespace {

GroupElem eval_term(const FinAbGroup& g, const Term& t, const GroupEnv& env) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = env.find(t.var_name());
      if (it == env.end()) throw EvalError("no value for variable '" + t.var_name() + "'");
      return it->second;
    }
    case Term::Kind::One:
    case Term::Kind::Tau:
      // The preorder on H is trivial, so tau denotes the identity.
      return g.identity();
    case Term::Kind::Mul:
      return g.add(eval_term(g, t.lhs(), env), eval_term(g, t.rhs(), env));
    case Term::Kind::Inv:
      return g.neg(eval_term(g, t.arg(), env));
    case Term::Kind::Pow:
      return g.scale(eval_term(g, t.arg(), env), t.exponent());
  }
  return g.identity();
}

}  // namespace

bool eval_formula(const FinAbGroup& g, const Formula& f, const GroupEnv& env, std::int64_t cap) {
  switch (f.kind()) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Eq:
      return eval_term(g, f.lhs_term(), env) == eval_term(g, f.rhs_term(), env);
    case Formula::Kind::Leq:
      // Trivial preorder: g <= h for all g, h.
      (void)eval_term(g, f.lhs_term(), env);
      (void)eval_term(g, f.rhs_term(), env);
      return true;
    case Formula::Kind::Pn:
      return is_nth_power(g, eval_term(g, f.pn_arg(), env), f.pn_index());
    case Formula::Kind::Not:
      return !eval_formula(g, f.arg(), env, cap);
    case Formula::Kind::And:
      return eval_formula(g, f.lhs(), env, cap) && eval_formula(g, f.rhs(), env, cap);
    case Formula::Kind::Or:
      return eval_formula(g, f.lhs(), env, cap) || eval_formula(g, f.rhs(), env, cap);
    case Formula::Kind::Implies:
      return !eval_formula(g, f.lhs(), env, cap) || eval_formula(g, f.rhs(), env, cap);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool is_exists = f.kind() == Formula::Kind::Exists;
      if (g.order() > cap)
        throw CapError("group order exceeds the element cap for quantification");
      GroupEnv inner = env;
      for (std::int64_t i = 0; i < g.order(); ++i) {
        inner[f.quant_var()] = g.element_at(i);
        bool v = eval_formula(g, f.body(), inner, cap);
        if (is_exists && v) return true;
        if (!is_exists && !v) return false;
      }
      return !is_exists;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Structure computation
// ---------------------------------------------------------------------------

namespace {

using Op = std::function<std::int64_t(std::int64_t, std::int64_t)>;

std::int64_t pow_op(const Op& op, std::int64_t id, std::int64_t g, std::int64_t e) {
  std::int64_t acc = id;
  std::int64_t base = g;
  while (e > 0) {
    if (e & 1) acc = op(acc, base);
    base = op(base, base);
    e >>= 1;
  }
  return acc;
}

// Basis of an abelian ell-group given as element indices. Picks, at every
// step, a coset of maximal order in S/<basis> and lifts it to a
// representative whose order equals the coset order.
struct SylowBasis {
  std::vector<std::int64_t> gens;
  std::vector<int> lambdas;  // gens[i] has order ell^lambdas[i], non-increasing
  std::unordered_map<std::int64_t, std::vector<std::int64_t>> coords;  // elem -> exponents
};

SylowBasis sylow_basis(const std::vector<std::int64_t>& sylow, std::int64_t ell, const Op& op,
                       std::int64_t id) {
  SylowBasis out;
  out.coords[id] = {};
  while (out.coords.size() < sylow.size()) {
    // Coset order of g modulo the current subgroup: least ell^t with
    // g^(ell^t) inside.
    std::int64_t best = -1;
    int best_t = -1;
    for (std::int64_t g : sylow) {
      if (out.coords.count(g)) continue;
      int t = 0;
      std::int64_t cur = g;
      while (!out.coords.count(cur)) {
        cur = pow_op(op, id, cur, ell);
        ++t;
      }
      if (t > best_t) {
        best_t = t;
        best = g;
      }
    }
    if (best < 0) throw EvalError("internal: ell-group basis search stalled");
    // Lift: some element of the coset best·<subgroup> has order exactly
    // ell^best_t; find it by scanning the coset.
    std::int64_t ell_pow = 1;
    for (int i = 0; i < best_t; ++i) ell_pow *= ell;
    std::int64_t chosen = -1;
    for (const auto& [s, cs] : out.coords) {
      std::int64_t h = op(best, s);
      if (pow_op(op, id, h, ell_pow) == id) {
        chosen = h;
        break;
      }
    }
    if (chosen < 0) throw EvalError("internal: no order-matching coset representative");
    // Extend the subgroup and the coordinate map.
    std::unordered_map<std::int64_t, std::vector<std::int64_t>> extended;
    extended.reserve(out.coords.size() * static_cast<std::size_t>(ell_pow));
    std::int64_t h_pow = id;
    for (std::int64_t t = 0; t < ell_pow; ++t) {
      for (const auto& [s, cs] : out.coords) {
        std::vector<std::int64_t> c = cs;
        c.push_back(t);
        extended[op(s, h_pow)] = std::move(c);
      }
      h_pow = op(h_pow, chosen);
    }
    if (extended.size() != out.coords.size() * static_cast<std::size_t>(ell_pow))
      throw EvalError("internal: basis extension is not direct");
    out.coords = std::move(extended);
    out.gens.push_back(chosen);
    out.lambdas.push_back(best_t);
  }
  return out;
}

// Conjugate-partition type from the counts #{g : g^(ell^t) = id}; used as an
// independent cross-check on the basis computation.
std::vector<int> type_by_counting(const std::vector<std::int64_t>& sylow, std::int64_t ell,
                                  const Op& op, std::int64_t id) {
  std::vector<int> counts_log;  // log_ell of cumulative counts
  int t = 0;
  while (true) {
    std::int64_t ell_pow = 1;
    for (int i = 0; i < t; ++i) ell_pow *= ell;
    std::int64_t count = 0;
    for (std::int64_t g : sylow)
      if (pow_op(op, id, g, ell_pow) == id) ++count;
    int lg = 0;
    std::int64_t c = count;
    while (c > 1) {
      if (c % ell != 0) throw EvalError("internal: kernel count is not an ell power");
      c /= ell;
      ++lg;
    }
    counts_log.push_back(lg);
    if (count == static_cast<std::int64_t>(sylow.size())) break;
    ++t;
    if (t > 62) throw EvalError("internal: runaway ell-type computation");
  }
  std::vector<int> lambdas;  // multiset of cyclic orders, desc
  for (std::size_t j = 1; j < counts_log.size(); ++j) {
    int new_at_j = counts_log[j] - counts_log[j - 1];  // #{i : lambda_i >= j}
    while (static_cast<int>(lambdas.size()) < new_at_j) lambdas.push_back(0);
    for (int i = 0; i < new_at_j; ++i) ++lambdas[i];
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<int>());
  return lambdas;
}

// Extended Euclid: returns g = gcd(a, b) and x with a·x ≡ g (mod b).
std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = a % m, r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 && old_r != -1) throw EvalError("internal: modular inverse does not exist");
  if (old_r == -1) old_s = -old_s;
  return ((old_s % m) + m) % m;
}

std::int64_t crt_pair(std::int64_t a1, std::int64_t m1, std::int64_t a2, std::int64_t m2) {
  // Coprime moduli. Returns x mod m1·m2 with x ≡ a1 (m1), x ≡ a2 (m2).
  if (m2 == 1) return a1;
  std::int64_t m1_inv = mod_inverse(m1 % m2, m2);
  __int128 diff = ((a2 - a1) % m2 + m2) % m2;
  __int128 k = (diff * m1_inv) % m2;
  return static_cast<std::int64_t>((a1 + k * m1) % (m1 * m2));
}

}  // namespace

AbelianStructure abelian_structure(std::int64_t n, const Op& op, std::int64_t identity) {
  if (n < 1) throw EvalError("group size must be >= 1");
  if (op(identity, identity) != identity) throw EvalError("identity is not idempotent");
  if (n == 1) return {FinAbGroup::trivial(), {GroupElem{{}}}};

  auto primes = factorize(n);
  // CRT idempotent exponents: e_ell ≡ 1 mod ell^a, ≡ 0 mod n/ell^a.
  struct PrimePart {
    std::int64_t ell;
    std::int64_t e_exp;  // the projection exponent
    std::vector<std::int64_t> sylow;
    SylowBasis basis;
  };
  std::vector<PrimePart> parts;
  for (const auto& [ell, a] : primes) {
    std::int64_t ell_a = ipow(ell, a);
    std::int64_t rest = n / ell_a;
    // e = rest * inv(rest mod ell_a) gives e ≡ 1 mod ell_a and e ≡ 0 mod
    // rest, so g -> g^e projects onto the ell-Sylow subgroup.
    std::int64_t inv = mod_inverse(rest % ell_a, ell_a);
    std::int64_t e_exp =
        static_cast<std::int64_t>((static_cast<__int128>(rest) * inv) % n);
    PrimePart part;
    part.ell = ell;
    part.e_exp = e_exp;
    std::set<std::int64_t> seen;
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t proj = pow_op(op, identity, i, e_exp);
      if (seen.insert(proj).second) part.sylow.push_back(proj);
    }
    if (static_cast<std::int64_t>(part.sylow.size()) != ell_a)
      throw EvalError("input is not an abelian group of the declared order");
    part.basis = sylow_basis(part.sylow, ell, op, identity);
    // Cross-check against the counting method.
    std::vector<int> counted = type_by_counting(part.sylow, ell, op, identity);
    if (counted != part.basis.lambdas)
      throw EvalError("internal: basis type disagrees with kernel counting");
    parts.push_back(std::move(part));
  }

  std::size_t rank = 0;
  for (const auto& part : parts) rank = std::max(rank, part.basis.lambdas.size());

  // Slot s (0 = largest) gets ell^lambda_s from every prime.
  std::vector<std::int64_t> slot_mod(rank, 1);
  for (const auto& part : parts)
    for (std::size_t s = 0; s < part.basis.lambdas.size(); ++s)
      slot_mod[s] *= ipow(part.ell, part.basis.lambdas[s]);

  std::vector<std::int64_t> ascending(slot_mod.rbegin(), slot_mod.rend());
  FinAbGroup group = FinAbGroup::from_factors(ascending);
  if (group.order() != n) throw EvalError("input is not an abelian group of the declared order");

  AbelianStructure out{group, {}};
  out.coords.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    // Per-prime coordinates of the projection, then CRT per slot.
    std::vector<std::int64_t> slot_val(rank, 0), slot_done(rank, 1);
    for (const auto& part : parts) {
      std::int64_t proj = pow_op(op, identity, i, part.e_exp);
      auto it = part.basis.coords.find(proj);
      if (it == part.basis.coords.end())
        throw EvalError("internal: projection escaped its Sylow subgroup");
      for (std::size_t s = 0; s < part.basis.lambdas.size(); ++s) {
        std::int64_t m = ipow(part.ell, part.basis.lambdas[s]);
        std::int64_t a = it->second[s] % m;
        slot_val[s] = crt_pair(slot_val[s], slot_done[s], a, m);
        slot_done[s] *= m;
      }
    }
    // Slots are descending; coordinates ascend with the factors.
    GroupElem e = group.identity();
    for (std::size_t s = 0; s < rank; ++s) e.r[rank - 1 - s] = slot_val[s];
    if (!group.is_valid(e)) throw EvalError("internal: coordinate out of range");
    out.coords.push_back(std::move(e));
  }
  return out;
}

FinAbGroup invariant_factors_of(const std::vector<std::vector<std::int64_t>>& table) {
  const std::int64_t n = static_cast<std::int64_t>(table.size());
  if (n == 0) throw EvalError("empty multiplication table");
  if (n > 512) throw CapError("table validation capped at 512 elements");
  for (const auto& row : table) {
    if (static_cast<std::int64_t>(row.size()) != n)
      throw EvalError("multiplication table is not square");
    for (std::int64_t v : row)
      if (v < 0 || v >= n) throw EvalError("table entry out of range");
  }
  // Identity.
  std::int64_t id = -1;
  for (std::int64_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::int64_t j = 0; j < n && ok; ++j) ok = table[e][j] == j && table[j][e] == j;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw EvalError("input is not a group: no identity");
  // Commutativity.
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j)
      if (table[i][j] != table[j][i]) throw EvalError("input is not abelian");
  // Inverses.
  for (std::int64_t i = 0; i < n; ++i) {
    bool has = false;
    for (std::int64_t j = 0; j < n && !has; ++j) has = table[i][j] == id;
    if (!has) throw EvalError("input is not a group: missing inverse");
  }
  // Associativity.
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      for (std::int64_t k = 0; k < n; ++k)
        if (table[table[i][j]][k] != table[i][table[j][k]])
          throw EvalError("input is not a group: associativity fails");

  auto op = [&table](std::int64_t a, std::int64_t b) { return table[a][b]; };
  return abelian_structure(n, op, id).group;
}

bool iso_check(const FinAbGroup& a, const FinAbGroup& b) { return a.factors() == b.factors(); }

}  // namespace fbp
