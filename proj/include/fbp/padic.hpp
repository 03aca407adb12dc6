#ifndef FBP_PADIC_HPP
#define FBP_PADIC_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fbp/errors.hpp"
#include "fbp/fingroup.hpp"

namespace fbp::padic {

using i64 = std::int64_t;

inline constexpr i64 kDefaultRingCap = 100'000;   // max q^N
inline constexpr i64 kDefaultLiftCap = 1'000'000; // max q^(2N) for exhaustive lift checks

/// Polynomial over the unramified coefficient ring, as y-coefficients
/// low-to-high (length f once reduced).
using UPoly = std::vector<i64>;

/// A finite extension of Q_p at truncation level k:
///   p      prime,
///   u      monic over Z, irreducible mod p, degree f (unramified part),
///   E      monic over the unramified ring, Eisenstein, degree e,
///   k      level >= 0.
/// Coefficient lists run low-to-high and include the leading 1.
struct FieldSpec {
  i64 p = 0;
  std::vector<i64> u;
  std::vector<UPoly> E;
  int k = 0;
  std::optional<int> guard_exponent;

  int f() const { return static_cast<int>(u.size()) - 1; }
  int e() const { return static_cast<int>(E.size()) - 1; }
  i64 q() const;       // p^f
  int N() const { return k * e() + 1; }

  static FieldSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::string name() const;  // "p=3 f=1 e=1 k=1"
};

/// The ring O_K / pi^L·O_K for O_K = (unramified ring)[x]/(E), with x the
/// uniformizer. Elements are coefficient vectors a_0..a_{e-1} of UPolys
/// (layout: index j*f + i for x^j y^i), carried modulo p^guard_exp; the
/// canonical form truncates a_j modulo p^ceil((L-j)/e). For L = N = k·e+1
/// this is the higher residue ring O_{K,k} with its mixed-modulus
/// representation, and the ideal it quotients by is exactly
/// M_{K,k} = {a : v(a) > k·v(p)} = pi^N·O_K.
class Ring {
public:
  using Elem = std::vector<i64>;

  Ring(FieldSpec spec, int trunc_len, i64 element_cap = kDefaultRingCap);

  const FieldSpec& spec() const { return spec_; }
  i64 p() const { return p_; }
  int f() const { return f_; }
  int e() const { return e_; }
  i64 q() const { return q_; }
  int level_n() const { return N_; }   // k·e + 1, the public truncation
  int length() const { return L_; }    // this instance's truncation
  int guard_exp() const { return guard_exp_; }
  i64 size() const { return size_; }   // q^L
  int modulus_exp(int j) const { return mexp_[j]; }

  Elem zero() const { return Elem(static_cast<std::size_t>(e_) * f_, 0); }
  Elem one() const;
  Elem pi() const;
  Elem pi_pow(int m) const;  // 0 <= m <= L
  Elem p_elem() const;
  Elem from_int(i64 v) const;
  /// x-free element from raw integer y-coefficients (any degree; reduced
  /// modulo u and the guard precision).
  Elem from_upoly(const UPoly& raw) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, i64 n) const;  // n >= 0

  Elem canonical(const Elem& a) const;
  bool equal(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;

  /// pi-adic valuation of the class: values 0..L-1, or L meaning >= L.
  int val(const Elem& a) const;

  i64 rank(const Elem& canonical_elem) const;
  Elem unrank(i64 r) const;

  /// Exact division by pi^m; requires val >= m. The result is correct
  /// modulo pi^(L-m) (and the guard precision degrades gracefully).
  Elem div_by_pi(const Elem& a, int m) const;

  /// Truncation onto a shorter ring over the same field spec.
  Elem project_to(const Ring& target, const Elem& a) const;

  // Residue field F_q = (unramified ring)/(p): UPolys with entries in [0,p).
  UPoly residue_of(const Elem& a) const;
  UPoly mu_residue() const;              // fixed generator of F_q^*
  Elem teichmuller(const UPoly& residue) const;
  /// teich(i) = the Teichmüller lift of mu^i, i in [0, q-2].
  const Elem& teich(int i) const;
  Elem mu() const;

  /// Digit vector of length L: entry -1 is the zero digit, entry i >= 0
  /// stands for mu^i. Unique by construction; to_digits throws if the
  /// uniqueness scan ever disagrees.
  std::vector<int> to_digits(const Elem& a) const;
  Elem from_digits(const std::vector<int>& digits) const;

  std::string to_string(const Elem& a) const;

private:
  void validate();
  UPoly umul(const UPoly& a, const UPoly& b) const;  // mod (u, p^guard)
  UPoly uadd(const UPoly& a, const UPoly& b) const;
  UPoly uneg(const UPoly& a) const;
  UPoly uscale(const UPoly& a, i64 c) const;
  UPoly uinv_unit(const UPoly& a) const;             // inverse of a unit
  friend struct RingInternals;

  FieldSpec spec_;
  i64 p_;
  int f_, e_, k_;
  i64 q_;
  int N_, L_, guard_exp_;
  i64 guard_mod_;
  i64 size_;
  std::vector<int> mexp_;           // canonical p-exponents per x-power
  std::vector<i64> mmod_;           // p^mexp_
  std::vector<UPoly> ecoeff_;       // E's non-leading coefficients, reduced
  UPoly ec0_unit_;                  // E[0]/p, a unit of the unramified ring
  UPoly ec0_unit_inv_;
  std::vector<Elem> pi_pows_;
  mutable std::vector<Elem> teich_;  // filled lazily, mu^0..mu^(q-2)
  mutable UPoly mu_res_;
  mutable std::vector<int> dlog_;    // residue rank -> Teichmüller exponent
};

std::shared_ptr<const Ring> build_ring(const FieldSpec& spec, i64 element_cap = kDefaultRingCap);

/// Unit classes of O_{K,k} with their abelian-group structure and the
/// explicit coordinate isomorphism.
struct UnitGroup {
  FinAbGroup group = FinAbGroup::trivial();
  std::vector<Ring::Elem> units;   // canonical forms, ascending rank order
  std::vector<i64> rank_to_unit;   // ring rank -> unit index, or -1
  std::vector<GroupElem> coords;   // unit index -> invariant-factor tuple
};
UnitGroup unit_group(const Ring& ring);

/// Element of G_{K,k} = K*/(1 + M_{K,k}) in the fixed splitting by powers
/// of pi: the pair (v(g), unit class).
struct GElem {
  i64 m = 0;
  i64 unit = 0;  // index into UnitGroup::units
  bool operator==(const GElem& o) const { return m == o.m && unit == o.unit; }
};

/// G_{K,k} realized as Z x U with preorder by the Z part, v((m,u)) = m, and
/// tau = (1, class of 1). Carries the level-N ring, the pi^(2N) lift ring,
/// and the p = unit·pi^e factorization witness.
struct GStruct {
  FieldSpec spec;
  std::shared_ptr<const Ring> ring;   // length N
  std::shared_ptr<const Ring> lift;   // length 2N
  UnitGroup units;
  i64 unit_one = 0;                   // index of the class of 1
  i64 p_unit = 0;                     // index of the class of p/pi^e
  GElem tau() const { return {1, unit_one}; }

  i64 mul_units(i64 a, i64 b) const;
  i64 inv_unit(i64 a) const;
  GElem mul(const GElem& a, const GElem& b) const;
  GElem inv(const GElem& a) const;
  GElem p_class() const { return {spec.e(), p_unit}; }
  bool leq(const GElem& a, const GElem& b) const { return a.m <= b.m; }
};
GStruct build_G(const FieldSpec& spec, i64 element_cap = kDefaultRingCap);

/// The relation Theta_k as a finite table plus tail rule: for 0 <= m < N
/// and a unit class u, alpha[m][u] is the ring rank of the unique residue
/// paired with (m, u); every g with v(g) >= N pairs with 0 and nothing else,
/// and no g with v(g) < 0 appears.
struct ThetaTable {
  int N = 0;
  i64 zero_rank = 0;
  std::vector<std::vector<i64>> alpha;

  /// Membership test implementing the table + tail rule.
  bool holds(const GElem& g, i64 residue_rank) const {
    if (g.m < 0) return false;
    if (g.m >= N) return residue_rank == zero_rank;
    return alpha[static_cast<std::size_t>(g.m)][static_cast<std::size_t>(g.unit)] == residue_rank;
  }
};

/// Builds Theta from the definition: every lift z of a class (m, u) with
/// m < N factors as pi^m·w in the pi^(2N) lift ring, and the paired residue
/// is the truncation of that product. Verification enumerates raw lifts
/// exhaustively when q^(2N) <= lift_cap (deterministically sampled above)
/// and checks the table against them; throws EvalError on any mismatch.
ThetaTable theta(const GStruct& g, i64 lift_cap = kDefaultLiftCap);

}  // namespace fbp::padic

#endif  // FBP_PADIC_HPP
