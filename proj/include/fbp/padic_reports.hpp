#ifndef FBP_PADIC_REPORTS_HPP
#define FBP_PADIC_REPORTS_HPP

#include <vector>

#include "fbp/padic.hpp"
#include "fbp/report.hpp"

namespace fbp::padic {

inline constexpr i64 kDefaultDistributivityCap = 10'000;

/// Torsion order against the closed formula (q-1)·q^(N-1) = (p^f-1)(p^f)^(ke),
/// by unit enumeration.
std::vector<Check> torsion_report(const GStruct& g);

/// k = 0 only: the torsion subgroup is cyclic of order q - 1 (the residue
/// field units, per the exact sequence at level 0).
std::vector<Check> k0_report(const GStruct& g);

/// Digit machinery: to_digits/from_digits mutually inverse over the whole
/// ring, mu of multiplicative order q - 1, valuation laws, v(p) = e.
std::vector<Check> digit_report(const GStruct& g);

/// Theta construction facts: single-valuedness below N, containment in the
/// valuation-condition set, and tail behaviour.
std::vector<Check> theta_checks(const GStruct& g, const ThetaTable& t);

/// Comparison of Theta with the pure valuation characterization
/// {(g,a) : (a = 0 ∧ v(g) >= N) ∨ (a != 0 ∧ v(g) <= N-1)}: containment is a
/// pass/fail check, set equality is informational with counterexamples.
std::vector<Check> lemma_theta_report(const GStruct& g, const ThetaTable& t);

/// The interpretation structure: R = nonzero digit expansions as constants
/// of G, the map rho, and the transported ring operations. Indexing is by
/// the ring rank of the expansion's value; `zero_rank` plays [pi^N].
struct Interpretation {
  std::vector<std::vector<int>> digits;  // rank -> digit vector
  std::vector<GElem> rho;                // rank -> G-class of the value (nonzero ranks)
  std::vector<int> vals;                 // rank -> valuation (N for the zero class)
  i64 zero_rank = 0;

  i64 oplus(const GStruct& g, i64 a, i64 b) const;
  i64 odot(const GStruct& g, i64 a, i64 b) const;
};
Interpretation rep_set(const GStruct& g);

/// |R| = q^N - 1, rho injectivity, unit/zero laws, the corrected
/// distributive identity (exhaustive up to `distributivity_cap`), agreement
/// of the rho-pullback of G-multiplication with the transported product,
/// and the Theta+ comparison.
std::vector<Check> interpretation_report(const GStruct& g, const ThetaTable& t,
                                         const Interpretation& interp,
                                         i64 distributivity_cap = kDefaultDistributivityCap);

/// Membership predicates from the uniformizer conditions, evaluated through
/// G-arithmetic: c^e·p^{-1} integral, and c^{-e}·p integral.
bool in_max_ideal(const GStruct& g, const GElem& c);
bool is_uniformizer(const GStruct& g, const GElem& c);

/// A monic polynomial x^d + c_1 x^(d-1) + ... + c_d given by its non-leading
/// coefficients as G-classes (std::nullopt encodes a zero coefficient,
/// which lies in every ideal). Eisenstein: all c_j in the maximal ideal and
/// c_d a uniformizer.
bool is_eisenstein(const GStruct& g, const std::vector<std::optional<GElem>>& coeffs);

/// Equivalences in_max_ideal(c) <=> v(c) >= 1 and is_uniformizer(c) <=>
/// v(c) = 1 over v(c) in [-2e, 2e] and all unit classes; v(p) = e; the
/// spec's own Eisenstein polynomial recognized.
std::vector<Check> predicate_report(const GStruct& g);

/// Runs the T_H axiom checks with H the computed unit-class group, verifies
/// the G-side structure (torsion type, ordered quotient, tau minimal
/// positive), and reports the exponent claim (pass/fail for e = 1,
/// informational for e > 1).
std::vector<Check> th_axioms_check(const GStruct& g);

}  // namespace fbp::padic

#endif  // FBP_PADIC_REPORTS_HPP
