#ifndef FBP_TH_DECIDE_HPP
#define FBP_TH_DECIDE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fbp/additive.hpp"
#include "fbp/fingroup.hpp"
#include "fbp/formula.hpp"

namespace fbp {

inline constexpr std::int64_t kDefaultWorkCap = 1'000'000;

/// Element of the standard model H x Z.
struct ProductElem {
  GroupElem h;
  std::int64_t z = 0;

  bool operator==(const ProductElem& o) const { return h == o.h && z == o.z; }
};

/// The standard model of T_H: G = H x Z with preorder (h,z) <= (h',z') iff
/// z <= z', and tau interpreted as (tau_h, tau_z) = (0_H, 1). The tau fields
/// are mutable so tests can present deliberately broken models to
/// check_axioms.
struct FbPModel {
  FinAbGroup H;
  GroupElem tau_h;
  std::int64_t tau_z = 1;

  static FbPModel standard(FinAbGroup group) {
    FbPModel m{std::move(group), {}, 1};
    m.tau_h = m.H.identity();
    return m;
  }

  ProductElem tau() const { return {tau_h, tau_z}; }
};

struct DecideStats {
  std::uint64_t h_assignments = 0;   // group elements enumerated at quantifiers
  std::size_t additive_nodes = 0;    // size of the translated Presburger sentence
};

/// Splits each product variable into an enumerated H-part and a Presburger
/// Z-variable: Eq splits into an H-equation (decided during translation) and
/// a Z-equation, Leq reads only Z-parts, P_n splits into the n-th power
/// criterion in H and div[n] in Z, tau becomes (tau_h, tau_z). Quantifiers
/// expand over H around a Z-quantifier.
AdditiveFormula translate_TH(const FbPModel& model, const Formula& f, DecideStats* stats = nullptr,
                             std::int64_t work_cap = kDefaultWorkCap);

/// Truth of a sentence in H x Z; the translated sentence goes to the
/// Presburger engine. Throws EvalError on free variables, CapError when the
/// H-enumeration exceeds `work_cap`.
bool decide_TH(const FbPModel& model, const Formula& f, DecideStats* stats = nullptr,
               std::int64_t work_cap = kDefaultWorkCap);

struct AxiomCheck {
  std::string id;
  std::string description;
  bool pass = true;
  std::vector<std::string> witnesses;
};

/// Checks the six preordered-group-with-torsion axioms on the standard
/// model, windowed where the axiom quantifies over the infinite factor.
std::vector<AxiomCheck> check_axioms(const FbPModel& model, std::int64_t window = 5);

/// Relativized evaluation: quantifiers range over H x [-bound, bound].
/// Testing oracle for decide_TH.
bool eval_bounded(const FbPModel& model, const Formula& f, std::int64_t bound);

}  // namespace fbp

#endif  // FBP_TH_DECIDE_HPP
