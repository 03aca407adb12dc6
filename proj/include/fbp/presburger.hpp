#ifndef FBP_PRESBURGER_HPP
#define FBP_PRESBURGER_HPP

#include <map>
#include <string>

#include "fbp/additive.hpp"

namespace fbp::presburger {

using Assignment = std::map<std::string, Int>;

/// Cooper quantifier elimination. Total; the output is quantifier-free,
/// equivalent over the integers, and mentions no new free variables.
AdditiveFormula qe(const AdditiveFormula& f);

/// Truth value of a sentence in (Z, +, <=, 1, div). Rejects formulas with
/// free variables.
bool decide(const AdditiveFormula& f);

/// Standard semantics of a quantifier-free formula under an assignment.
/// Throws EvalError on quantifiers or missing variables.
bool eval(const AdditiveFormula& f, const Assignment& assignment);

}  // namespace fbp::presburger

#endif  // FBP_PRESBURGER_HPP
