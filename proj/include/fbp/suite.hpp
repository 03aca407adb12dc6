#ifndef FBP_SUITE_HPP
#define FBP_SUITE_HPP

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fbp/padic.hpp"
#include "fbp/padic_reports.hpp"

namespace fbp {

struct SuiteCaps {
  padic::i64 element_cap = padic::kDefaultRingCap;
  padic::i64 lift_cap = padic::kDefaultLiftCap;
  padic::i64 distributivity_cap = padic::kDefaultDistributivityCap;
};

/// The verification grid: p in {2,3,5}, f in {1,2}, e in {1,2}, k in {0,1},
/// with the least lexicographic irreducible u and E = x^e - p.
std::vector<padic::FieldSpec> default_grid();

/// Lexicographically least monic irreducible polynomial of the given degree
/// over F_p (coefficients low-to-high including the leading 1).
std::vector<padic::i64> least_irreducible(padic::i64 p, int degree);

/// All verification reports for one spec, in a fixed order.
std::vector<Check> run_spec_checks(const padic::FieldSpec& spec, const SuiteCaps& caps);

/// Aggregate document: {"schema": 1, "meta": {...}, "results": [...]} with
/// per-spec entries {"spec": ..., "checks": [...]} or {"spec": ...,
/// "error": "..."}. Fully deterministic; no timestamps.
nlohmann::json run_suite(const std::vector<padic::FieldSpec>& grid, const SuiteCaps& caps);

/// True when some check in the document has status "fail".
bool suite_has_failure(const nlohmann::json& doc);

}  // namespace fbp

#endif  // FBP_SUITE_HPP
