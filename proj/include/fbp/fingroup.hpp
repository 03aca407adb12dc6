#ifndef FBP_FINGROUP_HPP
#define FBP_FINGROUP_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fbp/errors.hpp"
#include "fbp/formula.hpp"

namespace fbp {

inline constexpr std::int64_t kDefaultElementCap = 1'000'000;

/// Element of a finite abelian group in invariant-factor coordinates:
/// a residue tuple with 0 <= r[i] < d_i.
struct GroupElem {
  std::vector<std::int64_t> r;

  bool operator==(const GroupElem& o) const { return r == o.r; }
  bool operator!=(const GroupElem& o) const { return r != o.r; }
  bool operator<(const GroupElem& o) const { return r < o.r; }
};

/// Finite abelian group given by invariant factors d_1 | d_2 | ... | d_r,
/// each >= 2. The trivial group has an empty factor list. Canonical, so
/// isomorphism testing is factor-list equality.
class FinAbGroup {
public:
  static FinAbGroup trivial() { return FinAbGroup({}); }
  static FinAbGroup cyclic(std::int64_t d);
  /// Normalizes an arbitrary finite product of cyclic groups (factors >= 1,
  /// ones dropped) to the invariant-factor chain, e.g. [2,3] -> [6].
  static FinAbGroup from_factors(std::vector<std::int64_t> factors);

  const std::vector<std::int64_t>& factors() const { return factors_; }
  std::int64_t order() const { return order_; }
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }
  std::size_t rank() const { return factors_.size(); }

  GroupElem identity() const { return GroupElem{std::vector<std::int64_t>(factors_.size(), 0)}; }
  GroupElem add(const GroupElem& a, const GroupElem& b) const;
  GroupElem neg(const GroupElem& a) const;
  GroupElem scale(const GroupElem& a, std::int64_t n) const;
  bool is_valid(const GroupElem& a) const;

  std::int64_t index_of(const GroupElem& a) const;
  GroupElem element_at(std::int64_t index) const;
  std::string to_string(const GroupElem& a) const;

  bool operator==(const FinAbGroup& o) const { return factors_ == o.factors_; }

private:
  explicit FinAbGroup(std::vector<std::int64_t> factors);
  std::vector<std::int64_t> factors_;
  std::int64_t order_ = 1;
};

/// Group literals: "Z/6", "Z/2xZ/4", "Z/1".
FinAbGroup parse_group(const std::string& text);
std::string group_to_string(const FinAbGroup& g);

/// All |G| elements in lexicographic order. Throws CapError above `cap`.
std::vector<GroupElem> enumerate(const FinAbGroup& g, std::int64_t cap = kDefaultElementCap);

/// Least n >= 1 with n·g = 0; always divides the exponent.
std::int64_t order_of(const FinAbGroup& g, const GroupElem& a);

/// Whether a = n·h for some h; componentwise criterion gcd(n, d_i) | a_i.
bool is_nth_power(const FinAbGroup& g, const GroupElem& a, std::int64_t n);

using GroupEnv = std::map<std::string, GroupElem>;

/// Tarski semantics over G with the trivial preorder: every `<=` atom holds,
/// tau denotes the identity, P_n is the n-th power subgroup, quantifiers
/// range over the whole group.
bool eval_formula(const FinAbGroup& g, const Formula& f, const GroupEnv& env,
                  std::int64_t cap = kDefaultElementCap);

/// Invariant factors of a finite abelian group presented by a full
/// multiplication table (indices into [0, n)). Validates the table: throws
/// EvalError when the input is not a group or not abelian.
FinAbGroup invariant_factors_of(const std::vector<std::vector<std::int64_t>>& table);

/// Structure computation for a group presented as indices [0, n) with a
/// multiplication closure. `coords[i]` realizes an explicit isomorphism onto
/// the invariant-factor model.
struct AbelianStructure {
  FinAbGroup group;
  std::vector<GroupElem> coords;
};
AbelianStructure abelian_structure(std::int64_t n,
                                   const std::function<std::int64_t(std::int64_t, std::int64_t)>& op,
                                   std::int64_t identity);

/// Isomorphism test: equality of invariant factors.
bool iso_check(const FinAbGroup& a, const FinAbGroup& b);

}  // namespace fbp

#endif  // FBP_FINGROUP_HPP
