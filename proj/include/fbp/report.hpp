#ifndef FBP_REPORT_HPP
#define FBP_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fbp {

/// Outcome of one verified claim. `Reported` marks comparison checks whose
/// verdict is informational and must not fail a run; `Error` marks entries
/// that could not be evaluated at all.
enum class CheckStatus { Pass, Fail, Reported, Error };

std::string to_string(CheckStatus s);

/// One row of the stable report schema {claim, paper_ref, status, witnesses}.
struct Check {
  std::string claim;
  std::string paper_ref;
  CheckStatus status = CheckStatus::Pass;
  std::vector<std::string> witnesses;
};

nlohmann::json to_json(const Check& c);
nlohmann::json checks_to_json(const std::vector<Check>& checks);

}  // namespace fbp

#endif  // FBP_REPORT_HPP
