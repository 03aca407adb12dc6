#include "fbp/report.hpp"

#include <nlohmann/json.hpp>

namespace fbp {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Reported:
      return "reported";
    case CheckStatus::Error:
      return "error";
  }
  return "error";
}

nlohmann::json to_json(const Check& c) {
  return nlohmann::json{{"claim", c.claim},
                        {"paper_ref", c.paper_ref},
                        {"status", to_string(c.status)},
                        {"witnesses", c.witnesses}};
}

nlohmann::json checks_to_json(const std::vector<Check>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) arr.push_back(to_json(c));
  return arr;
}

}  // namespace fbp
