#include "fbp/suite.hpp"

#include <nlohmann/json.hpp>

namespace fbp {

using padic::FieldSpec;
using padic::i64;

std::vector<i64> least_irreducible(i64 p, int degree) {
  if (degree == 1) return {0, 1};  // y itself
  auto poly_mod = [p](std::vector<i64> a, const std::vector<i64>& b) {
    int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
      i64 t = a.back();
      int shift = static_cast<int>(a.size()) - 1 - db;
      if (t != 0)
        for (int i = 0; i <= db; ++i) {
          i64& slot = a[static_cast<std::size_t>(shift + i)];
          slot = ((slot - t * b[static_cast<std::size_t>(i)]) % p + p) % p;
        }
      a.pop_back();
    }
    return a;
  };
  i64 count = 1;
  for (int i = 0; i < degree; ++i) count *= p;
  for (i64 idx = 0; idx < count; ++idx) {
    std::vector<i64> cand(static_cast<std::size_t>(degree) + 1, 0);
    i64 t = idx;
    for (int i = degree - 1; i >= 0; --i) {
      // Lexicographic by (c_{d-1}, ..., c_0): high coefficients vary slowest.
      cand[static_cast<std::size_t>(i)] = t % p;
      t /= p;
    }
    cand[static_cast<std::size_t>(degree)] = 1;
    bool irreducible = true;
    for (int d = 1; 2 * d <= degree && irreducible; ++d) {
      i64 divisors = 1;
      for (int i = 0; i < d; ++i) divisors *= p;
      for (i64 j = 0; j < divisors && irreducible; ++j) {
        std::vector<i64> div(static_cast<std::size_t>(d) + 1, 0);
        i64 s = j;
        for (int i = 0; i < d; ++i) {
          div[static_cast<std::size_t>(i)] = s % p;
          s /= p;
        }
        div[static_cast<std::size_t>(d)] = 1;
        std::vector<i64> rem = poly_mod(cand, div);
        bool zero = true;
        for (i64 c : rem)
          if (c != 0) zero = false;
        if (zero) irreducible = false;
      }
    }
    if (irreducible) return cand;
  }
  throw EvalError("internal: no irreducible polynomial found");
}

std::vector<FieldSpec> default_grid() {
  std::vector<FieldSpec> grid;
  for (i64 p : {2, 3, 5})
    for (int f : {1, 2})
      for (int e : {1, 2})
        for (int k : {0, 1}) {
          FieldSpec s;
          s.p = p;
          s.u = least_irreducible(p, f);
          s.E.assign(static_cast<std::size_t>(e) + 1, padic::UPoly{0});
          s.E[0] = padic::UPoly{-p};
          s.E[static_cast<std::size_t>(e)] = padic::UPoly{1};
          s.k = k;
          grid.push_back(std::move(s));
        }
  return grid;
}

std::vector<Check> run_spec_checks(const FieldSpec& spec, const SuiteCaps& caps) {
  padic::GStruct g = padic::build_G(spec, caps.element_cap);
  padic::ThetaTable t = padic::theta(g, caps.lift_cap);
  padic::Interpretation interp = padic::rep_set(g);

  std::vector<Check> checks;
  auto append = [&checks](std::vector<Check> more) {
    for (auto& c : more) checks.push_back(std::move(c));
  };
  append(padic::torsion_report(g));
  append(padic::k0_report(g));
  append(padic::digit_report(g));
  append(padic::theta_checks(g, t));
  append(padic::lemma_theta_report(g, t));
  append(padic::interpretation_report(g, t, interp, caps.distributivity_cap));
  append(padic::predicate_report(g));
  append(padic::th_axioms_check(g));
  return checks;
}

nlohmann::json run_suite(const std::vector<FieldSpec>& grid, const SuiteCaps& caps) {
  nlohmann::json doc;
  doc["schema"] = 1;
  doc["meta"] = {{"tool", "fbp"}, {"version", "0.1.0"}, {"grid_size", grid.size()}};
  nlohmann::json results = nlohmann::json::array();
  for (const FieldSpec& spec : grid) {
    nlohmann::json entry;
    entry["spec"] = spec.to_json();
    entry["name"] = spec.name();
    try {
      entry["checks"] = checks_to_json(run_spec_checks(spec, caps));
    } catch (const std::exception& ex) {
      entry["error"] = ex.what();
    }
    results.push_back(std::move(entry));
  }
  doc["results"] = std::move(results);
  return doc;
}

bool suite_has_failure(const nlohmann::json& doc) {
  if (!doc.contains("results")) return false;
  for (const auto& entry : doc["results"]) {
    if (!entry.contains("checks")) continue;
    for (const auto& c : entry["checks"])
      if (c.contains("status") && c["status"] == "fail") return true;
  }
  return false;
}

}  // namespace fbp
