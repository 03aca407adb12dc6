// fbp — decision procedures for pre-ordered abelian groups of
// finite-by-Presburger type, and construction/verification of higher
// residue rings and multiplicative congruence groups of p-adic fields.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fbp/additive.hpp"
#include "fbp/errors.hpp"
#include "fbp/fingroup.hpp"
#include "fbp/formula.hpp"
#include "fbp/padic.hpp"
#include "fbp/padic_reports.hpp"
#include "fbp/presburger.hpp"
#include "fbp/report.hpp"
#include "fbp/suite.hpp"
#include "fbp/th_decide.hpp"

namespace {

using nlohmann::json;

struct Output {
  std::string path;  // empty = stdout

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text << "\n";
    } else {
      std::ofstream f(path);
      if (!f) throw fbp::InputError("cannot open output file '" + path + "'");
      f << text << "\n";
    }
  }

  void emit(const json& doc) const { emit(doc.dump(2)); }
};

fbp::padic::FieldSpec load_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw fbp::InputError("cannot open spec file '" + path + "'");
  json j;
  try {
    f >> j;
  } catch (const json::exception& ex) {
    throw fbp::InputError(std::string("spec file is not valid JSON: ") + ex.what());
  }
  return fbp::padic::FieldSpec::from_json(j);
}

bool any_fail(const std::vector<fbp::Check>& checks) {
  for (const auto& c : checks)
    if (c.status == fbp::CheckStatus::Fail) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-by-Presburger decision and p-adic congruence toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::int64_t element_cap = fbp::padic::kDefaultRingCap;
  if (const char* env = std::getenv("FBP_CAP_ELEMENTS")) {
    try {
      element_cap = std::stoll(env);
    } catch (...) {
      std::cerr << "invalid FBP_CAP_ELEMENTS value\n";
      return 2;
    }
  }
  std::int64_t work_cap = fbp::kDefaultWorkCap;
  std::int64_t lift_cap = fbp::padic::kDefaultLiftCap;
  std::string out_path;
  app.add_option("--out", out_path, "write the report to a file instead of stdout");
  app.add_option("--cap-elements", element_cap, "enumeration cap on group/ring elements");
  app.add_option("--cap-work", work_cap, "cap on H-assignments during translation");
  app.add_option("--cap-lift", lift_cap, "cap on exhaustive lift enumeration");

  // decide
  auto* decide_cmd = app.add_subcommand("decide", "decide a sentence over H x Z");
  std::string group_text = "Z/1";
  std::string sentence_text;
  decide_cmd->add_option("--group", group_text, "finite factor, e.g. Z/6 or Z/2xZ/4");
  decide_cmd->add_option("--sentence", sentence_text, "sentence in the group language")
      ->required();

  // qe
  auto* qe_cmd = app.add_subcommand("qe", "eliminate quantifiers from a Presburger formula");
  std::string qe_text;
  bool qe_json = false;
  qe_cmd->add_option("formula", qe_text, "formula in the additive surface syntax")->required();
  qe_cmd->add_flag("--json", qe_json, "emit a JSON document instead of plain text");

  // padic family
  auto* padic_cmd = app.add_subcommand("padic", "higher residue ring computations");
  padic_cmd->require_subcommand(1);
  std::string spec_path;
  bool check_lemma = false;
  auto* p_build = padic_cmd->add_subcommand("build", "construct the ring and report parameters");
  auto* p_torsion = padic_cmd->add_subcommand("torsion", "torsion (unit class) group structure");
  auto* p_theta = padic_cmd->add_subcommand("theta", "build and verify the Theta relation");
  p_theta->add_flag("--check-lemma", check_lemma, "compare against the valuation conditions");
  auto* p_interp = padic_cmd->add_subcommand("interpret", "interpretation of the residue ring");
  auto* p_axioms = padic_cmd->add_subcommand("axioms", "T_H axioms over the unit class group");
  auto* p_pred = padic_cmd->add_subcommand("predicates", "valuation membership predicates");
  for (auto* sub : {p_build, p_torsion, p_theta, p_interp, p_axioms, p_pred})
    sub->add_option("--spec", spec_path, "field spec JSON file")->required();

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "run the verification suite over a grid");
  std::string grid_path;
  suite_cmd->add_option("--grid", grid_path, "JSON array of field specs (default: builtin grid)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output out{out_path};
  fbp::SuiteCaps caps;
  caps.element_cap = element_cap;
  caps.lift_cap = lift_cap;

  try {
    if (decide_cmd->parsed()) {
      fbp::FinAbGroup H = fbp::parse_group(group_text);
      fbp::Formula f = fbp::parse_formula(sentence_text);
      fbp::DecideStats stats;
      bool result = fbp::decide_TH(fbp::FbPModel::standard(H), f, &stats, work_cap);
      out.emit(json{{"result", result},
                    {"translated_presburger_size", stats.additive_nodes},
                    {"h_assignments_explored", stats.h_assignments}});
      return 0;
    }

    if (qe_cmd->parsed()) {
      fbp::AdditiveFormula f = fbp::parse_additive(qe_text);
      fbp::AdditiveFormula eliminated = fbp::presburger::qe(f);
      if (qe_json) {
        out.emit(json{{"input", qe_text},
                      {"result", fbp::render(eliminated)},
                      {"ast", fbp::to_json(eliminated)}});
      } else {
        out.emit(fbp::render(eliminated));
      }
      return 0;
    }

    if (padic_cmd->parsed()) {
      fbp::padic::FieldSpec spec = load_spec(spec_path);

      if (p_build->parsed()) {
        fbp::padic::GStruct g = fbp::padic::build_G(spec, caps.element_cap);
        out.emit(json{{"spec", spec.to_json()},
                      {"q", g.ring->q()},
                      {"N", g.ring->level_n()},
                      {"size", g.ring->size()},
                      {"units", g.units.units.size()},
                      {"unit_invariant_factors", g.units.group.factors()},
                      {"v_p", g.p_class().m},
                      {"p_unit_witness",
                       g.ring->to_string(g.units.units[static_cast<std::size_t>(g.p_unit)])}});
        return 0;
      }

      if (p_torsion->parsed()) {
        fbp::padic::GStruct g = fbp::padic::build_G(spec, caps.element_cap);
        std::int64_t order = static_cast<std::int64_t>(g.units.units.size());
        std::int64_t formula_order = (g.ring->q() - 1);
        for (int i = 0; i < g.ring->level_n() - 1; ++i) formula_order *= g.ring->q();
        out.emit(json{{"order", order},
                      {"invariant_factors", g.units.group.factors()},
                      {"formula_order", formula_order},
                      {"status", order == formula_order ? "pass" : "fail"}});
        return order == formula_order ? 0 : 1;
      }

      // The remaining padic subcommands emit check lists.
      fbp::padic::GStruct g = fbp::padic::build_G(spec, caps.element_cap);
      std::vector<fbp::Check> checks;
      if (p_theta->parsed()) {
        fbp::padic::ThetaTable t = fbp::padic::theta(g, caps.lift_cap);
        checks = fbp::padic::theta_checks(g, t);
        if (check_lemma)
          for (auto& c : fbp::padic::lemma_theta_report(g, t)) checks.push_back(std::move(c));
        json doc{{"spec", spec.to_json()},
                 {"classes", t.N * static_cast<std::int64_t>(g.units.units.size())},
                 {"checks", fbp::checks_to_json(checks)}};
        out.emit(doc);
        return any_fail(checks) ? 1 : 0;
      }
      if (p_interp->parsed()) {
        fbp::padic::ThetaTable t = fbp::padic::theta(g, caps.lift_cap);
        fbp::padic::Interpretation interp = fbp::padic::rep_set(g);
        checks = fbp::padic::interpretation_report(g, t, interp, caps.distributivity_cap);
      } else if (p_axioms->parsed()) {
        checks = fbp::padic::th_axioms_check(g);
      } else if (p_pred->parsed()) {
        checks = fbp::padic::predicate_report(g);
      }
      out.emit(json{{"spec", spec.to_json()}, {"checks", fbp::checks_to_json(checks)}});
      return any_fail(checks) ? 1 : 0;
    }

    if (suite_cmd->parsed()) {
      std::vector<fbp::padic::FieldSpec> grid;
      if (grid_path.empty()) {
        grid = fbp::default_grid();
      } else {
        std::ifstream f(grid_path);
        if (!f) throw fbp::InputError("cannot open grid file '" + grid_path + "'");
        json j;
        try {
          f >> j;
        } catch (const json::exception& ex) {
          throw fbp::InputError(std::string("grid file is not valid JSON: ") + ex.what());
        }
        if (!j.is_array()) throw fbp::InputError("grid file must be a JSON array of specs");
        for (const auto& entry : j) grid.push_back(fbp::padic::FieldSpec::from_json(entry));
      }
      json doc = fbp::run_suite(grid, caps);
      out.emit(doc);
      return fbp::suite_has_failure(doc) ? 1 : 0;
    }
  } catch (const fbp::ParseError& ex) {
    std::cerr << "parse error: " << ex.what() << "\n";
    return 2;
  } catch (const fbp::InputError& ex) {
    std::cerr << "input error: " << ex.what() << "\n";
    return 2;
  } catch (const fbp::CapError& ex) {
    std::cerr << "cap exceeded: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
