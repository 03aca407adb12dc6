#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <nlohmann/json.hpp>

#include "fbp/padic_reports.hpp"
#include "fbp/suite.hpp"

using namespace fbp;
using namespace fbp::padic;

namespace {

FieldSpec make_spec(i64 p, int f, int e, int k) {
  FieldSpec s;
  s.p = p;
  s.u = least_irreducible(p, f);
  s.E.assign(static_cast<std::size_t>(e) + 1, UPoly{0});
  s.E[0] = UPoly{-p};
  s.E[static_cast<std::size_t>(e)] = UPoly{1};
  s.k = k;
  return s;
}

std::map<std::string, Check> by_ref(const std::vector<Check>& checks) {
  std::map<std::string, Check> out;
  for (const auto& c : checks) out[c.paper_ref] = c;
  return out;
}

}  // namespace

TEST_CASE("torsion and k0 reports") {
  GStruct g = build_G(make_spec(3, 1, 1, 1));
  auto t = by_ref(torsion_report(g));
  CHECK(t.at("torsion-order-formula").status == CheckStatus::Pass);

  GStruct g0 = build_G(make_spec(2, 2, 1, 0));
  auto k0 = by_ref(k0_report(g0));
  CHECK(k0.at("k0-exact-sequence").status == CheckStatus::Pass);
  // k > 0 produces no k0 entry.
  CHECK(k0_report(g).empty());
}

TEST_CASE("digit report passes on small specs") {
  for (auto spec : {make_spec(3, 1, 1, 1), make_spec(2, 1, 2, 1), make_spec(2, 2, 1, 0)}) {
    GStruct g = build_G(spec);
    for (const Check& c : digit_report(g)) {
      INFO(spec.name(), " / ", c.claim);
      CHECK(c.status == CheckStatus::Pass);
    }
  }
}

TEST_CASE("theta checks and the valuation-condition comparison") {
  GStruct g = build_G(make_spec(3, 1, 1, 0));
  ThetaTable t = theta(g);
  for (const Check& c : theta_checks(g, t)) CHECK(c.status == CheckStatus::Pass);

  auto lemma = by_ref(lemma_theta_report(g, t));
  CHECK(lemma.at("theta-valuation-containment").status == CheckStatus::Pass);
  const Check& eq = lemma.at("theta-valuation-equality");
  CHECK(eq.status == CheckStatus::Reported);
  // F_3 has two nonzero residues, so equality fails with a counterexample
  // pairing unit class 1 with the residue 2.
  REQUIRE(eq.witnesses.size() >= 2);
  CHECK(eq.witnesses[0].find("proper containment") != std::string::npos);
  CHECK(eq.witnesses[1].find("alpha=2") != std::string::npos);
}

TEST_CASE("theta equality degenerates to true over F_2") {
  GStruct g = build_G(make_spec(2, 1, 1, 0));
  ThetaTable t = theta(g);
  auto lemma = by_ref(lemma_theta_report(g, t));
  CHECK(lemma.at("theta-valuation-equality").status == CheckStatus::Reported);
  CHECK(lemma.at("theta-valuation-equality").witnesses[0].find("verdict: equal") !=
        std::string::npos);
}

TEST_CASE("interpretation report") {
  for (auto spec : {make_spec(3, 1, 1, 1), make_spec(2, 1, 2, 1)}) {
    GStruct g = build_G(spec);
    ThetaTable t = theta(g);
    Interpretation interp = rep_set(g);
    auto checks = by_ref(interpretation_report(g, t, interp));
    CHECK(checks.at("interpretation-count").status == CheckStatus::Pass);
    CHECK(checks.at("interpretation-injective").status == CheckStatus::Pass);
    CHECK(checks.at("interpretation-identity").status == CheckStatus::Pass);
    CHECK(checks.at("interpretation-distributivity").status == CheckStatus::Pass);
    CHECK(checks.at("interpretation-product").status == CheckStatus::Pass);
    CHECK(checks.at("theta-plus-containment").status == CheckStatus::Pass);
    CHECK(checks.at("theta-plus-equality").status == CheckStatus::Reported);
  }
}

TEST_CASE("rep_set structure on Z/9") {
  GStruct g = build_G(make_spec(3, 1, 1, 1));
  Interpretation interp = rep_set(g);
  CHECK(interp.zero_rank == g.ring->rank(g.ring->zero()));
  // rho of the class of 1 is (0, unit 1); of pi is (1, unit 1).
  i64 one_rank = g.ring->rank(g.ring->one());
  CHECK(interp.rho[static_cast<std::size_t>(one_rank)] == GElem{0, g.unit_one});
  i64 pi_rank = g.ring->rank(g.ring->canonical(g.ring->pi()));
  CHECK(interp.rho[static_cast<std::size_t>(pi_rank)].m == 1);
  // oplus/odot mirror ring arithmetic: [5] = [8] + [8*pi] decomposition.
  i64 five = g.ring->rank(g.ring->from_int(5));
  i64 eight = g.ring->rank(g.ring->from_int(8));
  i64 late = g.ring->rank(g.ring->canonical(g.ring->mul(g.ring->from_int(8), g.ring->pi())));
  CHECK(interp.oplus(g, eight, late) == five);
}

TEST_CASE("valuation predicates") {
  for (auto spec : {make_spec(3, 1, 1, 1), make_spec(2, 1, 2, 1), make_spec(2, 2, 2, 0)}) {
    GStruct g = build_G(spec);
    // Direct examples: m = 1 is in the maximal ideal and a uniformizer,
    // m = 0 is neither.
    CHECK(in_max_ideal(g, GElem{1, g.unit_one}));
    CHECK(is_uniformizer(g, GElem{1, g.unit_one}));
    CHECK_FALSE(in_max_ideal(g, GElem{0, g.unit_one}));
    CHECK_FALSE(is_uniformizer(g, GElem{2, g.unit_one}));
    for (const Check& c : predicate_report(g)) {
      INFO(spec.name(), " / ", c.claim);
      CHECK(c.status == CheckStatus::Pass);
    }
  }
}

TEST_CASE("th axioms over the unit group") {
  GStruct g = build_G(make_spec(3, 1, 1, 1));
  auto checks = by_ref(th_axioms_check(g));
  for (const char* id : {"th-axiom-i", "th-axiom-ii", "th-axiom-iii", "th-axiom-iv",
                         "th-axiom-v", "th-axiom-vi", "g-torsion-type", "g-torsion-membership",
                         "g-quotient-z"})
    CHECK(checks.at(id).status == CheckStatus::Pass);
  // e = 1: the exponent claim is a hard pass.
  CHECK(checks.at("torsion-exponent-claim").status == CheckStatus::Pass);

  // H is Z/6 here.
  CHECK(g.units.group.factors() == std::vector<i64>{6});
}

TEST_CASE("exponent claim is informational for e > 1 and fails empirically at p = 2") {
  GStruct g = build_G(make_spec(2, 1, 2, 1));
  auto checks = by_ref(th_axioms_check(g));
  const Check& c = checks.at("torsion-exponent-claim");
  CHECK(c.status == CheckStatus::Reported);
  // Exponent 4 does not divide (2-1)*2 = 2.
  CHECK(c.witnesses[0].find("divides: no") != std::string::npos);
}

TEST_CASE("suite runs the default grid deterministically") {
  SuiteCaps caps;
  std::vector<FieldSpec> grid = {make_spec(3, 1, 1, 0), make_spec(2, 1, 1, 1)};
  nlohmann::json a = run_suite(grid, caps);
  nlohmann::json b = run_suite(grid, caps);
  CHECK(a.dump() == b.dump());
  CHECK(a["schema"] == 1);
  CHECK(a["results"].size() == 2);
  CHECK_FALSE(suite_has_failure(a));
}

TEST_CASE("suite records per-spec errors and continues") {
  FieldSpec red = make_spec(3, 2, 1, 0);
  red.u = {-1, 0, 1};  // reducible
  std::vector<FieldSpec> grid = {red, make_spec(2, 1, 1, 0)};
  nlohmann::json doc = run_suite(grid, SuiteCaps{});
  REQUIRE(doc["results"].size() == 2);
  CHECK(doc["results"][0].contains("error"));
  CHECK(doc["results"][0]["error"].get<std::string>().find("reducible") != std::string::npos);
  CHECK(doc["results"][1].contains("checks"));
  // Empty grid.
  nlohmann::json empty = run_suite({}, SuiteCaps{});
  CHECK(empty["results"].empty());
  CHECK_FALSE(suite_has_failure(empty));
}

TEST_CASE("default grid shape") {
  auto grid = default_grid();
  CHECK(grid.size() == 24);
  for (const auto& s : grid) {
    CHECK((s.p == 2 || s.p == 3 || s.p == 5));
    CHECK((s.f() == 1 || s.f() == 2));
    CHECK((s.e() == 1 || s.e() == 2));
    CHECK((s.k == 0 || s.k == 1));
    // Every grid ring fits the default cap.
    i64 size = 1;
    for (int i = 0; i < s.N(); ++i) size *= s.q();
    CHECK(size <= kDefaultRingCap);
  }
}
