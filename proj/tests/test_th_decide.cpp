#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fbp/presburger.hpp"
#include "fbp/th_decide.hpp"
#include "oracles.hpp"

using namespace fbp;

TEST_CASE("trivial H reduces to Presburger") {
  FbPModel m = FbPModel::standard(FinAbGroup::trivial());
  for (const Formula& f : testing::regression_sentences()) {
    bool via_product = decide_TH(m, f);
    bool via_presburger = presburger::decide(to_additive(f));
    CHECK(via_product == via_presburger);
  }
}

TEST_CASE("the involution of Z/2 is equivalent to 1") {
  FbPModel m = FbPModel::standard(parse_group("Z/2"));
  Formula f = parse_formula("E g. (!(g = 1) & g * g = 1 & g <= 1 & 1 <= g)");
  CHECK(decide_TH(m, f));
  // Oracle: bounded evaluation over Z/2 x [-3, 3].
  CHECK(eval_bounded(m, f, 3));
}

TEST_CASE("no square root of tau") {
  for (const char* lit : {"Z/1", "Z/2", "Z/6", "Z/2xZ/4"}) {
    FbPModel m = FbPModel::standard(parse_group(lit));
    Formula f = parse_formula("E g. g * g = t");
    CHECK_FALSE(decide_TH(m, f));
    // Presburger oracle on the translated sentence: exists z with 2z = 1.
    CHECK_FALSE(presburger::decide(to_additive(f)));
  }
}

TEST_CASE("torsion-only sentences ignore the Z range") {
  FbPModel m = FbPModel::standard(parse_group("Z/6"));
  // Purely torsion content: counting elements killed by squaring.
  Formula f = parse_formula("E g. (!(g = 1) & g * g = 1 & g <= 1 & 1 <= g)");
  for (std::int64_t B : {1, 2, 4, 8}) CHECK(eval_bounded(m, f, B) == decide_TH(m, f));
}

TEST_CASE("reflexivity at any bound") {
  FbPModel m = FbPModel::standard(parse_group("Z/2"));
  Formula f = parse_formula("A g. g <= g");
  for (std::int64_t B : {1, 2, 4}) CHECK(eval_bounded(m, f, B));
}

TEST_CASE("eval_bounded stabilization matches decide_TH") {
  // Range-guarded sentences: every quantifier confines its Z-part, so
  // bounded evaluation is exact once the window covers the guards and the
  // B-versus-2B stabilization always fires.
  testing::Rng rng(0x57ab1eull);
  for (const char* lit : {"Z/1", "Z/2", "Z/6"}) {
    FbPModel m = FbPModel::standard(parse_group(lit));
    for (int i = 0; i < 40; ++i) {
      Formula f = testing::random_mult_sentence_guarded(rng);
      bool b8 = eval_bounded(m, f, 8);
      bool b16 = eval_bounded(m, f, 16);
      REQUIRE(b8 == b16);
      CHECK(decide_TH(m, f) == b16);
    }
  }
}

TEST_CASE("decide_TH is invariant under isomorphic presentations of H") {
  FbPModel m1 = FbPModel::standard(FinAbGroup::from_factors({6}));
  FbPModel m2 = FbPModel::standard(FinAbGroup::from_factors({2, 3}));
  testing::Rng rng(0x15011ull);
  for (int i = 0; i < 40; ++i) {
    Formula f = testing::random_mult_sentence(rng);
    CHECK(decide_TH(m1, f) == decide_TH(m2, f));
  }
}

TEST_CASE("order-only sentences do not depend on H") {
  const char* sentences[] = {
      "A x. x <= x",
      "A x. A y. (x <= y | y <= x)",
      "E x. A y. x <= y",
      "A x. E y. (y <= x & !(x <= y))",
  };
  std::vector<FbPModel> models;
  for (const char* lit : {"Z/1", "Z/2", "Z/6", "Z/2xZ/4"})
    models.push_back(FbPModel::standard(parse_group(lit)));
  for (const char* s : sentences) {
    Formula f = parse_formula(s);
    bool first = decide_TH(models[0], f);
    for (const auto& m : models) CHECK(decide_TH(m, f) == first);
  }
}

TEST_CASE("boolean structure") {
  FbPModel m = FbPModel::standard(parse_group("Z/2"));
  testing::Rng rng(0xb001ull);
  for (int i = 0; i < 30; ++i) {
    Formula f = testing::random_mult_sentence(rng);
    bool v = decide_TH(m, f);
    CHECK(decide_TH(m, Formula::disj(f, Formula::negation(f))));
    CHECK_FALSE(decide_TH(m, Formula::conj(f, Formula::negation(f))));
    CHECK(decide_TH(m, Formula::negation(f)) == !v);
  }
}

TEST_CASE("free variables are rejected and caps enforced") {
  FbPModel m = FbPModel::standard(parse_group("Z/6"));
  CHECK_THROWS_AS(decide_TH(m, parse_formula("x = 1")), EvalError);
  CHECK_THROWS_AS(
      decide_TH(m, parse_formula("E a. E b. E c. a * b = c"), nullptr, /*work_cap=*/10),
      CapError);
}

TEST_CASE("stats are reported") {
  FbPModel m = FbPModel::standard(parse_group("Z/6"));
  DecideStats stats;
  decide_TH(m, parse_formula("E g. g * g = t"), &stats);
  CHECK(stats.h_assignments == 6);
  CHECK(stats.additive_nodes > 0);
}

TEST_CASE("check_axioms passes on standard models") {
  for (const char* lit : {"Z/1", "Z/2", "Z/6", "Z/2xZ/4"}) {
    FbPModel m = FbPModel::standard(parse_group(lit));
    for (const AxiomCheck& c : check_axioms(m)) {
      INFO(lit, " axiom ", c.id);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("a tampered tau fails axiom (i) with witness z=1") {
  FbPModel m = FbPModel::standard(parse_group("Z/6"));
  m.tau_z = 2;
  auto checks = check_axioms(m);
  REQUIRE(checks.size() == 6);
  CHECK(checks[0].id == "i");
  CHECK_FALSE(checks[0].pass);
  REQUIRE(!checks[0].witnesses.empty());
  CHECK(checks[0].witnesses[0].find("z=1") != std::string::npos);
  // Axiom (v) also notices: the class of tau is not minimal positive.
  CHECK_FALSE(checks[4].pass);
}
