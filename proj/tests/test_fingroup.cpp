#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "fbp/fingroup.hpp"
#include "oracles.hpp"

using namespace fbp;

namespace {

// Units of Z/m under multiplication, as a table (test fixture).
std::vector<std::vector<std::int64_t>> units_mod_table(std::int64_t m) {
  std::vector<std::int64_t> units;
  for (std::int64_t a = 1; a < m; ++a)
    if (std::gcd(a, m) == 1) units.push_back(a);
  std::vector<std::vector<std::int64_t>> t(units.size(), std::vector<std::int64_t>(units.size()));
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = 0; j < units.size(); ++j) {
      std::int64_t prod = units[i] * units[j] % m;
      t[i][j] = static_cast<std::int64_t>(
          std::find(units.begin(), units.end(), prod) - units.begin());
    }
  return t;
}

}  // namespace

TEST_CASE("enumerate") {
  FinAbGroup z2 = parse_group("Z/2");
  auto elems = enumerate(z2);
  REQUIRE(elems.size() == 2);
  CHECK(elems[0] == GroupElem{{0}});
  CHECK(elems[1] == GroupElem{{1}});

  FinAbGroup g = parse_group("Z/2xZ/4");
  CHECK(enumerate(g).size() == 8);

  CHECK_THROWS_AS(enumerate(parse_group("Z/1000"), 10), CapError);
}

TEST_CASE("element count is the factor product") {
  testing::Rng rng(0x600dull);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::int64_t> factors;
    std::int64_t order = 1;
    int parts = static_cast<int>(rng.range(1, 3));
    for (int j = 0; j < parts; ++j) {
      std::int64_t d = rng.range(1, 9);
      factors.push_back(d);
      order *= d;
    }
    FinAbGroup g = FinAbGroup::from_factors(factors);
    CHECK(static_cast<std::int64_t>(enumerate(g).size()) == order);
  }
}

TEST_CASE("order_of") {
  FinAbGroup z6 = parse_group("Z/6");
  CHECK(order_of(z6, GroupElem{{1}}) == 6);
  CHECK(order_of(z6, GroupElem{{3}}) == 2);
  CHECK(order_of(z6, z6.identity()) == 1);

  FinAbGroup g = parse_group("Z/2xZ/6");
  for (const auto& e : enumerate(g)) CHECK(6 % order_of(g, e) == 0);
}

TEST_CASE("order_of agrees with brute force") {
  for (const char* lit : {"Z/2", "Z/6", "Z/2xZ/4", "Z/2xZ/2", "Z/12", "Z/3xZ/9"}) {
    FinAbGroup g = parse_group(lit);
    for (const auto& e : enumerate(g)) {
      GroupElem acc = e;
      std::int64_t n = 1;
      while (!(acc == g.identity())) {
        acc = g.add(acc, e);
        ++n;
      }
      CHECK(order_of(g, e) == n);
    }
  }
}

TEST_CASE("is_nth_power examples") {
  FinAbGroup z4 = parse_group("Z/4");
  CHECK(is_nth_power(z4, GroupElem{{2}}, 2));
  CHECK_FALSE(is_nth_power(z4, GroupElem{{1}}, 2));
}

TEST_CASE("is_nth_power agrees with exhaustive search on all groups of order <= 100") {
  // All invariant-factor shapes of order <= 100 (via all factor multisets).
  std::vector<FinAbGroup> groups;
  for (std::int64_t a = 1; a <= 100; ++a) {
    groups.push_back(FinAbGroup::from_factors({a}));
    for (std::int64_t b = a; a * b <= 100; ++b) {
      groups.push_back(FinAbGroup::from_factors({a, b}));
      for (std::int64_t c = b; a * b * c <= 100; ++c)
        groups.push_back(FinAbGroup::from_factors({a, b, c}));
    }
  }
  for (const auto& g : groups) {
    auto elems = enumerate(g);
    for (std::int64_t n = 1; n <= 6; ++n) {
      for (const auto& e : elems) {
        bool found = false;
        for (const auto& h : elems)
          if (g.scale(h, n) == e) {
            found = true;
            break;
          }
        CHECK(is_nth_power(g, e, n) == found);
      }
    }
  }
}

TEST_CASE("eval_formula with the trivial preorder") {
  FinAbGroup z2 = parse_group("Z/2");
  CHECK(eval_formula(z2, parse_formula("E g. (!(g = 1) & g * g = 1)"), {}));
  FinAbGroup z3 = parse_group("Z/3");
  CHECK(eval_formula(z3, parse_formula("A g. g <= 1"), {}));
  FinAbGroup z4 = parse_group("Z/4");
  CHECK(eval_formula(z4, parse_formula("E g. (P[2](g) & !(g = 1))"), {}));
  // tau is the identity under the trivial preorder.
  CHECK(eval_formula(z4, parse_formula("t = 1"), {}));
  // Missing variable.
  CHECK_THROWS_AS(eval_formula(z2, parse_formula("x = 1"), {}), EvalError);
}

TEST_CASE("preorder axioms hold exhaustively for |G| <= 100") {
  const char* axioms[] = {
      "A g. g <= g",
      "A g. A h. A j. ((g <= h & h <= j) -> g <= j)",
      "A g. A h. (g <= h | h <= g)",
      "A g. A h. A j. (g <= h -> g * j <= h * j)",
  };
  for (const char* lit : {"Z/1", "Z/2", "Z/6", "Z/2xZ/4", "Z/100", "Z/2xZ/2"}) {
    FinAbGroup g = parse_group(lit);
    for (const char* ax : axioms) CHECK(eval_formula(g, parse_formula(ax), {}));
  }
}

TEST_CASE("invariant factors from tables") {
  // Units of Z/9 under multiplication: cyclic of order 6.
  CHECK(invariant_factors_of(units_mod_table(9)).factors() == std::vector<std::int64_t>{6});
  // Z/2 x Z/3 presented as a table is cyclic of order 6.
  CHECK(invariant_factors_of(testing::group_table(FinAbGroup::from_factors({2, 3}))).factors() ==
        std::vector<std::int64_t>{6});
  // Klein four-group.
  FinAbGroup klein = parse_group("Z/2xZ/2");
  CHECK(invariant_factors_of(testing::group_table(klein)).factors() ==
        std::vector<std::int64_t>{2, 2});
}

TEST_CASE("table validation errors") {
  // Commutative with identity and inverses, but not associative:
  // (1·1)·2 = 0·2 = 2 while 1·(1·2) = 1·0 = 1.
  std::vector<std::vector<std::int64_t>> bad{
      {0, 1, 2, 3}, {1, 0, 0, 3}, {2, 0, 0, 1}, {3, 3, 1, 0}};
  CHECK_THROWS_AS(invariant_factors_of(bad), EvalError);
  // Not abelian: S3's table.
  std::vector<std::vector<std::int64_t>> s3{
      {0, 1, 2, 3, 4, 5}, {1, 0, 4, 5, 2, 3}, {2, 5, 0, 4, 3, 1},
      {3, 4, 5, 0, 1, 2}, {4, 3, 1, 2, 5, 0}, {5, 2, 3, 1, 0, 4}};
  CHECK_THROWS_AS(invariant_factors_of(s3), EvalError);
}

TEST_CASE("iso_check") {
  CHECK(iso_check(FinAbGroup::from_factors({6}), FinAbGroup::from_factors({2, 3})));
  CHECK_FALSE(iso_check(parse_group("Z/2xZ/2"), parse_group("Z/4")));
}

TEST_CASE("iso_check agrees with a table isomorphism search up to order 16") {
  std::vector<FinAbGroup> groups;
  for (std::int64_t a = 1; a <= 16; ++a) {
    groups.push_back(FinAbGroup::from_factors({a}));
    for (std::int64_t b = a; a * b <= 16; ++b) {
      groups.push_back(FinAbGroup::from_factors({a, b}));
      for (std::int64_t c = b; a * b * c <= 16; ++c)
        groups.push_back(FinAbGroup::from_factors({a, b, c}));
    }
  }
  for (const auto& g1 : groups)
    for (const auto& g2 : groups) {
      if (g1.order() != g2.order()) continue;
      bool tables = testing::tables_isomorphic(testing::group_table(g1), testing::group_table(g2));
      CHECK(tables == iso_check(g1, g2));
    }
}

TEST_CASE("abelian_structure computes coordinates that are homomorphic") {
  testing::Rng rng(0xabe1ull);
  for (const char* lit : {"Z/8", "Z/2xZ/4", "Z/12", "Z/2xZ/2xZ/9", "Z/30"}) {
    FinAbGroup g = parse_group(lit);
    auto op = [&g](std::int64_t a, std::int64_t b) {
      return g.index_of(g.add(g.element_at(a), g.element_at(b)));
    };
    AbelianStructure st = abelian_structure(g.order(), op, g.index_of(g.identity()));
    CHECK(iso_check(st.group, g));
    // coords is a bijection and a homomorphism.
    std::set<GroupElem> seen;
    for (const auto& c : st.coords) CHECK(seen.insert(c).second);
    for (int t = 0; t < 200; ++t) {
      std::int64_t a = rng.range(0, g.order() - 1);
      std::int64_t b = rng.range(0, g.order() - 1);
      CHECK(st.group.add(st.coords[static_cast<std::size_t>(a)],
                         st.coords[static_cast<std::size_t>(b)]) ==
            st.coords[static_cast<std::size_t>(op(a, b))]);
    }
  }
}

TEST_CASE("normal form round trip") {
  // invariant_factors_of of the table of a normal-form group is the identity.
  for (const char* lit : {"Z/2", "Z/6", "Z/2xZ/4", "Z/2xZ/2xZ/4", "Z/15"}) {
    FinAbGroup g = parse_group(lit);
    CHECK(invariant_factors_of(testing::group_table(g)).factors() == g.factors());
  }
}

TEST_CASE("group literals") {
  CHECK(parse_group("Z/1").order() == 1);
  CHECK(parse_group("Z/6").factors() == std::vector<std::int64_t>{6});
  CHECK(parse_group("Z/2xZ/4").factors() == std::vector<std::int64_t>{2, 4});
  CHECK(group_to_string(parse_group("Z/2xZ/4")) == "Z/2xZ/4");
  CHECK_THROWS_AS(parse_group("Z/"), ParseError);
  CHECK_THROWS_AS(parse_group("Q/2"), ParseError);
}
