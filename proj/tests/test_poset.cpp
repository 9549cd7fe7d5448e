#include "doctest.h"
#include "eqposet/error.hpp"
#include "eqposet/poset.hpp"

using namespace eqp;

namespace {

// Direct transcription of the composition bound over all chains.
bool brute_force_valid(const EquippedPoset& P) {
  int p = static_cast<int>(P.p());
  size_t n = P.size();
  for (size_t x = 0; x < n; ++x) {
    if (P.degree(x, x) != 1 && P.degree(x, x) != p) return false;
    for (size_t y = 0; y < n; ++y)
      if (x != y && P.leq(x, y) && P.leq(y, x)) return false;
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y)
      for (size_t z = 0; z < n; ++z) {
        int l = P.degree(x, y), m = P.degree(y, z);
        if (!l || !m) continue;
        int need = l + m - 1 < p ? l + m - 1 : p;
        if (P.degree(x, z) < need) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("parse reads points, relations and the tower line") {
  auto f = parse_poset("p 2\ncase separable 3 2\npoint a 1\npoint b 1\nrel a b 2\n");
  CHECK(f.poset.size() == 2);
  CHECK(f.poset.degree(0, 1) == 2);
  CHECK(f.poset.weak(0));
  REQUIRE(f.tower);
  CHECK(f.tower->q0 == 3);
  CHECK(parse_poset("p 3\n").poset.size() == 0);
  CHECK(parse_poset("p 3\npoint x p\n").poset.strong(0));
}

TEST_CASE("parse rejects violations and bad syntax") {
  CHECK_THROWS_AS(parse_poset("p 2\npoint a 1\npoint b 1\npoint c 1\nrel a b 2\nrel b c 2\nrel a c 1\n"), AxiomViolation);
  try {
    parse_poset("p 2\npoint a 1\nfoo\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_poset("point a 1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_poset("p 2\npoint a 1\nrel a b 1\n"), SyntaxError);
  CHECK_THROWS_AS(parse_poset("p 4\n"), SyntaxError);
}

TEST_CASE("closure takes the largest forced degree") {
  auto f = parse_poset("p 3\npoint a 1\npoint b 1\npoint c 1\nrel a b 2\nrel b c 2\n");
  CHECK(f.poset.degree(0, 2) == 3);
  auto g = parse_poset("p 2\npoint a 1\npoint b 1\npoint c 1\nrel a b 1\nrel b c 1\nrel a c 1\n");
  CHECK(g.poset.validate().empty());
}

TEST_CASE("a relation from a strong point must be strong") {
  EquippedPoset P(2);
  P.add_point("x", 2);
  P.add_point("y", 1);
  P.set_degree(0, 1, 1);
  CHECK_FALSE(P.validate().empty());
  EquippedPoset Q(2);
  Q.add_point("a", 1);
  CHECK(Q.validate().empty());
}

TEST_CASE("extension by extremal points") {
  EquippedPoset P(2);
  P.add_point("a", 1);
  auto E = P.extend(EquippedPoset::Extend::both);
  REQUIRE(E.size() == 3);
  CHECK(E.name(0) == "0");
  CHECK(E.name(2) == "m");
  CHECK(E.degree(0, 1) == 2);
  CHECK(E.degree(1, 2) == 2);
  CHECK(E.degree(0, 2) == 2);
  CHECK(E.strong(0));
  CHECK(E.strong(2));
  CHECK(E.validate().empty());
  CHECK(P.extend(EquippedPoset::Extend::max).extend(EquippedPoset::Extend::min) == E);
  auto Z = EquippedPoset(3).extend(EquippedPoset::Extend::both);
  CHECK(Z.size() == 2);
  CHECK(Z.degree(0, 1) == 3);
  CHECK_THROWS_AS(E.extend(EquippedPoset::Extend::max), NameClash);
}

TEST_CASE("generalized equipment") {
  CHECK_THROWS_AS(parse_poset("gamma 3\npoint x\npoint y\npoint z\nrel x y {1}\nrel y z {1}\nrel x z {1}\n"), AxiomViolation);
  auto f = parse_poset("gamma 3\npoint x\npoint y\npoint z\nrel x y {0,1,2}\nrel y z {0,1,2}\n");
  REQUIRE(f.gamma);
  CHECK(f.gamma->delta.at({0, 2}) == std::set<u32>{0, 1, 2});
  CHECK(validate_generalized(f.poset, *f.gamma).empty());
  GeneralizedEquipment g = *f.gamma;
  g.delta[{0, 2}] = {1};
  CHECK_FALSE(validate_generalized(f.poset, g).empty());
}

TEST_CASE("validators agree with brute force on random posets") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    u32 p = trial % 2 ? 3 : 2;
    size_t n = 1 + rng() % 6;
    EquippedPoset P = random_poset(rng, n, p);
    CHECK(P.validate().empty());
    CHECK(brute_force_valid(P));
    CHECK(P.extend(EquippedPoset::Extend::both).validate().empty());
    CHECK(validate_generalized(P, to_generalized(P)).empty());
    // perturb one degree and compare the two checkers
    EquippedPoset Q = P;
    size_t x = rng() % n, y = rng() % n;
    if (Q.leq(x, y) && x != y) {
      Q.set_degree(x, y, 1 + static_cast<int>(rng() % p));
      CHECK(Q.validate().empty() == brute_force_valid(Q));
      CHECK(validate_generalized(Q, to_generalized(Q)).empty() == brute_force_valid(Q));
      ++checked;
    }
  }
  CHECK(checked > 20);
}
