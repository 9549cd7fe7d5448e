#include "doctest.h"
#include "eqposet/error.hpp"
#include "eqposet/tower.hpp"

using namespace eqp;

namespace {

Tower gf9() { return Tower(TowerConfig{2, TowerCase::separable, 3, 2}); }
Tower insep(u32 p) { return Tower(TowerConfig{p, TowerCase::inseparable, 0, 0}); }

unsigned binom(unsigned n, unsigned k) {
  unsigned r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("rational functions are kept in lowest terms") {
  Scalar a = Scalar::fraction(3, {2, 0, 1}, {2, 1});  // (s^2-1)/(s-1)
  CHECK(a == Scalar::fraction(3, {1, 1}, {1}));
  CHECK(a.str() == "s+1");
  Scalar b = Scalar::fraction(5, {0, 2}, {0, 0, 4});  // 2s / 4s^2 = 3/s
  CHECK(b.denominator() == FpPoly{0, 1});
  CHECK(b.numerator() == FpPoly{3});
  CHECK((b * b.inv()).is_one());
  CHECK((Scalar::variable(2) + Scalar::variable(2)).is_zero());
  CHECK_THROWS_AS(Scalar::constant(7, 0).inv(), DivisionByZero);
}

TEST_CASE("GF(9) arithmetic against hand values") {
  Tower t = gf9();
  CHECK(t.mul(t.xi(), t.xi()) == t.embed(t.base(2)));
  CHECK(t.sigma(t.xi()) == t.scale(t.base(2), t.xi()));
  CHECK(t.theta_mul(t.xi()) == t.theta_mul(t.xi()));
  Matrix expect(2, 2, 3);
  expect(0, 1) = t.base(1);
  expect(1, 0) = t.base(2);
  CHECK(t.theta_mul(t.xi()) == expect);
  CHECK(t.theta_mul(t.one()).is_identity());
  CHECK(t.re(t.parse("2+x")) == t.base(2));
  CHECK_THROWS_AS(t.delta(t.xi()), WrongCase);
  CHECK_THROWS_AS(Tower(TowerConfig{2, TowerCase::separable, 3, 1}), AxiomViolation);
  CHECK_THROWS_AS(Tower(TowerConfig{3, TowerCase::separable, 5, 2}), AxiomViolation);
}

TEST_CASE("inseparable derivation on basis elements") {
  Tower t = insep(2);
  CHECK(t.delta(t.one()).is_zero());
  CHECK(t.delta(t.xi()) == t.one());
  CHECK(t.delta(t.mul(t.xi(), t.xi())).is_zero());
  Matrix expect(2, 2, 2);
  expect(1, 0) = t.base(1);
  CHECK(t.theta_vartheta() == expect);
  CHECK_THROWS_AS(t.sigma(t.xi()), WrongCase);
}

TEST_CASE("sigma agrees with Frobenius by exponentiation") {
  for (TowerConfig cfg : {TowerConfig{2, TowerCase::separable, 3, 2}, TowerConfig{3, TowerCase::separable, 7, 2},
                          TowerConfig{2, TowerCase::separable, 5, 2}, TowerConfig{5, TowerCase::separable, 11, 2}}) {
    Tower t(cfg);
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
      ExtElement a = t.random(rng);
      CHECK(t.sigma(a) == t.pow(a, cfg.q0));
    }
  }
}

TEST_CASE("inverse and field identities on random elements") {
  for (TowerConfig cfg : {TowerConfig{2, TowerCase::separable, 3, 2}, TowerConfig{3, TowerCase::separable, 7, 3},
                          TowerConfig{2, TowerCase::inseparable, 0, 0}, TowerConfig{3, TowerCase::inseparable, 0, 0}}) {
    Tower t(cfg);
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
      ExtElement a = t.random(rng, true), b = t.random(rng), c = t.random(rng);
      CHECK(t.mul(a, t.inv(a)) == t.one());
      CHECK(t.mul(a, t.one()) == a);
      CHECK(t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c)));
      CHECK(t.mul(a, t.add(b, c)) == t.add(t.mul(a, b), t.mul(a, c)));
      CHECK(t.parse(t.str(b)) == b);
    }
  }
}

TEST_CASE("operator identities hold as matrices") {
  for (TowerConfig cfg : {TowerConfig{2, TowerCase::separable, 3, 2}, TowerConfig{3, TowerCase::separable, 7, 3},
                          TowerConfig{2, TowerCase::inseparable, 0, 0}, TowerConfig{3, TowerCase::inseparable, 0, 0}}) {
    Tower t(cfg);
    Rng rng(9);
    Matrix th = t.theta_vartheta();
    if (t.separable())
      CHECK(th.pow(t.p()).is_identity());
    else
      CHECK(th.pow(t.p()).is_zero());
    for (int k = 0; k < 10; ++k) {
      ExtElement a = t.random(rng), b = t.random(rng);
      // product rule
      if (t.separable())
        CHECK(t.sigma(t.mul(a, b)) == t.mul(t.sigma(a), t.sigma(b)));
      else
        CHECK(t.delta(t.mul(a, b)) == t.add(t.mul(a, t.delta(b)), t.mul(t.delta(a), b)));
      // Θ turns the ∗-product (h ∗ h' = h' ∘ h) into the matrix product
      CHECK(t.theta_mul(t.mul(a, b)) == t.theta_mul(a) * t.theta_mul(b));
      for (unsigned kk = 0; kk < t.p(); ++kk) {
        Matrix lhs = t.theta_mul(a) * th.pow(kk);  // Θ(ϑ^k ∘ μ_a)
        Matrix rhs(t.p(), t.p(), t.ch());
        if (t.separable()) {
          rhs = th.pow(kk) * t.theta_mul(t.vartheta_pow(a, kk));
        } else {
          for (unsigned i = 0; i <= kk; ++i)
            rhs += t.base(binom(kk, i)) * (th.pow(kk - i) * t.theta_mul(t.vartheta_pow(a, i)));
        }
        CHECK(lhs == rhs);
      }
    }
  }
}

TEST_CASE("element syntax") {
  Tower t = insep(2);
  ExtElement e = t.parse("(s/s^2+1)*x");
  Scalar c = Scalar::fraction(2, {0, 1}, {1, 0, 1});
  CHECK(e.c[1] == c);
  CHECK(e.c[0].is_zero());
  CHECK(t.parse("x^2") == t.embed(t.s()));
  CHECK_THROWS(t.parse("2+"));
  CHECK_THROWS(gf9().parse("s"));
}
