#include "doctest.h"
#include "eqposet/error.hpp"
#include "eqposet/matrix_problem.hpp"

using namespace eqp;

namespace {

Tower gf9() { return Tower(TowerConfig{2, TowerCase::separable, 3, 2}); }
Tower gf_s() { return Tower(TowerConfig{2, TowerCase::inseparable, 0, 0}); }
Tower gf27() { return Tower(TowerConfig{3, TowerCase::separable, 7, 3}); }

EquippedPoset one_weak(u32 p) {
  EquippedPoset P(p);
  P.add_point("a", 1);
  return P;
}

ExtMatrix single(const ExtElement& e) { return {1, 1, {e}}; }

std::vector<size_t> random_dims(Rng& rng, size_t n, size_t cap) {
  std::vector<size_t> d;
  for (size_t x = 0; x < n; ++x) d.push_back(rng() % (cap + 1));
  return d;
}

// Stripewise juxtaposition of two matrix representations: the rep of the
// direct sum with block-diagonal stripes.
MatrixRep block_sum(const MatrixProblem& mp, const MatrixRep& a, const MatrixRep& b) {
  std::vector<size_t> d;
  for (size_t x = 0; x < a.d.size(); ++x) d.push_back(a.d[x] + b.d[x]);
  MatrixRep M = zero_matrix_rep(mp, a.d0 + b.d0, d);
  for (size_t x = 0; x < d.size(); ++x) {
    for (size_t i = 0; i < a.d0; ++i)
      for (size_t j = 0; j < a.d[x]; ++j) M.stripes[x].at(i, j) = a.stripes[x].at(i, j);
    for (size_t i = 0; i < b.d0; ++i)
      for (size_t j = 0; j < b.d[x]; ++j) M.stripes[x].at(a.d0 + i, a.d[x] + j) = b.stripes[x].at(i, j);
  }
  return M;
}

}  // namespace

TEST_CASE("a unit stripe and a ξ stripe are equivalent; zero and unit are not") {
  Tower t = gf9();
  MatrixProblem mp(RepKind::corep, one_weak(2), t);
  REQUIRE(mp.stripes() == 2);
  MatrixRep one = zero_matrix_rep(mp, 1, {1, 0});
  one.stripes[0] = single(t.one());
  MatrixRep xi = one;
  xi.stripes[0] = single(t.xi());

  Transformation T = identity_transform(mp, one);
  T.t0 = single(t.xi());
  CHECK(apply_transform(mp, T, one) == xi);

  auto r = is_equivalent(mp, one, xi);
  CHECK(r.answer == mod::Answer::yes);
  REQUIRE(r.witness);
  CHECK(apply_transform(mp, *r.witness, xi) == one);

  MatrixRep zero = zero_matrix_rep(mp, 1, {1, 0});
  auto z = is_equivalent(mp, zero, one);
  CHECK(z.answer == mod::Answer::no);
  CHECK(z.certificate == "rank-invariants");
  CHECK(oracle_equivalent(mp, zero, one) == mod::Answer::no);
  CHECK(oracle_equivalent(mp, xi, one) == mod::Answer::yes);
}

TEST_CASE("transports on the canonical systems are identities") {
  Rng rng(3);
  for (const Tower& t : {gf9(), gf_s(), gf27()}) {
    for (int trial = 0; trial < 5; ++trial) {
      auto P = random_poset(rng, 1 + rng() % 3, t.p());
      MatrixProblem co(RepKind::corep, P, t);
      for (size_t x = 0; x < co.stripes(); ++x) {
        for (const auto& a : co.tx_basis(x)) CHECK(co.phi(x, t.coords(a)) == t.coords(a));
        for (size_t y = 0; y < co.stripes(); ++y)
          if (co.less(y, x))
            for (const auto& a : co.cross_basis(y, x)) CHECK(co.chi(y, x, t.coords(a)) == t.coords(a));
      }
      MatrixProblem re(RepKind::rep, P, t);
      for (size_t x = 0; x < re.stripes(); ++x) {
        ExtElement a = t.embed(t.random_base(rng));
        CHECK(re.to_field(x, re.rho(x, re.from_field(re.stripes(), a))) == a);
        ExtElement b = re.strong(x) ? a : t.random(rng);
        CHECK(re.to_field(x, re.from_field(x, b)) == b);
      }
    }
  }
  MatrixProblem co(RepKind::corep, one_weak(2), gf9());
  CHECK_THROWS_AS(co.rho(0, co.generator(0)), ModeMismatch);
}

TEST_CASE("u-factors match their closed forms") {
  Rng rng(5);
  std::map<TauCase, int> seen;
  for (const Tower& t : {gf9(), gf_s(), gf27()}) {
    for (int trial = 0; trial < 15; ++trial) {
      auto P = random_poset(rng, 2 + rng() % 3, t.p(), 0.6, 0.4);
      MatrixProblem mp(RepKind::rep, P, t);
      for (size_t x = 0; x < mp.stripes(); ++x)
        for (size_t y = 0; y < mp.stripes(); ++y) {
          if (!mp.less(y, x)) continue;
          TauCase c = mp.tau_case(y, x);
          ++seen[c];
          ExtElement b = mp.strong(y) ? t.embed(t.random_base(rng)) : t.random(rng);
          for (size_t i = 0; i < mp.cross_count(y, x); ++i) {
            ExtElement want;
            switch (c) {
              case TauCase::strong_strong:
              case TauCase::strong_weak: want = b; break;
              case TauCase::weak_strong: want = t.embed(t.re(t.mul(b, t.xi_pow(static_cast<unsigned>(i))))); break;
              case TauCase::weak_weak: want = t.vartheta_pow(b, static_cast<unsigned>(i)); break;
            }
            CHECK(mp.u_factor(y, x, i, b) == want);
          }
          if (c == TauCase::weak_weak) CHECK(mp.cross_count(y, x) == static_cast<size_t>(mp.degree(y, x)));
          if (c == TauCase::weak_strong) CHECK(mp.cross_count(y, x) == t.p());
        }
    }
  }
  for (TauCase c : {TauCase::strong_strong, TauCase::strong_weak, TauCase::weak_strong, TauCase::weak_weak}) CHECK(seen[c] > 0);

  // weak below strong, p = 2: Re((c0 + c1ξ)ξ) = c1·q
  Tower t = gf9();
  EquippedPoset P(2);
  P.add_point("a", 1);
  P.add_point("b", 2);
  P.set_degree(0, 1, 2);
  MatrixProblem mp(RepKind::rep, P, t);
  REQUIRE(mp.tau_case(0, 1) == TauCase::weak_strong);
  ExtElement b = t.add(t.embed(t.base(2)), t.scale(t.base(1), t.xi()));
  CHECK(mp.u_factor(0, 1, 1, b) == t.embed(t.base(1) * t.q()));
}

TEST_CASE("identity and zero-stripe examples") {
  Rng rng(7);
  for (RepKind kind : {RepKind::corep, RepKind::rep}) {
    auto P = random_poset(rng, 3, 2);
    MatrixProblem mp(kind, P, gf9());
    auto N = random_matrix_rep(mp, 2, random_dims(rng, mp.stripes(), 2), rng);
    CHECK(validate(mp, N).empty());
    CHECK(apply_transform(mp, identity_transform(mp, N), N) == N);
    auto Z = zero_matrix_rep(mp, 2, N.d);
    for (int k = 0; k < 5; ++k) {
      auto T = random_transform(mp, Z, rng);
      for (auto& [key, v] : T.cross)
        for (auto& m : v) m = ext::zero(mp.tower(), m.rows, m.cols);
      CHECK(apply_transform(mp, T, Z) == Z);
    }
    for (auto r : rank_invariants(mp, Z)) CHECK(r == 0);
    Transformation bad = identity_transform(mp, N);
    bad.t0 = ext::zero(mp.tower(), 2, 2);
    CHECK_THROWS_AS(apply_transform(mp, bad, N), NotInvertible);
    bad = identity_transform(mp, N);
    bad.t0 = ext::identity(mp.tower(), 3);
    CHECK_THROWS_AS(apply_transform(mp, bad, N), ShapeMismatch);
  }
}

TEST_CASE("full-rank square single stripe has rank d0") {
  Tower t = gf9();
  MatrixProblem mp(RepKind::corep, EquippedPoset(2), t);
  MatrixRep M = zero_matrix_rep(mp, 3, {3});
  M.stripes[0] = ext::identity(t, 3);
  CHECK(rank_invariants(mp, M) == std::vector<size_t>{3});
}

TEST_CASE("soundness: a transformed representation is equivalent to its source") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Tower t = trial % 3 == 0 ? gf_s() : trial % 3 == 1 ? gf9() : gf27();
    RepKind kind = trial % 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 2, t.p());
    MatrixProblem mp(kind, P, t);
    auto N = random_matrix_rep(mp, 1 + rng() % 2, random_dims(rng, mp.stripes(), 2), rng);
    auto T = random_transform(mp, N, rng);
    auto M = apply_transform(mp, T, N);
    auto r = is_equivalent(mp, M, N);
    REQUIRE(r.answer == mod::Answer::yes);
    CHECK(apply_transform(mp, *r.witness, N) == M);
  }
}

TEST_CASE("rank invariants survive transformations") {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    Tower t = trial % 2 ? gf9() : gf_s();
    RepKind kind = trial % 4 < 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    MatrixProblem mp(kind, P, t);
    auto N = random_matrix_rep(mp, rng() % 3, random_dims(rng, mp.stripes(), 2), rng);
    auto M = apply_transform(mp, random_transform(mp, N, rng), N);
    CHECK(rank_invariants(mp, M) == rank_invariants(mp, N));
  }
}

TEST_CASE("composition of transformations") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    Tower t = trial % 3 == 0 ? gf_s() : trial % 3 == 1 ? gf9() : gf27();
    RepKind kind = trial % 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 3, t.p(), 0.6);
    MatrixProblem mp(kind, P, t);
    auto N = random_matrix_rep(mp, 1 + rng() % 2, random_dims(rng, mp.stripes(), 2), rng);
    auto a = random_transform(mp, N, rng);
    auto b = random_transform(mp, N, rng);
    auto ab = compose(mp, b, a, N);
    CHECK(validate(mp, N, ab).empty());
    CHECK(apply_transform(mp, ab, N) == apply_transform(mp, b, apply_transform(mp, a, N)));
    auto c = random_transform(mp, N, rng);
    CHECK(apply_transform(mp, compose(mp, c, ab, N), N) == apply_transform(mp, compose(mp, compose(mp, c, b, N), a, N), N));
  }
}

TEST_CASE("general evaluation agrees with the closed forms") {
  Rng rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    Tower t = trial % 3 == 0 ? gf_s() : trial % 3 == 1 ? gf9() : gf27();
    RepKind kind = trial % 4 == 0 ? RepKind::corep : RepKind::rep;
    auto P = random_poset(rng, 2 + rng() % 3, t.p(), 0.6, 0.4);
    MatrixProblem mp(kind, P, t);
    auto N = random_matrix_rep(mp, 1 + rng() % 2, random_dims(rng, mp.stripes(), 2), rng);
    auto T = random_transform(mp, N, rng);
    CHECK(apply_transform(mp, T, N) == apply_closed_form(mp, T, N));
  }
}

TEST_CASE("morphism spaces contain the identity and mode mismatches throw") {
  Rng rng(23);
  auto P = random_poset(rng, 2, 2);
  MatrixProblem mp(RepKind::rep, P, gf9());
  auto N = random_matrix_rep(mp, 2, {1, 1, 2}, rng);
  auto H = morphisms(mp, N, N);
  CHECK(!H.basis.empty());
  MatrixProblem co(RepKind::corep, P, gf9());
  auto C = random_matrix_rep(co, 2, {1, 1, 2}, rng);
  CHECK_THROWS_AS(is_equivalent(mp, N, C), ModeMismatch);
  CHECK(is_equivalent(mp, N, N).answer == mod::Answer::yes);
}

TEST_CASE("objects and stripes round-trip") {
  Rng rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    Tower t = trial % 2 ? gf9() : gf_s();
    RepKind kind = trial % 4 < 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    MatrixProblem mp(kind, P, t);
    auto M = random_matrix_rep(mp, rng() % 3, random_dims(rng, mp.stripes(), 2), rng);
    auto o = to_object(mp, M);
    CHECK(validate(o).empty());
    CHECK(from_object(mp, o) == M);
  }
}

TEST_CASE("extraction respects isomorphism, sums and the module side") {
  Rng rng(31);
  for (int trial = 0; trial < 16; ++trial) {
    Tower t = trial % 2 ? gf9() : gf_s();
    RepKind kind = trial % 4 < 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 2, 2);
    MatrixProblem mp(kind, P, t);
    auto R = random_rep(kind, P, t, 1 + rng() % 2, rng);
    auto M = extract_matrix_rep(mp, R);
    CHECK(validate(mp, M).empty());

    // Cok(φ_M) recovers F(u(R)ε)
    UModule U = functor_u(R, mp.system(), mp.algebra());
    LambdaModule F = functor_F_UtoV(U.module, mp.zero_point(), mp.point(mp.stripes() - 1));
    CHECK(mod::is_isomorphic(cok_module(mp, M), F).answer == mod::Answer::yes);

    auto S = random_isomorphic(R, rng);
    CHECK(is_equivalent(mp, extract_matrix_rep(mp, S), M).answer == mod::Answer::yes);

    auto R2 = random_rep(kind, P, t, 1, rng);
    auto sum = extract_matrix_rep(mp, direct_sum(R, R2));
    auto juxt = block_sum(mp, M, extract_matrix_rep(mp, R2));
    CHECK(oracle_equivalent(mp, sum, juxt) == mod::Answer::yes);
  }
  MatrixProblem mp(RepKind::corep, one_weak(2), gf9());
  auto Z = extract_matrix_rep(mp, zero_rep(RepKind::corep, one_weak(2), gf9()));
  CHECK(Z.d0 == 0);
  for (auto d : Z.d) CHECK(d == 0);
  CHECK_THROWS_AS(extract_matrix_rep(mp, zero_rep(RepKind::rep, one_weak(2), gf9())), ModeMismatch);
}
