#include "doctest.h"
#include "eqposet/error.hpp"
#include "eqposet/representations.hpp"

using namespace eqp;

namespace {

Tower gf9() { return Tower(TowerConfig{2, TowerCase::separable, 3, 2}); }
Tower gf_s() { return Tower(TowerConfig{2, TowerCase::inseparable, 0, 0}); }
Tower gf49() { return Tower(TowerConfig{3, TowerCase::separable, 7, 3}); }

EquippedPoset chain_ws(u32 p) {
  EquippedPoset P(p);
  P.add_point("a", 1);
  P.add_point("b", static_cast<int>(p));
  P.set_degree(0, 1, 1);
  return P;
}

Matrix random_ambient(const AmbientAlgebra& A, Rng& rng) {
  Matrix a(1, A.dim(), A.ch());
  for (size_t k = 0; k < A.dim(); ++k) a(0, k) = A.tower().random_base(rng);
  return a;
}

}  // namespace

TEST_CASE("hand-built representation validates") {
  Tower t = gf9();
  EquippedPoset P = chain_ws(2);
  Representation R = zero_rep(RepKind::rep, P, t);
  R.n = 1;
  R.r = standard_operator(t, 1);
  R.sub = {Matrix(0, 2, t.ch()), Matrix::identity(2, t.ch())};
  CHECK(validate(R).empty());
  // a weak point of a representation must still be a G-subspace
  R.sub[0] = Matrix::row_vector({t.base(1), t.base(0)}, t.ch());
  CHECK_FALSE(validate(R).empty());
  R.sub[1] = Matrix(0, 2, t.ch());
  R.sub[0] = Matrix::identity(2, t.ch());
  CHECK_FALSE(validate(R).empty());
  // the operator must satisfy its axioms
  R.sub = {Matrix(0, 2, t.ch()), Matrix::identity(2, t.ch())};
  R.r = Matrix::identity(2, t.ch());
  CHECK_FALSE(validate(R).empty());

  Representation C = zero_rep(RepKind::corep, P, t);
  C.n = 1;
  C.sub = {Matrix::row_vector({t.base(1), t.base(0)}, t.ch()), Matrix::identity(2, t.ch())};
  CHECK(validate(C).empty());
  C.sub[1] = C.sub[0];
  CHECK_FALSE(validate(C).empty());
}

TEST_CASE("random objects satisfy every axiom") {
  Rng rng(101);
  std::vector<Tower> towers{gf9(), gf_s(), gf49()};
  for (int trial = 0; trial < 500; ++trial) {
    const Tower& t = towers[trial % 3];
    auto P = random_poset(rng, 1 + rng() % 4, t.p());
    RepKind kind = trial % 2 ? RepKind::rep : RepKind::corep;
    auto R = random_rep(kind, P, t, rng() % 3, rng);
    auto bad = validate(R);
    CHECK_MESSAGE(bad.empty(), (bad.empty() ? "" : bad.front()));
  }
}

TEST_CASE("ambient action is multiplicative") {
  Rng rng(7);
  for (const Tower& t : {gf9(), gf_s(), gf49()}) {
    EquippedPoset P(t.p());
    auto R = random_rep(RepKind::rep, P, t, 2, rng);
    for (const auto& A : {AmbientAlgebra::matrices(t), AmbientAlgebra::extension(t)}) {
      AmbientAction rho(A, R);
      CHECK(rho(A.unit()).is_identity());
      for (int k = 0; k < 5; ++k) {
        Matrix a = random_ambient(A, rng), b = random_ambient(A, rng);
        CHECK(rho(A.mul(a, b)) == rho(a) * rho(b));
        CHECK(rho(a + b) == rho(a) + rho(b));
      }
    }
  }
}

TEST_CASE("the functor u preserves morphism spaces") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    Tower t = trial % 2 ? gf9() : gf_s();
    RepKind kind = trial % 4 < 2 ? RepKind::corep : RepKind::rep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto B = system_for(kind, P, t, kind == RepKind::rep, true);
    auto R1 = random_rep(kind, P, t, 1 + rng() % 2, rng);
    auto R2 = trial % 5 ? random_rep(kind, P, t, 1 + rng() % 2, rng) : random_isomorphic(R1, rng);
    auto U1 = functor_u(R1, B.system, B.algebra);
    auto U2 = functor_u(R2, B.system, B.algebra);
    CHECK(U1.module.check().empty());
    auto H = hom_space(R1, R2);
    for (const auto& psi : H) {
      REQUIRE(is_morphism(R1, R2, psi));
      CHECK(mod::is_hom(U1.module, U2.module, functor_u_map(U1, U2, psi)));
    }
    CHECK(H.size() == mod::hom(U1.module, U2.module).size());
  }
}

TEST_CASE("u of the unmoritized system is u of the moritized one tensored up") {
  Rng rng(17);
  Tower t = gf9();
  for (int trial = 0; trial < 10; ++trial) {
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto R = random_rep(RepKind::rep, P, t, 2, rng);
    auto full = system_for(RepKind::rep, P, t, false, false);
    auto mor = system_for(RepKind::rep, P, t, false, true);
    auto Uf = functor_u(R, full.system, full.algebra);
    auto Um = functor_u(R, mor.system, mor.algebra);
    for (size_t x = 0; x < Uf.module.dims().size(); ++x) {
      size_t w = full.system.poset().strong(x) ? 2 : 1;
      CHECK(Uf.module.dim(x) == w * Um.module.dim(x));
    }
  }
}

TEST_CASE("isomorphic objects give isomorphic modules") {
  Rng rng(19);
  Tower t = gf9();
  for (int trial = 0; trial < 10; ++trial) {
    RepKind kind = trial % 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto B = system_for(kind, P, t, false, true);
    auto R = random_rep(kind, P, t, 2, rng);
    auto S = random_isomorphic(R, rng);
    CHECK(validate(S).empty());
    auto r = mod::is_isomorphic(functor_u(R, B.system, B.algebra).module, functor_u(S, B.system, B.algebra).module);
    CHECK(r.answer == mod::Answer::yes);
  }
}

TEST_CASE("submodules of u(L) come from subobjects") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Tower t = trial % 2 ? gf9() : gf_s();
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto R = random_rep(RepKind::rep, P, t, 2, rng);
    auto mor = system_for(RepKind::rep, P, t, false, true);
    auto full = system_for(RepKind::rep, P, t, false, false);
    auto U = functor_u(R, mor.system, mor.algebra);
    if (!U.module.dim()) continue;
    Matrix g(1, U.module.dim(), t.ch());
    for (size_t c = 0; c < g.cols(); ++c) g(0, c) = t.random_base(rng);
    Subspaces Y = mod::generated(U.module, g);
    auto sub = subrepresentation(R, U, Y, full.system);
    CHECK(validate(sub.rep).empty());
    CHECK(is_morphism(sub.rep, R, sub.embedding));
    CHECK(la::rank(sub.embedding) == sub.embedding.rows());
    auto UN = functor_u(sub.rep, mor.system, mor.algebra);
    for (size_t x = 0; x < Y.size(); ++x) {
      Matrix image = UN.basis[x].rows() ? UN.basis[x] * sub.embedding : Matrix(0, R.fdim(), t.ch());
      Matrix want = Y[x].rows() ? Y[x] * U.basis[x] : Matrix(0, R.fdim(), t.ch());
      CHECK(la::same_space(image, want));
    }
  }
}

TEST_CASE("no maps from the projective at the minimum") {
  Rng rng(29);
  Tower t = gf9();
  for (int trial = 0; trial < 10; ++trial) {
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto B = system_for(RepKind::rep, P, t, true, true);
    auto R = random_rep(RepKind::rep, P, t, 1 + rng() % 2, rng);
    auto U = functor_u(R, B.system, B.algebra);
    size_t z = *B.algebra->find("0");
    CHECK(U.module.dim(z) == 0);
    CHECK(mod::hom(mod::projective(B.algebra, z), U.module).empty());
  }
}

TEST_CASE("kinds and systems must match") {
  Tower t = gf9();
  auto P = chain_ws(2);
  auto R = random_rep(RepKind::corep, P, t, 1, 5);
  CHECK_THROWS_AS(AmbientAction(AmbientAlgebra::matrices(t), R), KindMismatch);
  CHECK_THROWS_AS(direct_sum(R, random_rep(RepKind::rep, P, t, 1, 5)), KindMismatch);
  auto S = direct_sum(R, R);
  CHECK(validate(S).empty());
  CHECK(hom_space(S, S).size() == 4 * hom_space(R, R).size());
}

TEST_CASE("translation to Galois group actions") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Tower t = trial % 2 ? gf9() : gf49();
    auto P = random_poset(rng, 1 + rng() % 4, t.p());
    auto R = random_rep(RepKind::rep, P, t, rng() % 3, rng);
    auto G = to_gamma(R);
    CHECK(validate_generalized(G.order, G.gamma).empty());
    CHECK(validate(G).empty() == validate(R).empty());
    // breaking one containment breaks both
    if (R.n && P.size() > 1) {
      for (size_t x = 0; x < P.size(); ++x)
        for (size_t y = 0; y < P.size(); ++y)
          if (P.less(x, y) && R.sub[x].rows() && R.sub[y].rows() < R.fdim()) {
            Representation B = R;
            B.sub[y] = Matrix(0, R.fdim(), t.ch());
            for (size_t z = 0; z < P.size(); ++z)
              if (P.less(z, y)) B.sub[z] = Matrix(0, R.fdim(), t.ch());
            B.sub[x] = Matrix::identity(R.fdim(), t.ch());
            CHECK(validate(to_gamma(B)).empty() == validate(B).empty());
          }
    }
  }
  CHECK_THROWS_AS(to_gamma(random_rep(RepKind::rep, EquippedPoset(2), gf_s(), 1, 3)), WrongCase);
}
