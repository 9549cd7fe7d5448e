#include "doctest.h"
#include "eqposet/error.hpp"
#include "eqposet/mult_system.hpp"

using namespace eqp;

namespace {

std::vector<TowerConfig> configs_235() {
  return {TowerConfig{2, TowerCase::separable, 3, 2},   TowerConfig{3, TowerCase::separable, 7, 3},
          TowerConfig{5, TowerCase::separable, 11, 2},  TowerConfig{2, TowerCase::inseparable, 0, 0},
          TowerConfig{3, TowerCase::inseparable, 0, 0}, TowerConfig{5, TowerCase::inseparable, 0, 0}};
}

EquippedPoset one_weak_point(u32 p) {
  EquippedPoset P(p);
  P.add_point("a", 1);
  return P;
}

}  // namespace

TEST_CASE("A_l has dimension p*l and A_l A_m = A_min(l+m-1,p)") {
  for (const auto& cfg : configs_235()) {
    Tower t(cfg);
    AmbientAlgebra A = AmbientAlgebra::matrices(t);
    std::vector<Matrix> al(t.p() + 1);
    for (u32 l = 1; l <= t.p(); ++l) {
      al[l] = a_ell(t, static_cast<int>(l));
      CHECK(al[l].rows() == t.p() * l);
    }
    CHECK(al[t.p()].rows() == t.p() * t.p());
    for (u32 l = 1; l <= t.p(); ++l)
      for (u32 m = 1; m <= t.p(); ++m) {
        u32 n = std::min(l + m - 1, t.p());
        CHECK(la::same_space(A.product_space(al[l], al[m]), al[n]));
      }
  }
}

TEST_CASE("field check on small subalgebras") {
  Tower t(TowerConfig{2, TowerCase::separable, 3, 2});
  AmbientAlgebra M = AmbientAlgebra::matrices(t);
  Matrix diag(2, 4, 3);
  diag(0, 0) = t.base(1);
  diag(1, 3) = t.base(1);
  CHECK(check_field(M, diag, M.unit()).verdict == FieldCheck::Verdict::not_field);
  CHECK(check_field(M, a_ell(t, 1), M.unit()).verdict == FieldCheck::Verdict::field);
  CHECK(check_field(M, a_ell(t, 2), M.unit()).verdict == FieldCheck::Verdict::not_field);

  Tower ti(TowerConfig{3, TowerCase::inseparable, 0, 0});
  AmbientAlgebra Mi = AmbientAlgebra::matrices(ti);
  CHECK(check_field(Mi, a_ell(ti, 1), Mi.unit()).verdict == FieldCheck::Verdict::field);
  Matrix nil = Matrix::vcat(Mi.unit(), Mi.from_square(ti.theta_vartheta()));
  CHECK(check_field(Mi, nil, Mi.unit()).verdict == FieldCheck::Verdict::not_field);
}

TEST_CASE("Q and T systems on one weak point") {
  Tower t(TowerConfig{2, TowerCase::separable, 3, 2});
  auto P = one_weak_point(2).extend(EquippedPoset::Extend::max);
  MultSystem Q = build_Q(P, t);
  CHECK(Q.dim(0, 0) == 1);
  CHECK(Q.dim(1, 1) == 2);
  CHECK(Q.dim(0, 1) == 2);
  CHECK(Q.check_M1_M2().empty());
  CHECK(Q.check_admissible().empty());
  MultSystem T = build_T(P, t);
  CHECK(T.dim(0, 0) == 2);
  CHECK(T.dim(1, 1) == 4);
  CHECK(T.check_M1_M2().empty());
  auto rep = T.check_admissible();
  REQUIRE(!rep.empty());
  CHECK(rep.front().find("field:") != std::string::npos);
  MultSystem R = moritize(T);
  CHECK(R.dim(0, 0) == 2);
  CHECK(R.dim(1, 1) == 1);
  CHECK(R.check_admissible().empty());
}

TEST_CASE("a shrunk product space is reported") {
  Tower t(TowerConfig{2, TowerCase::separable, 3, 2});
  EquippedPoset P(2);
  P.add_point("x", 1);
  P.add_point("y", 1);
  P.add_point("z", 1);
  P.set_degree(0, 1, 1);
  P.set_degree(1, 2, 1);
  P.set_degree(0, 2, 1);
  MultSystem Q = build_Q(P, t);
  CHECK(Q.check_M1_M2().empty());
  Q.set_space(0, 2, Matrix(0, 2, 3));
  CHECK_FALSE(Q.check_M1_M2().empty());
  EquippedPoset one(2);
  one.add_point("x", 1);
  CHECK(build_Q(one, t).check_M1_M2().empty());
}

TEST_CASE("admissibility verdicts on random posets") {
  Rng rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    TowerConfig cfg = trial % 2 ? TowerConfig{2, TowerCase::inseparable, 0, 0} : TowerConfig{3, TowerCase::separable, 7, 3};
    Tower t(cfg);
    auto P = random_poset(rng, 1 + rng() % 4, t.p());
    auto Pm = P.extend(EquippedPoset::Extend::max);
    MultSystem Q = build_Q(Pm, t);
    CHECK(Q.check_admissible().empty());
    MultSystem T = build_T(Pm, t);
    CHECK(T.check_M1_M2().empty());
    CHECK_FALSE(T.check_admissible().empty());
    auto Pb = P.extend(EquippedPoset::Extend::both);
    MultSystem R = moritize(build_T(Pb, t));
    CHECK(R.check_admissible().empty());
    size_t z = *Pb.min_point(), m = *Pb.max_point();
    AmbientAlgebra A = R.ambient();
    for (size_t x = 0; x < Pb.size(); ++x) {
      CHECK(A.mul(R.epsilons()[z], R.epsilons()[x]) == R.epsilons()[z]);
      CHECK(R.dim(x, x) == (Pb.strong(x) ? 1u : t.p()));
      CHECK(R.dim(z, x) == R.dim(x, m));
    }
    CHECK(la::same_space(R.space(z, z), R.space(m, m)));
  }
}
