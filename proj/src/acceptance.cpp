#include "eqposet/acceptance.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "eqposet/ditalgebra.hpp"
#include "eqposet/error.hpp"
#include "eqposet/matrix_problem.hpp"

namespace eqp::acceptance {

namespace {

constexpr size_t kMaxNotes = 5;

class Tally {
 public:
  explicit Tally(SuiteResult& r) : r_(r) {}
  void check(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.failures;
    if (r_.notes.size() < kMaxNotes) r_.notes.push_back(what());
  }
  void instance() { ++r_.instances; }

 private:
  SuiteResult& r_;
};

Tower gf9() { return Tower(TowerConfig{2, TowerCase::separable, 3, 2}); }
Tower gf27() { return Tower(TowerConfig{3, TowerCase::separable, 7, 3}); }
Tower gf_s(u32 p = 2) { return Tower(TowerConfig{p, TowerCase::inseparable, 0, 0}); }

std::string at(int k) { return "instance " + std::to_string(k); }

Scalar rnd(u32 ch, Rng& rng) { return Scalar::constant(ch, static_cast<long long>(rng() % ch)); }

unsigned binom(unsigned n, unsigned k) {
  unsigned r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<size_t> random_dims(Rng& rng, size_t n, size_t cap) {
  std::vector<size_t> d;
  for (size_t x = 0; x < n; ++x) d.push_back(rng() % (cap + 1));
  return d;
}

// ---- 1: fields and operators

void fields(Tally& t, Rng& rng) {
  for (TowerConfig cfg : {TowerConfig{2, TowerCase::separable, 3, 2}, TowerConfig{3, TowerCase::separable, 7, 3},
                          TowerConfig{2, TowerCase::inseparable, 0, 0}, TowerConfig{3, TowerCase::inseparable, 0, 0}}) {
    Tower T(cfg);
    std::string tag = "p=" + std::to_string(cfg.p) + " " + to_string(cfg.kind) + " ";
    Matrix th = T.theta_vartheta();
    for (int k = 0; k < 100; ++k) {
      t.instance();
      ExtElement a = T.random(rng, true), b = T.random(rng), c = T.random(rng);
      auto where = [&](const char* what) { return [=] { return tag + at(k) + ": " + what; }; };
      t.check(T.mul(a, T.inv(a)) == T.one(), where("inverse"));
      t.check(T.mul(T.mul(a, b), c) == T.mul(a, T.mul(b, c)), where("associativity"));
      t.check(T.mul(a, T.add(b, c)) == T.add(T.mul(a, b), T.mul(a, c)), where("distributivity"));
      if (T.separable()) {
        t.check(T.sigma(T.mul(a, b)) == T.mul(T.sigma(a), T.sigma(b)), where("sigma is multiplicative"));
        ExtElement s = b;
        for (u32 i = 0; i < T.p(); ++i) s = T.sigma(s);
        t.check(s == b, where("sigma^p = id"));
      } else {
        t.check(T.delta(T.mul(a, b)) == T.add(T.mul(a, T.delta(b)), T.mul(T.delta(a), b)), where("Leibniz rule"));
        ExtElement d = b;
        for (u32 i = 0; i < T.p(); ++i) d = T.delta(d);
        t.check(d.is_zero(), where("delta^p = 0"));
      }
      t.check(T.theta_mul(T.mul(a, b)) == T.theta_mul(a) * T.theta_mul(b), where("Theta is multiplicative"));
      for (unsigned kk = 0; kk < T.p(); ++kk) {
        Matrix lhs = T.theta_mul(b) * th.pow(kk);
        Matrix rhs(T.p(), T.p(), T.ch());
        if (T.separable()) {
          rhs = th.pow(kk) * T.theta_mul(T.vartheta_pow(b, kk));
        } else {
          for (unsigned i = 0; i <= kk; ++i) rhs += T.base(binom(kk, i)) * (th.pow(kk - i) * T.theta_mul(T.vartheta_pow(b, i)));
        }
        t.check(lhs == rhs, where("operator commutation identity"));
      }
    }
    t.check(T.separable() ? th.pow(T.p()).is_identity() : th.pow(T.p()).is_zero(), [=] { return tag + "operator power"; });
  }
}

// ---- 2: the spaces A_l

void spaces(Tally& t, Rng&) {
  for (TowerConfig cfg : {TowerConfig{2, TowerCase::separable, 3, 2}, TowerConfig{3, TowerCase::separable, 7, 3},
                          TowerConfig{5, TowerCase::separable, 11, 2}, TowerConfig{2, TowerCase::inseparable, 0, 0},
                          TowerConfig{3, TowerCase::inseparable, 0, 0}, TowerConfig{5, TowerCase::inseparable, 0, 0}}) {
    Tower T(cfg);
    t.instance();
    AmbientAlgebra A = AmbientAlgebra::matrices(T);
    std::string tag = "p=" + std::to_string(cfg.p) + " " + to_string(cfg.kind);
    std::vector<Matrix> al(T.p() + 1);
    for (u32 l = 1; l <= T.p(); ++l) {
      al[l] = a_ell(T, static_cast<int>(l));
      // dim over A_1 = G is the F-dimension divided by p
      t.check(la::rank(al[l]) == T.p() * l, [=] { return tag + ": dim A_" + std::to_string(l); });
    }
    for (u32 l = 1; l <= T.p(); ++l)
      for (u32 m = 1; m <= T.p(); ++m) {
        u32 n = std::min(l + m - 1, T.p());
        t.check(la::same_space(A.product_space(al[l], al[m]), al[n]),
                [=] { return tag + ": A_" + std::to_string(l) + " A_" + std::to_string(m) + " != A_" + std::to_string(n); });
      }
  }
}

// ---- 3: admissibility verdicts

bool mentions_field(const std::vector<std::string>& report) {
  for (const auto& s : report)
    if (s.rfind("field:", 0) == 0) return true;
  return false;
}

void admissibility(Tally& t, Rng& rng) {
  for (int k = 0; k < 50; ++k) {
    t.instance();
    Tower T = k % 2 ? gf_s() : gf27();
    auto P = random_poset(rng, 1 + rng() % 6, T.p());
    auto Pm = P.extend(EquippedPoset::Extend::max);
    t.check(build_Q(Pm, T).check_admissible().empty(), [=] { return at(k) + ": Q^m not admissible"; });
    MultSystem Tm = build_T(Pm, T);
    t.check(Tm.check_M1_M2().empty(), [=] { return at(k) + ": T^m is not multiplicative"; });
    t.check(mentions_field(Tm.check_admissible()), [=] { return at(k) + ": T^m passes the division ring condition"; });
    t.check(moritize(Tm).check_admissible().empty(), [=] { return at(k) + ": moritized T^m not admissible"; });
  }
}

// ---- 4: socles, peaks and the Gorenstein property

void socles(Tally& t, Rng& rng) {
  for (int k = 0; k < 20; ++k) {
    t.instance();
    Tower T = k % 2 ? gf9() : gf_s();
    auto P = random_poset(rng, 1 + rng() % 4, 2);
    auto Q = IncidenceAlgebra::from_system(build_Q(P.extend(EquippedPoset::Extend::max), T));
    auto R = IncidenceAlgebra::from_system(moritize(build_T(P.extend(EquippedPoset::Extend::both), T)));
    for (const AlgebraPtr& A : {Q, R}) {
      size_t m = *A->find("m");
      size_t rm = A->block(m, m).size();
      LambdaModule Em = mod::projective(A, m);
      for (size_t i = 0; i < A->points(); ++i) {
        LambdaModule Pi = mod::projective(A, i);
        size_t nu = A->block(i, m).size() / rm;
        t.check(nu * rm == A->block(i, m).size(), [=] { return at(k) + ": R_{i,m} is not free over R_m"; });
        t.check(mod::nu(Pi, m) == nu, [=] { return at(k) + ": nu(" + A->name(i) + ")"; });
        LambdaModule soc = mod::submodule(Pi, mod::socle(Pi)).module;
        auto r = mod::is_isomorphic(soc, mod::power(Em, nu));
        t.check(r.answer == mod::Answer::yes && r.witness && mod::is_hom(soc, mod::power(Em, nu), *r.witness),
                [=] { return at(k) + ": soc e_" + A->name(i) + " is not (e_m)^nu"; });
      }
    }
    t.check(peak_checks(Q, *Q->find("m"), std::nullopt).right_peak, [=] { return at(k) + ": Q^m not right peak"; });
    auto f = peak_checks(R, *R->find("m"), R->find("0"));
    t.check(f.right_peak, [=] { return at(k) + ": not right peak"; });
    t.check(f.left_peak, [=] { return at(k) + ": not left peak"; });
    t.check(f.one_gorenstein && one_gorenstein(R), [=] { return at(k) + ": not 1-Gorenstein"; });

    auto A = IncidenceAlgebra::from_system(moritize(build_T(P.extend(EquippedPoset::Extend::max), T)));
    auto B = A->tilde(*A->find("m"));
    LambdaModule D = injective_envelope_simple(B, *A->find("m") + 1);
    auto r = mod::is_isomorphic(D, mod::projective(B, 0));
    t.check(r.answer == mod::Answer::yes && r.witness && mod::is_hom(D, mod::projective(B, 0), *r.witness),
            [=] { return at(k) + ": D(tilde e_m) is not e_0 tilde"; });
  }
}

// ---- 5: the functor u

void functor_u_suite(Tally& t, Rng& rng) {
  for (int k = 0; k < 50; ++k) {
    t.instance();
    Tower T = k % 2 ? gf9() : gf_s();
    RepKind kind = k % 4 < 2 ? RepKind::corep : RepKind::rep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto B = system_for(kind, P, T, kind == RepKind::rep, true);
    auto R1 = random_rep(kind, P, T, 1 + rng() % 2, rng);
    auto R2 = k % 5 ? random_rep(kind, P, T, 1 + rng() % 2, rng) : random_isomorphic(R1, rng);
    auto U1 = functor_u(R1, B.system, B.algebra);
    auto U2 = functor_u(R2, B.system, B.algebra);
    auto H = hom_space(R1, R2);
    bool maps = true;
    for (const auto& psi : H) maps = maps && mod::is_hom(U1.module, U2.module, functor_u_map(U1, U2, psi));
    t.check(maps, [=] { return at(k) + ": u of a morphism is not a module map"; });
    t.check(H.size() == mod::hom(U1.module, U2.module).size(), [=] { return at(k) + ": hom dimensions differ"; });
  }
  for (int k = 0; k < 20; ++k) {
    t.instance();
    Tower T = k % 2 ? gf9() : gf_s();
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto R = random_rep(RepKind::rep, P, T, 2, rng);
    auto mor = system_for(RepKind::rep, P, T, false, true);
    auto full = system_for(RepKind::rep, P, T, false, false);
    auto U = functor_u(R, mor.system, mor.algebra);
    if (!U.module.dim()) continue;
    Matrix g(1, U.module.dim(), T.ch());
    for (size_t c = 0; c < g.cols(); ++c) g(0, c) = T.random_base(rng);
    Subspaces Y = mod::generated(U.module, g);
    auto sub = subrepresentation(R, U, Y, full.system);
    t.check(validate(sub.rep).empty(), [=] { return at(k) + ": reconstructed subobject invalid"; });
    t.check(is_morphism(sub.rep, R, sub.embedding) && la::rank(sub.embedding) == sub.embedding.rows(),
            [=] { return at(k) + ": embedding is not an injective morphism"; });
    auto UN = functor_u(sub.rep, mor.system, mor.algebra);
    for (size_t x = 0; x < Y.size(); ++x) {
      Matrix image = UN.basis[x].rows() ? UN.basis[x] * sub.embedding : Matrix(0, R.fdim(), T.ch());
      Matrix want = Y[x].rows() ? Y[x] * U.basis[x] : Matrix(0, R.fdim(), T.ch());
      t.check(la::same_space(image, want), [=] { return at(k) + ": u(subobject) differs from the submodule"; });
    }
  }
  for (int k = 0; k < 10; ++k) {
    Tower T = k % 2 ? gf9() : gf_s();
    RepKind kind = k % 4 < 2 ? RepKind::corep : RepKind::rep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto B = system_for(kind, P, T, false, true);
    auto R = random_rep(kind, P, T, 1, rng);
    LambdaModule UR = functor_u(R, B.system, B.algebra).module;
    Representation Rk = R;
    for (size_t n = 1; n <= 3; ++n) {
      t.instance();
      if (n > 1) Rk = direct_sum(Rk, R);
      LambdaModule lhs = functor_u(Rk, B.system, B.algebra).module, rhs = mod::power(UR, n);
      auto r = mod::is_isomorphic(lhs, rhs);
      t.check(r.answer == mod::Answer::yes && r.witness && mod::is_hom(lhs, rhs, *r.witness) && la::rank(*r.witness) == lhs.dim(),
              [=] { return at(k) + ": u(V (x) L) is not V (x) u(L) for dim V = " + std::to_string(n); });
    }
  }
}

// ---- 6: ditalgebras

dit::DitMorphism random_morphism(const std::vector<dit::DitMorphism>& basis, const dit::DitMorphism& zero, u32 ch, Rng& rng) {
  if (basis.empty()) return zero;
  std::vector<Scalar> c;
  for (size_t k = 0; k < basis.size(); ++k) c.push_back(rnd(ch, rng));
  return dit::combine(basis, c);
}

dit::MorphismObject random_object(const dit::HomDual& H, Rng& rng) {
  size_t n = H.dit.points();
  dit::MorphismObject X{dit::free_module(H.dit, random_dims(rng, n, 1)), dit::free_module(H.dit, random_dims(rng, n, 1)), {}};
  dit::DitMorphism z = dit::zero_morphism(H.dit, X.m1, X.m2);
  X.psi = random_morphism(dit::hom_space(H.dit, X.m1, X.m2), z, H.dit.ch(), rng);
  X.psi.f0 = z.f0;
  return X;
}

void ditalgebras(Tally& t, Rng& rng) {
  for (int k = 0; k < 10; ++k) {
    t.instance();
    RepKind kind = rng() % 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 3, 2);
    auto A = system_for(kind, P, gf9(), true, true).algebra;
    auto E2 = dit::poset_biquiver(A->ch(), P);
    t.check(E2.validate().empty() && E2.d_squared_failures().empty(), [=] { return at(k) + ": biquiver d^2 != 0"; });
    auto H = dit::hom_dual(A);
    t.check(H.dit.validate().empty() && H.dit.d_squared_failures().empty(), [=] { return at(k) + ": hom dual d^2 != 0"; });
    for (size_t b = 0; b < H.star.gen_count(); ++b) {
      dit::Element m = dit::mu(H, H.star.gen(b));
      t.check(dit::mu_left(H, m) == dit::mu_right(H, m), [=] { return at(k) + ": comultiplication not coassociative"; });
    }
    auto Dz = dit::drozd(A);
    t.check(Dz.dit.validate().empty() && Dz.dit.d_squared_failures().empty(), [=] { return at(k) + ": Drozd d^2 != 0"; });
  }

  // associativity over the Drozd ditalgebra of a 3-point poset
  auto P = random_poset(rng, 3, 2);
  auto Dz = dit::drozd(system_for(RepKind::corep, P, gf9(), false, true).algebra);
  const auto& D = Dz.dit;
  std::vector<dit::DitModule> mods;
  for (int k = 0; k < 3; ++k) mods.push_back(dit::drozd_module(Dz, random_object(Dz.hd, rng)));
  std::map<std::pair<size_t, size_t>, std::vector<dit::DitMorphism>> H;
  for (size_t a = 0; a < 3; ++a)
    for (size_t b = 0; b < 3; ++b) H[{a, b}] = dit::hom_space(D, mods[a], mods[b]);
  for (int k = 0; k < 100; ++k) {
    t.instance();
    size_t a = rng() % 3, b = rng() % 3, c = rng() % 3, d = rng() % 3;
    auto f = random_morphism(H[{a, b}], dit::zero_morphism(D, mods[a], mods[b]), D.ch(), rng);
    auto g = random_morphism(H[{b, c}], dit::zero_morphism(D, mods[b], mods[c]), D.ch(), rng);
    auto h = random_morphism(H[{c, d}], dit::zero_morphism(D, mods[c], mods[d]), D.ch(), rng);
    auto gf = dit::compose(D, g, f, mods[a], mods[b], mods[c]);
    t.check(dit::check_dit_morphism(D, gf, mods[a], mods[c]).empty(), [=] { return "triple " + std::to_string(k) + ": composite is no morphism"; });
    t.check(dit::compose(D, h, gf, mods[a], mods[c], mods[d]) ==
                dit::compose(D, dit::compose(D, h, g, mods[b], mods[c], mods[d]), f, mods[a], mods[b], mods[d]),
            [=] { return "triple " + std::to_string(k) + ": composition not associative"; });
  }

  // F: Mod(T_S(*J)) → projectives, functoriality on 100 pairs
  for (int k = 0; k < 10; ++k) {
    RepKind kind = rng() % 2 ? RepKind::rep : RepKind::corep;
    auto A = system_for(kind, random_poset(rng, 1 + rng() % 3, 2), gf9(), true, true).algebra;
    auto Hd = dit::hom_dual(A);
    const auto& E = Hd.dit;
    std::vector<dit::DitModule> ms;
    std::vector<std::vector<dit::RightBasis>> bases;
    std::vector<LambdaModule> images;
    for (int j = 0; j < 3; ++j) {
      ms.push_back(dit::free_module(E, random_dims(rng, E.points(), 1)));
      bases.push_back(dit::right_bases(E, ms.back()));
      images.push_back(dit::functor_F(Hd, ms.back(), bases.back()));
    }
    for (int j = 0; j < 10; ++j) {
      t.instance();
      size_t a = rng() % 3, b = rng() % 3, c = rng() % 3;
      auto f = random_morphism(dit::hom_space(E, ms[a], ms[b]), dit::zero_morphism(E, ms[a], ms[b]), E.ch(), rng);
      auto g = random_morphism(dit::hom_space(E, ms[b], ms[c]), dit::zero_morphism(E, ms[b], ms[c]), E.ch(), rng);
      Matrix Ff = dit::functor_F(Hd, f, ms[a], ms[b], bases[a], bases[b]);
      Matrix Fg = dit::functor_F(Hd, g, ms[b], ms[c], bases[b], bases[c]);
      t.check(mod::is_hom(images[a], images[b], Ff), [=] { return "pair " + std::to_string(k * 10 + j) + ": F(f) is no module map"; });
      t.check(dit::functor_F(Hd, dit::compose(E, g, f, ms[a], ms[b], ms[c]), ms[a], ms[c], bases[a], bases[c]) == Ff * Fg,
              [=] { return "pair " + std::to_string(k * 10 + j) + ": F(gf) != F(g)F(f)"; });
    }
  }
}

// ---- 7: soundness of the equivalence decision

void soundness(Tally& t, Rng& rng) {
  for (int k = 0; k < 200; ++k) {
    t.instance();
    Tower T = k % 3 == 0 ? gf_s() : k % 3 == 1 ? gf9() : gf27();
    RepKind kind = k % 2 ? RepKind::rep : RepKind::corep;
    auto P = random_poset(rng, 1 + rng() % 2, T.p());
    MatrixProblem mp(kind, P, T);
    auto N = random_matrix_rep(mp, 1 + rng() % 2, random_dims(rng, mp.stripes(), 2), rng);
    auto M = apply_transform(mp, random_transform(mp, N, rng), N);
    auto r = is_equivalent(mp, M, N);
    t.check(r.answer == mod::Answer::yes && r.witness && apply_transform(mp, *r.witness, N) == M,
            [=] { return at(k) + " (" + to_string(kind) + "): answer " + mod::to_string(r.answer); });
  }
}

// ---- 8: completeness on all tiny corepresentation instances

std::vector<EquippedPoset> tiny_posets() {
  std::vector<EquippedPoset> out{EquippedPoset(2)};
  for (int s : {1, 2}) {
    EquippedPoset P(2);
    P.add_point("a", s);
    out.push_back(P);
  }
  for (int sa : {1, 2})
    for (int sb : {1, 2})
      for (int rel : {0, 1, 2}) {
        std::vector<Relation> rels;
        if (rel) rels.push_back({"a", "b", rel});
        try {
          out.push_back(EquippedPoset::from_generators(2, {{"a", sa}, {"b", sb}}, rels));
        } catch (const AxiomViolation&) {
        }
      }
  return out;
}

// All dimension vectors (d0, d_x) with d0 + Σ d_x <= cap.
void dim_vectors(size_t stripes, size_t cap, std::vector<size_t>& cur, std::vector<std::vector<size_t>>& out) {
  size_t used = 0;
  for (size_t v : cur) used += v;
  if (cur.size() == stripes + 1) {
    out.push_back(cur);
    return;
  }
  for (size_t v = 0; used + v <= cap; ++v) {
    cur.push_back(v);
    dim_vectors(stripes, cap, cur, out);
    cur.pop_back();
  }
}

// Every matrix representation with the given dimensions: each entry runs
// through the F-span of its stripe basis.
std::vector<MatrixRep> all_reps(const MatrixProblem& mp, size_t d0, const std::vector<size_t>& d) {
  const Tower& T = mp.tower();
  u64 q = T.base_size();
  std::vector<std::vector<ExtElement>> values(mp.stripes());
  for (size_t x = 0; x < mp.stripes(); ++x) {
    auto basis = mp.stripe_basis(x);
    u64 count = 1;
    for (size_t i = 0; i < basis.size(); ++i) count *= q;
    for (u64 c = 0; c < count; ++c) {
      ExtElement e = T.zero();
      u64 rest = c;
      for (const auto& b : basis) {
        e = T.add(e, T.scale(T.base(static_cast<long long>(rest % q)), b));
        rest /= q;
      }
      values[x].push_back(e);
    }
  }
  std::vector<std::pair<size_t, size_t>> slots;  // (stripe, entry)
  for (size_t x = 0; x < mp.stripes(); ++x)
    for (size_t e = 0; e < d0 * d[x]; ++e) slots.emplace_back(x, e);
  std::vector<MatrixRep> out;
  std::vector<size_t> idx(slots.size(), 0);
  for (;;) {
    MatrixRep M = zero_matrix_rep(mp, d0, d);
    for (size_t s = 0; s < slots.size(); ++s) M.stripes[slots[s].first].a[slots[s].second] = values[slots[s].first][idx[s]];
    out.push_back(std::move(M));
    size_t s = 0;
    while (s < slots.size() && ++idx[s] == values[slots[s].first].size()) idx[s++] = 0;
    if (s == slots.size()) break;
  }
  return out;
}

void completeness(Tally& t, Rng&) {
  Tower T = gf9();
  size_t pidx = 0;
  for (const auto& P : tiny_posets()) {
    MatrixProblem mp(RepKind::corep, P, T);
    std::vector<std::vector<size_t>> dims;
    std::vector<size_t> cur;
    dim_vectors(mp.stripes(), 3, cur, dims);
    for (const auto& dv : dims) {
      std::vector<size_t> d(dv.begin() + 1, dv.end());
      auto reps = all_reps(mp, dv[0], d);
      for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = 0; j < reps.size(); ++j) {
          t.instance();
          auto r = is_equivalent(mp, reps[i], reps[j]);
          auto o = oracle_equivalent(mp, reps[i], reps[j]);
          auto where = [=, &dv] {
            std::string s = "poset " + std::to_string(pidx) + " dims";
            for (size_t v : dv) s += " " + std::to_string(v);
            return s + " pair " + std::to_string(i) + "," + std::to_string(j) + ": decision " + mod::to_string(r.answer) +
                   ", oracle " + mod::to_string(o);
          };
          t.check(r.answer != mod::Answer::unknown && r.answer == o, where);
          if (r.answer == mod::Answer::yes)
            t.check(r.witness && apply_transform(mp, *r.witness, reps[j]) == reps[i], where);
        }
    }
    ++pidx;
  }
}

// ---- 9: general evaluation against the closed forms

void closed_forms(Tally& t, Rng& rng) {
  for (int k = 0; k < 100; ++k) {
    t.instance();
    Tower T = k % 3 == 0 ? gf_s() : k % 3 == 1 ? gf9() : gf27();
    RepKind kind = k % 4 == 0 ? RepKind::corep : RepKind::rep;
    auto P = random_poset(rng, 2 + rng() % 3, T.p(), 0.6, 0.4);
    MatrixProblem mp(kind, P, T);
    auto N = random_matrix_rep(mp, 1 + rng() % 2, random_dims(rng, mp.stripes(), 2), rng);
    auto Tr = random_transform(mp, N, rng);
    t.check(apply_transform(mp, Tr, N) == apply_closed_form(mp, Tr, N), [=] { return at(k) + " (" + to_string(kind) + ")"; });
  }
}

using SuiteFn = void (*)(Tally&, Rng&);

struct Entry {
  const char* title;
  double limit;
  SuiteFn fn;
};

const Entry& entry(int id) {
  static const Entry table[kSuites] = {
      {"field axioms and operators", 5, fields},
      {"multiplicative system dimensions and products", 10, spaces},
      {"admissibility verdicts", 30, admissibility},
      {"socle, peak and Gorenstein properties", 60, socles},
      {"functor u", 60, functor_u_suite},
      {"ditalgebra identities", 60, ditalgebras},
      {"matrix problem soundness", 120, soundness},
      {"matrix problem completeness on tiny instances", 600, completeness},
      {"closed-form consistency", 60, closed_forms},
  };
  if (id < 1 || id > kSuites) throw std::out_of_range("no suite " + std::to_string(id));
  return table[id - 1];
}

}  // namespace

std::string SuiteResult::report() const {
  std::ostringstream os;
  os << "suite: " << id << "\n";
  os << "title: " << title << "\n";
  os << "instances: " << instances << "\n";
  os << "checks: " << checks << "\n";
  os << "failures: " << failures << "\n";
  for (const auto& n : notes) os << "failure: " << n << "\n";
  os << "result: " << (pass() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string title(int id) { return entry(id).title; }

double time_limit(int id) { return entry(id).limit; }

SuiteResult run_suite(int id, u64 seed) {
  const Entry& e = entry(id);
  SuiteResult r;
  r.id = id;
  r.title = e.title;
  Tally t(r);
  Rng rng(seed * 1000003u + static_cast<u64>(id));
  try {
    e.fn(t, rng);
  } catch (const std::exception& ex) {
    t.check(false, [&] { return std::string("exception: ") + ex.what(); });
  }
  return r;
}

std::string selftest_report(const std::vector<SuiteResult>& results, u64 seed) {
  std::ostringstream os;
  os << "seed: " << seed << "\n";
  bool all = true;
  for (const auto& r : results) {
    os << "\n" << r.report();
    all = all && r.pass();
  }
  os << "\noverall: " << (all ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace eqp::acceptance
