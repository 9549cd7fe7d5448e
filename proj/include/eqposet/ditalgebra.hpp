#pragma once

// Ditalgebras (T_R(W), d) over a semisimple base R = ⊕ R_i of division
// algebras over F.  W is given by generators, each a left R_src-basis vector
// of e_src W e_tgt, together with its right R-action rewritten with left
// coefficients.  Elements of T_R(W) are sums of words w_{b1}⊗...⊗w_{bn} with
// one coefficient from R_src on the left; this normal form makes equality of
// tensors decidable.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqposet/algebra.hpp"

namespace eqp::dit {

// R = ⊕ R_i; elements of R_i are 1×dims[i] coordinate rows.
struct BaseRing {
  u32 ch = 2;
  std::vector<std::string> names;
  std::vector<size_t> dims;
  std::vector<std::vector<std::vector<Matrix>>> prod;  // prod[i][a][b] = b_a b_b
  std::vector<Matrix> units;

  size_t points() const { return dims.size(); }
  Matrix mul(size_t i, const Matrix& x, const Matrix& y) const;
  Matrix zero(size_t i) const { return Matrix(1, dims[i], ch); }
  Matrix basis(size_t i, size_t a) const;
  // x ↦ x·y as a dims×dims matrix on coordinate rows.
  Matrix right_matrix(size_t i, const Matrix& y) const;

  // Every R_i equal to F.
  static BaseRing trivial(u32 ch, std::vector<std::string> names);
  // R_i = e_i Λ e_i for the points of an incidence algebra.
  static BaseRing diagonal(const IncidenceAlgebra& A);
};

struct Generator {
  std::string name;
  size_t src = 0, tgt = 0;
  int degree = 0;
};

struct Word {
  size_t point = 0;               // src of the word
  std::vector<size_t> letters;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// Σ coefficient·word, zero terms removed.
struct Element {
  std::map<Word, Matrix> terms;
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const Element& a, const Element& b) { return a.terms == b.terms; }
};

class Ditalgebra {
 public:
  Ditalgebra(BaseRing R, std::vector<Generator> gens);

  const BaseRing& base() const { return R_; }
  u32 ch() const { return R_.ch; }
  size_t points() const { return R_.points(); }
  size_t generators() const { return gens_.size(); }
  const Generator& gen(size_t g) const { return gens_[g]; }
  std::optional<size_t> find(const std::string& name) const;

  // w_g · b_t (b_t the t-th basis element of R_tgt) in normal form.  Defaults
  // to the central action c·w_g when every R_i is F.
  void set_right_action(size_t g, size_t t, Element e);
  const Element& right_action(size_t g, size_t t) const { return ract_[g][t]; }
  void set_d(size_t g, Element e) { d_[g] = std::move(e); }
  const Element& d_gen(size_t g) const { return d_[g]; }

  Element scalar(size_t i, const Matrix& r) const;
  Element letter(size_t g) const;
  Element letter(size_t g, const Matrix& coeff) const;
  size_t tgt(const Word& w) const { return w.letters.empty() ? w.point : gens_[w.letters.back()].tgt; }
  int degree(const Word& w) const;
  // Common degree of all terms; nullopt when inhomogeneous, 0 for zero.
  std::optional<int> degree(const Element& x) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element scale(const Scalar& s, const Element& a) const;
  Element left(size_t i, const Matrix& r, const Element& a) const;  // r·a
  Element mul(const Element& a, const Element& b) const;
  // u·r with r ∈ R_tgt(u), rewritten with a left coefficient.
  Element push(const Word& u, const Matrix& r) const;
  // The signed Leibniz extension of d.
  Element d(const Element& x) const;

  // Degrees and endpoints of d, right action is a unital action, d is right
  // R-linear.  Empty iff all hold.
  std::vector<std::string> validate() const;
  // Generators g with d(d(w_g)) ≠ 0.
  std::vector<std::string> d_squared_failures() const;

  std::string str(const Word& w) const;
  // One "coefficient word" per line, sorted.
  std::string dump(const Element& x) const;

 private:
  void add_term(Element& e, const Word& w, const Matrix& c) const;

  BaseRing R_;
  std::vector<Generator> gens_;
  std::vector<std::vector<Element>> ract_;
  std::vector<Element> d_;
};

// ---------------------------------------------------------------------------
// Modules and morphisms

// A right T_R(W)_0-module, stored over F.  Vectors are rows; the action of a
// degree-0 generator g maps M e_src to M e_tgt.
struct DitModule {
  std::vector<size_t> dims;
  std::vector<std::vector<Matrix>> r_act;  // [i][a]: right action of b_a ∈ R_i on M e_i
  std::map<size_t, Matrix> gen_act;        // degree-0 generators

  size_t dim() const;
  size_t offset(size_t i) const;
};

std::vector<std::string> validate(const Ditalgebra& D, const DitModule& M);
// The module ⊕ R_i^{n_i} with zero action of the degree-0 generators.
DitModule free_module(const Ditalgebra& D, const std::vector<size_t>& n);
// Full dim×dim matrices.
Matrix r_action(const Ditalgebra& D, const DitModule& M, size_t i, const Matrix& r);
Matrix action(const Ditalgebra& D, const DitModule& M, const Element& a);

// f^0 is dim M × dim N; f^1 holds a dim M × dim N matrix for every degree-1
// generator, supported on the block (src, tgt).
struct DitMorphism {
  Matrix f0;
  std::map<size_t, Matrix> f1;
};

// f^1 on a degree-1 element: m ↦ f^1(x)(m c u) u' for each term c u x u'.
Matrix eval_f1(const Ditalgebra& D, const DitModule& M, const DitModule& N, const DitMorphism& f, const Element& x);
std::vector<std::string> check_dit_morphism(const Ditalgebra& D, const DitMorphism& f, const DitModule& M, const DitModule& N);
DitMorphism zero_morphism(const Ditalgebra& D, const DitModule& M, const DitModule& N);
DitMorphism identity(const Ditalgebra& D, const DitModule& M);
// g∘f for f: M → N, g: N → L.
DitMorphism compose(const Ditalgebra& D, const DitMorphism& g, const DitMorphism& f, const DitModule& M, const DitModule& N, const DitModule& L);
DitMorphism combine(const std::vector<DitMorphism>& basis, const std::vector<Scalar>& c);
bool operator==(const DitMorphism& a, const DitMorphism& b);
// Basis of Hom(M, N) in Mod D.
std::vector<DitMorphism> hom_space(const Ditalgebra& D, const DitModule& M, const DitModule& N);

// ---------------------------------------------------------------------------
// Examples

// Path algebra of a quiver: W_1 = 0, d = 0.
Ditalgebra quiver_example(u32 ch, size_t vertices, const std::vector<std::pair<size_t, size_t>>& arrows);
// Points of P plus w; α_i: w → i of degree 0, x_{i,j}: i → j of degree 1 for i < j,
// d(α_j) = -Σ_{i<j} α_i x_{i,j}, d(x_{i,j}) = Σ_{i<r<j} x_{i,r} x_{r,j}.
Ditalgebra poset_biquiver(u32 ch, const EquippedPoset& P);
// Single point; w_{1,2} of degree 0, w_1 and w_2 of degree 1.
Ditalgebra triangular_Z(u32 ch);

// Λ = S ⊕ J for an incidence algebra, a dual basis {p_l, γ_l} of _SJ and the
// generators of *J = Hom_S(_SJ, S) as left S-module.
class StarJ {
 public:
  explicit StarJ(AlgebraPtr A);

  const AlgebraPtr& algebra() const { return A_; }
  const BaseRing& base() const { return S_; }

  // p_l ∈ e_i J e_j with i = p_src(l), j = p_tgt(l).
  size_t p_count() const { return p_.size(); }
  const Matrix& p(size_t l) const { return p_[l]; }
  size_t p_src(size_t l) const { return psrc_[l]; }
  size_t p_tgt(size_t l) const { return ptgt_[l]; }
  // Coefficients a_l ∈ R_{p_src(l)} with x = Σ a_l p_l, x ∈ J.
  std::vector<Matrix> left_coords(const Matrix& x) const;

  // A functional γ is stored by its values γ(p_l) ∈ R_{p_src(l)}.
  Matrix dual(size_t l) const;                       // γ_l
  Matrix eval(const Matrix& gamma, const Matrix& x) const;  // γ(x), full algebra coordinates
  Matrix right(const Matrix& gamma, size_t i, const Matrix& s) const;  // γ·s
  Matrix left(size_t j, const Matrix& s, const Matrix& gamma) const;   // s·γ

  // Generators g_b ∈ e_{src} *J e_{tgt}: a left S-basis built greedily from
  // the γ_l·r.
  size_t gen_count() const { return g_.size(); }
  const Matrix& gen(size_t b) const { return g_[b]; }
  size_t gen_src(size_t b) const { return gsrc_[b]; }
  size_t gen_tgt(size_t b) const { return gtgt_[b]; }
  // Left coefficients c_b with γ = Σ c_b g_b.
  std::vector<std::pair<size_t, Matrix>> express(const Matrix& gamma) const;

  // S-coordinates of an element of R_i inside the algebra, and back.
  Matrix to_algebra(size_t i, const Matrix& r) const;
  Matrix from_algebra(size_t i, const Matrix& x) const;

 private:
  size_t fdim() const { return foff_.empty() ? 0 : foff_.back() + S_.dims[psrc_.back()]; }

  AlgebraPtr A_;
  BaseRing S_;
  std::vector<Matrix> p_;
  std::vector<size_t> psrc_, ptgt_, foff_;
  std::map<std::pair<size_t, size_t>, la::Coordinates> jco_;  // block (i,j): rows r_a p_l
  std::map<std::pair<size_t, size_t>, std::vector<size_t>> jblock_;
  std::vector<Matrix> g_;
  std::vector<size_t> gsrc_, gtgt_;
  std::map<std::pair<size_t, size_t>, la::Coordinates> gco_;  // block (j,i): rows r_a g_b
  std::map<std::pair<size_t, size_t>, std::vector<size_t>> gblock_;
};

// Example 4: T_S(*J) with δ = μ, μ(γ) = Σ γ_k ⊗ γ_l γ(p_l p_k).
struct HomDual {
  StarJ star;
  Ditalgebra dit;
};
HomDual hom_dual(const AlgebraPtr& A);
// γ as an element of T_S(*J).
Element as_element(const HomDual& H, const Matrix& gamma);
Element mu(const HomDual& H, const Matrix& gamma);
// Φ(t)(a⊗b) for t ∈ *J⊗*J: Φ(ρ⊗ν)(a⊗b) = ν(a ρ(b)).
Matrix phi_pairing(const HomDual& H, const Element& t, const Matrix& a, const Matrix& b);
// (μ⊗id)μ(γ) and (id⊗μ)μ(γ).
Element mu_left(const HomDual& H, const Element& m);
Element mu_right(const HomDual& H, const Element& m);

// Example 5: points (i,1) = i and (i,2) = n + i; for each generator g_b of *J
// the letters w_1 g_b, w_2 g_b (degree 1) and w_{1,2} g_b (degree 0).
struct Drozd {
  HomDual hd;
  Ditalgebra dit;
  size_t n = 0;
  size_t w1(size_t b) const { return 3 * b; }
  size_t w2(size_t b) const { return 3 * b + 1; }
  size_t w12(size_t b) const { return 3 * b + 2; }
};
Drozd drozd(const AlgebraPtr& A);

// ---------------------------------------------------------------------------
// Functors

// A right basis of M e_i over R_i and coordinates against it.
struct RightBasis {
  std::vector<Matrix> gens;  // rows of M e_i (block coordinates)
  la::Coordinates co;        // rows gens[k]·b_a, k-major
  // n = Σ_k gens[k]·s_k.
  std::vector<Matrix> coords(const BaseRing& R, size_t i, const Matrix& v) const;
};
RightBasis right_basis(const Ditalgebra& D, const DitModule& M, size_t i);
std::vector<RightBasis> right_bases(const Ditalgebra& D, const DitModule& M);

// F: Mod(T_S(*J), δ) → Proj Λ, M ↦ M⊗_S Λ = ⊕(e_iΛ)^{n_i}.
LambdaModule functor_F(const HomDual& H, const DitModule& M, const std::vector<RightBasis>& bm);
// F(f)(m⊗λ) = f^0(m)⊗λ + Σ f^1(γ_l)(m)⊗p_l λ.
Matrix functor_F(const HomDual& H, const DitMorphism& f, const DitModule& M, const DitModule& N, const std::vector<RightBasis>& bm, const std::vector<RightBasis>& bn);

// Objects (0, ψ): M_1 → M_2 of M¹_Λ(A).
struct MorphismObject {
  DitModule m1, m2;
  DitMorphism psi;
};
// Pairs (f, g) with g∘(0,ψ_M) = (0,ψ_N)∘f.
struct MorphismPair {
  DitMorphism f, g;
};
MorphismObject functor_G(const Drozd& Dz, const DitModule& M);
MorphismPair functor_G(const Drozd& Dz, const DitMorphism& f, const DitModule& M, const DitModule& N);
bool is_pair_morphism(const HomDual& H, const MorphismPair& h, const MorphismObject& X, const MorphismObject& Y);
std::vector<MorphismPair> hom_space(const HomDual& H, const MorphismObject& X, const MorphismObject& Y);
// The module on M_1 ⊕ M_2 with (m_1 m_2)(s_1 γ; 0 s_2) = (m_1 s_1, ψ(γ)(m_1) + m_2 s_2).
DitModule drozd_module(const Drozd& Dz, const MorphismObject& X);

// D^e for e = Σ_{x≠0} w_1 e_x + w_2 e_0, and the projection η.
struct Restriction {
  Ditalgebra dit;
  std::vector<long> point_map;  // big point → small point or -1
  std::vector<long> gen_map;    // big generator → small generator or -1
  std::vector<size_t> point_of; // small point → big point
  std::vector<size_t> gen_of;   // small generator → big generator
};
Restriction restrict_idempotent(const Drozd& Dz, size_t zero);
Element eta(const Restriction& E, const Element& x);

// Ξ_e: Mod D^e → M, the object ⊕(e_xΛ)^{n_x} → (e_0Λ)^ν.
PresentationObject xi_e(const Drozd& Dz, const Restriction& E, size_t zero, const DitModule& M, const std::vector<RightBasis>* bases = nullptr);
// A D^e-module with Ξ_e(M) = o for the standard bases returned alongside.
struct DeModule {
  DitModule module;
  std::vector<RightBasis> bases;
};
DeModule de_module(const Drozd& Dz, const Restriction& E, size_t zero, const PresentationObject& o);

// Morphisms (f_1, f_2) of the category M: f_1: Q_1 → Q_2, f_2 between the
// targets, φ_1 f_2 = f_1 φ_2 (row vectors).
struct MMorphism {
  Matrix f1, f2;
};
bool is_m_morphism(const PresentationObject& a, const PresentationObject& b, const MMorphism& f);
std::vector<MMorphism> m_hom(const PresentationObject& a, const PresentationObject& b);
// The induced map Cok φ_1 → Cok φ_2.
Matrix cok_map(const PresentationObject& a, const PresentationObject& b, const MMorphism& f);
// When Cok(f) = 0: f = (f_1, 0)∘(id, 0) through the object (Q_1 → 0).
struct ZeroFactorization {
  PresentationObject middle;
  MMorphism first, second;
};
std::optional<ZeroFactorization> factor_through_zero(const PresentationObject& a, const PresentationObject& b, const MMorphism& f);

}  // namespace eqp::dit
