#pragma once

// Striped matrix representations and their admissible transformations.
//
// Stripes are indexed by the points of P followed by the maximum "m"; the
// stripe of x is a d_0 × d_x matrix.  Corepresentations use the system Q
// (entries in R_0 = G).  Representations use the moritized system T, with
// entries of stripe x in K(x): F for strong x, G for weak x.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqposet/representations.hpp"

namespace eqp {

// Dense matrix over G.
struct ExtMatrix {
  size_t rows = 0, cols = 0;
  std::vector<ExtElement> a;

  ExtElement& at(size_t i, size_t j) { return a[i * cols + j]; }
  const ExtElement& at(size_t i, size_t j) const { return a[i * cols + j]; }
  friend bool operator==(const ExtMatrix& x, const ExtMatrix& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }
  friend bool operator!=(const ExtMatrix& x, const ExtMatrix& y) { return !(x == y); }
};

namespace ext {

ExtMatrix zero(const Tower& t, size_t r, size_t c);
ExtMatrix identity(const Tower& t, size_t n);
ExtMatrix mul(const Tower& t, const ExtMatrix& x, const ExtMatrix& y);
ExtMatrix add(const Tower& t, const ExtMatrix& x, const ExtMatrix& y);
ExtMatrix sub(const Tower& t, const ExtMatrix& x, const ExtMatrix& y);
bool is_zero(const ExtMatrix& x);
// Right multiplication by x as an F-matrix (p·rows × p·cols).
Matrix f_matrix(const Tower& t, const ExtMatrix& x);
bool invertible(const Tower& t, const ExtMatrix& x);
std::optional<ExtMatrix> inverse(const Tower& t, const ExtMatrix& x);
// Rank over G.
size_t rank(const Tower& t, const ExtMatrix& x);
std::string str(const Tower& t, const ExtMatrix& x);

}  // namespace ext

struct MatrixRep {
  RepKind mode = RepKind::corep;
  EquippedPoset poset;  // without 0 and m
  Tower tower{TowerConfig{}};
  size_t d0 = 0;
  std::vector<size_t> d;            // one per stripe
  std::vector<ExtMatrix> stripes;   // d0 × d[x]

  // Compares mode, dimensions and entries; the poset is assumed shared.
  friend bool operator==(const MatrixRep& a, const MatrixRep& b) { return a.mode == b.mode && a.d0 == b.d0 && a.d == b.d && a.stripes == b.stripes; }
  friend bool operator!=(const MatrixRep& a, const MatrixRep& b) { return !(a == b); }
};

// T_0 and T_x are invertible.  cross[{y, x}] holds, for y < x:
//   corep: one d_y × d_x matrix over R_{y,x} ⊆ G;
//   rep:   l(y,x) matrices L_i over K(x), the coefficients of T_{y,x} in the
//          chosen R_x-basis τ_1..τ_l of R_{y,x}.
struct Transformation {
  ExtMatrix t0;
  std::vector<ExtMatrix> tx;
  std::map<std::pair<size_t, size_t>, std::vector<ExtMatrix>> cross;
};

// How R_{y,x} looks for p-equipped posets, with its τ-basis:
//   strong_strong: ε        weak_strong: m_{ξ^{i-1}}ε (p of them)
//   strong_weak:   ε        weak_weak:   ϑ^{j-1}, j ≤ degree
enum class TauCase { strong_strong, strong_weak, weak_strong, weak_weak };

enum class Transport { chi, phi, rho };

// The algebraic data behind the matrix problem of one (mode, poset, tower):
// the system extended by 0 and m, the generators v_{0,x} of R_{0,x} and the
// scalar transports χ_{y,x}, φ_x, ρ_x.  Throws NotOneDimensional when some
// R_{0,x} is not generated by v_{0,x}.
class MatrixProblem {
 public:
  MatrixProblem(RepKind mode, const EquippedPoset& P, const Tower& t);

  RepKind mode() const { return mode_; }
  const EquippedPoset& poset() const { return poset_; }
  const Tower& tower() const { return tower_; }
  const MultSystem& system() const { return system_; }
  const AlgebraPtr& algebra() const { return algebra_; }

  size_t stripes() const { return stripe_point_.size(); }
  const std::string& stripe_name(size_t x) const;
  // Index of stripe x (or of "0") inside the system.
  size_t point(size_t x) const { return stripe_point_[x]; }
  size_t zero_point() const { return zero_; }
  bool less(size_t y, size_t x) const;
  int degree(size_t y, size_t x) const;
  bool strong(size_t x) const;

  // dim_F K(x): the coefficient field of stripe x (rep) or of T_x (corep).
  size_t field_dim(size_t x) const;
  // An F-basis of the coefficients allowed in T_x and in cross[{y,x}].
  std::vector<ExtElement> tx_basis(size_t x) const;
  std::vector<ExtElement> cross_basis(size_t y, size_t x) const;
  std::vector<ExtElement> t0_basis() const;
  std::vector<ExtElement> stripe_basis(size_t x) const;
  // Number of cross matrices for y < x: 1 for coreps, l(y,x) for reps.
  size_t cross_count(size_t y, size_t x) const;

  const Matrix& generator(size_t x) const { return v_[x]; }
  // Ambient-level transports; arguments and results are ambient rows.
  Matrix chi(size_t y, size_t x, const Matrix& r) const;
  Matrix phi(size_t x, const Matrix& z) const;  // corep: R_x → R_0
  Matrix rho(size_t x, const Matrix& a) const;  // rep: R_0 → R_x
  Matrix transport(Transport kind, size_t y, size_t x, const Matrix& arg) const;

  // rep: the isomorphism R_x → K(x), ε_x m_a ε_x ↦ a, and its inverse.  The
  // point index 'stripes()' stands for 0.  corep: coordinates in G.
  ExtElement to_field(size_t x, const Matrix& r) const;
  Matrix from_field(size_t x, const ExtElement& a) const;

  TauCase tau_case(size_t y, size_t x) const;
  const std::vector<Matrix>& tau(size_t y, size_t x) const;
  // u_i^{y,x}(b) = φ_x(χ_{y,x}(φ_y^{-1}(b) τ_i)), computed from the system.
  ExtElement u_factor(size_t y, size_t x, size_t i, const ExtElement& b) const;

  // Elements with F-coordinates allowed, for membership checks.
  bool in_stripe_field(size_t x, const ExtElement& a) const;

 private:
  struct LinearMap {
    la::Coordinates domain;
    Matrix images;  // row k: image of domain basis k
    Matrix operator()(const Matrix& r) const;
  };
  size_t key(size_t y, size_t x) const { return y * (stripes() + 1) + x; }
  const Matrix& stripe_space(size_t y, size_t x) const;

  RepKind mode_;
  EquippedPoset poset_;
  Tower tower_;
  MultSystem system_;
  AlgebraPtr algebra_;
  std::vector<size_t> stripe_point_;
  size_t zero_ = 0;
  std::vector<Matrix> v_;  // indexed by stripe, then 0
  std::map<size_t, LinearMap> chi_;
  std::vector<LinearMap> side_;  // phi (corep) or rho (rep), per stripe
  std::vector<LinearMap> field_;
  std::map<size_t, std::vector<Matrix>> tau_;
  std::map<size_t, std::vector<Matrix>> u_;  // per (y,x): u_i as p×p over G-coordinates
};

// Empty iff shapes match and every entry lies in its coefficient field.
std::vector<std::string> validate(const MatrixProblem& mp, const MatrixRep& M);
std::vector<std::string> validate(const MatrixProblem& mp, const MatrixRep& M, const Transformation& T);

MatrixRep zero_matrix_rep(const MatrixProblem& mp, size_t d0, const std::vector<size_t>& d);
MatrixRep random_matrix_rep(const MatrixProblem& mp, size_t d0, const std::vector<size_t>& d, Rng& rng);
Transformation identity_transform(const MatrixProblem& mp, const MatrixRep& N);
Transformation random_transform(const MatrixProblem& mp, const MatrixRep& N, Rng& rng);

// The evaluation of T on N given by the general theorems: χ, φ, ρ and u_i
// come from the multiplicative system.  Throws ShapeMismatch, NotInvertible.
MatrixRep apply_transform(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N);
// The same through the closed forms for p-equipped posets (Re and ϑ).
MatrixRep apply_closed_form(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N);
// second ∘ first: apply(compose(b, a), N) = apply(b, apply(a, N)).
Transformation compose(const MatrixProblem& mp, const Transformation& second, const Transformation& first, const MatrixRep& N);

// One rank per down-set of stripes (in a fixed enumeration order); invariant
// under every transformation.
std::vector<size_t> rank_invariants(const MatrixProblem& mp, const MatrixRep& M);
std::vector<std::vector<size_t>> stripe_down_sets(const MatrixProblem& mp);

// Basis of the morphism space: tuples (S, T_x, T_{yx}) with
// S·M_x = N_x T_x + Σ_{y<x} (cross terms of N), with ρ_x(S) in place of S for
// reps; unknowns over F.
struct MorphismSpace {
  std::vector<Transformation> basis;  // t0 holds S
};
MorphismSpace morphisms(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N);

struct EquivResult {
  mod::Answer answer = mod::Answer::unknown;
  std::optional<Transformation> witness;  // apply_transform(witness, N) = M
  std::string certificate;
};
// Throws ModeMismatch when the two sides belong to different problems.
EquivResult is_equivalent(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N, u64 budget = 200000, u64 seed = 1);

// The object φ_M: ⊕(e_xΛ)^{d_x} → (e_0Λ)^{d_0} of a matrix representation,
// and the stripes read back from such an object.
PresentationObject to_object(const MatrixProblem& mp, const MatrixRep& M);
MatrixRep from_object(const MatrixProblem& mp, const PresentationObject& o);
// Cok(φ_M), the module-side view used as an independent oracle.
LambdaModule cok_module(const MatrixProblem& mp, const MatrixRep& M);
// dims equal and Cok(φ_M) ≅ Cok(φ_N).
mod::Answer oracle_equivalent(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N, u64 seed = 1);

// u(R)ε → F → minimal presentation → stripes.
MatrixRep extract_matrix_rep(const MatrixProblem& mp, const Representation& R);

}  // namespace eqp
