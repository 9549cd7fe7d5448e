#pragma once

// Representations (V, r; V_x) and corepresentations (V; V_x) of equipped
// posets.  A G-space of G-dimension n is stored as F^{pn} with the action of
// ξ given by X = blockdiag Θ(μ_ξ); G-subspaces are the X-stable F-subspaces.

#include <vector>

#include "eqposet/algebra.hpp"

namespace eqp {

enum class RepKind { rep, corep };
std::string to_string(RepKind k);

struct Representation {
  RepKind kind = RepKind::corep;
  EquippedPoset poset;
  Tower tower{TowerConfig{}};
  size_t n = 0;             // G-dimension of V
  Matrix r;                 // rep only: pn×pn, v ↦ v·r
  std::vector<Matrix> sub;  // per point: F-basis of V_x (rows)

  size_t fdim() const { return tower.p() * n; }
  Matrix X() const;
};

// blockdiag Θ(μ_ξ) and blockdiag Θ(ϑ) on F^{pn}.
Matrix xi_action(const Tower& t, size_t n);
Matrix standard_operator(const Tower& t, size_t n);
// The F-matrix of right multiplication by an n×m matrix over G.
Matrix g_linear(const Tower& t, const std::vector<std::vector<ExtElement>>& g);

// Smallest G-subspace (resp. r-stable G-subspace) containing the rows.
Matrix g_span(const Matrix& rows, const Matrix& X);
Matrix operator_span(const Matrix& rows, const Matrix& X, const Matrix& r);

// Empty iff the operator axioms and all containments hold.
std::vector<std::string> validate(const Representation& R);

Representation zero_rep(RepKind kind, const EquippedPoset& P, const Tower& t);
Representation direct_sum(const Representation& a, const Representation& b);
// Basis of the G-linear maps V → V' commuting with r and mapping V_x into V'_x.
std::vector<Matrix> hom_space(const Representation& a, const Representation& b);
bool is_morphism(const Representation& a, const Representation& b, const Matrix& psi);

// Random valid object: r is conjugate to the standard operator by a random
// G-automorphism; subspaces are random and closed upward along the order.
Representation random_rep(RepKind kind, const EquippedPoset& P, const Tower& t, size_t n, Rng& rng);
Representation random_rep(RepKind kind, const EquippedPoset& P, const Tower& t, size_t n, u64 seed);
// The image of a random G-automorphism commuting with r.
Representation random_isomorphic(const Representation& R, Rng& rng);

// Representation of the ambient algebra on V: elements of G act through X,
// elements of M_p(F) through v ↦ Σ c_{ij} r^i(v)ξ^j after writing them in the
// basis Θ(ϑ)^iΘ(μ_{ξ^j}).
class AmbientAction {
 public:
  AmbientAction(const AmbientAlgebra& A, const Representation& R);
  Matrix operator()(const Matrix& element) const;

 private:
  AmbientAlgebra::Kind kind_;
  std::vector<Matrix> powers_;  // R^i X^j at index i*p + j
  Matrix change_;               // ambient coordinates -> (i,j) coordinates
  u32 p_;
};

// u(L̃): Me_x = V_x·ρ(1_x) with V_m = V and V_0 = 0 for the extension
// points; the moritized system gives u(L̃)ε.
struct UModule {
  LambdaModule module;
  std::vector<Matrix> basis;  // per point: basis of Me_x inside V
};
UModule functor_u(const Representation& R, const MultSystem& S, const AlgebraPtr& A);
// u(ψ) for ψ: R → R'.
Matrix functor_u_map(const UModule& a, const UModule& b, const Matrix& psi);

// The system matching the kind: Q for coreps, T (optionally moritized) for
// reps, on P extended by m and optionally by 0.
struct SystemBundle {
  MultSystem system;
  AlgebraPtr algebra;
};
SystemBundle system_for(RepKind kind, const EquippedPoset& P, const Tower& t, bool with_zero, bool moritized);

// Reconstructs Ñ with u(Ñ) = Y from a submodule Y of u(L̃).  T is the
// unmoritized system, so that N_x = (Ye_x)·ρ(T_x) also covers u(L̃)ε.
struct SubRep {
  Representation rep;
  Matrix embedding;  // G-linear, commutes with r: F^{pn'} → F^{pn}
};
SubRep subrepresentation(const Representation& R, const UModule& U, const Subspaces& Y, const MultSystem& unmoritized);

// Generalized equipment over the cyclic Galois group: s is semilinear with
// s(va) = s(v)σ(a) and s^n = id, and Σ_{k∈Δ_{xy}} s^k(V_x) ⊆ V_y.
struct GammaRepresentation {
  EquippedPoset order;
  GeneralizedEquipment gamma;
  Tower tower{TowerConfig{}};
  size_t n = 0;
  Matrix s;
  std::vector<Matrix> sub;
};

std::vector<std::string> validate(const GammaRepresentation& R);
// Degree l becomes {σ^0, ..., σ^{l-1}}; separable towers only.
GammaRepresentation to_gamma(const Representation& R);

}  // namespace eqp
