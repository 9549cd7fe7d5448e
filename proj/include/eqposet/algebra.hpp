#pragma once

// The block algebra Λ(R) = ⊕ e_{i,j} R_{i,j} given by sparse structure
// constants, and finite-dimensional right modules over it given by action
// blocks.  Every categorical construction reduces to Gaussian elimination.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqposet/mult_system.hpp"

namespace eqp {

class IncidenceAlgebra;
using AlgebraPtr = std::shared_ptr<const IncidenceAlgebra>;

struct AlgebraBasis {
  size_t src, tgt;
  // Ambient vector when the algebra comes from a multiplicative system.
  std::optional<Matrix> ambient;
};

class IncidenceAlgebra {
 public:
  // Throws NonAssociative when a basis product leaves its block.
  static AlgebraPtr from_system(const MultSystem& S);

  AlgebraPtr opposite() const;
  // Λ̃ = (R_m E; 0 Λ) with E = D(Λe_m): a new minimal point "~0" placed first.
  AlgebraPtr tilde(size_t m) const;

  size_t points() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  std::optional<size_t> find(const std::string& n) const;
  size_t dim() const { return basis_.size(); }
  u32 ch() const { return tower_.ch(); }
  const Tower& tower() const { return tower_; }

  const AlgebraBasis& basis(size_t k) const { return basis_[k]; }
  size_t src(size_t k) const { return basis_[k].src; }
  size_t tgt(size_t k) const { return basis_[k].tgt; }
  // Indices of the basis elements lying in e_i Λ e_j.
  const std::vector<size_t>& block(size_t i, size_t j) const { return blocks_[i * points() + j]; }
  // Position of basis element k inside its block.
  size_t pos(size_t k) const { return pos_[k]; }
  bool in_radical(size_t k) const { return src(k) != tgt(k); }

  // b_a b_b as a sparse list over the basis (empty when zero).
  const std::vector<std::pair<size_t, Scalar>>& product(size_t a, size_t b) const { return prod_[a * dim() + b]; }
  // Coordinates of the unit of R_i inside block (i,i).
  const Matrix& unit(size_t i) const { return units_[i]; }
  Matrix unit_element(size_t i) const;

  // Full coordinate vectors (1×dim).
  Matrix mul(const Matrix& x, const Matrix& y) const;

  // S together with a complement of J² in J; they generate Λ.
  const std::vector<size_t>& generators() const { return gens_; }

  // Empty iff products are associative and the units act trivially.
  std::vector<std::string> check() const;

  bool same_shape(const IncidenceAlgebra& o) const;

 private:
  IncidenceAlgebra() = default;
  void index();

  Tower tower_{TowerConfig{}};
  std::vector<std::string> names_;
  std::vector<AlgebraBasis> basis_;
  std::vector<std::vector<size_t>> blocks_;
  std::vector<size_t> pos_;
  std::vector<std::vector<std::pair<size_t, Scalar>>> prod_;
  std::vector<Matrix> units_;
  std::vector<size_t> gens_;
};

// A right Λ-module M = ⊕ Me_i.  act(k) is the d_src × d_tgt block by which
// the basis element k maps Me_src to Me_tgt (row vectors).
class LambdaModule {
 public:
  LambdaModule() = default;
  LambdaModule(AlgebraPtr alg, std::vector<size_t> dims);

  const AlgebraPtr& algebra() const { return alg_; }
  const IncidenceAlgebra& A() const { return *alg_; }
  u32 ch() const { return alg_->ch(); }
  size_t dim() const { return total_; }
  size_t dim(size_t i) const { return dims_[i]; }
  const std::vector<size_t>& dims() const { return dims_; }
  size_t offset(size_t i) const { return off_[i]; }

  const Matrix& act(size_t k) const { return act_[k]; }
  void set_act(size_t k, Matrix m);
  // Action of a general element (full coordinates) as a dim×dim matrix.
  Matrix action(const Matrix& x) const;
  Matrix full_act(size_t k) const;

  // Empty iff the action respects the structure constants and the units.
  std::vector<std::string> check() const;

  friend bool operator==(const LambdaModule& a, const LambdaModule& b) { return a.dims_ == b.dims_ && a.act_ == b.act_; }

 private:
  AlgebraPtr alg_;
  std::vector<size_t> dims_, off_;
  size_t total_ = 0;
  std::vector<Matrix> act_;
};

// Per-point subspaces of a module (rows are vectors of Me_i).
using Subspaces = std::vector<Matrix>;

namespace mod {

LambdaModule zero(const AlgebraPtr& A);
// e_i Λ with basis the algebra basis of the blocks (i, j).
LambdaModule projective(const AlgebraPtr& A, size_t i);
LambdaModule regular(const AlgebraPtr& A);
LambdaModule direct_sum(const LambdaModule& M, const LambdaModule& N);
LambdaModule power(const LambdaModule& M, size_t k);
// The direct sum ⊕_i (e_iΛ)^{mult_i}.
LambdaModule free_module(const AlgebraPtr& A, const std::vector<size_t>& mult);
// The generator e_i of each summand of free_module(A, mult), summands ordered
// by point and then by copy.
std::vector<Matrix> free_generators(const AlgebraPtr& A, const std::vector<size_t>& mult);
// The map free_module(A, mult) → N sending the generator of summand s to
// images[s] ∈ N e_i (full 1×dim N rows).
Matrix map_from_free(const AlgebraPtr& A, const std::vector<size_t>& mult, const std::vector<Matrix>& images, const LambdaModule& N);

// D(M) over Aop, which must be the opposite algebra of M's.
LambdaModule dual(const LambdaModule& M, const AlgebraPtr& Aop);

// Module maps are dim(M)×dim(N) matrices, block diagonal over the points.
std::vector<Matrix> hom(const LambdaModule& M, const LambdaModule& N);
bool is_hom(const LambdaModule& M, const LambdaModule& N, const Matrix& h);

Subspaces split(const LambdaModule& M, const Matrix& vectors);
Matrix join(const LambdaModule& M, const Subspaces& s);
Subspaces image(const LambdaModule& M, const LambdaModule& N, const Matrix& h);
Subspaces kernel(const LambdaModule& M, const Matrix& h);
// Smallest submodule containing the given vectors of M.
Subspaces generated(const LambdaModule& M, const Matrix& vectors);
bool is_submodule(const LambdaModule& M, const Subspaces& s);

struct Sub {
  LambdaModule module;
  Matrix inclusion;  // dim(sub) × dim(M)
};
struct Quot {
  LambdaModule module;
  Matrix projection;  // dim(M) × dim(quotient)
};
Sub submodule(const LambdaModule& M, const Subspaces& s);
Quot quotient(const LambdaModule& M, const Subspaces& s);
Quot cokernel(const LambdaModule& M, const LambdaModule& N, const Matrix& h);

Subspaces socle(const LambdaModule& M);
Subspaces radical(const LambdaModule& M);
// dim_F of the top at each point.
std::vector<size_t> top_dims(const LambdaModule& M);
std::vector<size_t> support(const Subspaces& s);

struct Cover {
  std::vector<size_t> mult;  // copies of each e_iΛ
  LambdaModule P;
  Matrix eta;  // P → M, surjective with kernel in rad P
};
Cover projective_cover(const LambdaModule& M);

struct Presentation {
  Cover p0;
  Cover p1;      // cover of ker η
  Matrix map;    // P_1 → P_0
};
Presentation min_presentation(const LambdaModule& M);

bool is_projective(const LambdaModule& M);
bool is_injective(const LambdaModule& M, const AlgebraPtr& Aop);

// dim_{R_m} Me_m.
size_t nu(const LambdaModule& M, size_t m);

enum class Answer { yes, no, unknown };
std::string to_string(Answer a);

struct IsoResult {
  Answer answer;
  std::optional<Matrix> witness;
  std::string reason;
};

// Searches Hom(M,N) for an invertible element: random combinations, then
// exhaustive enumeration for finite F, or a grid of size exceeding the degree
// of the determinant over GF(p)(s).  budget bounds the number of candidates.
IsoResult is_isomorphic(const LambdaModule& M, const LambdaModule& N, u64 seed = 1, u64 budget = 200000);

}  // namespace mod

// Socle, peak and Gorenstein properties of Λ.
struct PeakFlags {
  bool right_peak = false;
  bool left_peak = false;
  bool one_gorenstein = false;
};

// right_peak: soc Λ_Λ is a sum of copies of the simple projective e_mΛ;
// left_peak: the same for the left socle against Λe_z.  one_gorenstein:
// every indecomposable injective D(Λe_j) occurring in E(Λ_Λ) is projective.
PeakFlags peak_checks(const AlgebraPtr& A, size_t m, std::optional<size_t> z);
bool one_gorenstein(const AlgebraPtr& A);

// E = D(Λe_m) as a right Λ-module.
LambdaModule injective_envelope_simple(const AlgebraPtr& A, size_t m);
// D(Λe_j) for any j.
LambdaModule injective_indecomposable(const AlgebraPtr& A, size_t j);

// Embedding M → (e_0Λ)^ν built greedily from Hom(M, e_0Λ).
struct Envelope {
  size_t nu;
  LambdaModule E;
  Matrix i;  // M → E
};
// Throws NotInU unless Me_z = 0 and the socle of M lies at m.
Envelope envelope_in_U(const LambdaModule& M, size_t z, size_t m);
// F(M) = Coker i_M.
LambdaModule functor_F_UtoV(const LambdaModule& M, size_t z, size_t m);

// An object φ: P → (e_zΛ)^ν of the category of maps between projectives,
// with P = free_module(mult) having no summand at z.
struct PresentationObject {
  AlgebraPtr algebra;
  size_t zero = 0;
  std::vector<size_t> mult;
  size_t nu = 0;
  Matrix phi;  // dim P × dim (e_zΛ)^ν

  LambdaModule source() const;
  LambdaModule target() const;
};

// Empty iff Pe_z = 0, φ is a module map and Im φ ⊆ rad (e_zΛ)^ν.
std::vector<std::string> validate(const PresentationObject& o);
// Cok(φ) = (e_zΛ)^ν / Im φ.
LambdaModule cok(const PresentationObject& o);
// u ↦ F(u) ↦ its presentation: the cover of M composed with i_M.
PresentationObject presentation_in_U(const LambdaModule& M, size_t z, size_t m);

}  // namespace eqp
