#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqposet/poset.hpp"
#include "eqposet/tower.hpp"

namespace eqp {

// Either G itself (dimension p, basis 1..ξ^{p-1}) or M_p(F) (dimension p²,
// row-major matrix units).  Elements are 1×dim row vectors.
class AmbientAlgebra {
 public:
  enum class Kind { extension, matrices };

  static AmbientAlgebra extension(const Tower& t) { return AmbientAlgebra(Kind::extension, t); }
  static AmbientAlgebra matrices(const Tower& t) { return AmbientAlgebra(Kind::matrices, t); }

  Kind kind() const { return kind_; }
  const Tower& tower() const { return tower_; }
  size_t dim() const { return kind_ == Kind::extension ? tower_.p() : tower_.p() * tower_.p(); }
  u32 ch() const { return tower_.ch(); }

  Matrix unit() const;
  Matrix zero() const { return Matrix(1, dim(), ch()); }
  Matrix basis_element(size_t k) const;
  Matrix mul(const Matrix& u, const Matrix& v) const;

  // matrices kind only
  Matrix to_square(const Matrix& row) const;
  Matrix from_square(const Matrix& m) const;
  // extension kind only
  ExtElement to_ext(const Matrix& row) const { return tower_.from_row(row); }
  Matrix from_ext(const ExtElement& a) const { return tower_.coords(a); }

  // Products of all basis pairs, as a row space.
  Matrix product_space(const Matrix& u, const Matrix& v) const;

 private:
  AmbientAlgebra(Kind k, const Tower& t) : kind_(k), tower_(t) {}
  Kind kind_;
  Tower tower_;
};

// A_l = span{Θ(ϑ)^i Θ(μ_{ξ^j}) : i < l, j < p} ⊆ M_p(F), as a row space.
Matrix a_ell(const Tower& t, int ell);

class MultSystem {
 public:
  MultSystem(const EquippedPoset& P, const AmbientAlgebra& A);

  const EquippedPoset& poset() const { return poset_; }
  const AmbientAlgebra& ambient() const { return amb_; }
  size_t size() const { return poset_.size(); }

  // Row-reduced F-basis of R_{i,j} (i <= j).
  const Matrix& space(size_t i, size_t j) const { return spaces_[i][j]; }
  void set_space(size_t i, size_t j, const Matrix& basis);
  const Matrix& unit(size_t i) const { return units_[i]; }
  void set_unit(size_t i, const Matrix& u) { units_[i] = u; }
  size_t dim(size_t i, size_t j) const { return spaces_[i][j].rows(); }

  // Morita idempotents, present on systems produced by moritize().
  const std::vector<Matrix>& epsilons() const { return eps_; }
  bool moritized() const { return !eps_.empty(); }
  void set_epsilons(std::vector<Matrix> e) { eps_ = std::move(e); }

  // Empty iff products of basis elements stay inside and units act trivially.
  std::vector<std::string> check_M1_M2() const;
  // Empty iff every R_i is a field and no nonzero element of R_{i,j}
  // (j below the maximum) is killed by all R_{j,l}, l > j.
  std::vector<std::string> check_admissible(const std::string& maxpoint = "m") const;

 private:
  EquippedPoset poset_;
  AmbientAlgebra amb_;
  std::vector<std::vector<Matrix>> spaces_;
  std::vector<Matrix> units_;
  std::vector<Matrix> eps_;
};

MultSystem build_Q(const EquippedPoset& P, const Tower& t);
MultSystem build_T(const EquippedPoset& P, const Tower& t);
// R_{x,y} = ε_x T_{x,y} ε_y with ε = I on weak points and the diagonal
// matrix unit ε_{c,c} on strong points (c = component, 0 by default).
MultSystem moritize(const MultSystem& T, size_t component = 0);

struct FieldCheck {
  enum class Verdict { field, not_field, undecided } verdict;
  std::string reason;
};

// Decides whether the subalgebra with the given basis and unit is a field.
FieldCheck check_field(const AmbientAlgebra& A, const Matrix& basis, const Matrix& unit);

}  // namespace eqp
