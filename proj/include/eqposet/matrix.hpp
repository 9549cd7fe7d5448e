#pragma once

// Dense matrices over Scalar and the exact linear algebra kernel.  Vectors
// are rows; a matrix A acts on a row vector v as v*A.  Subspaces are
// represented by matrices whose rows form a basis.

#include <optional>
#include <string>
#include <vector>

#include "eqposet/scalar.hpp"

namespace eqp {

class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, u32 ch);

  static Matrix identity(size_t n, u32 ch);
  static Matrix row_vector(const std::vector<Scalar>& v, u32 ch);

  size_t rows() const { return r_; }
  size_t cols() const { return c_; }
  u32 characteristic() const { return ch_; }
  bool empty() const { return r_ == 0 || c_ == 0; }

  Scalar& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
  const Scalar& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

  Matrix row(size_t i) const { return block(i, 0, 1, c_); }
  Matrix col(size_t j) const { return block(0, j, r_, 1); }
  std::vector<Scalar> row_values(size_t i) const;
  Matrix block(size_t r0, size_t c0, size_t nr, size_t nc) const;
  void set_block(size_t r0, size_t c0, const Matrix& b);
  Matrix transpose() const;
  Matrix select_rows(const std::vector<size_t>& idx) const;
  Matrix select_cols(const std::vector<size_t>& idx) const;

  bool is_zero() const;
  bool is_identity() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  Matrix operator-() const;
  Matrix& operator+=(const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  static Matrix hcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const Matrix& a, const Matrix& b);
  static Matrix vcat(const std::vector<Matrix>& parts, size_t cols, u32 ch);
  static Matrix block_diag(const std::vector<Matrix>& blocks, u32 ch);

  Matrix pow(unsigned e) const;
  std::string str() const;

 private:
  size_t r_ = 0, c_ = 0;
  u32 ch_ = 0;
  std::vector<Scalar> a_;
};

namespace la {

struct Echelon {
  Matrix R;                   // reduced row echelon form, zero rows dropped
  std::vector<size_t> pivots;  // pivot column of each row of R
};

Echelon rref(const Matrix& a);
size_t rank(const Matrix& a);
// Basis (rows) of {x : A x^T = 0}.
Matrix kernel(const Matrix& a);
// Basis (rows) of {y : y A = 0}.
Matrix left_kernel(const Matrix& a);
// Some X with X A = B, if one exists.
std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b);
std::optional<Matrix> inverse(const Matrix& a);
bool invertible(const Matrix& a);
Scalar det(const Matrix& a);

// Canonical basis of the row space.
Matrix row_space(const Matrix& a);
Matrix sum(const Matrix& u, const Matrix& v);
Matrix intersect(const Matrix& u, const Matrix& v);
bool contains(const Matrix& space, const Matrix& vectors);
bool same_space(const Matrix& u, const Matrix& v);
// Rows extending a basis of u to a basis of the whole space of dim n.
Matrix complement(const Matrix& u, size_t n);

// Coordinates of row vectors in a basis given by rows.
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(const Matrix& basis);
  size_t dim() const { return basis_.rows(); }
  // Throws if v is not in the span.
  Matrix of(const Matrix& v) const;
  std::optional<Matrix> try_of(const Matrix& v) const;
  const Matrix& basis() const { return basis_; }

 private:
  Matrix basis_;
  std::vector<size_t> pivots_;
  Matrix inv_;  // inverse of basis restricted to pivot columns
};

// Incremental Gaussian elimination over a fixed number of columns.
class Eliminator {
 public:
  Eliminator(size_t cols, u32 ch) : cols_(cols), ch_(ch) {}
  // Reduces and stores the row; returns false if it was dependent.
  bool add(std::vector<Scalar> row);
  size_t rank() const { return rows_.size(); }
  size_t cols() const { return cols_; }
  // Basis of the solution space {x : r . x = 0 for all added rows}.
  Matrix null_space() const;
  Matrix basis() const;

 private:
  size_t cols_;
  u32 ch_;
  std::vector<std::vector<Scalar>> rows_;  // each row normalized at its pivot
  std::vector<size_t> pivot_;
  std::vector<int> pivot_row_;  // column -> row index or -1
};

}  // namespace la

}  // namespace eqp
