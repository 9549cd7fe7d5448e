#include "eqposet/matrix.hpp"

#include <sstream>

#include "eqposet/error.hpp"

namespace eqp {

Matrix::Matrix(size_t rows, size_t cols, u32 ch) : r_(rows), c_(cols), ch_(ch), a_(rows * cols) {}

Matrix Matrix::identity(size_t n, u32 ch) {
  Matrix m(n, n, ch);
  for (size_t i = 0; i < n; ++i) m(i, i) = Scalar::constant(ch, 1);
  return m;
}

Matrix Matrix::row_vector(const std::vector<Scalar>& v, u32 ch) {
  Matrix m(1, v.size(), ch);
  for (size_t j = 0; j < v.size(); ++j) m(0, j) = v[j];
  return m;
}

std::vector<Scalar> Matrix::row_values(size_t i) const {
  return std::vector<Scalar>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
}

Matrix Matrix::block(size_t r0, size_t c0, size_t nr, size_t nc) const {
  if (r0 + nr > r_ || c0 + nc > c_) throw ShapeMismatch("block out of range");
  Matrix b(nr, nc, ch_);
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

void Matrix::set_block(size_t r0, size_t c0, const Matrix& b) {
  if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw ShapeMismatch("set_block out of range");
  for (size_t i = 0; i < b.r_; ++i)
    for (size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Matrix Matrix::transpose() const {
  Matrix t(c_, r_, ch_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::select_rows(const std::vector<size_t>& idx) const {
  Matrix m(idx.size(), c_, ch_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (size_t j = 0; j < c_; ++j) m(i, j) = (*this)(idx[i], j);
  return m;
}

Matrix Matrix::select_cols(const std::vector<size_t>& idx) const {
  Matrix m(r_, idx.size(), ch_);
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (r_ != c_) return false;
  for (size_t i = 0; i < r_; ++i)
    for (size_t j = 0; j < c_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.r_) throw ShapeMismatch("product of " + std::to_string(a.r_) + "x" + std::to_string(a.c_) + " and " + std::to_string(b.r_) + "x" + std::to_string(b.c_));
  Matrix m(a.r_, b.c_, a.ch_ ? a.ch_ : b.ch_);
  for (size_t i = 0; i < a.r_; ++i)
    for (size_t k = 0; k < a.c_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (size_t j = 0; j < b.c_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) m(i, j) += x * y;
      }
    }
  return m;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_ || a.c_ != b.c_) throw ShapeMismatch("sum of different shapes");
  Matrix m = a;
  for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
  if (!m.ch_) m.ch_ = b.ch_;
  return m;
}

Matrix& Matrix::operator+=(const Matrix& b) { return *this = *this + b; }

Matrix Matrix::operator-() const {
  Matrix m = *this;
  for (auto& x : m.a_) x = -x;
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix m = a;
  for (auto& x : m.a_) x = s * x;
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.r_ != b.r_) throw ShapeMismatch("hcat row mismatch");
  Matrix m(a.r_, a.c_ + b.c_, a.ch_ ? a.ch_ : b.ch_);
  m.set_block(0, 0, a);
  m.set_block(0, a.c_, b);
  return m;
}

Matrix Matrix::vcat(const Matrix& a, const Matrix& b) {
  if (a.c_ != b.c_) throw ShapeMismatch("vcat column mismatch");
  Matrix m(a.r_ + b.r_, a.c_, a.ch_ ? a.ch_ : b.ch_);
  m.set_block(0, 0, a);
  m.set_block(a.r_, 0, b);
  return m;
}

Matrix Matrix::vcat(const std::vector<Matrix>& parts, size_t cols, u32 ch) {
  size_t n = 0;
  for (const auto& p : parts) {
    if (p.rows() && p.cols() != cols) throw ShapeMismatch("vcat column mismatch");
    n += p.rows();
  }
  Matrix m(n, cols, ch);
  size_t r = 0;
  for (const auto& p : parts) {
    if (!p.rows()) continue;
    m.set_block(r, 0, p);
    r += p.rows();
  }
  return m;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks, u32 ch) {
  size_t r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Matrix m(r, c, ch);
  r = c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix Matrix::pow(unsigned e) const {
  Matrix r = identity(r_, ch_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < r_; ++i) {
    if (i) os << "; ";
    for (size_t j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j).str();
  }
  os << ']';
  return os.str();
}

namespace la {

Echelon rref(const Matrix& a) {
  Matrix m = a;
  size_t rows = m.rows(), cols = m.cols();
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t sel = rows;
    for (size_t i = r; i < rows; ++i)
      if (!m(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (size_t j = 0; j < cols; ++j) std::swap(m(sel, j), m(r, j));
    Scalar inv = m(r, c).inv();
    for (size_t j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Scalar f = m(i, c);
      for (size_t j = c; j < cols; ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return {m.block(0, 0, r, cols), piv};
}

size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return rref(a).pivots.size();
}

Matrix kernel(const Matrix& a) {
  u32 ch = a.characteristic();
  Echelon e = rref(a);
  size_t n = a.cols();
  std::vector<bool> is_piv(n, false);
  for (size_t c : e.pivots) is_piv[c] = true;
  Matrix k(n - e.pivots.size(), n, ch);
  size_t row = 0;
  for (size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    k(row, f) = Scalar::constant(ch, 1);
    for (size_t i = 0; i < e.pivots.size(); ++i) k(row, e.pivots[i]) = -e.R(i, f);
    ++row;
  }
  return k;
}

Matrix left_kernel(const Matrix& a) { return kernel(a.transpose()); }

std::optional<Matrix> solve_left(const Matrix& a, const Matrix& b) {
  // X A = B  <=>  A^T X^T = B^T; solve column by column via rref of [A^T | B^T].
  if (a.cols() != b.cols()) throw ShapeMismatch("solve_left shape mismatch");
  u32 ch = a.characteristic() ? a.characteristic() : b.characteristic();
  Matrix aug = Matrix::hcat(a.transpose(), b.transpose());
  Echelon e = rref(aug);
  size_t n = a.rows();
  Matrix x(b.rows(), n, ch);
  for (size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] >= n) return std::nullopt;
    for (size_t j = 0; j < b.rows(); ++j) x(j, e.pivots[i]) = e.R(i, n + j);
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("inverse of non-square matrix");
  size_t n = a.rows();
  if (n == 0) return Matrix(0, 0, a.characteristic());
  Echelon e = rref(Matrix::hcat(a, Matrix::identity(n, a.characteristic())));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.R.block(0, n, n, n);
}

bool invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

Scalar det(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("det of non-square matrix");
  u32 ch = a.characteristic();
  Matrix m = a;
  size_t n = m.rows();
  Scalar d = Scalar::constant(ch, 1);
  for (size_t c = 0; c < n; ++c) {
    size_t sel = n;
    for (size_t i = c; i < n; ++i)
      if (!m(i, c).is_zero()) {
        sel = i;
        break;
      }
    if (sel == n) return Scalar::constant(ch, 0);
    if (sel != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      d = -d;
    }
    d = d * m(c, c);
    Scalar inv = m(c, c).inv();
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Scalar f = m(i, c) * inv;
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

Matrix row_space(const Matrix& a) { return rref(a).R; }

Matrix sum(const Matrix& u, const Matrix& v) { return row_space(Matrix::vcat(u, v)); }

Matrix intersect(const Matrix& u, const Matrix& v) {
  // x in U ∩ V  <=>  x = aU = bV; solve [U; -V]-left kernel.
  if (u.rows() == 0 || v.rows() == 0) return Matrix(0, u.cols(), u.characteristic());
  Matrix k = left_kernel(Matrix::vcat(u, -v));
  Matrix a = k.block(0, 0, k.rows(), u.rows());
  return row_space(a * u);
}

bool contains(const Matrix& space, const Matrix& vectors) {
  if (vectors.rows() == 0) return true;
  size_t r = rank(space);
  return rank(Matrix::vcat(space, vectors)) == r;
}

bool same_space(const Matrix& u, const Matrix& v) { return row_space(u) == row_space(v); }

Matrix complement(const Matrix& u, size_t n) {
  u32 ch = u.characteristic();
  Echelon e = rref(u);
  std::vector<bool> is_piv(n, false);
  for (size_t c : e.pivots) is_piv[c] = true;
  std::vector<Matrix> rows;
  for (size_t c = 0; c < n; ++c)
    if (!is_piv[c]) {
      Matrix r(1, n, ch);
      r(0, c) = Scalar::constant(ch, 1);
      rows.push_back(r);
    }
  return Matrix::vcat(rows, n, ch);
}

Coordinates::Coordinates(const Matrix& basis) : basis_(basis) {
  Echelon e = rref(basis);
  if (e.pivots.size() != basis.rows()) throw Error("coordinates: basis rows are dependent");
  pivots_ = e.pivots;
  auto inv = inverse(basis.select_cols(pivots_));
  inv_ = *inv;
}

std::optional<Matrix> Coordinates::try_of(const Matrix& v) const {
  if (basis_.rows() == 0) {
    if (!v.is_zero()) return std::nullopt;
    return Matrix(v.rows(), 0, v.characteristic());
  }
  Matrix c = v.select_cols(pivots_) * inv_;
  if (c * basis_ != v) return std::nullopt;
  return c;
}

Matrix Coordinates::of(const Matrix& v) const {
  auto c = try_of(v);
  if (!c) throw Error("coordinates: vector outside the span");
  return *c;
}

bool Eliminator::add(std::vector<Scalar> row) {
  if (pivot_row_.empty()) pivot_row_.assign(cols_, -1);
  for (size_t k = 0; k < rows_.size(); ++k) {
    const Scalar& f = row[pivot_[k]];
    if (f.is_zero()) continue;
    Scalar g = f;
    const auto& pr = rows_[k];
    for (size_t j = 0; j < cols_; ++j)
      if (!pr[j].is_zero()) row[j] -= g * pr[j];
  }
  size_t p = cols_;
  for (size_t j = 0; j < cols_; ++j)
    if (!row[j].is_zero()) {
      p = j;
      break;
    }
  if (p == cols_) return false;
  Scalar inv = row[p].inv();
  for (size_t j = p; j < cols_; ++j)
    if (!row[j].is_zero()) row[j] = row[j] * inv;
  for (auto& other : rows_) {
    if (other[p].is_zero()) continue;
    Scalar f = other[p];
    for (size_t j = p; j < cols_; ++j)
      if (!row[j].is_zero()) other[j] -= f * row[j];
  }
  pivot_row_[p] = static_cast<int>(rows_.size());
  pivot_.push_back(p);
  rows_.push_back(std::move(row));
  return true;
}

Matrix Eliminator::null_space() const {
  std::vector<int> pr = pivot_row_;
  if (pr.empty()) pr.assign(cols_, -1);
  Matrix k(cols_ - rows_.size(), cols_, ch_);
  size_t r = 0;
  for (size_t f = 0; f < cols_; ++f) {
    if (pr[f] >= 0) continue;
    k(r, f) = Scalar::constant(ch_, 1);
    for (size_t i = 0; i < rows_.size(); ++i) k(r, pivot_[i]) = -rows_[i][f];
    ++r;
  }
  return k;
}

Matrix Eliminator::basis() const {
  Matrix m(rows_.size(), cols_, ch_);
  for (size_t i = 0; i < rows_.size(); ++i)
    for (size_t j = 0; j < cols_; ++j) m(i, j) = rows_[i][j];
  return m;
}

}  // namespace la

}  // namespace eqp
