#include "eqposet/algebra.hpp"

#include <algorithm>

#include "eqposet/error.hpp"

namespace eqp {

// ---------------------------------------------------------------------------
// IncidenceAlgebra

void IncidenceAlgebra::index() {
  size_t n = points();
  blocks_.assign(n * n, {});
  pos_.assign(basis_.size(), 0);
  for (size_t k = 0; k < basis_.size(); ++k) {
    auto& b = blocks_[basis_[k].src * n + basis_[k].tgt];
    pos_[k] = b.size();
    b.push_back(k);
  }
  // generators: all of S, then a complement of J² in each off-diagonal block
  gens_.clear();
  for (size_t i = 0; i < n; ++i)
    for (size_t k : block(i, i)) gens_.push_back(k);
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < n; ++l) {
      if (i == l || block(i, l).empty()) continue;
      const auto& bl = block(i, l);
      la::Eliminator el(bl.size(), ch());
      for (size_t j = 0; j < n; ++j) {
        if (j == i || j == l) continue;
        for (size_t a : block(i, j))
          for (size_t b : block(j, l)) {
            std::vector<Scalar> row(bl.size(), Scalar::constant(ch(), 0));
            for (const auto& [c, v] : product(a, b)) row[pos(c)] = v;
            el.add(row);
          }
      }
      for (size_t k : bl) {
        std::vector<Scalar> row(bl.size(), Scalar::constant(ch(), 0));
        row[pos(k)] = Scalar::constant(ch(), 1);
        if (el.add(row)) gens_.push_back(k);
      }
    }
}

std::optional<size_t> IncidenceAlgebra::find(const std::string& n) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == n) return i;
  return std::nullopt;
}

AlgebraPtr IncidenceAlgebra::from_system(const MultSystem& S) {
  auto A = std::shared_ptr<IncidenceAlgebra>(new IncidenceAlgebra());
  const EquippedPoset& P = S.poset();
  const AmbientAlgebra& amb = S.ambient();
  A->tower_ = amb.tower();
  A->names_ = P.names();
  size_t n = P.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (!P.leq(i, j)) continue;
      const Matrix& r = S.space(i, j);
      for (size_t k = 0; k < r.rows(); ++k) A->basis_.push_back({i, j, r.row(k)});
    }
  size_t d = A->basis_.size();
  // products are needed before index() computes generators
  A->blocks_.assign(n * n, {});
  A->pos_.assign(d, 0);
  for (size_t k = 0; k < d; ++k) {
    auto& b = A->blocks_[A->basis_[k].src * n + A->basis_[k].tgt];
    A->pos_[k] = b.size();
    b.push_back(k);
  }
  std::vector<la::Coordinates> co(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (P.leq(i, j)) co[i * n + j] = la::Coordinates(S.space(i, j));
  A->prod_.assign(d * d, {});
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      const auto& ba = A->basis_[a];
      const auto& bb = A->basis_[b];
      if (ba.tgt != bb.src) continue;
      Matrix pr = amb.mul(*ba.ambient, *bb.ambient);
      if (pr.is_zero()) continue;
      if (!P.leq(ba.src, bb.tgt)) throw NonAssociative("product lands outside the poset order");
      auto c = co[ba.src * n + bb.tgt].try_of(pr);
      if (!c) throw NonAssociative("product of basis elements of R_{" + P.name(ba.src) + "," + P.name(ba.tgt) + "} and R_{" + P.name(bb.src) + "," + P.name(bb.tgt) + "} leaves R_{" + P.name(ba.src) + "," + P.name(bb.tgt) + "}");
      const auto& bl = A->blocks_[ba.src * n + bb.tgt];
      for (size_t k = 0; k < c->cols(); ++k)
        if (!(*c)(0, k).is_zero()) A->prod_[a * d + b].push_back({bl[k], (*c)(0, k)});
    }
  for (size_t i = 0; i < n; ++i) {
    auto u = co[i * n + i].try_of(S.unit(i));
    if (!u) throw NonAssociative("unit of " + P.name(i) + " lies outside R_" + P.name(i));
    A->units_.push_back(*u);
  }
  A->index();
  return A;
}

AlgebraPtr IncidenceAlgebra::opposite() const {
  auto B = std::shared_ptr<IncidenceAlgebra>(new IncidenceAlgebra());
  B->tower_ = tower_;
  B->names_ = names_;
  B->basis_ = basis_;
  for (auto& b : B->basis_) std::swap(b.src, b.tgt);
  size_t d = dim();
  B->prod_.assign(d * d, {});
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) B->prod_[a * d + b] = prod_[b * d + a];
  B->units_ = units_;
  B->index();
  return B;
}

AlgebraPtr IncidenceAlgebra::tilde(size_t m) const {
  auto B = std::shared_ptr<IncidenceAlgebra>(new IncidenceAlgebra());
  B->tower_ = tower_;
  B->names_.push_back("~0");
  for (const auto& s : names_) B->names_.push_back(s);
  size_t n = points(), d = dim();
  std::vector<size_t> rm(d, SIZE_MAX), ef(d, SIZE_MAX), orig(d);
  for (size_t k : block(m, m)) {
    rm[k] = B->basis_.size();
    B->basis_.push_back({0, 0, std::nullopt});
  }
  for (size_t j = 0; j < n; ++j)
    for (size_t b : block(j, m)) {
      ef[b] = B->basis_.size();
      B->basis_.push_back({0, j + 1, std::nullopt});
    }
  for (size_t a = 0; a < d; ++a) {
    orig[a] = B->basis_.size();
    B->basis_.push_back({src(a) + 1, tgt(a) + 1, basis_[a].ambient});
  }
  size_t D = B->basis_.size();
  B->prod_.assign(D * D, {});
  auto coeff = [&](size_t a, size_t b, size_t target) {
    for (const auto& [c, v] : product(a, b))
      if (c == target) return v;
    return Scalar::constant(ch(), 0);
  };
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      for (const auto& [c, v] : product(a, b)) {
        B->prod_[orig[a] * D + orig[b]].push_back({orig[c], v});
        if (rm[a] != SIZE_MAX && rm[b] != SIZE_MAX) B->prod_[rm[a] * D + rm[b]].push_back({rm[c], v});
      }
    }
  // r·b_k* = Σ_l b_k*(b_l r) b_l*  and  b_k*·a = Σ_l b_k*(a b_l) b_l*
  for (size_t j = 0; j < n; ++j)
    for (size_t bk : block(j, m)) {
      for (size_t r : block(m, m))
        for (size_t bl : block(j, m)) {
          Scalar c = coeff(bl, r, bk);
          if (!c.is_zero()) B->prod_[rm[r] * D + ef[bk]].push_back({ef[bl], c});
        }
      for (size_t j2 = 0; j2 < n; ++j2)
        for (size_t a : block(j, j2))
          for (size_t bl : block(j2, m)) {
            Scalar c = coeff(a, bl, bk);
            if (!c.is_zero()) B->prod_[ef[bk] * D + orig[a]].push_back({ef[bl], c});
          }
    }
  B->units_.push_back(units_[m]);
  for (const auto& u : units_) B->units_.push_back(u);
  B->index();
  return B;
}

Matrix IncidenceAlgebra::unit_element(size_t i) const {
  Matrix e(1, dim(), ch());
  const auto& bl = block(i, i);
  for (size_t k = 0; k < bl.size(); ++k) e(0, bl[k]) = units_[i](0, k);
  return e;
}

Matrix IncidenceAlgebra::mul(const Matrix& x, const Matrix& y) const {
  Matrix r(1, dim(), ch());
  for (size_t a = 0; a < dim(); ++a) {
    if (x(0, a).is_zero()) continue;
    for (size_t b = 0; b < dim(); ++b) {
      if (y(0, b).is_zero()) continue;
      Scalar xy = x(0, a) * y(0, b);
      for (const auto& [c, v] : product(a, b)) r(0, c) += xy * v;
    }
  }
  return r;
}

std::vector<std::string> IncidenceAlgebra::check() const {
  std::vector<std::string> out;
  size_t d = dim();
  auto basis_vec = [&](size_t k) {
    Matrix e(1, d, ch());
    e(0, k) = Scalar::constant(ch(), 1);
    return e;
  };
  std::vector<Matrix> e(d);
  for (size_t k = 0; k < d; ++k) e[k] = basis_vec(k);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      if (tgt(a) != src(b)) {
        if (!product(a, b).empty()) out.push_back("nonzero product of non-composable basis elements");
        continue;
      }
      Matrix ab = mul(e[a], e[b]);
      for (size_t j = 0; j < points(); ++j)
        for (size_t c : block(tgt(b), j))
          if (mul(ab, e[c]) != mul(e[a], mul(e[b], e[c]))) {
            out.push_back("product is not associative on basis elements " + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c));
            return out;
          }
    }
  for (size_t k = 0; k < d; ++k) {
    if (mul(unit_element(src(k)), e[k]) != e[k] || mul(e[k], unit_element(tgt(k))) != e[k])
      out.push_back("units do not act trivially on basis element " + std::to_string(k));
  }
  return out;
}

bool IncidenceAlgebra::same_shape(const IncidenceAlgebra& o) const {
  if (o.dim() != dim() || o.points() != points()) return false;
  for (size_t k = 0; k < dim(); ++k)
    if (o.src(k) != src(k) || o.tgt(k) != tgt(k)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// LambdaModule

LambdaModule::LambdaModule(AlgebraPtr alg, std::vector<size_t> dims) : alg_(std::move(alg)), dims_(std::move(dims)) {
  if (dims_.size() != alg_->points()) throw ShapeMismatch("dimension vector does not match the points");
  off_.resize(dims_.size());
  for (size_t i = 0; i < dims_.size(); ++i) {
    off_[i] = total_;
    total_ += dims_[i];
  }
  for (size_t k = 0; k < alg_->dim(); ++k) act_.emplace_back(dims_[alg_->src(k)], dims_[alg_->tgt(k)], alg_->ch());
}

void LambdaModule::set_act(size_t k, Matrix m) {
  if (m.rows() != dims_[A().src(k)] || m.cols() != dims_[A().tgt(k)]) throw ShapeMismatch("action block has the wrong shape");
  act_[k] = std::move(m);
}

Matrix LambdaModule::full_act(size_t k) const {
  Matrix f(total_, total_, ch());
  f.set_block(off_[A().src(k)], off_[A().tgt(k)], act_[k]);
  return f;
}

Matrix LambdaModule::action(const Matrix& x) const {
  Matrix f(total_, total_, ch());
  for (size_t k = 0; k < A().dim(); ++k) {
    if (x(0, k).is_zero()) continue;
    size_t s = A().src(k), t = A().tgt(k);
    f.set_block(off_[s], off_[t], f.block(off_[s], off_[t], dims_[s], dims_[t]) + x(0, k) * act_[k]);
  }
  return f;
}

std::vector<std::string> LambdaModule::check() const {
  std::vector<std::string> out;
  const auto& L = A();
  for (size_t a = 0; a < L.dim(); ++a)
    for (size_t b = 0; b < L.dim(); ++b) {
      if (L.tgt(a) != L.src(b)) continue;
      Matrix lhs = act_[a] * act_[b];
      Matrix rhs(dims_[L.src(a)], dims_[L.tgt(b)], ch());
      for (const auto& [c, v] : L.product(a, b)) rhs += v * act_[c];
      if (lhs != rhs) {
        out.push_back("action does not respect the product of basis elements " + std::to_string(a) + " and " + std::to_string(b));
        return out;
      }
    }
  for (size_t i = 0; i < L.points(); ++i) {
    Matrix u(dims_[i], dims_[i], ch());
    const auto& bl = L.block(i, i);
    for (size_t k = 0; k < bl.size(); ++k) u += L.unit(i)(0, k) * act_[bl[k]];
    if (!u.is_identity() && dims_[i]) out.push_back("unit of " + L.name(i) + " does not act as the identity");
  }
  return out;
}

// ---------------------------------------------------------------------------
// module constructions

namespace mod {

namespace {

Scalar zero_of(u32 ch) { return Scalar::constant(ch, 0); }

}  // namespace

LambdaModule zero(const AlgebraPtr& A) { return LambdaModule(A, std::vector<size_t>(A->points(), 0)); }

LambdaModule projective(const AlgebraPtr& A, size_t i) {
  std::vector<size_t> dims(A->points());
  for (size_t j = 0; j < A->points(); ++j) dims[j] = A->block(i, j).size();
  LambdaModule P(A, dims);
  for (size_t a = 0; a < A->dim(); ++a) {
    Matrix m(dims[A->src(a)], dims[A->tgt(a)], A->ch());
    for (size_t b : A->block(i, A->src(a)))
      for (const auto& [c, v] : A->product(b, a)) m(A->pos(b), A->pos(c)) = v;
    P.set_act(a, m);
  }
  return P;
}

LambdaModule direct_sum(const LambdaModule& M, const LambdaModule& N) {
  const auto& A = M.algebra();
  std::vector<size_t> dims(A->points());
  for (size_t i = 0; i < dims.size(); ++i) dims[i] = M.dim(i) + N.dim(i);
  LambdaModule S(A, dims);
  for (size_t k = 0; k < A->dim(); ++k) S.set_act(k, Matrix::block_diag({M.act(k), N.act(k)}, A->ch()));
  return S;
}

LambdaModule power(const LambdaModule& M, size_t k) {
  LambdaModule S = zero(M.algebra());
  for (size_t c = 0; c < k; ++c) S = direct_sum(S, M);
  return S;
}

LambdaModule free_module(const AlgebraPtr& A, const std::vector<size_t>& mult) {
  LambdaModule S = zero(A);
  for (size_t i = 0; i < mult.size(); ++i)
    if (mult[i]) S = direct_sum(S, power(projective(A, i), mult[i]));
  return S;
}

LambdaModule regular(const AlgebraPtr& A) { return free_module(A, std::vector<size_t>(A->points(), 1)); }

LambdaModule dual(const LambdaModule& M, const AlgebraPtr& Aop) {
  const auto& A = M.A();
  if (Aop->dim() != A.dim() || Aop->points() != A.points()) throw DomainMismatch("dual: target algebra is not the opposite");
  for (size_t k = 0; k < A.dim(); ++k)
    if (Aop->src(k) != A.tgt(k) || Aop->tgt(k) != A.src(k)) throw DomainMismatch("dual: target algebra is not the opposite");
  LambdaModule D(Aop, M.dims());
  for (size_t k = 0; k < A.dim(); ++k) D.set_act(k, M.act(k).transpose());
  return D;
}

std::vector<Matrix> hom(const LambdaModule& M, const LambdaModule& N) {
  const auto& A = M.A();
  u32 ch = A.ch();
  size_t n = A.points();
  std::vector<size_t> base(n + 1, 0);
  for (size_t i = 0; i < n; ++i) base[i + 1] = base[i] + M.dim(i) * N.dim(i);
  size_t vars = base[n];
  auto var = [&](size_t i, size_t r, size_t c) { return base[i] + r * N.dim(i) + c; };
  la::Eliminator el(vars, ch);
  for (size_t a : A.generators()) {
    size_t i = A.src(a), j = A.tgt(a);
    const Matrix& am = M.act(a);
    const Matrix& an = N.act(a);
    // (act_M h_j - h_i act_N)(r, c) = 0
    for (size_t r = 0; r < M.dim(i); ++r)
      for (size_t c = 0; c < N.dim(j); ++c) {
        std::vector<Scalar> row(vars, zero_of(ch));
        bool any = false;
        for (size_t k = 0; k < M.dim(j); ++k)
          if (!am(r, k).is_zero()) {
            row[var(j, k, c)] += am(r, k);
            any = true;
          }
        for (size_t k = 0; k < N.dim(i); ++k)
          if (!an(k, c).is_zero()) {
            row[var(i, r, k)] -= an(k, c);
            any = true;
          }
        if (any) el.add(std::move(row));
      }
  }
  Matrix ns = el.null_space();
  std::vector<Matrix> out;
  for (size_t s = 0; s < ns.rows(); ++s) {
    Matrix h(M.dim(), N.dim(), ch);
    for (size_t i = 0; i < n; ++i)
      for (size_t r = 0; r < M.dim(i); ++r)
        for (size_t c = 0; c < N.dim(i); ++c) h(M.offset(i) + r, N.offset(i) + c) = ns(s, var(i, r, c));
    out.push_back(h);
  }
  return out;
}

bool is_hom(const LambdaModule& M, const LambdaModule& N, const Matrix& h) {
  if (h.rows() != M.dim() || h.cols() != N.dim()) return false;
  for (size_t k = 0; k < M.A().dim(); ++k)
    if (M.full_act(k) * h != h * N.full_act(k)) return false;
  return true;
}

Subspaces split(const LambdaModule& M, const Matrix& vectors) {
  Subspaces s;
  for (size_t i = 0; i < M.A().points(); ++i) s.push_back(la::row_space(vectors.block(0, M.offset(i), vectors.rows(), M.dim(i))));
  return s;
}

Matrix join(const LambdaModule& M, const Subspaces& s) {
  std::vector<Matrix> rows;
  for (size_t i = 0; i < s.size(); ++i) {
    Matrix r(s[i].rows(), M.dim(), M.ch());
    r.set_block(0, M.offset(i), s[i]);
    rows.push_back(r);
  }
  return Matrix::vcat(rows, M.dim(), M.ch());
}

Subspaces image(const LambdaModule& M, const LambdaModule& N, const Matrix& h) {
  Subspaces s;
  for (size_t i = 0; i < M.A().points(); ++i) s.push_back(la::row_space(h.block(M.offset(i), N.offset(i), M.dim(i), N.dim(i))));
  return s;
}

Subspaces kernel(const LambdaModule& M, const Matrix& h) {
  Subspaces s;
  for (size_t i = 0; i < M.A().points(); ++i) s.push_back(la::row_space(la::left_kernel(h.block(M.offset(i), 0, M.dim(i), h.cols()))));
  return s;
}

Subspaces generated(const LambdaModule& M, const Matrix& vectors) {
  Subspaces s = split(M, vectors);
  const auto& A = M.A();
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a : A.generators()) {
      size_t i = A.src(a), j = A.tgt(a);
      if (!s[i].rows()) continue;
      Matrix img = s[i] * M.act(a);
      if (la::contains(s[j], img)) continue;
      s[j] = la::sum(s[j], img);
      changed = true;
    }
  }
  return s;
}

bool is_submodule(const LambdaModule& M, const Subspaces& s) {
  const auto& A = M.A();
  for (size_t a = 0; a < A.dim(); ++a)
    if (!la::contains(s[A.tgt(a)], s[A.src(a)] * M.act(a))) return false;
  return true;
}

Sub submodule(const LambdaModule& M, const Subspaces& s) {
  const auto& A = M.A();
  std::vector<size_t> dims;
  for (const auto& b : s) dims.push_back(b.rows());
  LambdaModule S(M.algebra(), dims);
  std::vector<la::Coordinates> co;
  for (const auto& b : s) co.emplace_back(b);
  for (size_t a = 0; a < A.dim(); ++a) {
    size_t i = A.src(a), j = A.tgt(a);
    auto c = co[j].try_of(s[i] * M.act(a));
    if (!c) throw Error("submodule: subspaces are not closed under the action");
    S.set_act(a, *c);
  }
  return {S, join(M, s)};
}

Quot quotient(const LambdaModule& M, const Subspaces& s) {
  const auto& A = M.A();
  u32 ch = A.ch();
  size_t n = A.points();
  std::vector<Matrix> comp(n), binv(n);
  std::vector<size_t> dims(n);
  for (size_t i = 0; i < n; ++i) {
    comp[i] = la::complement(s[i], M.dim(i));
    dims[i] = comp[i].rows();
    binv[i] = *la::inverse(Matrix::vcat(comp[i], s[i]));
  }
  LambdaModule Q(M.algebra(), dims);
  for (size_t a = 0; a < A.dim(); ++a) {
    size_t i = A.src(a), j = A.tgt(a);
    Matrix img = comp[i] * M.act(a) * binv[j];
    Q.set_act(a, img.block(0, 0, dims[i], dims[j]));
  }
  Matrix proj(M.dim(), Q.dim(), ch);
  for (size_t i = 0; i < n; ++i) proj.set_block(M.offset(i), Q.offset(i), binv[i].block(0, 0, M.dim(i), dims[i]));
  return {Q, proj};
}

Quot cokernel(const LambdaModule& M, const LambdaModule& N, const Matrix& h) { return quotient(N, image(M, N, h)); }

Subspaces socle(const LambdaModule& M) {
  const auto& A = M.A();
  Subspaces s;
  for (size_t i = 0; i < A.points(); ++i) {
    Matrix big(M.dim(i), 0, A.ch());
    for (size_t j = 0; j < A.points(); ++j) {
      if (j == i) continue;
      for (size_t a : A.block(i, j)) big = Matrix::hcat(big, M.act(a));
    }
    s.push_back(la::row_space(la::left_kernel(big)));
  }
  return s;
}

Subspaces radical(const LambdaModule& M) {
  const auto& A = M.A();
  Subspaces s;
  for (size_t j = 0; j < A.points(); ++j) {
    std::vector<Matrix> rows;
    for (size_t i = 0; i < A.points(); ++i) {
      if (i == j) continue;
      for (size_t a : A.block(i, j)) rows.push_back(M.act(a));
    }
    s.push_back(la::row_space(Matrix::vcat(rows, M.dim(j), A.ch())));
  }
  return s;
}

std::vector<size_t> top_dims(const LambdaModule& M) {
  Subspaces r = radical(M);
  std::vector<size_t> t;
  for (size_t i = 0; i < r.size(); ++i) t.push_back(M.dim(i) - r[i].rows());
  return t;
}

std::vector<size_t> support(const Subspaces& s) {
  std::vector<size_t> out;
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i].rows()) out.push_back(i);
  return out;
}

Matrix map_from_free(const AlgebraPtr& A, const std::vector<size_t>& mult, const std::vector<Matrix>& images, const LambdaModule& N) {
  LambdaModule P = free_module(A, mult);
  Matrix h(P.dim(), N.dim(), A->ch());
  std::vector<size_t> fill(A->points(), 0);
  size_t s = 0;
  for (size_t i = 0; i < mult.size(); ++i)
    for (size_t c = 0; c < mult[i]; ++c, ++s) {
      Matrix v = images[s].block(0, N.offset(i), 1, N.dim(i));
      for (size_t j = 0; j < A->points(); ++j) {
        const auto& bl = A->block(i, j);
        for (size_t b : bl) {
          Matrix img = v * N.act(b);
          h.set_block(P.offset(j) + fill[j] + A->pos(b), N.offset(j), img);
        }
        fill[j] += bl.size();
      }
    }
  return h;
}

std::vector<Matrix> free_generators(const AlgebraPtr& A, const std::vector<size_t>& mult) {
  LambdaModule P = free_module(A, mult);
  std::vector<Matrix> out;
  std::vector<size_t> fill(A->points(), 0);
  for (size_t i = 0; i < mult.size(); ++i)
    for (size_t c = 0; c < mult[i]; ++c) {
      Matrix g(1, P.dim(), A->ch());
      g.set_block(0, P.offset(i) + fill[i], A->unit(i));
      out.push_back(g);
      for (size_t j = 0; j < A->points(); ++j) fill[j] += A->block(i, j).size();
    }
  return out;
}

Cover projective_cover(const LambdaModule& M) {
  const auto& A = M.algebra();
  u32 ch = A->ch();
  Subspaces rad = radical(M);
  std::vector<size_t> mult(A->points(), 0);
  std::vector<Matrix> images;
  for (size_t i = 0; i < A->points(); ++i) {
    Matrix W = rad[i];
    Matrix I = Matrix::identity(M.dim(i), ch);
    for (size_t r = 0; r < M.dim(i); ++r) {
      Matrix v = I.row(r);
      if (la::contains(W, v)) continue;
      std::vector<Matrix> span{W};
      for (size_t b : A->block(i, i)) span.push_back(v * M.act(b));
      W = la::row_space(Matrix::vcat(span, M.dim(i), ch));
      ++mult[i];
      Matrix full(1, M.dim(), ch);
      full.set_block(0, M.offset(i), v);
      images.push_back(full);
    }
  }
  Cover c{mult, free_module(A, mult), Matrix()};
  c.eta = map_from_free(A, mult, images, M);
  return c;
}

Presentation min_presentation(const LambdaModule& M) {
  Presentation pr;
  pr.p0 = projective_cover(M);
  Subspaces K = kernel(pr.p0.P, pr.p0.eta);
  Sub ks = submodule(pr.p0.P, K);
  pr.p1 = projective_cover(ks.module);
  pr.map = pr.p1.eta * ks.inclusion;
  return pr;
}

bool is_projective(const LambdaModule& M) { return projective_cover(M).P.dim() == M.dim(); }

bool is_injective(const LambdaModule& M, const AlgebraPtr& Aop) { return is_projective(dual(M, Aop)); }

size_t nu(const LambdaModule& M, size_t m) {
  size_t r = M.A().block(m, m).size();
  return r ? M.dim(m) / r : 0;
}

std::string to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

bool blocks_invertible(const LambdaModule& M, const LambdaModule& N, const Matrix& h) {
  for (size_t i = 0; i < M.A().points(); ++i)
    if (!la::invertible(h.block(M.offset(i), N.offset(i), M.dim(i), N.dim(i)))) return false;
  return true;
}

}  // namespace

IsoResult is_isomorphic(const LambdaModule& M, const LambdaModule& N, u64 seed, u64 budget) {
  if (M.dims() != N.dims()) return {Answer::no, std::nullopt, "dimension vectors differ"};
  u32 ch = M.ch();
  if (M.dim() == 0) return {Answer::yes, Matrix(0, 0, ch), "zero modules"};
  std::vector<Matrix> H = hom(M, N);
  if (H.empty()) return {Answer::no, std::nullopt, "no nonzero morphism"};
  for (const auto& h : H)
    if (blocks_invertible(M, N, h)) return {Answer::yes, h, "basis morphism"};
  const Tower& t = M.A().tower();
  Rng rng(seed);
  for (int k = 0; k < 40; ++k) {
    Matrix h(M.dim(), N.dim(), ch);
    for (const auto& b : H) h += t.random_base(rng) * b;
    if (blocks_invertible(M, N, h)) return {Answer::yes, h, "random combination"};
  }
  size_t hd = H.size();
  // exhaustive search over a finite set that meets every nonzero
  // determinant polynomial
  std::vector<Scalar> values;
  bool projective_points = false;
  if (t.base_size()) {
    for (u32 v = 0; v < t.base_size(); ++v) values.push_back(t.base(v));
    projective_points = true;
  } else {
    values.push_back(t.base(0));
    Scalar s = t.s();
    Scalar cur = t.base(1);
    for (size_t k = 0; k <= M.dim(); ++k) {
      values.push_back(cur);
      cur = cur * s;
    }
  }
  long double total = 1;
  for (size_t k = 0; k < hd; ++k) total *= values.size();
  if (total > static_cast<long double>(budget)) return {Answer::unknown, std::nullopt, "search budget exhausted"};
  std::vector<size_t> idx(hd, 0);
  while (true) {
    size_t k = 0;
    while (k < hd && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == hd) break;
    if (projective_points) {
      // first nonzero coordinate must be 1
      size_t f = 0;
      while (f < hd && idx[f] == 0) ++f;
      if (f < hd && idx[f] != 1) continue;
    }
    Matrix h(M.dim(), N.dim(), ch);
    for (size_t b = 0; b < hd; ++b)
      if (idx[b]) h += values[idx[b]] * H[b];
    if (blocks_invertible(M, N, h)) return {Answer::yes, h, "exhaustive search"};
  }
  return {Answer::no, std::nullopt, "no invertible morphism (exhaustive search)"};
}

}  // namespace mod

// ---------------------------------------------------------------------------
// peak, Gorenstein and the injective envelope of the simple projective

LambdaModule injective_indecomposable(const AlgebraPtr& A, size_t j) {
  AlgebraPtr op = A->opposite();
  return mod::dual(mod::projective(op, j), A);
}

LambdaModule injective_envelope_simple(const AlgebraPtr& A, size_t m) { return injective_indecomposable(A, m); }

namespace {

bool socle_is_sum_of_simple_projective(const AlgebraPtr& A, size_t m) {
  for (size_t j = 0; j < A->points(); ++j)
    if (j != m && !A->block(m, j).empty()) return false;
  auto s = mod::support(mod::socle(mod::regular(A)));
  return s.size() == 1 && s[0] == m;
}

}  // namespace

bool one_gorenstein(const AlgebraPtr& A) {
  Subspaces soc = mod::socle(mod::regular(A));
  for (size_t j = 0; j < A->points(); ++j) {
    if (!soc[j].rows()) continue;
    if (!mod::is_projective(injective_indecomposable(A, j))) return false;
  }
  return true;
}

PeakFlags peak_checks(const AlgebraPtr& A, size_t m, std::optional<size_t> z) {
  PeakFlags f;
  f.right_peak = socle_is_sum_of_simple_projective(A, m);
  if (z) f.left_peak = socle_is_sum_of_simple_projective(A->opposite(), *z);
  f.one_gorenstein = one_gorenstein(A);
  return f;
}

Envelope envelope_in_U(const LambdaModule& M, size_t z, size_t m) {
  const auto& A = M.algebra();
  u32 ch = A->ch();
  if (M.dim(z)) throw NotInU("module has a nonzero component at the minimal point");
  Subspaces soc = mod::socle(M);
  for (size_t j = 0; j < A->points(); ++j)
    if (j != m && soc[j].rows()) throw NotInU("socle is not concentrated at the maximal point");
  LambdaModule E0 = mod::projective(A, z);
  std::vector<Matrix> H = mod::hom(M, E0);
  Matrix S = mod::join(M, soc);
  std::vector<Matrix> chosen;
  auto combined = [&]() {
    Matrix i(M.dim(), 0, ch);
    for (const auto& h : chosen) i = Matrix::hcat(i, h);
    return i;
  };
  while (true) {
    Matrix K = la::left_kernel(S * combined());
    if (!K.rows()) break;
    Matrix KS = K * S;
    bool found = false;
    for (const auto& h : H)
      if (!(KS * h).is_zero()) {
        chosen.push_back(h);
        found = true;
        break;
      }
    if (!found) throw NotInU("socle does not embed into copies of e_0Λ");
  }
  size_t v = chosen.size();
  if (v != mod::nu(M, m)) throw NotInU("envelope needs " + std::to_string(v) + " copies, expected " + std::to_string(mod::nu(M, m)));
  LambdaModule E = mod::power(E0, v);
  Matrix i(M.dim(), E.dim(), ch);
  for (size_t c = 0; c < v; ++c)
    for (size_t j = 0; j < A->points(); ++j)
      i.set_block(0, E.offset(j) + c * E0.dim(j), chosen[c].block(0, E0.offset(j), M.dim(), E0.dim(j)));
  if (la::rank(i) != M.dim()) throw NotInU("envelope map is not injective");
  return {v, E, i};
}

LambdaModule functor_F_UtoV(const LambdaModule& M, size_t z, size_t m) {
  Envelope env = envelope_in_U(M, z, m);
  return mod::cokernel(M, env.E, env.i).module;
}

LambdaModule PresentationObject::source() const { return mod::free_module(algebra, mult); }

LambdaModule PresentationObject::target() const { return mod::power(mod::projective(algebra, zero), nu); }

std::vector<std::string> validate(const PresentationObject& o) {
  std::vector<std::string> out;
  if (o.mult.size() != o.algebra->points()) return {"one multiplicity per point expected"};
  if (o.mult[o.zero]) out.push_back("the source has a summand at the minimal point");
  LambdaModule P = o.source(), E = o.target();
  if (o.phi.rows() != P.dim() || o.phi.cols() != E.dim()) {
    out.push_back("map has the wrong shape");
    return out;
  }
  if (!mod::is_hom(P, E, o.phi)) out.push_back("map is not a module homomorphism");
  if (P.dim() && !la::contains(mod::join(E, mod::radical(E)), o.phi)) out.push_back("image is not contained in the radical");
  return out;
}

LambdaModule cok(const PresentationObject& o) { return mod::cokernel(o.source(), o.target(), o.phi).module; }

PresentationObject presentation_in_U(const LambdaModule& M, size_t z, size_t m) {
  Envelope env = envelope_in_U(M, z, m);
  mod::Cover c = mod::projective_cover(M);
  return {M.algebra(), z, c.mult, env.nu, c.eta * env.i};
}

}  // namespace eqp
