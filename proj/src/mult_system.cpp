#include "eqposet/mult_system.hpp"

#include "eqposet/error.hpp"

namespace eqp {

Matrix AmbientAlgebra::unit() const {
  if (kind_ == Kind::extension) return tower_.coords(tower_.one());
  return from_square(Matrix::identity(tower_.p(), ch()));
}

Matrix AmbientAlgebra::basis_element(size_t k) const {
  Matrix e = zero();
  e(0, k) = Scalar::constant(ch(), 1);
  return e;
}

Matrix AmbientAlgebra::to_square(const Matrix& row) const {
  size_t p = tower_.p();
  Matrix m(p, p, ch());
  for (size_t i = 0; i < p; ++i)
    for (size_t j = 0; j < p; ++j) m(i, j) = row(0, i * p + j);
  return m;
}

Matrix AmbientAlgebra::from_square(const Matrix& m) const {
  size_t p = tower_.p();
  Matrix r(1, p * p, ch());
  for (size_t i = 0; i < p; ++i)
    for (size_t j = 0; j < p; ++j) r(0, i * p + j) = m(i, j);
  return r;
}

Matrix AmbientAlgebra::mul(const Matrix& u, const Matrix& v) const {
  if (kind_ == Kind::extension) return tower_.coords(tower_.mul(tower_.from_row(u), tower_.from_row(v)));
  return from_square(to_square(u) * to_square(v));
}

Matrix AmbientAlgebra::product_space(const Matrix& u, const Matrix& v) const {
  std::vector<Matrix> prods;
  for (size_t i = 0; i < u.rows(); ++i)
    for (size_t j = 0; j < v.rows(); ++j) prods.push_back(mul(u.row(i), v.row(j)));
  return la::row_space(Matrix::vcat(prods, dim(), ch()));
}

Matrix a_ell(const Tower& t, int ell) {
  AmbientAlgebra A = AmbientAlgebra::matrices(t);
  Matrix th = t.theta_vartheta();
  std::vector<Matrix> rows;
  Matrix thi = Matrix::identity(t.p(), t.ch());
  for (int i = 0; i < ell; ++i) {
    for (u32 j = 0; j < t.p(); ++j) rows.push_back(A.from_square(thi * t.theta_mul(t.xi_pow(j))));
    thi = thi * th;
  }
  return la::row_space(Matrix::vcat(rows, A.dim(), t.ch()));
}

MultSystem::MultSystem(const EquippedPoset& P, const AmbientAlgebra& A) : poset_(P), amb_(A) {
  size_t n = P.size();
  spaces_.assign(n, std::vector<Matrix>(n, Matrix(0, A.dim(), A.ch())));
  units_.assign(n, A.unit());
}

void MultSystem::set_space(size_t i, size_t j, const Matrix& basis) { spaces_[i][j] = la::row_space(basis); }

std::vector<std::string> MultSystem::check_M1_M2() const {
  std::vector<std::string> out;
  const auto& P = poset_;
  size_t n = size();
  for (size_t i = 0; i < n; ++i) {
    if (!la::contains(space(i, i), unit(i))) out.push_back("unit of " + P.name(i) + " lies outside R_" + P.name(i));
    for (size_t j = 0; j < n; ++j) {
      if (!P.leq(i, j)) continue;
      const Matrix& r = space(i, j);
      for (size_t k = 0; k < r.rows(); ++k) {
        Matrix b = r.row(k);
        if (amb_.mul(unit(i), b) != b || amb_.mul(b, unit(j)) != b)
          out.push_back("units do not act trivially on R_{" + P.name(i) + "," + P.name(j) + "}");
      }
      for (size_t l = 0; l < n; ++l) {
        if (!P.leq(j, l)) continue;
        if (!la::contains(space(i, l), amb_.product_space(space(i, j), space(j, l))))
          out.push_back("R_{" + P.name(i) + "," + P.name(j) + "} R_{" + P.name(j) + "," + P.name(l) + "} is not contained in R_{" + P.name(i) + "," +
                        P.name(l) + "}");
      }
    }
  }
  return out;
}

namespace {

using SPoly = std::vector<Scalar>;

void strim(SPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

SPoly smod(SPoly a, const SPoly& f) {
  strim(a);
  Scalar li = f.back().inv();
  while (a.size() >= f.size()) {
    size_t sh = a.size() - f.size();
    Scalar c = a.back() * li;
    for (size_t j = 0; j < f.size(); ++j) a[sh + j] -= c * f[j];
    strim(a);
  }
  return a;
}

SPoly smulmod(const SPoly& a, const SPoly& b, const SPoly& f) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return smod(r, f);
}

SPoly sgcd(SPoly a, SPoly b) {
  strim(a);
  strim(b);
  while (!b.empty()) {
    SPoly r = smod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree d over GF(q) is irreducible iff gcd(x^{q^i} - x, f) = 1
// for 1 <= i <= d/2.
bool irreducible_finite(const SPoly& f, u64 q, u32 ch) {
  size_t d = f.size() - 1;
  if (d <= 1) return true;
  SPoly x = {Scalar::constant(ch, 0), Scalar::constant(ch, 1)};
  SPoly h = smod(x, f);
  for (size_t i = 1; i <= d / 2; ++i) {
    // h <- h^q mod f
    SPoly r = {Scalar::constant(ch, 1)}, b = h;
    for (u64 e = q; e; e >>= 1) {
      if (e & 1) r = smulmod(r, b, f);
      b = smulmod(b, b, f);
    }
    h = r;
    SPoly diff = h;
    if (diff.size() < 2) diff.resize(2);
    diff[1] -= Scalar::constant(ch, 1);
    strim(diff);
    SPoly g = sgcd(f, diff);
    if (g.size() > 1) return false;
  }
  return true;
}

bool is_pth_power_poly(const FpPoly& a, u32 p) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] && i % p) return false;
  return true;
}

}  // namespace

FieldCheck check_field(const AmbientAlgebra& A, const Matrix& basis, const Matrix& unit) {
  using V = FieldCheck::Verdict;
  size_t d = basis.rows();
  u32 ch = A.ch();
  if (d == 0) return {V::not_field, "zero space"};
  if (!la::contains(basis, unit)) return {V::not_field, "unit outside the space"};
  la::Coordinates co(basis);
  for (size_t i = 0; i < d; ++i) {
    Matrix b = basis.row(i);
    if (A.mul(unit, b) != b || A.mul(b, unit) != b) return {V::not_field, "unit does not act trivially"};
    for (size_t j = 0; j < d; ++j) {
      Matrix bc = basis.row(j);
      Matrix pr = A.mul(b, bc);
      if (!co.try_of(pr)) return {V::not_field, "not closed under products"};
      if (pr != A.mul(bc, b)) return {V::not_field, "not commutative"};
    }
  }
  auto left_rank = [&](const Matrix& a) {
    std::vector<Matrix> rows;
    for (size_t k = 0; k < d; ++k) rows.push_back(co.of(A.mul(a, basis.row(k))));
    return la::rank(Matrix::vcat(rows, d, ch));
  };
  for (size_t i = 0; i < d; ++i)
    if (left_rank(basis.row(i)) < d) return {V::not_field, "basis element " + basis.row(i).str() + " is a zero divisor"};
  if (d == 1) return {V::field, "one-dimensional"};

  // search for a primitive element; its minimal polynomial decides
  std::vector<Matrix> candidates;
  for (size_t i = 0; i < d; ++i) candidates.push_back(basis.row(i));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j) candidates.push_back(basis.row(i) + basis.row(j));
  Rng rng(12345);
  for (int k = 0; k < 40; ++k) {
    Matrix c(1, A.dim(), ch);
    for (size_t i = 0; i < d; ++i) c += A.tower().random_base(rng) * basis.row(i);
    candidates.push_back(c);
  }
  for (const Matrix& a : candidates) {
    if (a.is_zero()) continue;
    if (left_rank(a) < d) return {V::not_field, "element " + a.str() + " is a zero divisor"};
    std::vector<Matrix> pows{co.of(unit)};
    Matrix cur = unit;
    std::optional<Matrix> rel;
    for (size_t k = 1; k <= d; ++k) {
      cur = A.mul(cur, a);
      Matrix cv = co.of(cur);
      auto sol = la::solve_left(Matrix::vcat(pows, d, ch), cv);
      if (sol) {
        if (k < d) break;
        rel = sol;
        break;
      }
      pows.push_back(cv);
    }
    if (!rel) continue;
    // minimal polynomial t^d - Σ rel_k t^k
    SPoly f(d + 1);
    for (size_t k = 0; k < d; ++k) f[k] = -(*rel)(0, k);
    f[d] = Scalar::constant(ch, 1);
    if (A.tower().base_size()) {
      bool irr = irreducible_finite(f, A.tower().base_size(), ch);
      return {irr ? V::field : V::not_field, irr ? "primitive element with irreducible minimal polynomial" : "minimal polynomial splits"};
    }
    bool binomial = true;
    for (size_t k = 1; k < d; ++k)
      if (!f[k].is_zero()) binomial = false;
    if (binomial && d == A.tower().p()) {
      Scalar c = -f[0];
      bool pth = is_pth_power_poly(c.numerator(), ch) && is_pth_power_poly(c.denominator(), ch);
      return {pth ? V::not_field : V::field, pth ? "t^p - c with c a p-th power" : "t^p - c with c not a p-th power"};
    }
    return {V::undecided, "minimal polynomial of unsupported shape over GF(p)(s)"};
  }
  return {V::undecided, "no primitive element found"};
}

std::vector<std::string> MultSystem::check_admissible(const std::string& maxpoint) const {
  std::vector<std::string> out = check_M1_M2();
  const auto& P = poset_;
  auto mi = P.find(maxpoint);
  if (!mi) {
    out.push_back("no maximal point '" + maxpoint + "'");
    return out;
  }
  size_t m = *mi;
  for (size_t i = 0; i < size(); ++i)
    if (!P.leq(i, m)) out.push_back("point " + P.name(i) + " is not below " + maxpoint);
  for (size_t i = 0; i < size(); ++i) {
    FieldCheck fc = check_field(amb_, space(i, i), unit(i));
    if (fc.verdict != FieldCheck::Verdict::field)
      out.push_back("field: R_" + P.name(i) + (fc.verdict == FieldCheck::Verdict::undecided ? " undecided: " : " is not a field: ") + fc.reason);
  }
  // The elements of R_{i,j} killed by every R_{j,l}, l > j, form a
  // subspace; it must be zero.
  for (size_t i = 0; i < size(); ++i)
    for (size_t j = 0; j < size(); ++j) {
      if (!P.leq(i, j) || j == m) continue;
      const Matrix& r = space(i, j);
      if (!r.rows()) continue;
      size_t width = 0;
      std::vector<std::vector<Matrix>> rows(r.rows());
      for (size_t l = 0; l < size(); ++l) {
        if (!P.less(j, l)) continue;
        const Matrix& s = space(j, l);
        for (size_t b = 0; b < s.rows(); ++b) {
          for (size_t k = 0; k < r.rows(); ++k) rows[k].push_back(amb_.mul(r.row(k), s.row(b)));
          width += amb_.dim();
        }
      }
      Matrix C(r.rows(), width, amb_.ch());
      for (size_t k = 0; k < r.rows(); ++k) {
        size_t c = 0;
        for (const auto& piece : rows[k]) {
          C.set_block(k, c, piece);
          c += piece.cols();
        }
      }
      Matrix ann = la::left_kernel(C);
      if (ann.rows()) {
        Matrix witness = ann.row(0) * r;
        out.push_back("annihilator: element " + witness.str() + " of R_{" + P.name(i) + "," + P.name(j) + "} is annihilated by every R_{" + P.name(j) + ",l}");
      }
    }
  return out;
}

MultSystem build_Q(const EquippedPoset& P, const Tower& t) {
  MultSystem S(P, AmbientAlgebra::extension(t));
  for (size_t x = 0; x < P.size(); ++x)
    for (size_t y = 0; y < P.size(); ++y) {
      int l = P.degree(x, y);
      if (!l) continue;
      std::vector<Matrix> rows;
      for (int i = 0; i < l; ++i) rows.push_back(t.coords(t.xi_pow(i)));
      S.set_space(x, y, Matrix::vcat(rows, t.p(), t.ch()));
    }
  return S;
}

MultSystem build_T(const EquippedPoset& P, const Tower& t) {
  MultSystem S(P, AmbientAlgebra::matrices(t));
  std::vector<Matrix> cache(t.p() + 1);
  for (size_t x = 0; x < P.size(); ++x)
    for (size_t y = 0; y < P.size(); ++y) {
      int l = P.degree(x, y);
      if (!l) continue;
      if (!cache[l].rows()) cache[l] = a_ell(t, l);
      S.set_space(x, y, cache[l]);
    }
  return S;
}

MultSystem moritize(const MultSystem& T, size_t component) {
  const AmbientAlgebra& A = T.ambient();
  if (A.kind() != AmbientAlgebra::Kind::matrices) throw KindMismatch("moritize expects a system over M_p(F)");
  const EquippedPoset& P = T.poset();
  const Tower& t = A.tower();
  Matrix e11sq(t.p(), t.p(), t.ch());
  if (component >= t.p()) throw Error("idempotent component out of range");
  e11sq(component, component) = t.base(1);
  std::vector<Matrix> eps;
  for (size_t x = 0; x < P.size(); ++x) eps.push_back(P.strong(x) ? A.from_square(e11sq) : A.unit());
  MultSystem R(P, A);
  for (size_t x = 0; x < P.size(); ++x) {
    for (size_t y = 0; y < P.size(); ++y) {
      if (!P.leq(x, y)) continue;
      const Matrix& s = T.space(x, y);
      std::vector<Matrix> rows;
      for (size_t k = 0; k < s.rows(); ++k) rows.push_back(A.mul(A.mul(eps[x], s.row(k)), eps[y]));
      R.set_space(x, y, Matrix::vcat(rows, A.dim(), A.ch()));
    }
    R.set_unit(x, eps[x]);
  }
  R.set_epsilons(eps);
  return R;
}

}  // namespace eqp
