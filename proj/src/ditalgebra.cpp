#include "eqposet/ditalgebra.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "eqposet/error.hpp"

namespace eqp::dit {

namespace {

Matrix unit_row(size_t n, size_t k, u32 ch) {
  Matrix v(1, n, ch);
  v(0, k) = Scalar::constant(ch, 1);
  return v;
}

// Position of basis element b ∈ block(i, j) inside copy k of the summand
// (e_iΛ)^{mult_i} of free_module(A, mult).
size_t free_pos(const IncidenceAlgebra& A, const LambdaModule& F, const std::vector<size_t>& mult, size_t i, size_t k, size_t b) {
  size_t j = A.tgt(b);
  size_t off = F.offset(j);
  for (size_t i2 = 0; i2 < i; ++i2) off += mult[i2] * A.block(i2, j).size();
  return off + k * A.block(i, j).size() + A.pos(b);
}

// Σ_k v_k ⊗ s_k λ as a row of F, v_k the generators of the summands at i.
Matrix tensor_row(const IncidenceAlgebra& A, const StarJ& J, const LambdaModule& F, const std::vector<size_t>& mult, size_t i, const std::vector<Matrix>& s, const Matrix& lambda) {
  Matrix out(1, F.dim(), A.ch());
  for (size_t k = 0; k < s.size(); ++k) {
    if (s[k].is_zero()) continue;
    Matrix x = A.mul(J.to_algebra(i, s[k]), lambda);
    for (size_t j = 0; j < A.points(); ++j)
      for (size_t b : A.block(i, j))
        if (!x(0, b).is_zero()) out(0, free_pos(A, F, mult, i, k, b)) += x(0, b);
  }
  return out;
}

// Copy k of an element of (e_iΛ)^{mult_i} as a full algebra vector.
Matrix summand_part(const IncidenceAlgebra& A, const LambdaModule& F, const std::vector<size_t>& mult, size_t i, size_t k, const Matrix& v) {
  Matrix x(1, A.dim(), A.ch());
  for (size_t j = 0; j < A.points(); ++j)
    for (size_t b : A.block(i, j)) x(0, b) = v(0, free_pos(A, F, mult, i, k, b));
  return x;
}

Matrix full_block(const Matrix& blk, size_t rows, size_t cols, size_t r0, size_t c0, u32 ch) {
  Matrix m(rows, cols, ch);
  m.set_block(r0, c0, blk);
  return m;
}

void append_flat(std::vector<Scalar>& out, const Matrix& m) {
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) out.push_back(m(r, c));
}

// Null space of a linear residual over unit parameters: returns coefficient
// rows of the solutions.
Matrix solve_params(size_t nparams, u32 ch, const std::function<std::vector<Scalar>(size_t)>& column) {
  std::vector<std::vector<Scalar>> cols(nparams);
  size_t nres = 0;
  for (size_t p = 0; p < nparams; ++p) {
    cols[p] = column(p);
    nres = cols[p].size();
  }
  la::Eliminator el(nparams, ch);
  for (size_t r = 0; r < nres; ++r) {
    std::vector<Scalar> row(nparams);
    bool any = false;
    for (size_t p = 0; p < nparams; ++p) {
      row[p] = cols[p][r];
      any = any || !row[p].is_zero();
    }
    if (any) el.add(std::move(row));
  }
  return el.null_space();
}

}  // namespace

// ---------------------------------------------------------------------------
// BaseRing

Matrix BaseRing::mul(size_t i, const Matrix& x, const Matrix& y) const {
  Matrix out(1, dims[i], ch);
  for (size_t a = 0; a < dims[i]; ++a) {
    if (x(0, a).is_zero()) continue;
    for (size_t b = 0; b < dims[i]; ++b) {
      if (y(0, b).is_zero()) continue;
      out += (x(0, a) * y(0, b)) * prod[i][a][b];
    }
  }
  return out;
}

Matrix BaseRing::basis(size_t i, size_t a) const { return unit_row(dims[i], a, ch); }

Matrix BaseRing::right_matrix(size_t i, const Matrix& y) const {
  Matrix m(dims[i], dims[i], ch);
  for (size_t a = 0; a < dims[i]; ++a) m.set_block(a, 0, mul(i, basis(i, a), y));
  return m;
}

BaseRing BaseRing::trivial(u32 ch, std::vector<std::string> names) {
  BaseRing R;
  R.ch = ch;
  R.dims.assign(names.size(), 1);
  R.names = std::move(names);
  for (size_t i = 0; i < R.dims.size(); ++i) {
    R.prod.push_back({{unit_row(1, 0, ch)}});
    R.units.push_back(unit_row(1, 0, ch));
  }
  return R;
}

BaseRing BaseRing::diagonal(const IncidenceAlgebra& A) {
  BaseRing R;
  R.ch = A.ch();
  for (size_t i = 0; i < A.points(); ++i) {
    const auto& bl = A.block(i, i);
    size_t k = bl.size();
    R.names.push_back(A.name(i));
    R.dims.push_back(k);
    std::vector<std::vector<Matrix>> pr(k, std::vector<Matrix>(k, Matrix(1, k, R.ch)));
    for (size_t a : bl)
      for (size_t b : bl)
        for (const auto& [c, v] : A.product(a, b)) pr[A.pos(a)][A.pos(b)](0, A.pos(c)) += v;
    R.prod.push_back(std::move(pr));
    R.units.push_back(A.unit(i));
  }
  return R;
}

// ---------------------------------------------------------------------------
// Ditalgebra

Ditalgebra::Ditalgebra(BaseRing R, std::vector<Generator> gens) : R_(std::move(R)), gens_(std::move(gens)) {
  ract_.resize(gens_.size());
  d_.resize(gens_.size());
  for (size_t g = 0; g < gens_.size(); ++g) {
    const auto& G = gens_[g];
    if (G.src >= points() || G.tgt >= points()) throw DomainMismatch("generator " + G.name + ": endpoint out of range");
    if (G.degree != 0 && G.degree != 1) throw DegreeViolation("generator " + G.name + ": degree must be 0 or 1");
    ract_[g].resize(R_.dims[G.tgt]);
    // Central default when both ends are F: b_0 = u^{-1}·1.
    if (R_.dims[G.src] == 1 && R_.dims[G.tgt] == 1) {
      Scalar c = R_.units[G.tgt](0, 0).inv();
      ract_[g][0] = letter(g, c * R_.units[G.src]);
    }
  }
}

std::optional<size_t> Ditalgebra::find(const std::string& name) const {
  for (size_t g = 0; g < gens_.size(); ++g)
    if (gens_[g].name == name) return g;
  return std::nullopt;
}

void Ditalgebra::set_right_action(size_t g, size_t t, Element e) { ract_[g][t] = std::move(e); }

void Ditalgebra::add_term(Element& e, const Word& w, const Matrix& c) const {
  if (c.is_zero()) return;
  auto it = e.terms.find(w);
  if (it == e.terms.end()) {
    e.terms.emplace(w, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) e.terms.erase(it);
}

Element Ditalgebra::scalar(size_t i, const Matrix& r) const {
  Element e;
  add_term(e, Word{i, {}}, r);
  return e;
}

Element Ditalgebra::letter(size_t g) const { return letter(g, R_.units[gens_[g].src]); }

Element Ditalgebra::letter(size_t g, const Matrix& coeff) const {
  Element e;
  add_term(e, Word{gens_[g].src, {g}}, coeff);
  return e;
}

int Ditalgebra::degree(const Word& w) const {
  int d = 0;
  for (size_t g : w.letters) d += gens_[g].degree;
  return d;
}

std::optional<int> Ditalgebra::degree(const Element& x) const {
  std::optional<int> d;
  for (const auto& [w, c] : x.terms) {
    int k = degree(w);
    if (d && *d != k) return std::nullopt;
    d = k;
  }
  return d.value_or(0);
}

Element Ditalgebra::add(const Element& a, const Element& b) const {
  Element e = a;
  for (const auto& [w, c] : b.terms) add_term(e, w, c);
  return e;
}

Element Ditalgebra::sub(const Element& a, const Element& b) const {
  Element e = a;
  for (const auto& [w, c] : b.terms) add_term(e, w, -c);
  return e;
}

Element Ditalgebra::scale(const Scalar& s, const Element& a) const {
  Element e;
  for (const auto& [w, c] : a.terms) add_term(e, w, s * c);
  return e;
}

Element Ditalgebra::left(size_t i, const Matrix& r, const Element& a) const {
  Element e;
  for (const auto& [w, c] : a.terms)
    if (w.point == i) add_term(e, w, R_.mul(i, r, c));
  return e;
}

Element Ditalgebra::push(const Word& u, const Matrix& r) const {
  Element out;
  if (u.letters.empty()) {
    add_term(out, u, r);
    return out;
  }
  size_t g = u.letters.back();
  Word prefix{u.point, {u.letters.begin(), u.letters.end() - 1}};
  for (size_t t = 0; t < r.cols(); ++t) {
    if (r(0, t).is_zero()) continue;
    for (const auto& [w, c] : ract_[g][t].terms)
      for (const auto& [v, e] : push(prefix, c).terms) {
        Word x = v;
        x.letters.push_back(w.letters[0]);
        add_term(out, x, r(0, t) * e);
      }
  }
  return out;
}

Element Ditalgebra::mul(const Element& a, const Element& b) const {
  Element out;
  for (const auto& [u, c] : a.terms)
    for (const auto& [v, c2] : b.terms) {
      if (tgt(u) != v.point) continue;
      for (const auto& [w, e] : push(u, c2).terms) {
        Word x = w;
        x.letters.insert(x.letters.end(), v.letters.begin(), v.letters.end());
        add_term(out, x, R_.mul(u.point, c, e));
      }
    }
  return out;
}

Element Ditalgebra::d(const Element& x) const {
  Element out;
  for (const auto& [w, c] : x.terms) {
    int sign_deg = 0;
    for (size_t k = 0; k < w.letters.size(); ++k) {
      size_t g = w.letters[k];
      Element pre;
      add_term(pre, Word{w.point, {w.letters.begin(), w.letters.begin() + k}}, c);
      Element suf;
      add_term(suf, Word{gens_[g].tgt, {w.letters.begin() + k + 1, w.letters.end()}}, R_.units[gens_[g].tgt]);
      Element term = mul(mul(pre, d_[g]), suf);
      out = sign_deg % 2 ? sub(out, term) : add(out, term);
      sign_deg += gens_[g].degree;
    }
  }
  return out;
}

std::vector<std::string> Ditalgebra::validate() const {
  std::vector<std::string> bad;
  for (size_t g = 0; g < gens_.size(); ++g) {
    const auto& G = gens_[g];
    for (const auto& [w, c] : d_[g].terms) {
      if (w.point != G.src || tgt(w) != G.tgt) bad.push_back("d(" + G.name + "): term " + str(w) + " has wrong endpoints");
      if (degree(w) != G.degree + 1) bad.push_back("d(" + G.name + "): term " + str(w) + " has degree " + std::to_string(degree(w)));
    }
    // unital right action
    Element sum;
    for (size_t t = 0; t < R_.dims[G.tgt]; ++t) {
      for (const auto& [w, c] : ract_[g][t].terms)
        if (w.letters.size() != 1 || w.point != G.src || gens_[w.letters[0]].tgt != G.tgt || gens_[w.letters[0]].degree != G.degree)
          bad.push_back(G.name + ": right action leaves e_src W e_tgt");
      sum = add(sum, scale(R_.units[G.tgt](0, t), ract_[g][t]));
    }
    if (!(sum == letter(g))) bad.push_back(G.name + ": the unit does not act trivially");
    for (size_t s = 0; s < R_.dims[G.tgt]; ++s)
      for (size_t t = 0; t < R_.dims[G.tgt]; ++t) {
        Element lhs = push(Word{G.src, {g}}, R_.mul(G.tgt, R_.basis(G.tgt, s), R_.basis(G.tgt, t)));
        Element rhs = mul(ract_[g][s], scalar(G.tgt, R_.basis(G.tgt, t)));
        if (!(lhs == rhs)) bad.push_back(G.name + ": right action is not associative");
        if (!(lhs == rhs)) break;
      }
    for (size_t t = 0; t < R_.dims[G.tgt]; ++t)
      if (!(d(ract_[g][t]) == mul(d_[g], scalar(G.tgt, R_.basis(G.tgt, t))))) bad.push_back("d is not right linear on " + G.name);
  }
  return bad;
}

std::vector<std::string> Ditalgebra::d_squared_failures() const {
  std::vector<std::string> bad;
  for (size_t g = 0; g < gens_.size(); ++g)
    if (!d(d_[g]).is_zero()) bad.push_back(gens_[g].name);
  return bad;
}

std::string Ditalgebra::str(const Word& w) const {
  if (w.letters.empty()) return "e_" + R_.names[w.point];
  std::string s;
  for (size_t k = 0; k < w.letters.size(); ++k) s += (k ? "*" : "") + gens_[w.letters[k]].name;
  return s;
}

std::string Ditalgebra::dump(const Element& x) const {
  std::vector<std::string> lines;
  for (const auto& [w, c] : x.terms) {
    std::string coeff = "[";
    for (size_t a = 0; a < c.cols(); ++a) coeff += (a ? "," : "") + c(0, a).str();
    lines.push_back(coeff + "] " + str(w));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Modules

size_t DitModule::dim() const {
  size_t n = 0;
  for (size_t d : dims) n += d;
  return n;
}

size_t DitModule::offset(size_t i) const {
  size_t n = 0;
  for (size_t k = 0; k < i; ++k) n += dims[k];
  return n;
}

Matrix r_action(const Ditalgebra& D, const DitModule& M, size_t i, const Matrix& r) {
  Matrix blk(M.dims[i], M.dims[i], D.ch());
  for (size_t a = 0; a < r.cols(); ++a)
    if (!r(0, a).is_zero()) blk += r(0, a) * M.r_act[i][a];
  return full_block(blk, M.dim(), M.dim(), M.offset(i), M.offset(i), D.ch());
}

namespace {

Matrix gen_full(const Ditalgebra& D, const DitModule& M, size_t g) {
  const auto& G = D.gen(g);
  auto it = M.gen_act.find(g);
  if (it == M.gen_act.end()) throw DomainMismatch("module has no action for " + G.name);
  return full_block(it->second, M.dim(), M.dim(), M.offset(G.src), M.offset(G.tgt), D.ch());
}

Matrix word_action(const Ditalgebra& D, const DitModule& M, const Matrix& c, const Word& w, size_t from, size_t to) {
  Matrix m = r_action(D, M, w.point, c);
  size_t start = from;
  for (size_t k = start; k < to; ++k) m = m * gen_full(D, M, w.letters[k]);
  return m;
}

Matrix word_action_plain(const Ditalgebra& D, const DitModule& M, const Word& w, size_t from, size_t to) {
  Matrix m = Matrix::identity(M.dim(), D.ch());
  for (size_t k = from; k < to; ++k) m = m * gen_full(D, M, w.letters[k]);
  return m;
}

}  // namespace

Matrix action(const Ditalgebra& D, const DitModule& M, const Element& a) {
  Matrix out(M.dim(), M.dim(), D.ch());
  for (const auto& [w, c] : a.terms) {
    if (D.degree(w) != 0) throw DegreeViolation("action: element is not of degree 0");
    out += word_action(D, M, c, w, 0, w.letters.size());
  }
  return out;
}

std::vector<std::string> validate(const Ditalgebra& D, const DitModule& M) {
  std::vector<std::string> bad;
  const auto& R = D.base();
  if (M.dims.size() != D.points() || M.r_act.size() != D.points()) return {"module has the wrong number of points"};
  for (size_t i = 0; i < D.points(); ++i) {
    if (M.r_act[i].size() != R.dims[i]) return {"point " + R.names[i] + ": wrong number of R-action matrices"};
    for (const auto& m : M.r_act[i])
      if (m.rows() != M.dims[i] || m.cols() != M.dims[i]) return {"point " + R.names[i] + ": R-action has the wrong shape"};
  }
  for (size_t g = 0; g < D.generators(); ++g) {
    const auto& G = D.gen(g);
    auto it = M.gen_act.find(g);
    if (G.degree == 0 && it == M.gen_act.end()) return {"missing action of " + G.name};
    if (G.degree == 1 && it != M.gen_act.end()) return {"degree-1 generator " + G.name + " must not act"};
    if (it != M.gen_act.end() && (it->second.rows() != M.dims[G.src] || it->second.cols() != M.dims[G.tgt]))
      return {"action of " + G.name + " has the wrong shape"};
  }
  for (size_t i = 0; i < D.points(); ++i) {
    if (!r_action(D, M, i, R.units[i]).block(M.offset(i), M.offset(i), M.dims[i], M.dims[i]).is_identity())
      bad.push_back("point " + R.names[i] + ": unit does not act as the identity");
    for (size_t a = 0; a < R.dims[i]; ++a)
      for (size_t b = 0; b < R.dims[i]; ++b)
        if (M.r_act[i][a] * M.r_act[i][b] != r_action(D, M, i, R.mul(i, R.basis(i, a), R.basis(i, b))).block(M.offset(i), M.offset(i), M.dims[i], M.dims[i]))
          bad.push_back("point " + R.names[i] + ": R-action is not multiplicative");
  }
  for (const auto& [g, A] : M.gen_act) {
    const auto& G = D.gen(g);
    for (size_t t = 0; t < R.dims[G.tgt]; ++t)
      if (gen_full(D, M, g) * r_action(D, M, G.tgt, R.basis(G.tgt, t)) != action(D, M, D.right_action(g, t)))
        bad.push_back(G.name + ": action is not R-balanced");
  }
  return bad;
}

DitModule free_module(const Ditalgebra& D, const std::vector<size_t>& n) {
  const auto& R = D.base();
  DitModule M;
  for (size_t i = 0; i < D.points(); ++i) {
    M.dims.push_back(n[i] * R.dims[i]);
    std::vector<Matrix> acts;
    for (size_t a = 0; a < R.dims[i]; ++a)
      acts.push_back(Matrix::block_diag(std::vector<Matrix>(n[i], R.right_matrix(i, R.basis(i, a))), D.ch()));
    for (auto& m : acts)
      if (!n[i]) m = Matrix(0, 0, D.ch());
    M.r_act.push_back(std::move(acts));
  }
  for (size_t g = 0; g < D.generators(); ++g)
    if (D.gen(g).degree == 0) M.gen_act[g] = Matrix(M.dims[D.gen(g).src], M.dims[D.gen(g).tgt], D.ch());
  return M;
}

// ---------------------------------------------------------------------------
// Morphisms

Matrix eval_f1(const Ditalgebra& D, const DitModule& M, const DitModule& N, const DitMorphism& f, const Element& x) {
  Matrix out(M.dim(), N.dim(), D.ch());
  for (const auto& [w, c] : x.terms) {
    std::optional<size_t> pos;
    for (size_t k = 0; k < w.letters.size(); ++k)
      if (D.gen(w.letters[k]).degree == 1) {
        if (pos) throw DegreeViolation("eval_f1: term of degree above 1");
        pos = k;
      }
    if (!pos) throw DegreeViolation("eval_f1: term of degree 0");
    auto it = f.f1.find(w.letters[*pos]);
    if (it == f.f1.end()) throw DomainMismatch("eval_f1: missing f^1 value");
    out += word_action(D, M, c, w, 0, *pos) * it->second * word_action_plain(D, N, w, *pos + 1, w.letters.size());
  }
  return out;
}

std::vector<std::string> check_dit_morphism(const Ditalgebra& D, const DitMorphism& f, const DitModule& M, const DitModule& N) {
  std::vector<std::string> bad;
  const auto& R = D.base();
  if (f.f0.rows() != M.dim() || f.f0.cols() != N.dim()) return {"f^0 has the wrong shape"};
  for (size_t g = 0; g < D.generators(); ++g) {
    if (D.gen(g).degree != 1) continue;
    auto it = f.f1.find(g);
    if (it == f.f1.end()) return {"missing f^1 on " + D.gen(g).name};
    if (it->second.rows() != M.dim() || it->second.cols() != N.dim()) return {"f^1 on " + D.gen(g).name + " has the wrong shape"};
  }
  for (size_t i = 0; i < D.points(); ++i)
    for (size_t j = 0; j < D.points(); ++j)
      if (i != j && !f.f0.block(M.offset(i), N.offset(j), M.dims[i], N.dims[j]).is_zero()) bad.push_back("f^0 is not block diagonal");
  for (size_t i = 0; i < D.points(); ++i)
    for (size_t a = 0; a < R.dims[i]; ++a)
      if (r_action(D, M, i, R.basis(i, a)) * f.f0 != f.f0 * r_action(D, N, i, R.basis(i, a))) bad.push_back("f^0 is not R-linear at " + R.names[i]);
  for (const auto& [g, F] : f.f1) {
    const auto& G = D.gen(g);
    Matrix outside = F;
    outside.set_block(M.offset(G.src), N.offset(G.tgt), Matrix(M.dims[G.src], N.dims[G.tgt], D.ch()));
    if (!outside.is_zero()) bad.push_back("f^1 on " + G.name + " leaves its block");
    for (size_t t = 0; t < R.dims[G.tgt]; ++t)
      if (eval_f1(D, M, N, f, D.right_action(g, t)) != F * r_action(D, N, G.tgt, R.basis(G.tgt, t)))
        bad.push_back("f^1 is not right linear on " + G.name);
  }
  for (const auto& [g, A] : M.gen_act) {
    Matrix lhs = f.f0 * gen_full(D, N, g);
    Matrix rhs = gen_full(D, M, g) * f.f0 + eval_f1(D, M, N, f, D.d_gen(g));
    if (lhs != rhs) bad.push_back("f^0(m)a = f^0(ma) + f^1(d a)(m) fails for " + D.gen(g).name);
  }
  return bad;
}

DitMorphism zero_morphism(const Ditalgebra& D, const DitModule& M, const DitModule& N) {
  DitMorphism f{Matrix(M.dim(), N.dim(), D.ch()), {}};
  for (size_t g = 0; g < D.generators(); ++g)
    if (D.gen(g).degree == 1) f.f1[g] = Matrix(M.dim(), N.dim(), D.ch());
  return f;
}

DitMorphism identity(const Ditalgebra& D, const DitModule& M) {
  DitMorphism f = zero_morphism(D, M, M);
  f.f0 = Matrix::identity(M.dim(), D.ch());
  return f;
}

DitMorphism compose(const Ditalgebra& D, const DitMorphism& g, const DitMorphism& f, const DitModule& M, const DitModule& N, const DitModule& L) {
  if (f.f0.cols() != g.f0.rows() || f.f0.rows() != M.dim() || g.f0.cols() != L.dim() || N.dim() != f.f0.cols())
    throw DomainMismatch("compose: morphisms are not composable");
  DitMorphism h = zero_morphism(D, M, L);
  h.f0 = f.f0 * g.f0;
  for (auto& [v, H] : h.f1) {
    H = f.f0 * g.f1.at(v) + f.f1.at(v) * g.f0;
    for (const auto& [w, c] : D.d_gen(v).terms) {
      std::vector<size_t> ones;
      for (size_t k = 0; k < w.letters.size(); ++k)
        if (D.gen(w.letters[k]).degree == 1) ones.push_back(k);
      if (ones.size() != 2) throw DegreeViolation("compose: d(v) is not of degree 2");
      Matrix left = word_action(D, M, c, w, 0, ones[0]) * f.f1.at(w.letters[ones[0]]) * word_action_plain(D, N, w, ones[0] + 1, ones[1]);
      Matrix right = g.f1.at(w.letters[ones[1]]) * word_action_plain(D, L, w, ones[1] + 1, w.letters.size());
      H += left * right;
    }
  }
  return h;
}

DitMorphism combine(const std::vector<DitMorphism>& basis, const std::vector<Scalar>& c) {
  DitMorphism out = basis.at(0);
  out.f0 = c[0] * out.f0;
  for (auto& [g, F] : out.f1) F = c[0] * F;
  for (size_t k = 1; k < basis.size(); ++k) {
    out.f0 += c[k] * basis[k].f0;
    for (auto& [g, F] : out.f1) F += c[k] * basis[k].f1.at(g);
  }
  return out;
}

bool operator==(const DitMorphism& a, const DitMorphism& b) { return a.f0 == b.f0 && a.f1 == b.f1; }

std::vector<DitMorphism> hom_space(const Ditalgebra& D, const DitModule& M, const DitModule& N) {
  const auto& R = D.base();
  u32 ch = D.ch();
  // One parameter per free entry of f^0 and f^1 blocks.
  struct Slot {
    long g;  // -1 for f^0
    size_t r, c;
  };
  std::vector<Slot> slots;
  for (size_t i = 0; i < D.points(); ++i)
    for (size_t r = 0; r < M.dims[i]; ++r)
      for (size_t c = 0; c < N.dims[i]; ++c) slots.push_back({-1, M.offset(i) + r, N.offset(i) + c});
  for (size_t g = 0; g < D.generators(); ++g) {
    const auto& G = D.gen(g);
    if (G.degree != 1) continue;
    for (size_t r = 0; r < M.dims[G.src]; ++r)
      for (size_t c = 0; c < N.dims[G.tgt]; ++c) slots.push_back({static_cast<long>(g), M.offset(G.src) + r, N.offset(G.tgt) + c});
  }
  auto make = [&](size_t p) {
    DitMorphism f = zero_morphism(D, M, N);
    const Slot& s = slots[p];
    if (s.g < 0) f.f0(s.r, s.c) = Scalar::constant(ch, 1);
    else f.f1[s.g](s.r, s.c) = Scalar::constant(ch, 1);
    return f;
  };
  auto residual = [&](size_t p) {
    DitMorphism f = make(p);
    std::vector<Scalar> out;
    for (size_t i = 0; i < D.points(); ++i)
      for (size_t a = 0; a < R.dims[i]; ++a) append_flat(out, r_action(D, M, i, R.basis(i, a)) * f.f0 - f.f0 * r_action(D, N, i, R.basis(i, a)));
    for (const auto& [g, F] : f.f1) {
      const auto& G = D.gen(g);
      for (size_t t = 0; t < R.dims[G.tgt]; ++t) append_flat(out, eval_f1(D, M, N, f, D.right_action(g, t)) - F * r_action(D, N, G.tgt, R.basis(G.tgt, t)));
    }
    for (const auto& [g, A] : M.gen_act)
      append_flat(out, f.f0 * gen_full(D, N, g) - gen_full(D, M, g) * f.f0 - eval_f1(D, M, N, f, D.d_gen(g)));
    return out;
  };
  Matrix sol = solve_params(slots.size(), ch, residual);
  std::vector<DitMorphism> basis;
  if (slots.empty()) return basis;
  std::vector<DitMorphism> units;
  for (size_t p = 0; p < slots.size(); ++p) units.push_back(make(p));
  for (size_t r = 0; r < sol.rows(); ++r) basis.push_back(combine(units, sol.row_values(r)));
  return basis;
}

// ---------------------------------------------------------------------------
// Examples

Ditalgebra quiver_example(u32 ch, size_t vertices, const std::vector<std::pair<size_t, size_t>>& arrows) {
  std::vector<std::string> names;
  for (size_t v = 0; v < vertices; ++v) names.push_back(std::to_string(v + 1));
  std::vector<Generator> gens;
  for (size_t a = 0; a < arrows.size(); ++a) gens.push_back({"a" + std::to_string(a + 1), arrows[a].first, arrows[a].second, 0});
  return Ditalgebra(BaseRing::trivial(ch, names), gens);
}

Ditalgebra poset_biquiver(u32 ch, const EquippedPoset& P) {
  size_t n = P.size();
  std::vector<std::string> names = P.names();
  names.push_back("w");
  std::vector<Generator> gens;
  for (size_t i = 0; i < n; ++i) gens.push_back({"a_" + P.name(i), n, i, 0});
  std::map<std::pair<size_t, size_t>, size_t> x;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (P.less(i, j)) {
        x[{i, j}] = gens.size();
        gens.push_back({"x_" + P.name(i) + "_" + P.name(j), i, j, 1});
      }
  Ditalgebra D(BaseRing::trivial(ch, names), gens);
  Matrix one = unit_row(1, 0, ch), minus = Scalar::constant(ch, -1) * one;
  for (size_t j = 0; j < n; ++j) {
    Element e;
    for (size_t i = 0; i < n; ++i)
      if (P.less(i, j)) e = D.add(e, D.mul(D.letter(i, minus), D.letter(x[{i, j}])));
    D.set_d(j, e);
  }
  for (const auto& [ij, g] : x) {
    Element e;
    for (size_t r = 0; r < n; ++r)
      if (P.less(ij.first, r) && P.less(r, ij.second)) e = D.add(e, D.mul(D.letter(x[{ij.first, r}]), D.letter(x[{r, ij.second}])));
    D.set_d(g, e);
  }
  return D;
}

Ditalgebra triangular_Z(u32 ch) {
  Ditalgebra D(BaseRing::trivial(ch, {"1"}), {{"w12", 0, 0, 0}, {"w1", 0, 0, 1}, {"w2", 0, 0, 1}});
  Scalar m1 = Scalar::constant(ch, -1);
  D.set_d(0, D.sub(D.mul(D.letter(0), D.letter(2)), D.mul(D.letter(1), D.letter(0))));
  D.set_d(1, D.scale(m1, D.mul(D.letter(1), D.letter(1))));
  D.set_d(2, D.scale(m1, D.mul(D.letter(2), D.letter(2))));
  return D;
}

// ---------------------------------------------------------------------------
// StarJ

StarJ::StarJ(AlgebraPtr A) : A_(std::move(A)), S_(BaseRing::diagonal(*A_)) {
  const auto& Al = *A_;
  u32 ch = Al.ch();
  size_t n = Al.points();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (i == j || Al.block(i, j).empty()) continue;
      Matrix span(0, Al.dim(), ch);
      std::vector<size_t> ls;
      for (size_t b : Al.block(i, j)) {
        Matrix v = unit_row(Al.dim(), b, ch);
        if (la::contains(span, v)) continue;
        ls.push_back(p_.size());
        p_.push_back(v);
        psrc_.push_back(i);
        ptgt_.push_back(j);
        for (size_t a = 0; a < S_.dims[i]; ++a) span = Matrix::vcat(span, Al.mul(to_algebra(i, S_.basis(i, a)), v));
      }
      jco_.emplace(std::make_pair(i, j), la::Coordinates(span));
      jblock_[{i, j}] = ls;
    }
  size_t off = 0;
  for (size_t l = 0; l < p_.size(); ++l) {
    foff_.push_back(off);
    off += S_.dims[psrc_[l]];
  }
  // Generators of each e_j *J e_i as left R_j-module.
  for (const auto& [ij, ls] : jblock_) {
    auto [i, j] = ij;
    std::vector<Matrix> cands;
    for (size_t l : ls) cands.push_back(dual(l));
    for (size_t l : ls)
      for (size_t t = 0; t < S_.dims[i]; ++t) cands.push_back(right(dual(l), i, S_.basis(i, t)));
    Matrix span(0, fdim(), ch);
    std::vector<size_t> bs;
    for (const auto& c : cands) {
      if (la::contains(span, c)) continue;
      bs.push_back(g_.size());
      g_.push_back(c);
      gsrc_.push_back(j);
      gtgt_.push_back(i);
      for (size_t a = 0; a < S_.dims[j]; ++a) span = Matrix::vcat(span, left(j, S_.basis(j, a), c));
    }
    gco_.emplace(std::make_pair(j, i), la::Coordinates(span));
    gblock_[{j, i}] = bs;
  }
}

Matrix StarJ::to_algebra(size_t i, const Matrix& r) const {
  Matrix x(1, A_->dim(), A_->ch());
  for (size_t b : A_->block(i, i)) x(0, b) = r(0, A_->pos(b));
  return x;
}

Matrix StarJ::from_algebra(size_t i, const Matrix& x) const {
  Matrix r(1, S_.dims[i], A_->ch());
  for (size_t b : A_->block(i, i)) r(0, A_->pos(b)) = x(0, b);
  return r;
}

std::vector<Matrix> StarJ::left_coords(const Matrix& x) const {
  std::vector<Matrix> out;
  for (size_t l = 0; l < p_.size(); ++l) out.push_back(S_.zero(psrc_[l]));
  for (size_t i = 0; i < A_->points(); ++i)
    for (size_t b : A_->block(i, i))
      if (!x(0, b).is_zero()) throw DomainMismatch("left_coords: element is not in the radical");
  for (const auto& [ij, ls] : jblock_) {
    Matrix part(1, A_->dim(), A_->ch());
    bool any = false;
    for (size_t b : A_->block(ij.first, ij.second)) {
      part(0, b) = x(0, b);
      any = any || !x(0, b).is_zero();
    }
    if (!any) continue;
    Matrix c = jco_.at(ij).of(part);
    size_t k = S_.dims[ij.first];
    for (size_t q = 0; q < ls.size(); ++q) out[ls[q]] = c.block(0, q * k, 1, k);
  }
  return out;
}

Matrix StarJ::dual(size_t l) const {
  Matrix g(1, fdim(), A_->ch());
  g.set_block(0, foff_[l], S_.units[psrc_[l]]);
  return g;
}

Matrix StarJ::eval(const Matrix& gamma, const Matrix& x) const {
  auto a = left_coords(x);
  Matrix out(1, A_->dim(), A_->ch());
  for (size_t l = 0; l < p_.size(); ++l) {
    if (a[l].is_zero()) continue;
    size_t i = psrc_[l];
    out += to_algebra(i, S_.mul(i, a[l], gamma.block(0, foff_[l], 1, S_.dims[i])));
  }
  return out;
}

Matrix StarJ::right(const Matrix& gamma, size_t i, const Matrix& s) const {
  Matrix out(1, fdim(), A_->ch());
  for (size_t l = 0; l < p_.size(); ++l)
    if (psrc_[l] == i) out.set_block(0, foff_[l], S_.mul(i, gamma.block(0, foff_[l], 1, S_.dims[i]), s));
  return out;
}

Matrix StarJ::left(size_t j, const Matrix& s, const Matrix& gamma) const {
  Matrix out(1, fdim(), A_->ch());
  for (size_t l = 0; l < p_.size(); ++l)
    if (ptgt_[l] == j) out.set_block(0, foff_[l], from_algebra(psrc_[l], eval(gamma, A_->mul(p_[l], to_algebra(j, s)))));
  return out;
}

std::vector<std::pair<size_t, Matrix>> StarJ::express(const Matrix& gamma) const {
  std::vector<std::pair<size_t, Matrix>> out;
  for (const auto& [ij, ls] : jblock_) {
    Matrix part(1, fdim(), A_->ch());
    bool any = false;
    for (size_t l : ls)
      for (size_t a = 0; a < S_.dims[ij.first]; ++a) {
        part(0, foff_[l] + a) = gamma(0, foff_[l] + a);
        any = any || !gamma(0, foff_[l] + a).is_zero();
      }
    if (!any) continue;
    size_t j = ij.second, i = ij.first;
    const auto& bs = gblock_.at({j, i});
    Matrix c = gco_.at({j, i}).of(part);
    size_t k = S_.dims[j];
    for (size_t q = 0; q < bs.size(); ++q) {
      Matrix cb = c.block(0, q * k, 1, k);
      if (!cb.is_zero()) out.emplace_back(bs[q], cb);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Examples 4 and 5

Element as_element(const HomDual& H, const Matrix& gamma) {
  Element e;
  for (const auto& [b, c] : H.star.express(gamma)) e = H.dit.add(e, H.dit.letter(b, c));
  return e;
}

Element mu(const HomDual& H, const Matrix& gamma) {
  const auto& J = H.star;
  const auto& A = *J.algebra();
  Element out;
  for (size_t k = 0; k < J.p_count(); ++k)
    for (size_t l = 0; l < J.p_count(); ++l) {
      if (J.p_tgt(l) != J.p_src(k)) continue;
      Matrix pp = A.mul(J.p(l), J.p(k));
      if (pp.is_zero()) continue;
      size_t i = J.p_src(l);
      Matrix v = J.from_algebra(i, J.eval(gamma, pp));
      if (v.is_zero()) continue;
      out = H.dit.add(out, H.dit.mul(as_element(H, J.dual(k)), as_element(H, J.right(J.dual(l), i, v))));
    }
  return out;
}

Matrix phi_pairing(const HomDual& H, const Element& t, const Matrix& a, const Matrix& b) {
  const auto& J = H.star;
  const auto& A = *J.algebra();
  Matrix out(1, A.dim(), A.ch());
  for (const auto& [w, c] : t.terms) {
    if (w.letters.size() != 2) throw DegreeViolation("phi_pairing: expected words of length 2");
    Matrix rho = J.left(w.point, c, J.gen(w.letters[0]));
    out += J.eval(J.gen(w.letters[1]), A.mul(a, J.eval(rho, b)));
  }
  return out;
}

Element mu_left(const HomDual& H, const Element& m) {
  Element out;
  for (const auto& [w, c] : m.terms) {
    Element x = H.dit.left(w.point, c, mu(H, H.star.gen(w.letters[0])));
    out = H.dit.add(out, H.dit.mul(x, H.dit.letter(w.letters[1])));
  }
  return out;
}

Element mu_right(const HomDual& H, const Element& m) {
  Element out;
  for (const auto& [w, c] : m.terms) out = H.dit.add(out, H.dit.mul(H.dit.letter(w.letters[0], c), mu(H, H.star.gen(w.letters[1]))));
  return out;
}

HomDual hom_dual(const AlgebraPtr& A) {
  StarJ J(A);
  std::vector<Generator> gens;
  for (size_t b = 0; b < J.gen_count(); ++b) gens.push_back({"g" + std::to_string(b), J.gen_src(b), J.gen_tgt(b), 1});
  HomDual H{J, Ditalgebra(J.base(), gens)};
  for (size_t b = 0; b < J.gen_count(); ++b)
    for (size_t t = 0; t < J.base().dims[J.gen_tgt(b)]; ++t)
      H.dit.set_right_action(b, t, as_element(H, J.right(J.gen(b), J.gen_tgt(b), J.base().basis(J.gen_tgt(b), t))));
  for (size_t b = 0; b < J.gen_count(); ++b) H.dit.set_d(b, mu(H, J.gen(b)));
  return H;
}

namespace {

// Relabels letters of an Ex.4 element: each letter goes to its copy, and
// the point to the copy of the first letter.
Element relabel(const Ditalgebra& target, const Element& e, const std::vector<std::function<size_t(size_t)>>& copy, size_t point_shift) {
  Element out;
  for (const auto& [w, c] : e.terms) {
    Word x{w.point + point_shift, {}};
    for (size_t k = 0; k < w.letters.size(); ++k) x.letters.push_back(copy[k](w.letters[k]));
    Element t;
    t.terms.emplace(x, c);
    out = target.add(out, t);
  }
  return out;
}

}  // namespace

Drozd drozd(const AlgebraPtr& A) {
  HomDual H = hom_dual(A);
  const auto& J = H.star;
  const auto& S = J.base();
  size_t n = A->points();
  BaseRing R;
  R.ch = S.ch;
  for (int c = 1; c <= 2; ++c)
    for (size_t i = 0; i < n; ++i) {
      R.names.push_back(S.names[i] + "." + std::to_string(c));
      R.dims.push_back(S.dims[i]);
      R.prod.push_back(S.prod[i]);
      R.units.push_back(S.units[i]);
    }
  std::vector<Generator> gens;
  for (size_t b = 0; b < J.gen_count(); ++b) {
    size_t j = J.gen_src(b), i = J.gen_tgt(b);
    gens.push_back({"w1." + H.dit.gen(b).name, j, i, 1});
    gens.push_back({"w2." + H.dit.gen(b).name, n + j, n + i, 1});
    gens.push_back({"w12." + H.dit.gen(b).name, j, n + i, 0});
  }
  Drozd Dz{H, Ditalgebra(R, gens), n};
  auto w1 = [](size_t b) { return 3 * b; };
  auto w2 = [](size_t b) { return 3 * b + 1; };
  auto w12 = [](size_t b) { return 3 * b + 2; };
  Scalar m1 = Scalar::constant(R.ch, -1);
  for (size_t b = 0; b < J.gen_count(); ++b) {
    size_t i = J.gen_tgt(b);
    for (size_t t = 0; t < S.dims[i]; ++t) {
      const Element& r = H.dit.right_action(b, t);
      Dz.dit.set_right_action(w1(b), t, relabel(Dz.dit, r, {w1}, 0));
      Dz.dit.set_right_action(w2(b), t, relabel(Dz.dit, r, {w2}, n));
      Dz.dit.set_right_action(w12(b), t, relabel(Dz.dit, r, {w12}, 0));
    }
    const Element& m = H.dit.d_gen(b);
    Dz.dit.set_d(w1(b), Dz.dit.scale(m1, relabel(Dz.dit, m, {w1, w1}, 0)));
    Dz.dit.set_d(w2(b), Dz.dit.scale(m1, relabel(Dz.dit, m, {w2, w2}, n)));
    Dz.dit.set_d(w12(b), Dz.dit.sub(relabel(Dz.dit, m, {w12, w2}, 0), relabel(Dz.dit, m, {w1, w12}, 0)));
  }
  return Dz;
}

// ---------------------------------------------------------------------------
// Right bases and the functor F

std::vector<Matrix> RightBasis::coords(const BaseRing& R, size_t i, const Matrix& v) const {
  std::vector<Matrix> out;
  if (gens.empty()) return out;
  Matrix c = co.of(v);
  size_t k = R.dims[i];
  for (size_t q = 0; q < gens.size(); ++q) out.push_back(c.block(0, q * k, 1, k));
  return out;
}

RightBasis right_basis(const Ditalgebra& D, const DitModule& M, size_t i) {
  RightBasis B;
  Matrix span(0, M.dims[i], D.ch());
  for (size_t c = 0; c < M.dims[i]; ++c) {
    Matrix v = unit_row(M.dims[i], c, D.ch());
    if (la::contains(span, v)) continue;
    B.gens.push_back(v);
    for (const auto& r : M.r_act[i]) span = Matrix::vcat(span, v * r);
  }
  B.co = la::Coordinates(span);
  return B;
}

std::vector<RightBasis> right_bases(const Ditalgebra& D, const DitModule& M) {
  std::vector<RightBasis> out;
  for (size_t i = 0; i < D.points(); ++i) out.push_back(right_basis(D, M, i));
  return out;
}

namespace {

std::vector<size_t> multiplicities(const std::vector<RightBasis>& b, size_t points) {
  std::vector<size_t> n(points);
  for (size_t i = 0; i < points; ++i) n[i] = b[i].gens.size();
  return n;
}

// Block coordinates of a full row of M at point i.
Matrix at_point(const DitModule& M, size_t i, const Matrix& full) { return full.block(0, M.offset(i), 1, M.dims[i]); }

Matrix to_full(const DitModule& M, size_t i, const Matrix& blk) {
  Matrix v(1, M.dim(), blk.characteristic());
  v.set_block(0, M.offset(i), blk);
  return v;
}

}  // namespace

LambdaModule functor_F(const HomDual& H, const DitModule& /*M*/, const std::vector<RightBasis>& bm) {
  return mod::free_module(H.star.algebra(), multiplicities(bm, H.dit.points()));
}

Matrix functor_F(const HomDual& H, const DitMorphism& f, const DitModule& M, const DitModule& N, const std::vector<RightBasis>& bm, const std::vector<RightBasis>& bn) {
  const auto& J = H.star;
  const auto& A = *J.algebra();
  const auto& S = J.base();
  auto nm = multiplicities(bm, A.points()), nn = multiplicities(bn, A.points());
  LambdaModule FN = mod::free_module(J.algebra(), nn);
  std::vector<Matrix> images;
  for (size_t i = 0; i < A.points(); ++i)
    for (const auto& u : bm[i].gens) {
      Matrix uf = to_full(M, i, u);
      Matrix img = tensor_row(A, J, FN, nn, i, bn[i].coords(S, i, at_point(N, i, uf * f.f0)), A.unit_element(i));
      for (size_t l = 0; l < J.p_count(); ++l) {
        if (J.p_tgt(l) != i) continue;
        size_t s = J.p_src(l);
        Matrix v = uf * eval_f1(H.dit, M, N, f, as_element(H, J.dual(l)));
        Matrix blk = at_point(N, s, v);
        if (blk.is_zero()) continue;
        img += tensor_row(A, J, FN, nn, s, bn[s].coords(S, s, blk), J.p(l));
      }
      images.push_back(img);
    }
  return mod::map_from_free(J.algebra(), nm, images, FN);
}

// ---------------------------------------------------------------------------
// The functor G and its inverse

namespace {

DitModule restrict_points(const DitModule& M, size_t from, size_t count) {
  DitModule R;
  for (size_t i = from; i < from + count; ++i) {
    R.dims.push_back(M.dims[i]);
    R.r_act.push_back(M.r_act[i]);
  }
  return R;
}

}  // namespace

MorphismObject functor_G(const Drozd& Dz, const DitModule& M) {
  const auto& H = Dz.hd;
  size_t n = Dz.n;
  MorphismObject X{restrict_points(M, 0, n), restrict_points(M, n, n), {}};
  X.psi = zero_morphism(H.dit, X.m1, X.m2);
  for (size_t b = 0; b < H.dit.generators(); ++b) {
    const auto& G = H.dit.gen(b);
    Matrix blk = M.gen_act.at(Dz.w12(b));
    X.psi.f1[b].set_block(X.m1.offset(G.src), X.m2.offset(G.tgt), blk);
  }
  return X;
}

MorphismPair functor_G(const Drozd& Dz, const DitMorphism& f, const DitModule& M, const DitModule& N) {
  const auto& H = Dz.hd;
  MorphismObject X = functor_G(Dz, M), Y = functor_G(Dz, N);
  MorphismPair h{zero_morphism(H.dit, X.m1, Y.m1), zero_morphism(H.dit, X.m2, Y.m2)};
  size_t m1 = X.m1.dim(), n1 = Y.m1.dim();
  h.f.f0 = f.f0.block(0, 0, m1, n1);
  h.g.f0 = f.f0.block(m1, n1, X.m2.dim(), Y.m2.dim());
  for (size_t b = 0; b < H.dit.generators(); ++b) {
    h.f.f1[b] = f.f1.at(Dz.w1(b)).block(0, 0, m1, n1);
    h.g.f1[b] = f.f1.at(Dz.w2(b)).block(m1, n1, X.m2.dim(), Y.m2.dim());
  }
  return h;
}

bool is_pair_morphism(const HomDual& H, const MorphismPair& h, const MorphismObject& X, const MorphismObject& Y) {
  if (!check_dit_morphism(H.dit, h.f, X.m1, Y.m1).empty()) return false;
  if (!check_dit_morphism(H.dit, h.g, X.m2, Y.m2).empty()) return false;
  return compose(H.dit, h.g, X.psi, X.m1, X.m2, Y.m2) == compose(H.dit, Y.psi, h.f, X.m1, Y.m1, Y.m2);
}

std::vector<MorphismPair> hom_space(const HomDual& H, const MorphismObject& X, const MorphismObject& Y) {
  auto hf = hom_space(H.dit, X.m1, Y.m1);
  auto hg = hom_space(H.dit, X.m2, Y.m2);
  DitMorphism zf = zero_morphism(H.dit, X.m1, Y.m1), zg = zero_morphism(H.dit, X.m2, Y.m2);
  size_t np = hf.size() + hg.size();
  auto residual = [&](size_t p) {
    DitMorphism f = p < hf.size() ? hf[p] : zf;
    DitMorphism g = p < hf.size() ? zg : hg[p - hf.size()];
    DitMorphism lhs = compose(H.dit, g, X.psi, X.m1, X.m2, Y.m2);
    DitMorphism rhs = compose(H.dit, Y.psi, f, X.m1, Y.m1, Y.m2);
    std::vector<Scalar> out;
    append_flat(out, lhs.f0 - rhs.f0);
    for (const auto& [v, L] : lhs.f1) append_flat(out, L - rhs.f1.at(v));
    return out;
  };
  Matrix sol = solve_params(np, H.dit.ch(), residual);
  std::vector<MorphismPair> out;
  for (size_t r = 0; r < sol.rows(); ++r) {
    auto c = sol.row_values(r);
    MorphismPair h{zf, zg};
    if (!hf.empty()) h.f = combine(hf, {c.begin(), c.begin() + hf.size()});
    if (!hg.empty()) h.g = combine(hg, {c.begin() + hf.size(), c.end()});
    out.push_back(h);
  }
  return out;
}

DitModule drozd_module(const Drozd& Dz, const MorphismObject& X) {
  const auto& H = Dz.hd;
  DitModule M;
  for (const auto* part : {&X.m1, &X.m2})
    for (size_t i = 0; i < part->dims.size(); ++i) {
      M.dims.push_back(part->dims[i]);
      M.r_act.push_back(part->r_act[i]);
    }
  for (size_t b = 0; b < H.dit.generators(); ++b) {
    const auto& G = H.dit.gen(b);
    M.gen_act[Dz.w12(b)] = X.psi.f1.at(b).block(X.m1.offset(G.src), X.m2.offset(G.tgt), X.m1.dims[G.src], X.m2.dims[G.tgt]);
  }
  return M;
}

// ---------------------------------------------------------------------------
// D^e and Ξ_e

Restriction restrict_idempotent(const Drozd& Dz, size_t zero) {
  const auto& D = Dz.dit;
  size_t n = Dz.n;
  Restriction E{D, {}, {}, {}, {}};
  E.point_map.assign(2 * n, -1);
  BaseRing R;
  R.ch = D.ch();
  for (size_t p = 0; p < 2 * n; ++p) {
    bool keep = p < n ? p != zero : p == n + zero;
    if (!keep) continue;
    E.point_map[p] = static_cast<long>(E.point_of.size());
    E.point_of.push_back(p);
    R.names.push_back(D.base().names[p]);
    R.dims.push_back(D.base().dims[p]);
    R.prod.push_back(D.base().prod[p]);
    R.units.push_back(D.base().units[p]);
  }
  E.gen_map.assign(D.generators(), -1);
  std::vector<Generator> gens;
  for (size_t g = 0; g < D.generators(); ++g) {
    const auto& G = D.gen(g);
    if (E.point_map[G.src] < 0 || E.point_map[G.tgt] < 0) continue;
    E.gen_map[g] = static_cast<long>(gens.size());
    E.gen_of.push_back(g);
    gens.push_back({G.name, static_cast<size_t>(E.point_map[G.src]), static_cast<size_t>(E.point_map[G.tgt]), G.degree});
  }
  E.dit = Ditalgebra(R, gens);
  for (size_t s = 0; s < gens.size(); ++s) {
    size_t g = E.gen_of[s];
    for (size_t t = 0; t < R.dims[gens[s].tgt]; ++t) E.dit.set_right_action(s, t, eta(E, D.right_action(g, t)));
    E.dit.set_d(s, eta(E, D.d_gen(g)));
  }
  return E;
}

Element eta(const Restriction& E, const Element& x) {
  Element out;
  for (const auto& [w, c] : x.terms) {
    if (E.point_map[w.point] < 0) continue;
    Word y{static_cast<size_t>(E.point_map[w.point]), {}};
    bool keep = true;
    for (size_t g : w.letters) {
      if (E.gen_map[g] < 0) {
        keep = false;
        break;
      }
      y.letters.push_back(static_cast<size_t>(E.gen_map[g]));
    }
    if (keep) out.terms.emplace(y, c);
  }
  return out;
}

namespace {

// w_{1,2}γ as an element of D^e.
Element w12_element(const Drozd& Dz, const Restriction& E, const Matrix& gamma) {
  Element big;
  for (const auto& [b, c] : Dz.hd.star.express(gamma)) big = Dz.dit.add(big, Dz.dit.letter(Dz.w12(b), c));
  return eta(E, big);
}

}  // namespace

PresentationObject xi_e(const Drozd& Dz, const Restriction& E, size_t zero, const DitModule& M, const std::vector<RightBasis>* bases) {
  const auto& J = Dz.hd.star;
  const auto& A = *J.algebra();
  const auto& S = J.base();
  std::vector<RightBasis> own;
  if (!bases) {
    own = right_bases(E.dit, M);
    bases = &own;
  }
  size_t z2 = static_cast<size_t>(E.point_map[Dz.n + zero]);
  PresentationObject o;
  o.algebra = J.algebra();
  o.zero = zero;
  o.mult.assign(A.points(), 0);
  for (size_t x = 0; x < A.points(); ++x)
    if (x != zero) o.mult[x] = (*bases)[static_cast<size_t>(E.point_map[x])].gens.size();
  o.nu = (*bases)[z2].gens.size();
  LambdaModule T = o.target();
  std::vector<size_t> tmult(A.points(), 0);
  tmult[zero] = o.nu;
  std::vector<Matrix> images;
  for (size_t x = 0; x < A.points(); ++x) {
    if (x == zero) continue;
    size_t sx = static_cast<size_t>(E.point_map[x]);
    for (const auto& u : (*bases)[sx].gens) {
      Matrix uf = to_full(M, sx, u);
      Matrix img(1, T.dim(), A.ch());
      for (size_t l = 0; l < J.p_count(); ++l) {
        if (J.p_src(l) != zero || J.p_tgt(l) != x) continue;
        Matrix v = at_point(M, z2, uf * action(E.dit, M, w12_element(Dz, E, J.dual(l))));
        if (v.is_zero()) continue;
        img += tensor_row(A, J, T, tmult, zero, (*bases)[z2].coords(S, zero, v), J.p(l));
      }
      images.push_back(img);
    }
  }
  o.phi = mod::map_from_free(o.algebra, o.mult, images, T);
  return o;
}

DeModule de_module(const Drozd& Dz, const Restriction& E, size_t zero, const PresentationObject& o) {
  const auto& J = Dz.hd.star;
  const auto& A = *J.algebra();
  const auto& S = J.base();
  u32 ch = A.ch();
  std::vector<size_t> n(E.dit.points(), 0);
  for (size_t x = 0; x < A.points(); ++x)
    if (x != zero) n[static_cast<size_t>(E.point_map[x])] = o.mult[x];
  size_t z2 = static_cast<size_t>(E.point_map[Dz.n + zero]);
  n[z2] = o.nu;
  DeModule out{free_module(E.dit, n), {}};
  DitModule& M = out.module;
  for (size_t p = 0; p < E.dit.points(); ++p) {
    RightBasis B;
    size_t k = S.dims[E.point_of[p] % Dz.n];
    for (size_t c = 0; c < n[p]; ++c) {
      Matrix v(1, M.dims[p], ch);
      v.set_block(0, c * k, E.dit.base().units[p]);
      B.gens.push_back(v);
    }
    B.co = la::Coordinates(Matrix::identity(M.dims[p], ch));
    out.bases.push_back(B);
  }
  // φ(u_c ⊗ 1) = Σ_k v_k ⊗ λ_{c,k}
  LambdaModule T = o.target();
  std::vector<size_t> tmult(A.points(), 0);
  tmult[zero] = o.nu;
  auto gens = mod::free_generators(o.algebra, o.mult);
  std::vector<size_t> first(A.points(), 0);
  for (size_t x = 0, s = 0; x < A.points(); ++x) {
    first[x] = s;
    s += o.mult[x];
  }
  size_t k0 = S.dims[zero];
  for (size_t g = 0; g < E.dit.generators(); ++g) {
    const auto& G = E.dit.gen(g);
    if (G.degree != 0) continue;
    size_t b = E.gen_of[g] / 3;
    size_t x = J.gen_src(b);
    size_t kx = S.dims[x];
    Matrix act(M.dims[G.src], M.dims[G.tgt], ch);
    for (size_t c = 0; c < o.mult[x]; ++c) {
      Matrix row = gens[first[x] + c] * o.phi;
      for (size_t t = 0; t < kx; ++t) {
        Matrix gamma = J.left(x, S.basis(x, t), J.gen(b));
        Matrix val(1, M.dims[G.tgt], ch);
        for (size_t k = 0; k < o.nu; ++k) {
          Matrix lambda = summand_part(A, T, tmult, zero, k, row);
          if (lambda.is_zero()) continue;
          val.set_block(0, k * k0, J.from_algebra(zero, J.eval(gamma, lambda)));
        }
        act.set_block(c * kx + t, 0, val);
      }
    }
    M.gen_act[g] = act;
  }
  return out;
}

// ---------------------------------------------------------------------------
// The category M and Cok

bool is_m_morphism(const PresentationObject& a, const PresentationObject& b, const MMorphism& f) {
  LambdaModule Qa = a.source(), Qb = b.source(), Ta = a.target(), Tb = b.target();
  if (f.f1.rows() != Qa.dim() || f.f1.cols() != Qb.dim() || f.f2.rows() != Ta.dim() || f.f2.cols() != Tb.dim()) return false;
  return mod::is_hom(Qa, Qb, f.f1) && mod::is_hom(Ta, Tb, f.f2) && a.phi * f.f2 == f.f1 * b.phi;
}

std::vector<MMorphism> m_hom(const PresentationObject& a, const PresentationObject& b) {
  LambdaModule Qa = a.source(), Qb = b.source(), Ta = a.target(), Tb = b.target();
  auto h1 = mod::hom(Qa, Qb), h2 = mod::hom(Ta, Tb);
  u32 ch = a.algebra->ch();
  auto residual = [&](size_t p) {
    std::vector<Scalar> out;
    if (p < h1.size()) append_flat(out, -(h1[p] * b.phi));
    else append_flat(out, a.phi * h2[p - h1.size()]);
    return out;
  };
  Matrix sol = solve_params(h1.size() + h2.size(), ch, residual);
  std::vector<MMorphism> out;
  for (size_t r = 0; r < sol.rows(); ++r) {
    MMorphism f{Matrix(Qa.dim(), Qb.dim(), ch), Matrix(Ta.dim(), Tb.dim(), ch)};
    for (size_t p = 0; p < h1.size(); ++p) f.f1 += sol(r, p) * h1[p];
    for (size_t p = 0; p < h2.size(); ++p) f.f2 += sol(r, h1.size() + p) * h2[p];
    out.push_back(f);
  }
  return out;
}

Matrix cok_map(const PresentationObject& a, const PresentationObject& b, const MMorphism& f) {
  auto qa = mod::cokernel(a.source(), a.target(), a.phi);
  auto qb = mod::cokernel(b.source(), b.target(), b.phi);
  u32 ch = a.algebra->ch();
  if (!qa.module.dim()) return Matrix(0, qb.module.dim(), ch);
  auto section = la::solve_left(qa.projection, Matrix::identity(qa.module.dim(), ch));
  if (!section) throw Error("cok_map: projection is not surjective");
  return *section * f.f2 * qb.projection;
}

std::optional<ZeroFactorization> factor_through_zero(const PresentationObject& a, const PresentationObject& b, const MMorphism& f) {
  if (!cok_map(a, b, f).is_zero()) return std::nullopt;
  u32 ch = a.algebra->ch();
  PresentationObject mid = a;
  mid.nu = 0;
  LambdaModule Q = a.source();
  mid.phi = Matrix(Q.dim(), 0, ch);
  ZeroFactorization z{mid, {Matrix::identity(Q.dim(), ch), Matrix(a.target().dim(), 0, ch)}, {f.f1, Matrix(0, b.target().dim(), ch)}};
  if (!is_m_morphism(a, mid, z.first) || !is_m_morphism(mid, b, z.second)) return std::nullopt;
  if (z.first.f1 * z.second.f1 != f.f1 || z.first.f2 * z.second.f2 != f.f2) return std::nullopt;
  return z;
}

}  // namespace eqp::dit
