#include "eqposet/representations.hpp"

#include "eqposet/error.hpp"

namespace eqp {

std::string to_string(RepKind k) { return k == RepKind::rep ? "rep" : "corep"; }

Matrix xi_action(const Tower& t, size_t n) { return Matrix::block_diag(std::vector<Matrix>(n, t.theta_mul(t.xi())), t.ch()); }

Matrix standard_operator(const Tower& t, size_t n) { return Matrix::block_diag(std::vector<Matrix>(n, t.theta_vartheta()), t.ch()); }

Matrix Representation::X() const { return xi_action(tower, n); }

Matrix g_linear(const Tower& t, const std::vector<std::vector<ExtElement>>& g) {
  size_t n = g.size(), m = n ? g[0].size() : 0, p = t.p();
  Matrix f(n * p, m * p, t.ch());
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < m; ++b) f.set_block(a * p, b * p, t.theta_mul(g[a][b]));
  return f;
}

namespace {

// Closure of a row space under right multiplication by the given matrices.
Matrix close_under(Matrix space, const std::vector<Matrix>& ops) {
  space = la::row_space(space);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& op : ops) {
      if (!space.rows()) break;
      Matrix img = space * op;
      if (la::contains(space, img)) continue;
      space = la::sum(space, img);
      changed = true;
    }
  }
  return space;
}

// Σ_{i<l} V·op^i
Matrix power_sum(const Matrix& V, const Matrix& op, int l) {
  std::vector<Matrix> parts;
  Matrix cur = V;
  for (int i = 0; i < l; ++i) {
    parts.push_back(cur);
    cur = cur * op;
  }
  return la::row_space(Matrix::vcat(parts, V.cols(), op.characteristic()));
}

}  // namespace

Matrix g_span(const Matrix& rows, const Matrix& X) { return close_under(rows, {X}); }

Matrix operator_span(const Matrix& rows, const Matrix& X, const Matrix& r) { return close_under(rows, {X, r}); }

std::vector<std::string> validate(const Representation& R) {
  std::vector<std::string> out;
  const Tower& t = R.tower;
  const auto& P = R.poset;
  size_t N = R.fdim();
  u32 ch = t.ch();
  if (P.p() != t.p()) out.push_back("poset and tower have different p");
  if (R.sub.size() != P.size()) {
    out.push_back("expected one subspace per point");
    return out;
  }
  for (size_t x = 0; x < P.size(); ++x)
    if (R.sub[x].cols() != N) {
      out.push_back("subspace of " + P.name(x) + " has the wrong width");
      return out;
    }
  Matrix X = R.X();
  if (R.kind == RepKind::rep) {
    if (R.r.rows() != N || R.r.cols() != N) {
      out.push_back("operator r has the wrong shape");
      return out;
    }
    Matrix I = Matrix::identity(N, ch);
    if (t.separable()) {
      if (X * R.r != t.zeta() * (R.r * X)) out.push_back("S.2 fails: s(vξ) != s(v)σ(ξ)");
      if (R.r.pow(t.p()) != I) out.push_back("S.1 fails: s^p != id");
    } else {
      if (X * R.r != R.r * X + I) out.push_back("D.2 fails: d(vξ) != d(v)ξ + v");
      if (!R.r.pow(t.p()).is_zero()) out.push_back("D.1 fails: d^p != 0");
    }
    for (size_t x = 0; x < P.size(); ++x)
      if (!la::contains(R.sub[x], R.sub[x] * X)) out.push_back("V_" + P.name(x) + " is not a G-subspace");
  }
  const Matrix& op = R.kind == RepKind::rep ? R.r : X;
  for (size_t x = 0; x < P.size(); ++x)
    for (size_t y = 0; y < P.size(); ++y) {
      int l = P.degree(x, y);
      if (!l) continue;
      if (!la::contains(R.sub[y], power_sum(R.sub[x], op, l)))
        out.push_back("containment fails for " + P.name(x) + " <=^" + std::to_string(l) + " " + P.name(y));
    }
  return out;
}

Representation zero_rep(RepKind kind, const EquippedPoset& P, const Tower& t) {
  Representation R{kind, P, t, 0, Matrix(0, 0, t.ch()), {}};
  R.sub.assign(P.size(), Matrix(0, 0, t.ch()));
  return R;
}

Representation direct_sum(const Representation& a, const Representation& b) {
  if (a.kind != b.kind) throw KindMismatch("direct sum of a representation and a corepresentation");
  if (!(a.poset == b.poset)) throw KindMismatch("direct sum over different posets");
  Representation s = a;
  s.n = a.n + b.n;
  u32 ch = a.tower.ch();
  if (a.kind == RepKind::rep) s.r = Matrix::block_diag({a.r, b.r}, ch);
  for (size_t x = 0; x < a.sub.size(); ++x) {
    Matrix l(a.sub[x].rows(), s.fdim(), ch), r(b.sub[x].rows(), s.fdim(), ch);
    l.set_block(0, 0, a.sub[x]);
    r.set_block(0, a.fdim(), b.sub[x]);
    s.sub[x] = Matrix::vcat(l, r);
  }
  return s;
}

std::vector<Matrix> hom_space(const Representation& a, const Representation& b) {
  if (a.kind != b.kind) throw KindMismatch("morphisms between different kinds");
  u32 ch = a.tower.ch();
  size_t na = a.fdim(), nb = b.fdim();
  size_t vars = na * nb;
  auto var = [&](size_t r, size_t c) { return r * nb + c; };
  la::Eliminator el(vars, ch);
  auto commute = [&](const Matrix& A, const Matrix& B) {
    // A ψ - ψ B = 0
    for (size_t r = 0; r < na; ++r)
      for (size_t c = 0; c < nb; ++c) {
        std::vector<Scalar> row(vars, Scalar::constant(ch, 0));
        for (size_t k = 0; k < na; ++k)
          if (!A(r, k).is_zero()) row[var(k, c)] += A(r, k);
        for (size_t k = 0; k < nb; ++k)
          if (!B(k, c).is_zero()) row[var(r, k)] -= B(k, c);
        el.add(std::move(row));
      }
  };
  commute(a.X(), b.X());
  if (a.kind == RepKind::rep) commute(a.r, b.r);
  for (size_t x = 0; x < a.sub.size(); ++x) {
    const Matrix& S = a.sub[x];
    if (!S.rows()) continue;
    Matrix K = b.sub[x].rows() ? la::kernel(b.sub[x]) : Matrix::identity(nb, ch);
    for (size_t i = 0; i < S.rows(); ++i)
      for (size_t j = 0; j < K.rows(); ++j) {
        std::vector<Scalar> row(vars, Scalar::constant(ch, 0));
        for (size_t r = 0; r < na; ++r) {
          if (S(i, r).is_zero()) continue;
          for (size_t c = 0; c < nb; ++c)
            if (!K(j, c).is_zero()) row[var(r, c)] += S(i, r) * K(j, c);
        }
        el.add(std::move(row));
      }
  }
  Matrix ns = el.null_space();
  std::vector<Matrix> out;
  for (size_t s = 0; s < ns.rows(); ++s) {
    Matrix psi(na, nb, ch);
    for (size_t r = 0; r < na; ++r)
      for (size_t c = 0; c < nb; ++c) psi(r, c) = ns(s, var(r, c));
    out.push_back(psi);
  }
  return out;
}

bool is_morphism(const Representation& a, const Representation& b, const Matrix& psi) {
  if (psi.rows() != a.fdim() || psi.cols() != b.fdim()) return false;
  if (a.X() * psi != psi * b.X()) return false;
  if (a.kind == RepKind::rep && a.r * psi != psi * b.r) return false;
  for (size_t x = 0; x < a.sub.size(); ++x)
    if (!la::contains(b.sub[x], a.sub[x] * psi)) return false;
  return true;
}

namespace {

Matrix random_g_automorphism(const Tower& t, size_t n, Rng& rng) {
  while (true) {
    std::vector<std::vector<ExtElement>> g(n, std::vector<ExtElement>(n));
    for (auto& row : g)
      for (auto& e : row) e = t.random(rng);
    Matrix f = g_linear(t, g);
    if (la::invertible(f)) return f;
  }
}

Matrix random_rows(const Tower& t, size_t k, size_t width, Rng& rng) {
  Matrix m(k, width, t.ch());
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < width; ++j) m(i, j) = t.random_base(rng);
  return m;
}

}  // namespace

Representation random_rep(RepKind kind, const EquippedPoset& P, const Tower& t, size_t n, Rng& rng) {
  Representation R = zero_rep(kind, P, t);
  R.n = n;
  size_t N = R.fdim();
  u32 ch = t.ch();
  Matrix X = R.X();
  if (kind == RepKind::rep) {
    Matrix g = random_g_automorphism(t, n, rng);
    R.r = *la::inverse(g) * standard_operator(t, n) * g;
  }
  const Matrix& op = kind == RepKind::rep ? R.r : X;
  R.sub.assign(P.size(), Matrix(0, N, ch));
  for (size_t x : P.linear_extension()) {
    size_t k = N ? rng() % (kind == RepKind::rep ? n + 1 : N / 2 + 2) : 0;
    Matrix V = random_rows(t, k, N, rng);
    if (kind == RepKind::rep || P.strong(x)) V = g_span(V, X);
    std::vector<Matrix> parts{V};
    for (size_t y = 0; y < P.size(); ++y)
      if (P.less(y, x)) parts.push_back(power_sum(R.sub[y], op, P.degree(y, x)));
    V = la::row_space(Matrix::vcat(parts, N, ch));
    if (P.strong(x)) V = kind == RepKind::rep ? operator_span(V, X, R.r) : g_span(V, X);
    R.sub[x] = V;
  }
  return R;
}

Representation random_rep(RepKind kind, const EquippedPoset& P, const Tower& t, size_t n, u64 seed) {
  Rng rng(seed);
  return random_rep(kind, P, t, n, rng);
}

Representation random_isomorphic(const Representation& R, Rng& rng) {
  // Automorphisms of (V, r) are the invertible elements of End(V, r).
  Representation bare = R;
  for (auto& s : bare.sub) s = Matrix(0, R.fdim(), R.tower.ch());
  std::vector<Matrix> E = hom_space(bare, bare);
  Representation S = R;
  while (true) {
    Matrix g(R.fdim(), R.fdim(), R.tower.ch());
    for (const auto& e : E) g += R.tower.random_base(rng) * e;
    if (!la::invertible(g)) continue;
    for (size_t x = 0; x < S.sub.size(); ++x) S.sub[x] = la::row_space(R.sub[x] * g);
    return S;
  }
}

AmbientAction::AmbientAction(const AmbientAlgebra& A, const Representation& R) : kind_(A.kind()), p_(A.tower().p()) {
  const Tower& t = A.tower();
  Matrix X = R.X();
  size_t N = R.fdim();
  u32 ch = t.ch();
  if (kind_ == AmbientAlgebra::Kind::extension) {
    Matrix cur = Matrix::identity(N, ch);
    for (u32 j = 0; j < p_; ++j) {
      powers_.push_back(cur);
      cur = cur * X;
    }
    return;
  }
  if (R.kind != RepKind::rep) throw KindMismatch("M_p(F) acts only on representations with an operator");
  std::vector<Matrix> rows;
  Matrix ri = Matrix::identity(N, ch), thi = Matrix::identity(p_, ch);
  for (u32 i = 0; i < p_; ++i) {
    Matrix rx = ri;
    for (u32 j = 0; j < p_; ++j) {
      powers_.push_back(rx);
      rows.push_back(A.from_square(thi * t.theta_mul(t.xi_pow(j))));
      rx = rx * X;
    }
    ri = ri * R.r;
    thi = thi * t.theta_vartheta();
  }
  change_ = *la::inverse(Matrix::vcat(rows, A.dim(), ch));
}

Matrix AmbientAction::operator()(const Matrix& element) const {
  Matrix c = kind_ == AmbientAlgebra::Kind::extension ? element : element * change_;
  Matrix out(powers_[0].rows(), powers_[0].cols(), powers_[0].characteristic());
  for (size_t k = 0; k < powers_.size(); ++k)
    if (!c(0, k).is_zero()) out += c(0, k) * powers_[k];
  return out;
}

namespace {

// V_x for a point of the extended poset.
Matrix point_space(const Representation& R, const std::string& name) {
  if (auto x = R.poset.find(name)) return R.sub[*x];
  if (name == "m") return Matrix::identity(R.fdim(), R.tower.ch());
  if (name == "0") return Matrix(0, R.fdim(), R.tower.ch());
  throw InvalidRepresentation("no subspace for point " + name);
}

}  // namespace

UModule functor_u(const Representation& R, const MultSystem& S, const AlgebraPtr& A) {
  auto bad = validate(R);
  if (!bad.empty()) throw InvalidRepresentation(bad.front());
  const auto& P = S.poset();
  AmbientAction rho(S.ambient(), R);
  u32 ch = R.tower.ch();
  UModule U;
  std::vector<size_t> dims;
  for (size_t x = 0; x < P.size(); ++x) {
    Matrix b = la::row_space(point_space(R, P.name(x)) * rho(S.unit(x)));
    if (!b.rows()) b = Matrix(0, R.fdim(), ch);
    U.basis.push_back(b);
    dims.push_back(b.rows());
  }
  LambdaModule M(A, dims);
  std::vector<la::Coordinates> co;
  for (const auto& b : U.basis) co.emplace_back(b);
  for (size_t k = 0; k < A->dim(); ++k) {
    size_t i = A->src(k), j = A->tgt(k);
    auto c = co[j].try_of(U.basis[i] * rho(*A->basis(k).ambient));
    if (!c) throw InvalidRepresentation("V_" + P.name(i) + "·R_{" + P.name(i) + "," + P.name(j) + "} is not contained in V_" + P.name(j));
    M.set_act(k, *c);
  }
  U.module = M;
  return U;
}

Matrix functor_u_map(const UModule& a, const UModule& b, const Matrix& psi) {
  const LambdaModule& M = a.module;
  const LambdaModule& N = b.module;
  Matrix h(M.dim(), N.dim(), M.ch());
  for (size_t x = 0; x < M.A().points(); ++x) {
    if (!M.dim(x)) continue;
    la::Coordinates co(b.basis[x]);
    h.set_block(M.offset(x), N.offset(x), co.of(a.basis[x] * psi));
  }
  return h;
}

SystemBundle system_for(RepKind kind, const EquippedPoset& P, const Tower& t, bool with_zero, bool moritized) {
  EquippedPoset E = P.extend(with_zero ? EquippedPoset::Extend::both : EquippedPoset::Extend::max);
  MultSystem S = kind == RepKind::corep ? build_Q(E, t) : build_T(E, t);
  if (moritized && kind == RepKind::rep) S = moritize(S);
  AlgebraPtr A = IncidenceAlgebra::from_system(S);
  return {S, A};
}

SubRep subrepresentation(const Representation& R, const UModule& U, const Subspaces& Y, const MultSystem& T) {
  const auto& P = T.poset();
  AmbientAction rho(T.ambient(), R);
  u32 ch = R.tower.ch();
  size_t N = R.fdim(), p = R.tower.p();
  std::vector<Matrix> nx(P.size());
  for (size_t x = 0; x < P.size(); ++x) {
    Matrix yv = Y[x].rows() ? Y[x] * U.basis[x] : Matrix(0, N, ch);
    std::vector<Matrix> parts;
    const Matrix& tx = T.space(x, x);
    for (size_t k = 0; k < tx.rows(); ++k) parts.push_back(yv * rho(tx.row(k)));
    nx[x] = la::row_space(Matrix::vcat(parts, N, ch));
  }
  auto m = P.max_point();
  if (!m) throw InvalidRepresentation("system has no maximal point");
  const Matrix& Nm = nx[*m];
  // G-basis of N_m
  Matrix X = R.X();
  Matrix E(0, N, ch);
  for (size_t r = 0; r < Nm.rows(); ++r) {
    Matrix v = Nm.row(r);
    if (la::contains(E, v)) continue;
    std::vector<Matrix> orbit{E};
    Matrix cur = v;
    for (size_t j = 0; j < p; ++j) {
      orbit.push_back(cur);
      cur = cur * X;
    }
    E = Matrix::vcat(orbit, N, ch);
  }
  SubRep out;
  out.embedding = E;
  Representation& S = out.rep;
  S = zero_rep(R.kind, R.poset, R.tower);
  S.n = E.rows() / p;
  if (R.kind == RepKind::rep) S.r = *la::solve_left(E, E * R.r);
  for (size_t x = 0; x < R.poset.size(); ++x) {
    size_t px = P.index(R.poset.name(x));
    const Matrix& b = nx[px];
    S.sub[x] = b.rows() ? la::row_space(*la::solve_left(E, b)) : Matrix(0, E.rows(), ch);
  }
  return out;
}

std::vector<std::string> validate(const GammaRepresentation& R) {
  std::vector<std::string> out;
  const Tower& t = R.tower;
  if (!t.separable()) {
    out.push_back("a Galois group action needs a separable tower; derivations and group actions are not mixed");
    return out;
  }
  if (R.gamma.n != t.p()) out.push_back("the Galois group has order " + std::to_string(t.p()));
  size_t N = t.p() * R.n;
  Matrix X = xi_action(t, R.n);
  if (R.s.rows() != N || R.s.cols() != N) {
    out.push_back("s has the wrong shape");
    return out;
  }
  if (X * R.s != t.zeta() * (R.s * X)) out.push_back("s is not σ-semilinear");
  if (R.s.pow(R.gamma.n) != Matrix::identity(N, t.ch())) out.push_back("s^n != id");
  for (size_t x = 0; x < R.sub.size(); ++x)
    if (!la::contains(R.sub[x], R.sub[x] * X)) out.push_back("V_" + R.order.name(x) + " is not a G-subspace");
  for (const auto& [xy, d] : R.gamma.delta) {
    auto [x, y] = xy;
    for (u32 k : d)
      if (!la::contains(R.sub[y], R.sub[x] * R.s.pow(k)))
        out.push_back("s^" + std::to_string(k) + "(V_" + R.order.name(x) + ") is not contained in V_" + R.order.name(y));
  }
  return out;
}

GammaRepresentation to_gamma(const Representation& R) {
  if (!R.tower.separable()) throw WrongCase("Galois group actions need a separable tower");
  if (R.kind != RepKind::rep) throw KindMismatch("only representations carry an operator");
  return {R.poset, to_generalized(R.poset), R.tower, R.n, R.r, R.sub};
}

}  // namespace eqp
