#include "eqposet/matrix_problem.hpp"

#include <functional>

#include "eqposet/error.hpp"

namespace eqp {

namespace ext {

ExtMatrix zero(const Tower& t, size_t r, size_t c) { return {r, c, std::vector<ExtElement>(r * c, t.zero())}; }

ExtMatrix identity(const Tower& t, size_t n) {
  ExtMatrix m = zero(t, n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = t.one();
  return m;
}

ExtMatrix mul(const Tower& t, const ExtMatrix& x, const ExtMatrix& y) {
  if (x.cols != y.rows) throw ShapeMismatch("product of " + std::to_string(x.rows) + "×" + std::to_string(x.cols) + " and " + std::to_string(y.rows) + "×" + std::to_string(y.cols));
  ExtMatrix m = zero(t, x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      const ExtElement& a = x.at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < y.cols; ++j)
        if (!y.at(k, j).is_zero()) m.at(i, j) = t.add(m.at(i, j), t.mul(a, y.at(k, j)));
    }
  return m;
}

ExtMatrix add(const Tower& t, const ExtMatrix& x, const ExtMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw ShapeMismatch("sum of matrices of different shapes");
  ExtMatrix m = x;
  for (size_t k = 0; k < m.a.size(); ++k) m.a[k] = t.add(x.a[k], y.a[k]);
  return m;
}

ExtMatrix sub(const Tower& t, const ExtMatrix& x, const ExtMatrix& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw ShapeMismatch("difference of matrices of different shapes");
  ExtMatrix m = x;
  for (size_t k = 0; k < m.a.size(); ++k) m.a[k] = t.sub(x.a[k], y.a[k]);
  return m;
}

bool is_zero(const ExtMatrix& x) {
  for (const auto& e : x.a)
    if (!e.is_zero()) return false;
  return true;
}

Matrix f_matrix(const Tower& t, const ExtMatrix& x) {
  size_t p = t.p();
  Matrix f(x.rows * p, x.cols * p, t.ch());
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j)
      if (!x.at(i, j).is_zero()) f.set_block(i * p, j * p, t.theta_mul(x.at(i, j)));
  return f;
}

bool invertible(const Tower& t, const ExtMatrix& x) { return x.rows == x.cols && la::invertible(f_matrix(t, x)); }

std::optional<ExtMatrix> inverse(const Tower& t, const ExtMatrix& x) {
  if (x.rows != x.cols) return std::nullopt;
  auto inv = la::inverse(f_matrix(t, x));
  if (!inv) return std::nullopt;
  size_t p = t.p();
  ExtMatrix m = zero(t, x.rows, x.cols);
  // row 0 of the block Θ(μ_a) holds the coordinates of a
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) m.at(i, j) = t.from_row(inv->block(i * p, j * p, 1, p));
  return m;
}

size_t rank(const Tower& t, const ExtMatrix& x) { return la::rank(f_matrix(t, x)) / t.p(); }

std::string str(const Tower& t, const ExtMatrix& x) {
  std::string s;
  for (size_t i = 0; i < x.rows; ++i) {
    for (size_t j = 0; j < x.cols; ++j) s += (j ? " " : "") + t.str(x.at(i, j));
    s += "\n";
  }
  return s;
}

}  // namespace ext

namespace {

// Matrices whose entries are ambient rows.
struct AmbMatrix {
  size_t rows = 0, cols = 0;
  std::vector<Matrix> a;
  Matrix& at(size_t i, size_t j) { return a[i * cols + j]; }
  const Matrix& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

AmbMatrix amb_zero(const AmbientAlgebra& A, size_t r, size_t c) { return {r, c, std::vector<Matrix>(r * c, A.zero())}; }

AmbMatrix amb_mul(const AmbientAlgebra& A, const AmbMatrix& x, const AmbMatrix& y) {
  AmbMatrix m = amb_zero(A, x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k).is_zero()) continue;
      for (size_t j = 0; j < y.cols; ++j)
        if (!y.at(k, j).is_zero()) m.at(i, j) += A.mul(x.at(i, k), y.at(k, j));
    }
  return m;
}

void amb_add_to(AmbMatrix& x, const AmbMatrix& y) {
  for (size_t k = 0; k < x.a.size(); ++k) x.a[k] += y.a[k];
}

bool in_span(const Tower& t, const std::vector<ExtElement>& basis, const ExtElement& a) {
  if (a.is_zero()) return true;
  std::vector<Matrix> rows;
  for (const auto& b : basis) rows.push_back(t.coords(b));
  return la::contains(Matrix::vcat(rows, t.p(), t.ch()), t.coords(a));
}

std::vector<ExtElement> rows_to_ext(const Tower& t, const Matrix& rows) {
  std::vector<ExtElement> out;
  for (size_t r = 0; r < rows.rows(); ++r) out.push_back(t.from_row(rows, r));
  return out;
}

ExtElement combine(const Tower& t, const std::vector<ExtElement>& basis, const std::vector<Scalar>& c) {
  ExtElement e = t.zero();
  for (size_t k = 0; k < basis.size(); ++k)
    if (!c[k].is_zero()) e = t.add(e, t.scale(c[k], basis[k]));
  return e;
}

ExtElement random_in(const Tower& t, const std::vector<ExtElement>& basis, Rng& rng) {
  std::vector<Scalar> c;
  for (size_t k = 0; k < basis.size(); ++k) c.push_back(t.random_base(rng));
  return combine(t, basis, c);
}

}  // namespace

Matrix MatrixProblem::LinearMap::operator()(const Matrix& r) const {
  auto c = domain.try_of(r);
  if (!c) throw DomainMismatch("argument outside the domain of a scalar transport");
  return *c * images;
}

MatrixProblem::MatrixProblem(RepKind mode, const EquippedPoset& P, const Tower& t)
    : mode_(mode), poset_(P), tower_(t), system_(P.extend(EquippedPoset::Extend::both), AmbientAlgebra::extension(t)) {
  EquippedPoset E = P.extend(EquippedPoset::Extend::both);
  system_ = mode == RepKind::corep ? build_Q(E, t) : moritize(build_T(E, t));
  algebra_ = IncidenceAlgebra::from_system(system_);
  const AmbientAlgebra& A = system_.ambient();
  u32 ch = t.ch();
  for (size_t x = 0; x < P.size(); ++x) stripe_point_.push_back(E.index(P.name(x)));
  stripe_point_.push_back(E.index("m"));
  zero_ = E.index("0");
  size_t n = stripes();
  auto pt = [&](size_t x) { return x == n ? zero_ : stripe_point_[x]; };
  const Matrix& R0 = system_.space(zero_, zero_);

  // generators v_{0,x}
  Matrix v = mode == RepKind::corep ? A.unit() : system_.unit(zero_);
  v_.assign(n + 1, v);
  auto left_r0 = [&](const Matrix& w) {
    std::vector<Matrix> rows;
    for (size_t k = 0; k < R0.rows(); ++k) rows.push_back(A.mul(R0.row(k), w));
    return Matrix::vcat(rows, A.dim(), ch);
  };
  auto right_rx = [&](size_t x, const Matrix& w) {
    const Matrix& Rx = system_.space(pt(x), pt(x));
    std::vector<Matrix> rows;
    for (size_t k = 0; k < Rx.rows(); ++k) rows.push_back(A.mul(w, Rx.row(k)));
    return Matrix::vcat(rows, A.dim(), ch);
  };
  for (size_t x = 0; x <= n; ++x) {
    const Matrix& R0x = system_.space(zero_, pt(x));
    Matrix gen = mode == RepKind::corep ? left_r0(v) : right_rx(x, v);
    size_t base = mode == RepKind::corep ? R0.rows() : system_.dim(pt(x), pt(x));
    if (la::rank(gen) != base || !la::same_space(gen, R0x))
      throw NotOneDimensional("R_{0," + stripe_name(x) + "} is not spanned by the chosen generator over " + (mode == RepKind::corep ? "R_0" : "R_" + stripe_name(x)));
  }

  // χ_{y,x}: v_y r = χ(r) v_x (corep) or v_x χ(r) (rep)
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!less(y, x)) continue;
      const Matrix& Ryx = system_.space(pt(y), pt(x));
      const Matrix& Rx = system_.space(pt(x), pt(x));
      Matrix gen = mode == RepKind::corep ? left_r0(v_[x]) : right_rx(x, v_[x]);
      const Matrix& coef = mode == RepKind::corep ? R0 : Rx;
      Matrix images(Ryx.rows(), A.dim(), ch);
      for (size_t k = 0; k < Ryx.rows(); ++k) {
        auto c = la::solve_left(gen, A.mul(v_[y], Ryx.row(k)));
        if (!c) throw NotOneDimensional("v_{0," + stripe_name(y) + "}R_{" + stripe_name(y) + "," + stripe_name(x) + "} is not inside R_{0," + stripe_name(x) + "}");
        images.set_block(k, 0, *c * coef);
      }
      chi_.emplace(key(y, x), LinearMap{la::Coordinates(Ryx), images});
    }

  // φ_x (corep): v_x z = φ(z) v_x;  ρ_x (rep): a v_x = v_x ρ(a)
  for (size_t x = 0; x <= n; ++x) {
    const Matrix& Rx = system_.space(pt(x), pt(x));
    if (mode == RepKind::corep) {
      Matrix gen = left_r0(v_[x]);
      Matrix images(Rx.rows(), A.dim(), ch);
      for (size_t k = 0; k < Rx.rows(); ++k) {
        auto c = la::solve_left(gen, A.mul(v_[x], Rx.row(k)));
        if (!c) throw NotOneDimensional("R_" + stripe_name(x) + " does not act on R_{0," + stripe_name(x) + "} through R_0");
        images.set_block(k, 0, *c * R0);
      }
      side_.push_back({la::Coordinates(Rx), images});
    } else {
      Matrix gen = right_rx(x, v_[x]);
      Matrix images(R0.rows(), A.dim(), ch);
      for (size_t k = 0; k < R0.rows(); ++k) {
        auto c = la::solve_left(gen, A.mul(R0.row(k), v_[x]));
        if (!c) throw NotOneDimensional("R_0 does not act on R_{0," + stripe_name(x) + "} through R_" + stripe_name(x));
        images.set_block(k, 0, *c * Rx);
      }
      side_.push_back({la::Coordinates(R0), images});
    }
  }

  // R_x ≅ K(x)
  for (size_t x = 0; x <= n; ++x) {
    if (mode == RepKind::corep) {
      field_.push_back({la::Coordinates(Matrix::identity(A.dim(), ch)), Matrix::identity(A.dim(), ch)});
      continue;
    }
    const Matrix& eps = system_.unit(pt(x));
    size_t k = field_dim(x);
    Matrix images(k, A.dim(), ch), coords(k, t.p(), ch);
    for (size_t j = 0; j < k; ++j) {
      Matrix m = A.from_square(t.theta_mul(t.xi_pow(static_cast<unsigned>(j))));
      images.set_block(j, 0, A.mul(A.mul(eps, m), eps));
      coords(j, j) = Scalar::constant(ch, 1);
    }
    if (la::rank(images) != k || !la::same_space(images, system_.space(pt(x), pt(x))))
      throw HypothesisFailure("R_" + stripe_name(x) + " is not ε m_{K(x)} ε");
    field_.push_back({la::Coordinates(images), coords});
  }

  if (mode == RepKind::corep) return;
  // τ-bases and the induced u_i
  Matrix vt = A.from_square(t.theta_vartheta());
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!less(y, x)) continue;
      std::vector<Matrix> tau;
      switch (tau_case(y, x)) {
        case TauCase::strong_strong:
        case TauCase::strong_weak: tau.push_back(system_.unit(pt(y))); break;
        case TauCase::weak_strong:
          for (u32 i = 0; i < t.p(); ++i) tau.push_back(A.mul(A.from_square(t.theta_mul(t.xi_pow(i))), system_.unit(pt(x))));
          break;
        case TauCase::weak_weak: {
          Matrix cur = A.unit();
          for (int j = 0; j < degree(y, x); ++j) {
            tau.push_back(cur);
            cur = A.mul(cur, vt);
          }
          break;
        }
      }
      const Matrix& Rx = system_.space(pt(x), pt(x));
      std::vector<Matrix> rows;
      for (const auto& ti : tau)
        for (size_t k = 0; k < Rx.rows(); ++k) rows.push_back(A.mul(ti, Rx.row(k)));
      Matrix span = Matrix::vcat(rows, A.dim(), ch);
      if (la::rank(span) != span.rows() || !la::same_space(span, system_.space(pt(y), pt(x))))
        throw HypothesisFailure("the chosen τ-basis is not an R_" + stripe_name(x) + "-basis of R_{" + stripe_name(y) + "," + stripe_name(x) + "}");
      tau_[key(y, x)] = tau;
      std::vector<Matrix> us;
      for (const auto& ti : tau) {
        Matrix u(t.p(), t.p(), ch);
        for (size_t j = 0; j < field_dim(y); ++j) {
          Matrix arg = A.mul(from_field(y, t.xi_pow(static_cast<unsigned>(j))), ti);
          u.set_block(j, 0, t.coords(to_field(x, chi(y, x, arg))));
        }
        us.push_back(u);
      }
      u_[key(y, x)] = us;
    }
}

const std::string& MatrixProblem::stripe_name(size_t x) const {
  static const std::string zero = "0";
  return x == stripes() ? zero : system_.poset().name(stripe_point_[x]);
}

bool MatrixProblem::less(size_t y, size_t x) const { return system_.poset().less(point(y), point(x)); }
int MatrixProblem::degree(size_t y, size_t x) const { return system_.poset().degree(point(y), point(x)); }
bool MatrixProblem::strong(size_t x) const { return x == stripes() || system_.poset().strong(point(x)); }

size_t MatrixProblem::field_dim(size_t x) const {
  if (mode_ == RepKind::corep) return tower_.p();
  return strong(x) ? 1 : tower_.p();
}

std::vector<ExtElement> MatrixProblem::tx_basis(size_t x) const {
  if (mode_ == RepKind::corep) return rows_to_ext(tower_, system_.space(point(x), point(x)));
  return stripe_basis(x);
}

std::vector<ExtElement> MatrixProblem::cross_basis(size_t y, size_t x) const {
  if (mode_ == RepKind::corep) return rows_to_ext(tower_, system_.space(point(y), point(x)));
  return stripe_basis(x);
}

std::vector<ExtElement> MatrixProblem::t0_basis() const {
  if (mode_ == RepKind::corep) return rows_to_ext(tower_, system_.space(zero_, zero_));
  return {tower_.one()};
}

std::vector<ExtElement> MatrixProblem::stripe_basis(size_t x) const {
  std::vector<ExtElement> out;
  size_t k = field_dim(x);
  for (size_t j = 0; j < k; ++j) out.push_back(tower_.xi_pow(static_cast<unsigned>(j)));
  return out;
}

size_t MatrixProblem::cross_count(size_t y, size_t x) const { return mode_ == RepKind::corep ? 1 : tau(y, x).size(); }

Matrix MatrixProblem::chi(size_t y, size_t x, const Matrix& r) const {
  auto it = chi_.find(key(y, x));
  if (it == chi_.end()) throw DomainMismatch("χ is defined only for y < x");
  return it->second(r);
}

Matrix MatrixProblem::phi(size_t x, const Matrix& z) const {
  if (mode_ != RepKind::corep) throw ModeMismatch("φ_x belongs to the corepresentation problem");
  return side_[x](z);
}

Matrix MatrixProblem::rho(size_t x, const Matrix& a) const {
  if (mode_ != RepKind::rep) throw ModeMismatch("ρ_x belongs to the representation problem");
  return side_[x](a);
}

Matrix MatrixProblem::transport(Transport kind, size_t y, size_t x, const Matrix& arg) const {
  switch (kind) {
    case Transport::chi: return chi(y, x, arg);
    case Transport::phi: return phi(x, arg);
    case Transport::rho: return rho(x, arg);
  }
  return arg;
}

ExtElement MatrixProblem::to_field(size_t x, const Matrix& r) const { return tower_.from_row(field_[x](r)); }

Matrix MatrixProblem::from_field(size_t x, const ExtElement& a) const {
  const auto& f = field_[x];
  Matrix c = tower_.coords(a).block(0, 0, 1, f.images.rows());
  return c * f.domain.basis();
}

TauCase MatrixProblem::tau_case(size_t y, size_t x) const {
  if (strong(y)) return strong(x) ? TauCase::strong_strong : TauCase::strong_weak;
  return strong(x) ? TauCase::weak_strong : TauCase::weak_weak;
}

const std::vector<Matrix>& MatrixProblem::tau(size_t y, size_t x) const {
  auto it = tau_.find(key(y, x));
  if (it == tau_.end()) throw DomainMismatch("τ-bases exist only for y < x in the representation problem");
  return it->second;
}

ExtElement MatrixProblem::u_factor(size_t y, size_t x, size_t i, const ExtElement& b) const {
  auto it = u_.find(key(y, x));
  if (it == u_.end()) throw DomainMismatch("u-factors exist only for y < x in the representation problem");
  return tower_.from_row(tower_.coords(b) * it->second.at(i));
}

bool MatrixProblem::in_stripe_field(size_t x, const ExtElement& a) const { return field_dim(x) == tower_.p() || tower_.in_base(a); }

const Matrix& MatrixProblem::stripe_space(size_t y, size_t x) const {
  auto pt = [&](size_t z) { return z == stripes() ? zero_ : stripe_point_[z]; };
  return system_.space(pt(y), pt(x));
}

// ---------------------------------------------------------------------------

namespace {

void check_problem(const MatrixProblem& mp, const MatrixRep& M) {
  if (M.mode != mp.mode()) throw ModeMismatch("matrix representation is a " + to_string(M.mode) + " but the problem is for " + to_string(mp.mode()) + "s");
  if (!(M.poset == mp.poset())) throw ModeMismatch("matrix representation lives over a different poset");
}

bool entries_in(const Tower& t, const ExtMatrix& m, const std::vector<ExtElement>& basis) {
  for (const auto& e : m.a)
    if (!in_span(t, basis, e)) return false;
  return true;
}

std::string shape(const ExtMatrix& m) { return std::to_string(m.rows) + "×" + std::to_string(m.cols); }

}  // namespace

std::vector<std::string> validate(const MatrixProblem& mp, const MatrixRep& M) {
  std::vector<std::string> out;
  if (M.mode != mp.mode()) out.push_back("mode differs from the problem");
  if (!(M.poset == mp.poset())) out.push_back("poset differs from the problem");
  size_t n = mp.stripes();
  if (M.d.size() != n || M.stripes.size() != n) {
    out.push_back("expected " + std::to_string(n) + " stripes");
    return out;
  }
  const Tower& t = mp.tower();
  for (size_t x = 0; x < n; ++x) {
    const ExtMatrix& s = M.stripes[x];
    if (s.rows != M.d0 || s.cols != M.d[x]) {
      out.push_back("stripe " + mp.stripe_name(x) + " is " + shape(s) + ", expected " + std::to_string(M.d0) + "×" + std::to_string(M.d[x]));
      continue;
    }
    if (!entries_in(t, s, mp.stripe_basis(x))) out.push_back("stripe " + mp.stripe_name(x) + " has entries outside its coefficient field");
  }
  return out;
}

std::vector<std::string> validate(const MatrixProblem& mp, const MatrixRep& N, const Transformation& T) {
  std::vector<std::string> out;
  const Tower& t = mp.tower();
  size_t n = mp.stripes();
  if (T.t0.rows != N.d0 || T.t0.cols != N.d0) out.push_back("T_0 is " + shape(T.t0));
  else if (!entries_in(t, T.t0, mp.t0_basis())) out.push_back("T_0 has entries outside R_0");
  if (T.tx.size() != n) {
    out.push_back("expected one T_x per stripe");
    return out;
  }
  for (size_t x = 0; x < n; ++x) {
    if (T.tx[x].rows != N.d[x] || T.tx[x].cols != N.d[x]) out.push_back("T_" + mp.stripe_name(x) + " is " + shape(T.tx[x]));
    else if (!entries_in(t, T.tx[x], mp.tx_basis(x))) out.push_back("T_" + mp.stripe_name(x) + " has entries outside its coefficient field");
  }
  for (size_t x = 0; x < n; ++x)
    for (size_t y = 0; y < n; ++y) {
      if (!mp.less(y, x)) continue;
      auto it = T.cross.find({y, x});
      std::string nm = "T_{" + mp.stripe_name(y) + "," + mp.stripe_name(x) + "}";
      if (it == T.cross.end() || it->second.size() != mp.cross_count(y, x)) {
        out.push_back(nm + " needs " + std::to_string(mp.cross_count(y, x)) + " matrices");
        continue;
      }
      for (const auto& m : it->second) {
        if (m.rows != N.d[y] || m.cols != N.d[x]) out.push_back(nm + " is " + shape(m));
        else if (!entries_in(t, m, mp.cross_basis(y, x))) out.push_back(nm + " has entries outside R_{" + mp.stripe_name(y) + "," + mp.stripe_name(x) + "}");
      }
    }
  for (const auto& [k, v] : T.cross)
    if (!mp.less(k.first, k.second)) out.push_back("cross term for an incomparable pair");
  return out;
}

MatrixRep zero_matrix_rep(const MatrixProblem& mp, size_t d0, const std::vector<size_t>& d) {
  if (d.size() != mp.stripes()) throw ShapeMismatch("expected " + std::to_string(mp.stripes()) + " stripe dimensions");
  MatrixRep M{mp.mode(), mp.poset(), mp.tower(), d0, d, {}};
  for (size_t x = 0; x < d.size(); ++x) M.stripes.push_back(ext::zero(mp.tower(), d0, d[x]));
  return M;
}

MatrixRep random_matrix_rep(const MatrixProblem& mp, size_t d0, const std::vector<size_t>& d, Rng& rng) {
  MatrixRep M = zero_matrix_rep(mp, d0, d);
  for (size_t x = 0; x < d.size(); ++x) {
    auto basis = mp.stripe_basis(x);
    for (auto& e : M.stripes[x].a) e = random_in(mp.tower(), basis, rng);
  }
  return M;
}

Transformation identity_transform(const MatrixProblem& mp, const MatrixRep& N) {
  const Tower& t = mp.tower();
  Transformation T{ext::identity(t, N.d0), {}, {}};
  for (size_t x = 0; x < mp.stripes(); ++x) T.tx.push_back(ext::identity(t, N.d[x]));
  for (size_t x = 0; x < mp.stripes(); ++x)
    for (size_t y = 0; y < mp.stripes(); ++y)
      if (mp.less(y, x)) T.cross[{y, x}] = std::vector<ExtMatrix>(mp.cross_count(y, x), ext::zero(t, N.d[y], N.d[x]));
  return T;
}

namespace {

ExtMatrix random_matrix(const Tower& t, size_t r, size_t c, const std::vector<ExtElement>& basis, Rng& rng) {
  ExtMatrix m = ext::zero(t, r, c);
  for (auto& e : m.a) e = random_in(t, basis, rng);
  return m;
}

ExtMatrix random_invertible(const Tower& t, size_t n, const std::vector<ExtElement>& basis, Rng& rng) {
  while (true) {
    ExtMatrix m = random_matrix(t, n, n, basis, rng);
    if (ext::invertible(t, m)) return m;
  }
}

}  // namespace

Transformation random_transform(const MatrixProblem& mp, const MatrixRep& N, Rng& rng) {
  const Tower& t = mp.tower();
  Transformation T = identity_transform(mp, N);
  T.t0 = random_invertible(t, N.d0, mp.t0_basis(), rng);
  for (size_t x = 0; x < mp.stripes(); ++x) T.tx[x] = random_invertible(t, N.d[x], mp.tx_basis(x), rng);
  for (auto& [k, v] : T.cross)
    for (auto& m : v) m = random_matrix(t, N.d[k.first], N.d[k.second], mp.cross_basis(k.first, k.second), rng);
  return T;
}

namespace {

ExtMatrix map_entries(const ExtMatrix& m, const std::function<ExtElement(const ExtElement&)>& f) {
  ExtMatrix out = m;
  for (auto& e : out.a) e = f(e);
  return out;
}

void check_transform(const MatrixProblem& mp, const MatrixRep& N, const Transformation& T) {
  check_problem(mp, N);
  auto bad = validate(mp, N);
  if (!bad.empty()) throw ShapeMismatch(bad.front());
  bad = validate(mp, N, T);
  if (!bad.empty()) throw ShapeMismatch(bad.front());
  const Tower& t = mp.tower();
  if (!ext::invertible(t, T.t0)) throw NotInvertible("T_0 is singular");
  for (size_t x = 0; x < mp.stripes(); ++x)
    if (!ext::invertible(t, T.tx[x])) throw NotInvertible("T_" + mp.stripe_name(x) + " is singular");
}

// Everything to the right of T_0 in the general formulas.  Linear in the
// T_x and cross terms; no validity checks.
std::vector<ExtMatrix> body_general(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N) {
  const Tower& t = mp.tower();
  size_t n = mp.stripes();
  std::vector<ExtMatrix> out;
  for (size_t x = 0; x < n; ++x) {
    ExtMatrix b = ext::zero(t, N.d0, N.d[x]);
    if (mp.mode() == RepKind::corep) {
      auto phi = [&](const ExtElement& z) { return t.from_row(mp.phi(x, t.coords(z))); };
      b = ext::mul(t, N.stripes[x], map_entries(T.tx[x], phi));
      for (size_t y = 0; y < n; ++y) {
        if (!mp.less(y, x)) continue;
        auto chi = [&](const ExtElement& r) { return t.from_row(mp.chi(y, x, t.coords(r))); };
        b = ext::add(t, b, ext::mul(t, N.stripes[y], map_entries(T.cross.at({y, x})[0], chi)));
      }
    } else {
      b = ext::mul(t, N.stripes[x], T.tx[x]);
      for (size_t y = 0; y < n; ++y) {
        if (!mp.less(y, x)) continue;
        const auto& Ls = T.cross.at({y, x});
        for (size_t i = 0; i < Ls.size(); ++i) {
          auto u = [&](const ExtElement& v) { return mp.u_factor(y, x, i, v); };
          b = ext::add(t, b, ext::mul(t, map_entries(N.stripes[y], u), Ls[i]));
        }
      }
    }
    out.push_back(b);
  }
  return out;
}

std::vector<ExtMatrix> body_closed(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N) {
  const Tower& t = mp.tower();
  size_t n = mp.stripes();
  std::vector<ExtMatrix> out;
  for (size_t x = 0; x < n; ++x) {
    ExtMatrix b = ext::mul(t, N.stripes[x], T.tx[x]);
    for (size_t y = 0; y < n; ++y) {
      if (!mp.less(y, x)) continue;
      const auto& Ls = T.cross.at({y, x});
      if (mp.mode() == RepKind::corep) {
        b = ext::add(t, b, ext::mul(t, N.stripes[y], Ls[0]));
        continue;
      }
      switch (mp.tau_case(y, x)) {
        case TauCase::strong_strong:
        case TauCase::strong_weak: b = ext::add(t, b, ext::mul(t, N.stripes[y], Ls[0])); break;
        case TauCase::weak_strong: {
          // Σ_i Re(N ξ^{i-1}) L_i = Re(N L) with L = Σ_i ξ^{i-1} L_i
          ExtMatrix L = ext::zero(t, N.d[y], N.d[x]);
          for (size_t i = 0; i < Ls.size(); ++i)
            L = ext::add(t, L, map_entries(Ls[i], [&](const ExtElement& e) { return t.mul(t.xi_pow(static_cast<unsigned>(i)), e); }));
          ExtMatrix prod = ext::mul(t, N.stripes[y], L);
          b = ext::add(t, b, map_entries(prod, [&](const ExtElement& e) { return t.embed(t.re(e)); }));
          break;
        }
        case TauCase::weak_weak:
          for (size_t j = 0; j < Ls.size(); ++j) {
            ExtMatrix tw = map_entries(N.stripes[y], [&](const ExtElement& e) { return t.vartheta_pow(e, static_cast<unsigned>(j)); });
            b = ext::add(t, b, ext::mul(t, tw, Ls[j]));
          }
          break;
      }
    }
    out.push_back(b);
  }
  return out;
}

// ρ_x(T_0) in rep mode; T_0 itself for coreps.
ExtMatrix t0_at(const MatrixProblem& mp, const ExtMatrix& t0, size_t x) {
  if (mp.mode() == RepKind::corep) return t0;
  return map_entries(t0, [&](const ExtElement& a) { return mp.to_field(x, mp.rho(x, mp.from_field(mp.stripes(), a))); });
}

MatrixRep finish(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N, const std::vector<ExtMatrix>& body, bool transported) {
  MatrixRep M = N;
  for (size_t x = 0; x < mp.stripes(); ++x) M.stripes[x] = ext::mul(mp.tower(), transported ? t0_at(mp, T.t0, x) : T.t0, body[x]);
  return M;
}

}  // namespace

MatrixRep apply_transform(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N) {
  check_transform(mp, N, T);
  return finish(mp, T, N, body_general(mp, T, N), true);
}

MatrixRep apply_closed_form(const MatrixProblem& mp, const Transformation& T, const MatrixRep& N) {
  check_transform(mp, N, T);
  return finish(mp, T, N, body_closed(mp, T, N), false);
}

namespace {

struct AmbTransform {
  AmbMatrix t0;
  std::vector<AmbMatrix> tx;
  std::map<std::pair<size_t, size_t>, AmbMatrix> cross;
};

AmbMatrix to_amb(const MatrixProblem& mp, size_t x, const ExtMatrix& m) {
  AmbMatrix a{m.rows, m.cols, {}};
  for (const auto& e : m.a) a.a.push_back(mp.mode() == RepKind::corep ? mp.tower().coords(e) : mp.from_field(x, e));
  return a;
}

ExtMatrix from_amb(const MatrixProblem& mp, size_t x, const AmbMatrix& a) {
  ExtMatrix m{a.rows, a.cols, {}};
  for (const auto& e : a.a) m.a.push_back(mp.to_field(x, e));
  return m;
}

AmbTransform lift(const MatrixProblem& mp, const Transformation& T) {
  const AmbientAlgebra& A = mp.system().ambient();
  size_t n = mp.stripes();
  AmbTransform a{to_amb(mp, n, T.t0), {}, {}};
  for (size_t x = 0; x < n; ++x) a.tx.push_back(to_amb(mp, x, T.tx[x]));
  for (const auto& [k, Ls] : T.cross) {
    auto [y, x] = k;
    if (mp.mode() == RepKind::corep) {
      a.cross[k] = to_amb(mp, x, Ls[0]);
      continue;
    }
    AmbMatrix sum = amb_zero(A, Ls[0].rows, Ls[0].cols);
    const auto& tau = mp.tau(y, x);
    for (size_t i = 0; i < Ls.size(); ++i) {
      AmbMatrix li = to_amb(mp, x, Ls[i]);
      for (auto& e : li.a) e = A.mul(tau[i], e);
      amb_add_to(sum, li);
    }
    a.cross[k] = sum;
  }
  return a;
}

Transformation lower(const MatrixProblem& mp, const AmbTransform& a) {
  const AmbientAlgebra& A = mp.system().ambient();
  const Tower& t = mp.tower();
  size_t n = mp.stripes();
  Transformation T{from_amb(mp, n, a.t0), {}, {}};
  for (size_t x = 0; x < n; ++x) T.tx.push_back(from_amb(mp, x, a.tx[x]));
  for (const auto& [k, m] : a.cross) {
    auto [y, x] = k;
    if (mp.mode() == RepKind::corep) {
      T.cross[k] = {from_amb(mp, x, m)};
      continue;
    }
    // r = Σ_i τ_i c_i with c_i ∈ R_x
    const auto& tau = mp.tau(y, x);
    const Matrix& Rx = mp.system().space(mp.point(x), mp.point(x));
    std::vector<Matrix> rows;
    for (const auto& ti : tau)
      for (size_t k2 = 0; k2 < Rx.rows(); ++k2) rows.push_back(A.mul(ti, Rx.row(k2)));
    la::Coordinates co(Matrix::vcat(rows, A.dim(), t.ch()));
    std::vector<ExtMatrix> Ls(tau.size(), ext::zero(t, m.rows, m.cols));
    for (size_t e = 0; e < m.a.size(); ++e) {
      Matrix c = co.of(m.a[e]);
      for (size_t i = 0; i < tau.size(); ++i) {
        Matrix ci = c.block(0, i * Rx.rows(), 1, Rx.rows()) * Rx;
        Ls[i].a[e] = mp.to_field(x, ci);
      }
    }
    T.cross[k] = Ls;
  }
  return T;
}

}  // namespace

Transformation compose(const MatrixProblem& mp, const Transformation& second, const Transformation& first, const MatrixRep& N) {
  check_transform(mp, N, first);
  const AmbientAlgebra& A = mp.system().ambient();
  size_t n = mp.stripes();
  AmbTransform a = lift(mp, first), b = lift(mp, second);
  AmbTransform c;
  c.t0 = amb_mul(A, b.t0, a.t0);
  for (size_t x = 0; x < n; ++x) c.tx.push_back(amb_mul(A, a.tx[x], b.tx[x]));
  for (const auto& [k, m] : a.cross) {
    auto [z, x] = k;
    AmbMatrix s = amb_mul(A, m, b.tx[x]);
    amb_add_to(s, amb_mul(A, a.tx[z], b.cross.at(k)));
    for (size_t y = 0; y < n; ++y)
      if (mp.less(z, y) && mp.less(y, x)) amb_add_to(s, amb_mul(A, a.cross.at({z, y}), b.cross.at({y, x})));
    c.cross[k] = s;
  }
  return lower(mp, c);
}

std::vector<std::vector<size_t>> stripe_down_sets(const MatrixProblem& mp) {
  size_t n = mp.stripes();
  std::vector<std::vector<size_t>> out;
  auto closed = [&](const std::vector<size_t>& s, u64 mask) {
    for (size_t x : s)
      for (size_t y = 0; y < n; ++y)
        if (mp.less(y, x) && !(mask >> y & 1)) return false;
    return true;
  };
  if (n <= 12) {
    for (u64 mask = 1; mask < (u64{1} << n); ++mask) {
      std::vector<size_t> s;
      for (size_t x = 0; x < n; ++x)
        if (mask >> x & 1) s.push_back(x);
      if (closed(s, mask)) out.push_back(s);
    }
    return out;
  }
  for (size_t x = 0; x < n; ++x) {
    std::vector<size_t> s;
    for (size_t y = 0; y < n; ++y)
      if (y == x || mp.less(y, x)) s.push_back(y);
    out.push_back(s);
  }
  return out;
}

std::vector<size_t> rank_invariants(const MatrixProblem& mp, const MatrixRep& M) {
  check_problem(mp, M);
  const Tower& t = mp.tower();
  u32 ch = t.ch();
  std::vector<size_t> out;
  for (const auto& D : stripe_down_sets(mp)) {
    if (mp.mode() == RepKind::corep) {
      size_t cols = 0;
      for (size_t x : D) cols += M.d[x];
      ExtMatrix J = ext::zero(t, M.d0, cols);
      size_t c0 = 0;
      for (size_t x : D) {
        for (size_t i = 0; i < M.d0; ++i)
          for (size_t j = 0; j < M.d[x]; ++j) J.at(i, c0 + j) = M.stripes[x].at(i, j);
        c0 += M.d[x];
      }
      out.push_back(ext::rank(t, J));
    } else {
      // F-span of all coordinate vectors of the columns
      std::vector<Matrix> rows;
      for (size_t x : D)
        for (size_t j = 0; j < M.d[x]; ++j)
          for (size_t k = 0; k < t.p(); ++k) {
            Matrix r(1, M.d0, ch);
            for (size_t i = 0; i < M.d0; ++i) r(0, i) = M.stripes[x].at(i, j).c[k];
            rows.push_back(r);
          }
      out.push_back(la::rank(Matrix::vcat(rows, M.d0, ch)));
    }
  }
  return out;
}

namespace {

// One unknown over F: slot 0 is S, 1..n are T_x, then cross terms.
struct Param {
  enum Kind { s, tx, cross } kind;
  size_t x = 0, y = 0, i = 0, entry = 0;
  ExtElement value;
};

std::vector<Param> params(const MatrixProblem& mp, const MatrixRep& N) {
  std::vector<Param> out;
  for (size_t e = 0; e < N.d0 * N.d0; ++e)
    for (const auto& b : mp.t0_basis()) out.push_back({Param::s, 0, 0, 0, e, b});
  for (size_t x = 0; x < mp.stripes(); ++x)
    for (size_t e = 0; e < N.d[x] * N.d[x]; ++e)
      for (const auto& b : mp.tx_basis(x)) out.push_back({Param::tx, x, 0, 0, e, b});
  for (size_t x = 0; x < mp.stripes(); ++x)
    for (size_t y = 0; y < mp.stripes(); ++y) {
      if (!mp.less(y, x)) continue;
      for (size_t i = 0; i < mp.cross_count(y, x); ++i)
        for (size_t e = 0; e < N.d[y] * N.d[x]; ++e)
          for (const auto& b : mp.cross_basis(y, x)) out.push_back({Param::cross, x, y, i, e, b});
    }
  return out;
}

Transformation zero_transform(const MatrixProblem& mp, const MatrixRep& N) {
  Transformation T = identity_transform(mp, N);
  T.t0 = ext::zero(mp.tower(), N.d0, N.d0);
  for (size_t x = 0; x < mp.stripes(); ++x) T.tx[x] = ext::zero(mp.tower(), N.d[x], N.d[x]);
  return T;
}

void add_param(const Tower& t, Transformation& T, const Param& p, const Scalar& c) {
  if (c.is_zero()) return;
  ExtElement v = t.scale(c, p.value);
  ExtElement* slot = nullptr;
  switch (p.kind) {
    case Param::s: slot = &T.t0.a[p.entry]; break;
    case Param::tx: slot = &T.tx[p.x].a[p.entry]; break;
    case Param::cross: slot = &T.cross.at({p.y, p.x})[p.i].a[p.entry]; break;
  }
  *slot = t.add(*slot, v);
}

}  // namespace

MorphismSpace morphisms(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N) {
  check_problem(mp, M);
  check_problem(mp, N);
  const Tower& t = mp.tower();
  u32 ch = t.ch();
  size_t n = mp.stripes(), p = t.p();
  if (M.d0 != N.d0 || M.d != N.d) throw ShapeMismatch("morphisms are computed between equal dimension vectors");
  auto ps = params(mp, N);
  size_t eqs = 0;
  for (size_t x = 0; x < n; ++x) eqs += M.d0 * M.d[x] * p;
  Matrix A(eqs, ps.size(), ch);
  for (size_t k = 0; k < ps.size(); ++k) {
    Transformation T = zero_transform(mp, N);
    add_param(t, T, ps[k], Scalar::constant(ch, 1));
    std::vector<ExtMatrix> body = body_general(mp, T, N);
    size_t row = 0;
    for (size_t x = 0; x < n; ++x) {
      ExtMatrix r = ext::sub(t, ext::mul(t, t0_at(mp, T.t0, x), M.stripes[x]), body[x]);
      for (const auto& e : r.a)
        for (size_t c = 0; c < p; ++c) A(row++, k) = e.c[c];
    }
  }
  la::Eliminator el(ps.size(), ch);
  for (size_t r = 0; r < eqs; ++r) el.add(A.row_values(r));
  Matrix ns = el.null_space();
  MorphismSpace out;
  for (size_t s = 0; s < ns.rows(); ++s) {
    Transformation T = zero_transform(mp, N);
    for (size_t k = 0; k < ps.size(); ++k) add_param(t, T, ps[k], ns(s, k));
    out.basis.push_back(T);
  }
  return out;
}

namespace {

Transformation combination(const MatrixProblem& mp, const MatrixRep& N, const MorphismSpace& H, const std::vector<Scalar>& z) {
  const Tower& t = mp.tower();
  Transformation T = zero_transform(mp, N);
  for (size_t k = 0; k < z.size(); ++k) {
    if (z[k].is_zero()) continue;
    const Transformation& B = H.basis[k];
    auto axpy = [&](ExtMatrix& dst, const ExtMatrix& src) {
      for (size_t e = 0; e < dst.a.size(); ++e) dst.a[e] = t.add(dst.a[e], t.scale(z[k], src.a[e]));
    };
    axpy(T.t0, B.t0);
    for (size_t x = 0; x < T.tx.size(); ++x) axpy(T.tx[x], B.tx[x]);
    for (auto& [key, v] : T.cross)
      for (size_t i = 0; i < v.size(); ++i) axpy(v[i], B.cross.at(key)[i]);
  }
  return T;
}

// S and every T_x invertible: T_0 = S^{-1} turns the solution into a witness.
std::optional<Transformation> as_witness(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N, Transformation T) {
  const Tower& t = mp.tower();
  for (const auto& m : T.tx)
    if (!ext::invertible(t, m)) return std::nullopt;
  auto inv = ext::inverse(t, T.t0);
  if (!inv) return std::nullopt;
  T.t0 = *inv;
  if (apply_transform(mp, T, N) != M) return std::nullopt;
  return T;
}

}  // namespace

EquivResult is_equivalent(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N, u64 budget, u64 seed) {
  check_problem(mp, M);
  check_problem(mp, N);
  for (const auto* X : {&M, &N}) {
    auto bad = validate(mp, *X);
    if (!bad.empty()) throw ShapeMismatch(bad.front());
  }
  EquivResult res;
  if (M.d0 != N.d0 || M.d != N.d) {
    res.answer = mod::Answer::no;
    res.certificate = "dimension-vector";
    return res;
  }
  if (M == N) {
    res.answer = mod::Answer::yes;
    res.witness = identity_transform(mp, N);
    res.certificate = "identical";
    return res;
  }
  if (rank_invariants(mp, M) != rank_invariants(mp, N)) {
    res.answer = mod::Answer::no;
    res.certificate = "rank-invariants";
    return res;
  }
  MorphismSpace H = morphisms(mp, M, N);
  size_t k = H.basis.size();
  if (morphisms(mp, M, M).basis.size() != k || morphisms(mp, N, N).basis.size() != k || morphisms(mp, N, M).basis.size() != k) {
    res.answer = mod::Answer::no;
    res.certificate = "morphism-dimensions";
    return res;
  }
  const Tower& t = mp.tower();
  u32 ch = t.ch();
  Rng rng(seed);
  u64 used = 0;
  auto attempt = [&](const std::vector<Scalar>& z) {
    ++used;
    auto w = as_witness(mp, M, N, combination(mp, N, H, z));
    if (w) {
      res.answer = mod::Answer::yes;
      res.witness = w;
      res.certificate = "witness";
    }
    return w.has_value();
  };
  u64 tries = std::min<u64>(budget, 64);
  for (u64 r = 0; r < tries; ++r) {
    std::vector<Scalar> z;
    for (size_t i = 0; i < k; ++i) z.push_back(t.random_base(rng));
    if (attempt(z)) return res;
  }
  // exhaustive search over a set on which a nonzero determinant cannot vanish
  std::vector<Scalar> values;
  if (t.separable()) {
    for (u32 v = 0; v < t.base_size(); ++v) values.push_back(Scalar::constant(ch, v));
  } else {
    size_t D = N.d0 * (mp.mode() == RepKind::corep ? t.p() : 1);
    for (size_t x : N.d) D += x * t.p();
    Scalar s = Scalar::variable(ch), cur = Scalar::constant(ch, 1);
    values.push_back(Scalar::constant(ch, 0));
    for (size_t i = 0; i < D; ++i) {
      values.push_back(cur);
      cur = cur * s;
    }
  }
  double total = 1;
  for (size_t i = 0; i < k; ++i) total *= static_cast<double>(values.size());
  if (total > static_cast<double>(budget - std::min(budget, used))) {
    res.answer = mod::Answer::unknown;
    res.certificate = "budget";
    return res;
  }
  std::vector<size_t> idx(k, 0);
  while (true) {
    std::vector<Scalar> z;
    for (size_t i = 0; i < k; ++i) z.push_back(values[idx[i]]);
    if (attempt(z)) return res;
    size_t i = 0;
    while (i < k && ++idx[i] == values.size()) idx[i++] = 0;
    if (i == k) break;
  }
  res.answer = mod::Answer::no;
  res.certificate = "exhausted-search";
  return res;
}

namespace {

// Coordinates of an ambient element of R_{0,x} in the basis of block (0, x).
Matrix block_coords(const MatrixProblem& mp, size_t px, const Matrix& w) {
  const auto& A = *mp.algebra();
  const auto& bl = A.block(mp.zero_point(), px);
  Matrix basis(bl.size(), mp.system().ambient().dim(), A.ch());
  for (size_t b : bl) basis.set_block(A.pos(b), 0, *A.basis(b).ambient);
  return la::Coordinates(basis).of(w);
}

Matrix block_element(const MatrixProblem& mp, size_t px, const Matrix& c) {
  const auto& A = *mp.algebra();
  Matrix w(1, mp.system().ambient().dim(), A.ch());
  for (size_t b : A.block(mp.zero_point(), px))
    if (!c(0, A.pos(b)).is_zero()) w += c(0, A.pos(b)) * *A.basis(b).ambient;
  return w;
}

// Point of the system → stripe index.
std::vector<long> stripe_of(const MatrixProblem& mp) {
  std::vector<long> s(mp.algebra()->points(), -1);
  for (size_t x = 0; x < mp.stripes(); ++x) s[mp.point(x)] = static_cast<long>(x);
  return s;
}

}  // namespace

PresentationObject to_object(const MatrixProblem& mp, const MatrixRep& M) {
  check_problem(mp, M);
  auto bad = validate(mp, M);
  if (!bad.empty()) throw ShapeMismatch(bad.front());
  const AlgebraPtr& A = mp.algebra();
  const AmbientAlgebra& amb = mp.system().ambient();
  const Tower& t = mp.tower();
  PresentationObject o{A, mp.zero_point(), std::vector<size_t>(A->points(), 0), M.d0, Matrix()};
  for (size_t x = 0; x < mp.stripes(); ++x) o.mult[mp.point(x)] = M.d[x];
  LambdaModule E = o.target();
  LambdaModule E0 = mod::projective(A, mp.zero_point());
  auto sx = stripe_of(mp);
  std::vector<Matrix> images;
  for (size_t i = 0; i < A->points(); ++i) {
    if (!o.mult[i]) continue;
    size_t x = static_cast<size_t>(sx[i]);
    for (size_t c = 0; c < M.d[x]; ++c) {
      Matrix img(1, E.dim(), A->ch());
      for (size_t j = 0; j < M.d0; ++j) {
        const ExtElement& e = M.stripes[x].at(j, c);
        Matrix w = mp.mode() == RepKind::corep ? amb.mul(t.coords(e), mp.generator(x)) : amb.mul(mp.generator(x), mp.from_field(x, e));
        img.set_block(0, E.offset(i) + j * E0.dim(i), block_coords(mp, i, w));
      }
      images.push_back(img);
    }
  }
  o.phi = mod::map_from_free(A, o.mult, images, E);
  return o;
}

MatrixRep from_object(const MatrixProblem& mp, const PresentationObject& o) {
  const AlgebraPtr& A = mp.algebra();
  if (o.algebra.get() != A.get() && !o.algebra->same_shape(*A)) throw DomainMismatch("object lives over a different algebra");
  if (o.mult[mp.zero_point()]) throw DomainMismatch("object has a projective summand at the minimal point");
  const AmbientAlgebra& amb = mp.system().ambient();
  const Tower& t = mp.tower();
  u32 ch = t.ch();
  std::vector<size_t> d(mp.stripes());
  for (size_t x = 0; x < mp.stripes(); ++x) d[x] = o.mult[mp.point(x)];
  MatrixRep M = zero_matrix_rep(mp, o.nu, d);
  LambdaModule E = o.target();
  LambdaModule E0 = mod::projective(A, mp.zero_point());
  auto gens = mod::free_generators(A, o.mult);
  auto sx = stripe_of(mp);
  const Matrix& R0 = mp.system().space(mp.zero_point(), mp.zero_point());
  size_t s = 0;
  for (size_t i = 0; i < A->points(); ++i) {
    if (!o.mult[i]) continue;
    size_t x = static_cast<size_t>(sx[i]);
    // w = c·v_x (corep, c ∈ R_0) or v_x·c (rep, c ∈ R_x)
    const Matrix& coef = mp.mode() == RepKind::corep ? R0 : mp.system().space(i, i);
    std::vector<Matrix> rows;
    for (size_t k = 0; k < coef.rows(); ++k)
      rows.push_back(mp.mode() == RepKind::corep ? amb.mul(coef.row(k), mp.generator(x)) : amb.mul(mp.generator(x), coef.row(k)));
    la::Coordinates read(Matrix::vcat(rows, amb.dim(), ch));
    for (size_t c = 0; c < d[x]; ++c, ++s) {
      Matrix img = gens[s] * o.phi;
      for (size_t j = 0; j < o.nu; ++j) {
        Matrix w = block_element(mp, i, img.block(0, E.offset(i) + j * E0.dim(i), 1, E0.dim(i)));
        Matrix r = read.of(w) * coef;
        M.stripes[x].at(j, c) = mp.mode() == RepKind::corep ? t.from_row(r) : mp.to_field(x, r);
      }
    }
  }
  return M;
}

LambdaModule cok_module(const MatrixProblem& mp, const MatrixRep& M) { return cok(to_object(mp, M)); }

mod::Answer oracle_equivalent(const MatrixProblem& mp, const MatrixRep& M, const MatrixRep& N, u64 seed) {
  if (M.d0 != N.d0 || M.d != N.d) return mod::Answer::no;
  return mod::is_isomorphic(cok_module(mp, M), cok_module(mp, N), seed).answer;
}

MatrixRep extract_matrix_rep(const MatrixProblem& mp, const Representation& R) {
  if (R.kind != mp.mode()) throw ModeMismatch("a " + to_string(R.kind) + " cannot be read in the " + to_string(mp.mode()) + " problem");
  if (!(R.poset == mp.poset())) throw ModeMismatch("representation lives over a different poset");
  UModule U = functor_u(R, mp.system(), mp.algebra());
  PresentationObject o = presentation_in_U(U.module, mp.zero_point(), mp.point(mp.stripes() - 1));
  return from_object(mp, o);
}

}  // namespace eqp
