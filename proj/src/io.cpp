#include "eqposet/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "eqposet/error.hpp"
#include "text.hpp"

namespace eqp {

namespace {

struct Line {
  int no;
  std::vector<std::string> w;
};

std::vector<Line> lines_of(const std::string& text) {
  std::vector<Line> out;
  std::istringstream is(text);
  std::string raw;
  int no = 0;
  while (std::getline(is, raw)) {
    ++no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    auto w = text::split_ws(raw);
    if (!w.empty()) out.push_back({no, std::move(w)});
  }
  return out;
}

class Cursor {
 public:
  explicit Cursor(const std::string& text) : l_(lines_of(text)) {}
  bool done() const { return i_ >= l_.size(); }
  const Line& peek() const { return l_[i_]; }
  const Line& next() {
    if (done()) throw SyntaxError(last(), "unexpected end of file");
    return l_[i_++];
  }
  int last() const { return l_.empty() ? 1 : l_.back().no; }

 private:
  std::vector<Line> l_;
  size_t i_ = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_of(const std::string& path) { return std::filesystem::path(path).parent_path().string(); }

size_t to_size(const std::string& s, int line) {
  long long v = text::to_int(s, line);
  if (v < 0) throw SyntaxError(line, "non-negative integer expected, found '" + s + "'");
  return static_cast<size_t>(v);
}

Scalar scalar_at(const Tower& t, const std::string& tok, int line) {
  try {
    return t.parse_base(tok);
  } catch (const Error& e) {
    throw SyntaxError(line, e.what());
  }
}

ExtElement element_at(const Tower& t, const std::string& tok, int line) {
  try {
    return t.parse(tok);
  } catch (const Error& e) {
    throw SyntaxError(line, e.what());
  }
}

const Line& row_line(Cursor& c, size_t width) {
  const Line& l = c.next();
  if (l.w.size() != width)
    throw SyntaxError(l.no, "expected " + std::to_string(width) + " entries, found " + std::to_string(l.w.size()));
  return l;
}

Matrix scalar_rows(Cursor& c, const Tower& t, size_t rows, size_t cols) {
  Matrix m(rows, cols, t.ch());
  if (!cols) return m;
  for (size_t i = 0; i < rows; ++i) {
    const Line& l = row_line(c, cols);
    for (size_t j = 0; j < cols; ++j) m(i, j) = scalar_at(t, l.w[j], l.no);
  }
  return m;
}

ExtMatrix ext_rows(Cursor& c, const Tower& t, size_t rows, size_t cols) {
  ExtMatrix m = ext::zero(t, rows, cols);
  if (!cols) return m;
  for (size_t i = 0; i < rows; ++i) {
    const Line& l = row_line(c, cols);
    for (size_t j = 0; j < cols; ++j) m.at(i, j) = element_at(t, l.w[j], l.no);
  }
  return m;
}

// A row of n elements of G as a vector of F^{pn}.
Matrix g_row(const Tower& t, const Line& l) {
  size_t p = t.p();
  Matrix v(1, p * l.w.size(), t.ch());
  for (size_t j = 0; j < l.w.size(); ++j) v.set_block(0, j * p, t.coords(element_at(t, l.w[j], l.no)));
  return v;
}

std::string g_str(const Tower& t, const Matrix& v) {
  std::string s;
  size_t p = t.p();
  for (size_t j = 0; j * p < v.cols(); ++j) {
    if (j) s += ' ';
    s += t.str(t.from_row(v.block(0, j * p, 1, p)));
  }
  return s;
}

void put_scalars(std::ostringstream& os, const Matrix& m) {
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j).str();
    os << "\n";
  }
}

void put_ext(std::ostringstream& os, const Tower& t, const ExtMatrix& m) {
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) os << (j ? " " : "") << t.str(m.at(i, j));
    os << "\n";
  }
}

bool is_keyword(const Line& l, std::initializer_list<const char*> kws) {
  for (const char* k : kws)
    if (l.w[0] == k) return true;
  return false;
}

RepKind kind_at(const std::string& s, int line) {
  if (s == "rep") return RepKind::rep;
  if (s == "corep") return RepKind::corep;
  throw SyntaxError(line, "expected 'rep' or 'corep', found '" + s + "'");
}

// "<kw...> over <path>"; returns the header line.
const Line& header(Cursor& c, size_t words, const std::string& usage) {
  if (c.done()) throw SyntaxError(1, "empty file");
  const Line& l = c.next();
  if (l.w.size() != words || l.w[words - 2] != "over") throw SyntaxError(l.no, "usage: " + usage);
  return l;
}

size_t point_at(const EquippedPoset& P, const std::string& name, int line) {
  auto x = P.find(name);
  if (!x) throw SyntaxError(line, "unknown point '" + name + "'");
  return *x;
}

}  // namespace

PosetRef load_poset_ref(const std::string& path, const std::string& base_dir, int line) {
  std::filesystem::path full(path);
  if (full.is_relative() && !base_dir.empty()) full = std::filesystem::path(base_dir) / full;
  PosetFile pf;
  try {
    pf = load_poset(full.string());
  } catch (const Error& e) {
    throw SyntaxError(line, "poset file '" + path + "': " + e.what());
  }
  if (pf.gamma) throw SyntaxError(line, "poset file '" + path + "' uses generalized equipment");
  if (!pf.tower) throw SyntaxError(line, "poset file '" + path + "' has no 'case' line");
  return {path, pf.poset, Tower(*pf.tower)};
}

RepFile parse_rep(const std::string& text, const std::string& base_dir) {
  Cursor c(text);
  const Line& h = header(c, 3, "rep|corep over <poset-file>");
  RepFile out{load_poset_ref(h.w[2], base_dir, h.no), {}};
  const Tower& t = out.poset.tower;
  Representation R = zero_rep(kind_at(h.w[0], h.no), out.poset.poset, t);
  const auto& P = R.poset;
  const Line& v = c.next();
  if (v.w.size() != 2 || v.w[0] != "V") throw SyntaxError(v.no, "usage: V <n>");
  R.n = to_size(v.w[1], v.no);
  size_t N = R.fdim();
  u32 ch = t.ch();
  R.sub.assign(P.size(), Matrix(0, N, ch));
  if (R.kind == RepKind::rep) R.r = standard_operator(t, R.n);
  Matrix X = R.X();
  std::set<size_t> seen;
  bool have_r = false;
  while (!c.done()) {
    const Line& l = c.next();
    if (l.w[0] == "r") {
      if (l.w.size() != 1) throw SyntaxError(l.no, "usage: r, followed by the operator rows");
      if (R.kind != RepKind::rep) throw SyntaxError(l.no, "a corepresentation has no operator");
      if (have_r || !seen.empty()) throw SyntaxError(l.no, "the operator must come once, before the subspaces");
      have_r = true;
      R.r = scalar_rows(c, t, N, N);
    } else if (l.w[0] == "sub") {
      if (l.w.size() != 2) throw SyntaxError(l.no, "usage: sub <point>");
      size_t x = point_at(P, l.w[1], l.no);
      if (!seen.insert(x).second) throw SyntaxError(l.no, "second sub block for '" + l.w[1] + "'");
      std::vector<Matrix> rows;
      while (!c.done() && !is_keyword(c.peek(), {"sub", "r"})) {
        const Line& row = row_line(c, R.n);
        rows.push_back(g_row(t, row));
      }
      Matrix m = Matrix::vcat(rows, N, ch);
      R.sub[x] = R.kind == RepKind::rep ? g_span(m, X) : la::row_space(m);
    } else {
      throw SyntaxError(l.no, "unknown keyword '" + l.w[0] + "'");
    }
  }
  out.rep = std::move(R);
  return out;
}

RepFile load_rep(const std::string& path) { return parse_rep(read_file(path), dir_of(path)); }

std::string format_rep(const Representation& R, const std::string& poset_path) {
  const Tower& t = R.tower;
  std::ostringstream os;
  os << to_string(R.kind) << " over " << poset_path << "\n";
  os << "V " << R.n << "\n";
  if (R.kind == RepKind::rep && R.r != standard_operator(t, R.n)) {
    os << "r\n";
    put_scalars(os, R.r);
  }
  Matrix X = R.X();
  for (size_t x = 0; x < R.poset.size(); ++x) {
    if (!R.sub[x].rows()) continue;
    os << "sub " << R.poset.name(x) << "\n";
    // a G-basis for representations, an F-basis for corepresentations
    Matrix span(0, R.fdim(), t.ch());
    for (size_t i = 0; i < R.sub[x].rows(); ++i) {
      Matrix v = R.sub[x].row(i);
      if (la::contains(span, v)) continue;
      span = R.kind == RepKind::rep ? g_span(Matrix::vcat(span, v), X) : Matrix::vcat(span, v);
      os << g_str(t, v) << "\n";
    }
  }
  return os.str();
}

ModuleFile parse_module(const std::string& text, const std::string& base_dir) {
  Cursor c(text);
  const Line& h = header(c, 3, "module over <poset-file>");
  if (h.w[0] != "module") throw SyntaxError(h.no, "usage: module over <poset-file>");
  ModuleFile out{load_poset_ref(h.w[2], base_dir, h.no), {}, {}};
  const Tower& t = out.poset.tower;
  const Line& s = c.next();
  bool ok = s.w[0] == "system" && (s.w.size() == 4 || s.w.size() == 5);
  if (ok) {
    out.spec.kind = kind_at(s.w[1], s.no);
    out.spec.moritized = s.w.size() == 5;
    if (out.spec.moritized && s.w[2] != "moritized") ok = false;
    const std::string& ext = s.w[s.w.size() - 1];
    if (s.w[s.w.size() - 2] != "extend" || (ext != "max" && ext != "both")) ok = false;
    out.spec.with_zero = ext == "both";
  }
  if (!ok) throw SyntaxError(s.no, "usage: system corep|rep [moritized] extend max|both");
  AlgebraPtr A = system_for(out.spec.kind, out.poset.poset, t, out.spec.with_zero, out.spec.moritized).algebra;
  auto point = [&](const Line& l, const std::string& name) {
    auto i = A->find(name);
    if (!i) throw SyntaxError(l.no, "unknown point '" + name + "'");
    return *i;
  };
  std::vector<size_t> dims(A->points(), 0);
  std::vector<bool> dim_seen(A->points(), false);
  while (!c.done() && c.peek().w[0] == "dim") {
    const Line& l = c.next();
    if (l.w.size() != 3) throw SyntaxError(l.no, "usage: dim <point> <d>");
    size_t i = point(l, l.w[1]);
    if (dim_seen[i]) throw SyntaxError(l.no, "second dim line for '" + l.w[1] + "'");
    dim_seen[i] = true;
    dims[i] = to_size(l.w[2], l.no);
  }
  LambdaModule M(A, dims);
  std::set<size_t> acted;
  while (!c.done()) {
    const Line& l = c.next();
    if (l.w[0] != "act" || l.w.size() != 4) throw SyntaxError(l.no, "usage: act <i> <j> <k>");
    size_t i = point(l, l.w[1]), j = point(l, l.w[2]), k = to_size(l.w[3], l.no);
    const auto& blk = A->block(i, j);
    if (k >= blk.size()) throw SyntaxError(l.no, "block " + l.w[1] + "," + l.w[2] + " has " + std::to_string(blk.size()) + " basis elements");
    if (!acted.insert(blk[k]).second) throw SyntaxError(l.no, "second act block for the same basis element");
    M.set_act(blk[k], scalar_rows(c, t, dims[i], dims[j]));
  }
  out.module = std::move(M);
  return out;
}

ModuleFile load_module(const std::string& path) { return parse_module(read_file(path), dir_of(path)); }

std::string format_module(const LambdaModule& M, const ModuleSpec& spec, const std::string& poset_path) {
  const IncidenceAlgebra& A = M.A();
  std::ostringstream os;
  os << "module over " << poset_path << "\n";
  os << "system " << to_string(spec.kind) << (spec.moritized ? " moritized" : "") << " extend " << (spec.with_zero ? "both" : "max") << "\n";
  for (size_t i = 0; i < A.points(); ++i)
    if (M.dim(i)) os << "dim " << A.name(i) << " " << M.dim(i) << "\n";
  for (size_t i = 0; i < A.points(); ++i)
    for (size_t j = 0; j < A.points(); ++j) {
      const auto& blk = A.block(i, j);
      for (size_t k = 0; k < blk.size(); ++k) {
        const Matrix& a = M.act(blk[k]);
        if (a.empty() || a.is_zero()) continue;
        os << "act " << A.name(i) << " " << A.name(j) << " " << k << "\n";
        put_scalars(os, a);
      }
    }
  return os.str();
}

MatrepFile parse_matrep(const std::string& text, const std::string& base_dir) {
  Cursor c(text);
  const Line& h = header(c, 4, "matrep rep|corep over <poset-file>");
  if (h.w[0] != "matrep") throw SyntaxError(h.no, "usage: matrep rep|corep over <poset-file>");
  RepKind mode = kind_at(h.w[1], h.no);
  MatrepFile out{load_poset_ref(h.w[3], base_dir, h.no), {}};
  const Tower& t = out.poset.tower;
  MatrixProblem mp(mode, out.poset.poset, t);
  auto stripe = [&](const Line& l, const std::string& name) {
    for (size_t x = 0; x < mp.stripes(); ++x)
      if (mp.stripe_name(x) == name) return x;
    throw SyntaxError(l.no, "unknown stripe '" + name + "'");
  };
  size_t d0 = 0;
  std::vector<size_t> d(mp.stripes(), 0);
  std::set<std::string> dim_seen;
  while (!c.done() && c.peek().w[0] == "dim") {
    const Line& l = c.next();
    if (l.w.size() != 3) throw SyntaxError(l.no, "usage: dim <x> <d>");
    if (!dim_seen.insert(l.w[1]).second) throw SyntaxError(l.no, "second dim line for '" + l.w[1] + "'");
    size_t v = to_size(l.w[2], l.no);
    if (l.w[1] == "0")
      d0 = v;
    else
      d[stripe(l, l.w[1])] = v;
  }
  MatrixRep M = zero_matrix_rep(mp, d0, d);
  std::set<size_t> seen;
  while (!c.done()) {
    const Line& l = c.next();
    if (l.w[0] != "stripe" || l.w.size() != 2) throw SyntaxError(l.no, "usage: stripe <x>");
    size_t x = stripe(l, l.w[1]);
    if (!seen.insert(x).second) throw SyntaxError(l.no, "second stripe block for '" + l.w[1] + "'");
    M.stripes[x] = ext_rows(c, t, d0, d[x]);
  }
  out.rep = std::move(M);
  return out;
}

MatrepFile load_matrep(const std::string& path) { return parse_matrep(read_file(path), dir_of(path)); }

std::string format_matrep(const MatrixProblem& mp, const MatrixRep& M, const std::string& poset_path) {
  std::ostringstream os;
  os << "matrep " << to_string(M.mode) << " over " << poset_path << "\n";
  os << "dim 0 " << M.d0 << "\n";
  for (size_t x = 0; x < mp.stripes(); ++x) os << "dim " << mp.stripe_name(x) << " " << M.d[x] << "\n";
  for (size_t x = 0; x < mp.stripes(); ++x) {
    if (!M.d0 || !M.d[x]) continue;
    os << "stripe " << mp.stripe_name(x) << "\n";
    put_ext(os, mp.tower(), M.stripes[x]);
  }
  return os.str();
}

std::string format_transform(const MatrixProblem& mp, const Transformation& T, const std::string& poset_path) {
  const Tower& t = mp.tower();
  std::ostringstream os;
  os << "transform " << to_string(mp.mode()) << " over " << poset_path << "\n";
  os << "t0\n";
  put_ext(os, t, T.t0);
  for (size_t x = 0; x < T.tx.size(); ++x) {
    if (!T.tx[x].rows) continue;
    os << "tx " << mp.stripe_name(x) << "\n";
    put_ext(os, t, T.tx[x]);
  }
  for (const auto& [yx, mats] : T.cross)
    for (size_t i = 0; i < mats.size(); ++i) {
      if (!mats[i].rows || !mats[i].cols) continue;
      os << "cross " << mp.stripe_name(yx.first) << " " << mp.stripe_name(yx.second) << " " << i << "\n";
      put_ext(os, t, mats[i]);
    }
  return os.str();
}

}  // namespace eqp
