#include "eqposet/tower.hpp"

#include <cctype>
#include <sstream>

#include "eqposet/error.hpp"

namespace eqp {

std::string to_string(TowerCase k) { return k == TowerCase::separable ? "separable" : "inseparable"; }

bool ExtElement::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

Tower::Tower(const TowerConfig& cfg) : cfg_(cfg) {
  if (!fp::is_prime(cfg.p)) throw AxiomViolation("p = " + std::to_string(cfg.p) + " is not prime");
  if (separable()) {
    if (!fp::is_prime(cfg.q0)) throw AxiomViolation("q0 = " + std::to_string(cfg.q0) + " is not prime");
    if ((cfg.q0 - 1) % cfg.p != 0)
      throw AxiomViolation("p = " + std::to_string(cfg.p) + " does not divide q0 - 1 = " + std::to_string(cfg.q0 - 1));
    u32 qr = cfg.q % cfg.q0;
    if (qr == 0) throw AxiomViolation("q must be nonzero");
    // t^p - q is irreducible over GF(q0) exactly when q is not a p-th power.
    u32 z = fp::pow(qr, (cfg.q0 - 1) / cfg.p, cfg.q0);
    if (z == 1) throw AxiomViolation("q = " + std::to_string(qr) + " is a p-th power in GF(" + std::to_string(cfg.q0) + ")");
    ch_ = cfg.q0;
    q_ = Scalar::constant(ch_, qr);
    zeta_ = Scalar::constant(ch_, z);
  } else {
    ch_ = cfg.p;
    q_ = Scalar::variable(ch_);
  }
}

Scalar Tower::s() const {
  if (separable()) throw WrongCase("s exists only in the inseparable case");
  return Scalar::variable(ch_);
}

ExtElement Tower::zero() const { return ExtElement{std::vector<Scalar>(cfg_.p, base(0))}; }

ExtElement Tower::xi_pow(unsigned i) const {
  // ξ^i = q^(i div p) ξ^(i mod p)
  ExtElement r = zero();
  r.c[i % cfg_.p] = q_.pow(i / cfg_.p);
  return r;
}

ExtElement Tower::embed(const Scalar& f) const {
  ExtElement r = zero();
  r.c[0] = f;
  return r;
}

bool Tower::in_base(const ExtElement& a) const {
  for (size_t i = 1; i < a.c.size(); ++i)
    if (!a.c[i].is_zero()) return false;
  return true;
}

ExtElement Tower::add(const ExtElement& a, const ExtElement& b) const {
  ExtElement r = a;
  for (u32 i = 0; i < cfg_.p; ++i) r.c[i] += b.c[i];
  return r;
}

ExtElement Tower::sub(const ExtElement& a, const ExtElement& b) const {
  ExtElement r = a;
  for (u32 i = 0; i < cfg_.p; ++i) r.c[i] -= b.c[i];
  return r;
}

ExtElement Tower::neg(const ExtElement& a) const {
  ExtElement r = a;
  for (auto& x : r.c) x = -x;
  return r;
}

ExtElement Tower::scale(const Scalar& f, const ExtElement& a) const {
  ExtElement r = a;
  for (auto& x : r.c) x = f * x;
  return r;
}

ExtElement Tower::mul(const ExtElement& a, const ExtElement& b) const {
  u32 p = cfg_.p;
  std::vector<Scalar> w(2 * p - 1, base(0));
  for (u32 i = 0; i < p; ++i) {
    if (a.c[i].is_zero()) continue;
    for (u32 j = 0; j < p; ++j)
      if (!b.c[j].is_zero()) w[i + j] += a.c[i] * b.c[j];
  }
  ExtElement r = zero();
  for (u32 k = 0; k < 2 * p - 1; ++k) {
    if (k < p)
      r.c[k] += w[k];
    else
      r.c[k - p] += q_ * w[k];
  }
  return r;
}

ExtElement Tower::inv(const ExtElement& a) const {
  if (a.is_zero()) throw DivisionByZero("inverse of zero in G");
  // b · a = 1  <=>  coords(b) Θ(μ_a) = e_0
  Matrix e0(1, cfg_.p, ch_);
  e0(0, 0) = base(1);
  auto sol = la::solve_left(theta_mul(a), e0);
  if (!sol) throw DivisionByZero("element has no inverse");
  return from_row(*sol);
}

ExtElement Tower::pow(const ExtElement& a, u64 e) const {
  ExtElement r = one(), b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

ExtElement Tower::delta(const ExtElement& a) const {
  if (separable()) throw WrongCase("δ is defined only in the inseparable case");
  ExtElement r = zero();
  for (u32 i = 1; i < cfg_.p; ++i) r.c[i - 1] = base(i) * a.c[i];
  return r;
}

ExtElement Tower::sigma(const ExtElement& a) const {
  if (!separable()) throw WrongCase("σ is defined only in the separable case");
  ExtElement r = zero();
  Scalar z = base(1);
  for (u32 i = 0; i < cfg_.p; ++i) {
    r.c[i] = z * a.c[i];
    z = z * zeta_;
  }
  return r;
}

ExtElement Tower::vartheta(const ExtElement& a) const { return separable() ? sigma(a) : delta(a); }

ExtElement Tower::vartheta_pow(const ExtElement& a, unsigned k) const {
  ExtElement r = a;
  for (unsigned i = 0; i < k; ++i) r = vartheta(r);
  return r;
}

Matrix Tower::coords(const ExtElement& a) const { return Matrix::row_vector(a.c, ch_); }

ExtElement Tower::from_row(const Matrix& m, size_t row) const {
  ExtElement r = zero();
  for (u32 i = 0; i < cfg_.p; ++i) r.c[i] = m(row, i);
  return r;
}

Matrix Tower::theta_mul(const ExtElement& a) const {
  Matrix m(cfg_.p, cfg_.p, ch_);
  for (u32 i = 0; i < cfg_.p; ++i) m.set_block(i, 0, coords(mul(a, xi_pow(i))));
  return m;
}

Matrix Tower::theta_vartheta() const {
  Matrix m(cfg_.p, cfg_.p, ch_);
  for (u32 i = 0; i < cfg_.p; ++i) m.set_block(i, 0, coords(vartheta(xi_pow(i))));
  return m;
}

static bool needs_parens(const std::string& s) {
  return s.find_first_of("+/") != std::string::npos || (!s.empty() && s[0] == '-');
}

std::string Tower::str(const ExtElement& a) const {
  std::ostringstream os;
  bool first = true;
  for (u32 i = 0; i < cfg_.p; ++i) {
    if (a.c[i].is_zero()) continue;
    if (!first) os << '+';
    first = false;
    std::string c = a.c[i].str();
    if (i == 0) {
      os << (needs_parens(c) ? "(" + c + ")" : c);
      continue;
    }
    if (!a.c[i].is_one()) os << (needs_parens(c) ? "(" + c + ")" : c) << '*';
    os << 'x';
    if (i > 1) os << '^' << i;
  }
  if (first) return "0";
  return os.str();
}

namespace {

class ElementParser {
 public:
  ElementParser(const Tower& t, const std::string& s) : t_(t), s_(s) {}

  ExtElement run() {
    ExtElement v = group();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) const { throw Error("element '" + s_ + "': " + msg); }

  ExtElement group() {
    ExtElement num = sum();
    if (peek() == '/') {
      ++i_;
      ExtElement den = sum();
      if (den.is_zero()) throw DivisionByZero("element '" + s_ + "': division by zero");
      return t_.div(num, den);
    }
    return num;
  }

  ExtElement sum() {
    ExtElement acc = t_.zero();
    bool neg = false;
    if (peek() == '+' || peek() == '-') neg = s_[i_++] == '-';
    acc = term();
    if (neg) acc = t_.neg(acc);
    for (;;) {
      char c = peek();
      if (c != '+' && c != '-') break;
      ++i_;
      ExtElement rhs = term();
      acc = c == '+' ? t_.add(acc, rhs) : t_.sub(acc, rhs);
    }
    return acc;
  }

  bool starts_factor(char c) const { return std::isdigit(static_cast<unsigned char>(c)) || c == 's' || c == 'x' || c == '('; }

  ExtElement term() {
    ExtElement acc = power();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++i_;
        acc = t_.mul(acc, power());
      } else if (starts_factor(c)) {
        acc = t_.mul(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  ExtElement power() {
    ExtElement b = atom();
    if (peek() == '^') {
      ++i_;
      skip();
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("exponent expected");
      b = t_.pow(b, std::stoull(s_.substr(st, i_ - st)));
    }
    return b;
  }

  ExtElement atom() {
    char c = peek();
    if (c == '(') {
      ++i_;
      ExtElement v = group();
      if (peek() != ')') fail("')' expected");
      ++i_;
      return v;
    }
    if (c == 'x') {
      ++i_;
      return t_.xi();
    }
    if (c == 's') {
      ++i_;
      return t_.embed(t_.s());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      unsigned long long v = std::stoull(s_.substr(st, i_ - st));
      return t_.embed(Scalar::constant(t_.ch(), static_cast<long long>(v % t_.ch())));
    }
    fail(c ? "unexpected '" + std::string(1, c) + "'" : "unexpected end");
  }

  const Tower& t_;
  const std::string& s_;
  size_t i_ = 0;
};

}  // namespace

ExtElement Tower::parse(const std::string& text) const { return ElementParser(*this, text).run(); }

Scalar Tower::parse_base(const std::string& text) const {
  ExtElement e = parse(text);
  if (!in_base(e)) throw Error("element '" + text + "' is not in the base field");
  return e.c[0];
}

Scalar Tower::random_base(Rng& rng, bool nonzero) const {
  for (;;) {
    Scalar r;
    if (separable()) {
      r = base(static_cast<long long>(rng() % cfg_.q0));
    } else {
      // small random fraction: numerator degree <= 2, monic denominator degree <= 1
      FpPoly num(3), den;
      for (auto& x : num) x = static_cast<u32>(rng() % ch_);
      if (rng() % 2) {
        den = {static_cast<u32>(rng() % ch_), 1};
      } else {
        den = {1};
      }
      r = Scalar::fraction(ch_, num, den);
    }
    if (!nonzero || !r.is_zero()) return r;
  }
}

ExtElement Tower::random(Rng& rng, bool nonzero) const {
  for (;;) {
    ExtElement a = zero();
    for (auto& x : a.c) x = random_base(rng);
    if (!nonzero || !a.is_zero()) return a;
  }
}

}  // namespace eqp
